"""Arithmetic tables for the small fields GF(q) and the projective line X = GF(q) u {oo}.

Field elements are encoded as integers 0..q-1; the extra projective symbol oo
gets code q, so the g = q+1 symbols are totally ordered 0 < 1 < ... < q-1 < oo.
For extension fields the code is the base-p digit expansion of the polynomial,
low degree first: in GF(4), code 2 is x and code 3 is x+1.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)

# degree and reduction of x^m into lower powers (little-endian coefficients):
# GF(4): x^2 + x + 1 = 0, GF(8): x^3 + x + 1 = 0, GF(9): x^2 + 1 = 0 over GF(3)
_EXTENSIONS = {
    4: (2, 2, (1, 1)),
    8: (2, 3, (1, 1, 0)),
    9: (3, 2, (2, 0)),
}


@dataclass(frozen=True)
class FieldSpec:
    """Lookup tables for one GF(q). Arrays are read-only int16."""

    q: int
    p: int
    m: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray

    @property
    def g(self) -> int:
        return self.q + 1

    @property
    def group_order(self) -> int:
        return (self.q + 1) * self.q * (self.q - 1)

    @property
    def infinity(self) -> int:
        return self.q

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by the zero field element")
        return int(self.mul[a, self.inv[b]])


def _digits(code: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(code % p)
        code //= p
    return out


def _undigits(digits, p: int) -> int:
    code = 0
    for d in reversed(digits):
        code = code * p + d
    return code


def _poly_mul(a, b, p, m, red):
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    for deg in range(2 * m - 2, m - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for t in range(m):
                prod[deg - m + t] = (prod[deg - m + t] + c * red[t]) % p
    return prod[:m]


def _lock(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    """Build the addition/multiplication/inverse tables for GF(q)."""
    if q not in SUPPORTED_Q:
        raise ValueError(f"q must be one of {SUPPORTED_Q}, got {q}")
    if q in _EXTENSIONS:
        p, m, red = _EXTENSIONS[q]
    else:
        p, m, red = q, 1, ()

    add = np.zeros((q, q), dtype=np.int16)
    mul = np.zeros((q, q), dtype=np.int16)
    for a in range(q):
        da = _digits(a, p, m)
        for b in range(q):
            db = _digits(b, p, m)
            add[a, b] = _undigits([(x + y) % p for x, y in zip(da, db)], p)
            if m == 1:
                mul[a, b] = (a * b) % p
            else:
                mul[a, b] = _undigits(_poly_mul(da, db, p, m, red), p)

    neg = np.zeros(q, dtype=np.int16)
    inv = np.zeros(q, dtype=np.int16)
    for a in range(q):
        neg[a] = np.where(add[a] == 0)[0][0]
        if a:
            inv[a] = np.where(mul[a] == 1)[0][0]

    return FieldSpec(q=q, p=p, m=m, add=_lock(add), mul=_lock(mul),
                     neg=_lock(neg), inv=_lock(inv))


def symbol_count(fs: FieldSpec) -> int:
    """Alphabet size g = q + 1 of the projective line."""
    return fs.g


# ---------------------------------------------------------------------------
# symbol text encoding: one character per symbol, '0'..'8' and '*' for oo
# ('∞' is accepted on input as a courtesy alias)

def symbol_to_token(s: int, q: int) -> str:
    if s == q:
        return "*"
    if 0 <= s < q:
        return str(s)
    raise ValueError(f"symbol code {s} out of range for q={q}")


def token_to_symbol(tok: str, q: int) -> int:
    if tok in ("*", "∞"):
        return q
    if tok.isdigit() and len(tok) == 1 and int(tok) < q:
        return int(tok)
    raise ValueError(f"bad symbol token {tok!r} for q={q}")


def parse_symbols(text: str, q: int) -> np.ndarray:
    """Parse a string of symbol tokens (whitespace ignored) into codes."""
    codes = [token_to_symbol(ch, q) for ch in text if not ch.isspace()]
    return np.array(codes, dtype=np.int16)


def format_symbols(vec, q: int, sep: str = "") -> str:
    return sep.join(symbol_to_token(int(s), q) for s in vec)
