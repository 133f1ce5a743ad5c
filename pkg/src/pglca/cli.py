"""Command-line surface: construct, verify, measure, search, extend and
post-optimize strength-4 covering arrays over the projective alphabet.

Exit codes: 0 success, 1 verification/search failure (for example `verify`
on an array that is not a covering array), 2 usage error. Every randomized
subcommand requires --seed, so runs are reproducible by construction.
Vectors are passed inline as token strings ('0'..'8' plus '*' for the
projective infinity) or via files in the builder's formats.
"""

import argparse
import os
import sys

import numpy as np

from .field import SUPPORTED_Q, make_field, format_symbols, parse_symbols
from .orbits import build_orbit_table, dump_orbits, unpack_index
from .classes import enumerate_classes
from .builder import (TestingArray, assemble, assemble_extended,
                      read_array, write_array, read_vectors, write_vectors,
                      read_matrix, write_matrix, starter_check,
                      check_extension)
from .verifier import is_covering_array, coverage_brute, coverage_by_classes
from .search import (SearchConfig, search_starters, search_residual_matrix,
                     search_extension)
from .postopt import post_optimize

_SUPPORTED_G = tuple(q + 1 for q in SUPPORTED_Q)


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _add_g(p, required=True):
    p.add_argument("--g", type=int, required=required, choices=_SUPPORTED_G,
                   help="alphabet size g = q+1 (field order q plus infinity)")


def _add_vector_source(p, v_help="second starter vector"):
    p.add_argument("--u", help="first starter vector, inline tokens")
    p.add_argument("--v", help=f"{v_help}, inline tokens")
    p.add_argument("--vectors", metavar="FILE",
                   help="read starter vector(s) from a file, one per line, "
                        "instead of --u/--v")


def _add_threads(p):
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads for brute-force passes "
                        "(default: machine parallelism)")


def _field(parser, args):
    return make_field(args.g - 1)


def _vectors(parser, args, fs):
    """Resolve (u, v) from --u/--v or --vectors; v may be None."""
    if args.vectors:
        if args.u or args.v:
            parser.error("--vectors conflicts with --u/--v")
        vecs = read_vectors(args.vectors, fs)
        if not 1 <= len(vecs) <= 2:
            parser.error(f"--vectors: expected 1 or 2 lines, "
                         f"got {len(vecs)}")
        u = vecs[0]
        v = vecs[1] if len(vecs) == 2 else None
    elif args.u:
        try:
            u = parse_symbols(args.u, fs.q)
            v = parse_symbols(args.v, fs.q) if args.v else None
        except ValueError as e:
            parser.error(f"--u/--v: {e}")
    else:
        parser.error("one of --u or --vectors is required")
    k = getattr(args, "k", None)
    if k is not None and k != len(u):
        parser.error(f"--k {k} does not match vector length {len(u)}")
    if v is not None and len(v) != len(u):
        parser.error("--u and --v must have equal length")
    return u, v


def _matrix(parser, args, fs, k):
    """Resolve the completion matrix from --c1: a file in the builder's
    matrix format (k lines of tokens) or inline comma-separated rows."""
    spec = args.c1
    if spec is None:
        return None
    try:
        if os.path.exists(spec):
            mat = read_matrix(spec, fs)
        else:
            rows = [parse_symbols(r, fs.q) for r in spec.split(",")]
            if len({len(r) for r in rows}) != 1:
                raise ValueError("rows of unequal length")
            mat = np.vstack(rows)
    except ValueError as e:
        parser.error(f"--c1: {e}")
    if mat.shape[0] != k:
        parser.error(f"--c1: expected {k} rows, got {mat.shape[0]}")
    return mat


# ---------------------------------------------------------------------------
# subcommands

def _cmd_orbits(parser, args):
    fs = _field(parser, args)
    table = build_orbit_table(fs)
    if args.members:
        print(dump_orbits(table, fs.q))
    else:
        order = np.argsort(table.labels)
        for oid in order:
            rep = format_symbols(unpack_index(int(table.reps[oid]), fs.g),
                                 fs.q)
            print(f"orbit {int(table.labels[oid])}: size "
                  f"{int(table.sizes[oid])} rep {rep}")
    return 0


def _cmd_classes(parser, args):
    classes = enumerate_classes(args.k)
    for cls in classes:
        print(f"{cls.label} size {cls.size}")
    total = sum(c.size for c in classes)
    print(f"total {len(classes)} classes covering {total} row subsets")
    return 0


def _cmd_starter_check(parser, args):
    fs = _field(parser, args)
    u, v = _vectors(parser, args, fs)
    report = starter_check(fs, u, v)
    print(report)
    return 0 if report.is_empty else 1


def _cmd_build(parser, args):
    fs = _field(parser, args)
    u, v = _vectors(parser, args, fs)
    c1 = _matrix(parser, args, fs, len(u))
    ta = assemble(fs, u, v, c1, include_constants=not args.no_constants,
                  develop_c1=not args.raw_c1)
    write_array(ta, args.out)
    print(f"wrote 4-CA candidate n={ta.n} k={ta.k} g={ta.g} to {args.out}")
    return 0


def _cmd_verify(parser, args):
    ta = read_array(args.infile)
    res = is_covering_array(ta, threads=args.threads)
    name = f"4-CA({ta.n},{ta.k},{ta.g})"
    if res.ok:
        print(f"{name}: VALID")
        return 0
    rows, tup = res.witness
    fs = make_field(ta.g - 1)
    print(f"{name}: INVALID missing {format_symbols(tup, fs.q)} "
          f"on rows {','.join(str(r) for r in rows)}")
    return 1


def _cmd_coverage(parser, args):
    if args.infile:
        if args.u or args.vectors:
            parser.error("--in conflicts with --u/--vectors")
        ta = read_array(args.infile)
        cov = coverage_brute(ta, threads=args.threads)
        n = ta.n
    else:
        if args.g is None:
            parser.error("--g is required without --in")
        fs = _field(parser, args)
        u, v = _vectors(parser, args, fs)
        include = not args.no_constants
        cov = coverage_by_classes(fs, u, v, include_constants=include)
        if args.brute:
            ta = assemble(fs, u, v, include_constants=include)
            brute = coverage_brute(ta, threads=args.threads)
            if (brute.covered, brute.total) != (cov.covered, cov.total):
                raise AssertionError(
                    "class formula and brute force disagree: "
                    f"{cov.covered}/{cov.total} vs "
                    f"{brute.covered}/{brute.total}")
            n = ta.n
        else:
            from .builder import assembled_size
            n = assembled_size(len(u), 1 if v is None else 2, 0, fs,
                               include_constants=include)
    print(f"n={n} mu={cov.mu_text()}")
    print(cov.to_json())
    return 0


def _cmd_search(parser, args):
    fs = _field(parser, args)
    cfg = SearchConfig(k=args.k, mode=args.mode, objective=args.objective,
                       budget=args.budget, restarts=args.restarts,
                       seed=args.seed, plateau_cap=args.plateau_cap,
                       include_constants=not args.no_constants)
    res = search_starters(cfg, fs, log=_log)
    for vec in res.vectors:
        print(format_symbols(vec, fs.q))
    print(f"missing-pairs={res.missing_pairs} mu={float(res.mu):.3f} "
          f"moves={res.moves_used} restarts={res.restarts_used}")
    if args.out:
        write_vectors(args.out, fs, *res.vectors)
    if args.objective == "full" and not res.solved:
        return 1
    return 0


def _cmd_search_c1(parser, args):
    fs = _field(parser, args)
    u, v = _vectors(parser, args, fs)
    report = starter_check(fs, u, v)
    if report.is_empty:
        print("residual already empty; no completion matrix needed")
        return 0
    cfg = SearchConfig(k=len(u), budget=args.budget, restarts=args.restarts,
                       seed=args.seed, plateau_cap=args.plateau_cap)
    res = search_residual_matrix(report, args.width, cfg, fs, log=_log)
    for row in res.matrix:
        print(format_symbols(row, fs.q))
    print(f"unsatisfied={res.unsat_pairs} moves={res.moves_used} "
          f"restarts={res.restarts_used}")
    if args.out:
        write_matrix(args.out, fs, res.matrix)
    return 0 if res.solved else 1


def _cmd_extend(parser, args):
    fs = _field(parser, args)
    u, v = _vectors(parser, args, fs)
    verdicts = check_extension(fs, u, v)
    passing = search_extension(fs, u, v)
    for combo, ok in sorted(verdicts.items()):
        toks = " ".join(format_symbols([s], fs.q) for s in combo)
        print(f"placement {toks}: {'ok' if ok else 'fail'}")
    if not passing:
        print("no placement extends the degree")
        return 1
    if args.out:
        combo = passing[0]
        vecs = [np.append(w, s).astype(np.int16)
                for w, s in zip((u,) if v is None else (u, v), combo)]
        ta = assemble_extended(fs, *vecs,
                               include_constants=not args.no_constants)
        write_array(ta, args.out)
        print(f"wrote extended array n={ta.n} k={ta.k} g={ta.g} "
              f"to {args.out}")
    return 0


def _cmd_postopt(parser, args):
    ta = read_array(args.infile)
    if args.drop_rows:
        if args.drop_rows < 0 or ta.k - args.drop_rows < 4:
            parser.error(f"--drop-rows must leave at least 4 of "
                         f"{ta.k} rows")
        ta = TestingArray(ta.g, ta.entries[:ta.k - args.drop_rows])
    out = post_optimize(ta, budget=args.budget, seed=args.seed)
    write_array(out, args.out)
    print(f"n={ta.n} -> n={out.n} (k={out.k}, g={out.g}); "
          f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pglca",
        description="Strength-4 covering arrays from projective-group "
                    "starter-vector constructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbits", help="list the g+11 orbits of 4-tuples")
    _add_g(p)
    p.add_argument("--members", action="store_true",
                   help="print full member listings instead of the census")
    p.set_defaults(func=_cmd_orbits)

    p = sub.add_parser("classes",
                       help="list the cyclic classes of row 4-subsets")
    p.add_argument("--k", type=int, required=True, help="number of rows")
    p.set_defaults(func=_cmd_classes)

    p = sub.add_parser("starter-check",
                       help="report classes missing non-constant orbits")
    _add_g(p)
    p.add_argument("--k", type=int, help="expected vector length (checked)")
    _add_vector_source(p)
    p.set_defaults(func=_cmd_starter_check)

    p = sub.add_parser("build", help="assemble the developed array")
    _add_g(p)
    p.add_argument("--k", type=int, help="expected vector length (checked)")
    _add_vector_source(p)
    p.add_argument("--c1", metavar="FILE|ROWS",
                   help="completion matrix: file of k token rows, or inline "
                        "comma-separated rows")
    p.add_argument("--raw-c1", action="store_true",
                   help="append the completion matrix undeveloped")
    p.add_argument("--no-constants", action="store_true",
                   help="omit the g constant columns")
    p.add_argument("--out", required=True, help="output array file")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("verify", help="brute-force covering verification")
    p.add_argument("--in", dest="infile", required=True,
                   help="array file to verify")
    _add_threads(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("coverage", help="coverage measure of an array")
    _add_g(p, required=False)
    p.add_argument("--k", type=int, help="expected vector length (checked)")
    _add_vector_source(p)
    p.add_argument("--in", dest="infile",
                   help="measure an array file instead of starter vectors")
    p.add_argument("--no-constants", action="store_true",
                   help="omit the g constant columns")
    p.add_argument("--brute", action="store_true",
                   help="cross-check the class formula against brute force")
    _add_threads(p)
    p.set_defaults(func=_cmd_coverage)

    p = sub.add_parser("search", help="hill-climb for starter vectors")
    _add_g(p)
    p.add_argument("--k", type=int, required=True, help="vector length")
    p.add_argument("--mode", choices=("one-vector", "two-vector"),
                   default="two-vector")
    p.add_argument("--objective", choices=("full", "max-coverage"),
                   default="full")
    p.add_argument("--budget", type=int, default=1_000_000,
                   help="total moves across restarts")
    p.add_argument("--restarts", type=int, default=0,
                   help="restart count; 0 = as many as the budget allows")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--plateau-cap", type=int, default=2000,
                   help="sideways moves tolerated before restarting")
    p.add_argument("--no-constants", action="store_true",
                   help="score coverage without the constant columns")
    p.add_argument("--out", help="write the best vectors to a file")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("search-c1",
                       help="search a completion matrix for a residual")
    _add_g(p)
    p.add_argument("--k", type=int, help="expected vector length (checked)")
    _add_vector_source(p)
    p.add_argument("--width", type=int, required=True,
                   help="completion matrix column count")
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--restarts", type=int, default=0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--plateau-cap", type=int, default=2000)
    p.add_argument("--out", help="write the matrix to a file")
    p.set_defaults(func=_cmd_search_c1)

    p = sub.add_parser("extend",
                       help="check fixed-last-row degree extensions")
    _add_g(p)
    p.add_argument("--k", type=int, help="expected vector length (checked)")
    _add_vector_source(p)
    p.add_argument("--no-constants", action="store_true")
    p.add_argument("--out", help="write the first passing extended array")
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("postopt", help="randomized column reduction")
    p.add_argument("--in", dest="infile", required=True,
                   help="array file to shrink")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--budget", type=int, default=100,
                   help="reduction rounds")
    p.add_argument("--drop-rows", type=int, default=0,
                   help="drop this many trailing rows before optimizing")
    p.add_argument("--out", required=True, help="output array file")
    p.set_defaults(func=_cmd_postopt)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except (OSError, ValueError) as e:
        parser.exit(2, f"{parser.prog}: error: {e}\n")


if __name__ == "__main__":
    sys.exit(main())
