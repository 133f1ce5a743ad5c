"""Dispatch between the numba kernels and the pure-numpy fallbacks.

Set PGLCA_NO_NUMBA=1 to force the numpy path; it is also taken
automatically when numba is unavailable. USING_NUMBA reports which
implementation is live.
"""

import os

from . import _kernels_numpy as _np_impl

if os.environ.get("PGLCA_NO_NUMBA", "").strip() not in ("", "0"):
    _impl = _np_impl
    USING_NUMBA = False
else:
    try:
        from . import _kernels_numba as _impl
        USING_NUMBA = True
    except ImportError:
        _impl = _np_impl
        USING_NUMBA = False

coverage_count = _impl.coverage_count
find_first_missing = _impl.find_first_missing
tuple_count_table = _impl.tuple_count_table
greedy_flex = _impl.greedy_flex
hill_climb = _impl.hill_climb
c1_climb = _impl.c1_climb
