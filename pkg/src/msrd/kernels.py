"""Hot-loop kernels, compiled when available.

The Cython extension is preferred; set ``MSRD_PURE_PYTHON=1`` to force the
numpy fallback.  Both backends are exercised by the test suite and compared
in ``benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import os

import numpy as np

from msrd import _fallback
from msrd.gf import FieldTables

try:
    if os.environ.get("MSRD_PURE_PYTHON"):
        raise ImportError("pure-python backend requested")
    from msrd import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_impl = _compiled if _compiled is not None else _fallback


def rank(mat, tables: FieldTables, impl=None) -> int:
    impl = impl or _impl
    return int(impl.rank(np.asarray(mat), tables.add, tables.mul, tables.neg, tables.inv))


def codeword_weights(basis, layout, tables: FieldTables, impl=None) -> np.ndarray:
    impl = impl or _impl
    return impl.codeword_weights(basis, layout, tables.q, tables.add, tables.mul, tables.neg, tables.inv)


def backends() -> dict:
    """Available implementations by name."""
    out = {"python": _fallback}
    if _compiled is not None:
        out["cython"] = _compiled
    return out
