"""Census kernel selection: compiled extension when available, numpy otherwise.

Set Z4LAT_PURE=1 to force the fallback (used by the benchmark and the
kernel-equivalence tests).
"""

import os

import numpy as np

from . import _census_py
from .codes import DEFAULT_BUDGET, Z4Code
from .errors import BudgetError

if os.environ.get("Z4LAT_PURE"):
    _impl = _census_py
    HAVE_COMPILED = False
else:
    try:
        from . import _census as _impl

        HAVE_COMPILED = True
    except ImportError:  # extension not built
        _impl = _census_py
        HAVE_COMPILED = False


def census(code: Z4Code, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """(n+1) x (n+1) counts of codewords by (#zeros, #twos)."""
    if code.size > budget:
        raise BudgetError(required=code.size, budget=budget)
    G = np.ascontiguousarray(code.generator % 4, dtype=np.uint8)
    return _impl.census(G, code.k1, code.k2)


def census_pure(code: Z4Code, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Fallback-kernel census regardless of which implementation is active."""
    if code.size > budget:
        raise BudgetError(required=code.size, budget=budget)
    G = np.ascontiguousarray(code.generator % 4, dtype=np.uint8)
    return _census_py.census(G, code.k1, code.k2)
