"""Hot inner loops, with a compiled backend and a pure-Python fallback.

The compiled module is used when it imports; set ``SPECIRR_PURE_PYTHON=1``
to force the fallback.  ``BACKEND`` names the active implementation.
"""
from __future__ import annotations

import itertools
import os
from functools import lru_cache

import numpy as np

from . import _pykernels

if os.environ.get("SPECIRR_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

VISITED = _pykernels.VISITED
CONNECTED = _pykernels.CONNECTED
CANONICAL = _pykernels.CANONICAL

perron_power = _impl.perron_power
lambda_min_power = _impl.lambda_min_power
max_clique = _impl.max_clique


def available_backends():
    """Map of backend name to kernel module, for tests and benchmarks."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out


def pair_list(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in graph6 bit order: (0,1), (0,2), (1,2), (0,3), ..."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def pair_index(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


@lru_cache(maxsize=None)
def permutation_positions(n: int) -> np.ndarray:
    pairs = pair_list(n)
    perms = list(itertools.permutations(range(n)))
    pos = np.empty((len(perms), len(pairs)), dtype=np.int64)
    for p, perm in enumerate(perms):
        for k, (i, j) in enumerate(pairs):
            pos[p, k] = pair_index(perm[i], perm[j])
    return pos


@lru_cache(maxsize=None)
def pattern_flags(n: int) -> np.ndarray:
    """Cached flag table over all ``2**(n(n-1)/2)`` labeled graphs on n vertices."""
    flags = _impl.classify_patterns(n, permutation_positions(n), pair_list(n))
    flags.setflags(write=False)
    return flags
