"""Hot-loop kernels with a compiled and a pure-numpy implementation.

The numba path is used unless the environment sets ``CZLAB_NUMBA=0`` (or
numba cannot be imported).  Both modules stay importable as ``kernels._np``
and ``kernels._nb`` so tests and benchmarks can compare them directly.
"""
import os

import numpy as np

from . import _np

_wanted = os.environ.get("CZLAB_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")
_impl = _np
if _wanted:
    try:
        from . import _nb as _impl  # noqa: F811
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _impl = _np

BACKEND = "numba" if _impl is not _np else "numpy"

KERNEL_NAMES = (
    "interval_maximal",
    "multilinear_interval_maximal",
    "spread_max",
    "family_oscillation",
    "family_sharp",
    "toeplitz_apply",
    "hilbert_maximal",
    "kernel_commutator",
    "interval_ap",
    "interval_bmo",
)

interval_maximal = _impl.interval_maximal
multilinear_interval_maximal = _impl.multilinear_interval_maximal
family_oscillation = _impl.family_oscillation
family_sharp = _impl.family_sharp
toeplitz_apply = _impl.toeplitz_apply
hilbert_maximal = _impl.hilbert_maximal
kernel_commutator = _impl.kernel_commutator
interval_ap = _impl.interval_ap
interval_bmo = _impl.interval_bmo


def spread_max(vals, starts, lengths, n):
    return _impl.spread_max(np.ascontiguousarray(vals, dtype=float),
                            np.ascontiguousarray(starts, dtype=np.int64),
                            np.ascontiguousarray(lengths, dtype=np.int64), int(n))
