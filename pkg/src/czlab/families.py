"""Interval families as ``(starts, lengths)`` cell-index arrays.

``dyadic``  the dyadic subcubes of a block of ``n`` cells;
``shifted`` dyadic plus the one-third shifted lattice (two-lattice cover);
``all``     every grid-aligned interval, O(n^2) members.
"""
import numpy as np

from .errors import CZLabError
from .dyadic import log2_exact

MODES = ("dyadic", "shifted", "all")


def dyadic_family(n: int, offset: int = 0):
    L = log2_exact(n)
    starts, lengths = [], []
    for k in range(L + 1):
        s = n >> k
        starts.append(offset + s * np.arange(1 << k))
        lengths.append(np.full(1 << k, s))
    return np.concatenate(starts).astype(np.int64), np.concatenate(lengths).astype(np.int64)


def shifted_lattice(n: int, offset: int = 0):
    """Members of the lattice 2^-k([0,1) + j + (-1)^k/3) lying inside the block."""
    L = log2_exact(n)
    starts, lengths = [], []
    for k in range(1, L):
        s = n >> k
        shift = int(round(s / 3.0)) if k % 2 == 0 else s - int(round(s / 3.0))
        if shift in (0, s):
            continue
        st = np.arange(shift, n - s + 1, s)
        starts.append(offset + st)
        lengths.append(np.full(st.size, s))
    if not starts:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    return np.concatenate(starts).astype(np.int64), np.concatenate(lengths).astype(np.int64)


def shifted_family(n: int, offset: int = 0):
    a, b = dyadic_family(n, offset)
    c, d = shifted_lattice(n, offset)
    return np.concatenate((a, c)), np.concatenate((b, d))


def all_intervals(n: int, offset: int = 0):
    starts, lengths = [], []
    for s in range(1, n + 1):
        st = np.arange(n - s + 1)
        starts.append(offset + st)
        lengths.append(np.full(st.size, s))
    return np.concatenate(starts).astype(np.int64), np.concatenate(lengths).astype(np.int64)


def family(mode: str, n: int, offset: int = 0):
    if mode == "dyadic":
        return dyadic_family(n, offset)
    if mode == "shifted":
        return shifted_family(n, offset)
    if mode == "all":
        return all_intervals(n, offset)
    raise CZLabError(f"unknown interval family {mode!r}; expected one of {MODES}")


def interval_averages(values: np.ndarray, starts, lengths) -> np.ndarray:
    P = np.concatenate(([0.0], np.cumsum(values)))
    return (P[starts + lengths] - P[starts]) / lengths
