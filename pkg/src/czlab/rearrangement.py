"""Distributional quantities on a dyadic cube: f*, medians, ω_λ, and M#_{λ;Q0}."""
from __future__ import annotations

import numpy as np

from . import kernels
from .dyadic import ROOT, DyadicIndex, GridFunction, count_floor
from .errors import DomainError, InvalidCubeError
from .families import family


def _check_cube(f: GridFunction, Q: DyadicIndex):
    if Q.level > f.resolution:
        raise InvalidCubeError(f"cube level {Q.level} exceeds resolution {f.resolution}")


def _check_lambda(lam: float):
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {lam}")


def rearrangement_at(values: np.ndarray, s_cells: float) -> float:
    """f*(s) for equal-measure cells, with ``s`` expressed in cells."""
    a = np.sort(np.abs(values))[::-1]
    k = count_floor(s_cells)
    return float(a[k]) if k < a.size else 0.0


def decreasing_rearrangement(f: GridFunction, Q: DyadicIndex, s: float) -> float:
    """Right-continuous non-increasing rearrangement of ``|f|`` on ``Q`` at ``s``."""
    _check_cube(f, Q)
    mQ = Q.measure(f.base)
    if s < 0 or s > mQ * (1 + 1e-12):
        raise DomainError(f"s={s} outside [0, |Q|={mQ}]")
    vals = f.restrict(Q)
    return rearrangement_at(vals, s / mQ * vals.size)


def lower_median(values: np.ndarray) -> float:
    v = np.sort(values)
    return float(v[(v.size + 1) // 2 - 1])


def median(f: GridFunction, Q: DyadicIndex = ROOT) -> float:
    """Smallest sample value satisfying both half-measure conditions."""
    _check_cube(f, Q)
    return lower_median(f.restrict(Q))


def window_keep(n_cells, lam: float):
    """Cells a window must capture so at most ``lam * n`` cells lie outside."""
    n_cells = np.atleast_1d(np.asarray(n_cells, dtype=np.int64))
    return np.array([n - count_floor(lam * n) for n in n_cells], dtype=np.int64)


def oscillation_values(values: np.ndarray, lam: float) -> float:
    """ω_λ of equal-measure samples via the sliding window over sorted values."""
    _check_lambda(lam)
    n = values.size
    m = int(window_keep(n, lam)[0])
    v = np.sort(values)
    return 0.5 * float((v[m - 1:] - v[:n - m + 1]).min())


def oscillation(f: GridFunction, Q: DyadicIndex, lam: float) -> float:
    """Mean local oscillation inf_c ((f - c)χ_Q)*(λ|Q|)."""
    _check_cube(f, Q)
    return oscillation_values(f.restrict(Q), lam)


def family_oscillation(values: np.ndarray, starts, lengths, lam: float) -> np.ndarray:
    _check_lambda(lam)
    keep = np.empty(lengths.size, dtype=np.int64)
    for s in np.unique(lengths):
        keep[lengths == s] = window_keep(s, lam)[0]
    return kernels.family_oscillation(np.ascontiguousarray(values, dtype=float),
                                      starts, lengths, keep)


def local_sharp_maximal(f: GridFunction, Q0: DyadicIndex = ROOT, lam: float = 0.125,
                        mode: str = "dyadic") -> GridFunction:
    """sup of ω_λ(f;Q) over cubes Q ⊆ Q0 containing each cell.

    ``mode`` is ``"dyadic"`` (default), ``"shifted"`` (adds the one-third
    shifted lattice) or ``"all"`` (every grid interval; small grids only).
    Cells outside ``Q0`` are set to 0.
    """
    _check_cube(f, Q0)
    _check_lambda(lam)
    sl = Q0.cells(f.resolution)
    n = sl.stop - sl.start
    starts, lengths = family(mode, n, sl.start)
    osc = family_oscillation(f.samples, starts, lengths, lam)
    out = np.zeros(f.n)
    out[sl] = kernels.spread_max(osc, starts, lengths, f.n)[sl]
    return f.like(out)
