"""Hardy–Littlewood type maximal operators on the grid.

"All cubes" means all grid-aligned intervals inside the base cube: for
piecewise-constant data the supremum over real endpoints is attained there.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .dyadic import ROOT, DyadicIndex, GridFunction, level_averages, spread_levels
from .errors import DomainError, ShapeError
from .families import family, interval_averages

SHARP_TOL = 1e-10


@dataclass(frozen=True)
class VectorGridFunction:
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ShapeError("need at least one component")
        if any(not c.same_grid(comps[0]) for c in comps[1:]):
            raise ShapeError("components must share base cube and resolution")
        object.__setattr__(self, "components", comps)

    @property
    def grid(self) -> GridFunction:
        return self.components[0]

    def stack(self) -> np.ndarray:
        return np.stack([c.samples for c in self.components])

    def lq_norm(self, q: float) -> GridFunction:
        """|f(x)|_q per cell."""
        return self.grid.like((np.abs(self.stack()) ** q).sum(axis=0) ** (1.0 / q))


class MultiArg(VectorGridFunction):
    """Arguments (f_1, ..., f_m) of a multilinear operator."""

    @property
    def m(self) -> int:
        return len(self.components)


def _family_maximal(values: np.ndarray, mode: str, n_total: int, offset: int, n: int):
    starts, lengths = family(mode, n, offset)
    avgs = interval_averages(values, starts, lengths)
    return kernels.spread_max(avgs, starts, lengths, n_total)


def maximal_values(a: np.ndarray, mode: str = "exact") -> np.ndarray:
    """Maximal function of non-negative samples ``a`` on the whole block."""
    a = np.ascontiguousarray(a, dtype=float)
    if mode == "exact":
        return kernels.interval_maximal(a)
    if mode == "dyadic":
        return spread_levels(level_averages(a), a.size)
    if mode == "shifted":
        return _family_maximal(a, "shifted", a.size, 0, a.size)
    if mode == "all":
        return _family_maximal(a, "all", a.size, 0, a.size)
    raise DomainError(f"unknown maximal mode {mode!r}")


def hl_maximal(f: GridFunction, mode: str = "exact") -> GridFunction:
    """Uncentred maximal function of ``|f|``.

    ``exact`` sweeps every grid interval in O(N^2); ``shifted`` is the
    O(N log N) two-lattice fast path; ``dyadic`` uses dyadic cubes only.
    """
    return f.like(maximal_values(np.abs(f.samples), mode))


def dyadic_local_maximal(f: GridFunction, Q0: DyadicIndex = ROOT) -> GridFunction:
    """M^{Q0}: sup of averages of |f| over dyadic P ⊆ Q0 containing x; zero off Q0."""
    sl = Q0.cells(f.resolution)
    out = np.zeros(f.n)
    out[sl] = spread_levels(level_averages(np.abs(f.samples[sl])), sl.stop - sl.start)
    return f.like(out)


def _check_delta(delta: float):
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")


def m_delta(f: GridFunction, delta: float, dyadic: bool = False, mode: str | None = None) -> GridFunction:
    """(M |f|^δ)^{1/δ}."""
    _check_delta(delta)
    mode = mode or ("dyadic" if dyadic else "exact")
    a = np.abs(f.samples) ** delta
    return f.like(maximal_values(a, mode) ** (1.0 / delta))


def sharp_maximal(f: GridFunction, delta: float = 1.0, dyadic: bool = True,
                  local_root: DyadicIndex | None = None, mode: str | None = None) -> GridFunction:
    """M#_δ f(x) = sup_{Q∋x} inf_c ((1/|Q|)∫_Q |f - c|^δ)^{1/δ}.

    The admissible cubes are the dyadic subcubes of ``local_root`` (root by
    default) when ``dyadic``; otherwise ``mode`` picks ``"shifted"`` or
    ``"all"`` (every interval, small grids).  For δ ≤ 1 the inner infimum is
    taken exactly over sample values (the objective is concave between
    them); for δ > 1 by golden-section search on [min f, max f].
    """
    _check_delta(delta)
    root = local_root or ROOT
    sl = root.cells(f.resolution)
    n = sl.stop - sl.start
    if mode is None:
        mode = "dyadic" if dyadic else "shifted"
    starts, lengths = family(mode, n, sl.start)
    vals = kernels.family_sharp(np.ascontiguousarray(f.samples), starts, lengths,
                                float(delta), SHARP_TOL)
    out = np.zeros(f.n)
    out[sl] = kernels.spread_max(vals, starts, lengths, f.n)[sl]
    return f.like(out)


def iterated_maximal(f: GridFunction, k: int, mode: str = "exact") -> GridFunction:
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    a = np.abs(f.samples)
    for _ in range(k):
        a = maximal_values(a, mode)
    return f.like(a)


def _check_q(q: float):
    if not q > 1:
        raise DomainError(f"q must exceed 1, got {q}")


def vector_maximal(fv: VectorGridFunction, q: float, mode: str = "exact") -> GridFunction:
    """(Σ_j (M f_j)^q)^{1/q}."""
    _check_q(q)
    Ms = np.stack([maximal_values(np.abs(c.samples), mode) for c in fv.components])
    return fv.grid.like((Ms ** q).sum(axis=0) ** (1.0 / q))


def multilinear_maximal(fvec: MultiArg, mode: str = "exact") -> GridFunction:
    """sup over Q∋x of Π_i avg_Q |f_i|."""
    A = np.abs(fvec.stack())
    if mode == "exact":
        return fvec.grid.like(kernels.multilinear_interval_maximal(np.ascontiguousarray(A)))
    n = A.shape[1]
    if mode == "dyadic":
        levels = [np.prod(np.stack(z), axis=0) for z in zip(*(level_averages(a) for a in A))]
        return fvec.grid.like(spread_levels(levels, n))
    starts, lengths = family(mode, n)
    prod = np.prod([interval_averages(a, starts, lengths) for a in A], axis=0)
    return fvec.grid.like(kernels.spread_max(prod, starts, lengths, n))
