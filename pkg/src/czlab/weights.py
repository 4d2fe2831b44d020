"""Muckenhoupt weights: A_p / A_1 constants, BMO, Rubio de Francia, Coifman-Rochberg.

``scope`` selects the cube family for suprema: ``"dyadic"`` (default),
``"shifted"`` or ``"all"`` (every grid interval, fine up to N = 2^12).
The maximal operator used inside A_1 constants follows the same scope.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .dyadic import ROOT, DyadicIndex, GridFunction, level_averages, log2_exact
from .errors import ConfigError, DomainError, ShapeError
from .families import family, interval_averages
from .maximal import MultiArg, maximal_values

SCOPES = ("dyadic", "shifted", "all")
_MAXIMAL_MODE = {"dyadic": "dyadic", "shifted": "shifted", "all": "exact"}


@dataclass(frozen=True)
class Weight:
    values: GridFunction

    def __post_init__(self):
        if not np.all(self.values.samples > 0):
            raise DomainError("weights must be strictly positive at every cell")

    @property
    def samples(self) -> np.ndarray:
        return self.values.samples

    @classmethod
    def from_array(cls, a) -> Weight:
        return cls(GridFunction(a))


def _as_array(w) -> np.ndarray:
    if isinstance(w, Weight):
        return w.samples
    if isinstance(w, GridFunction):
        return w.samples
    return np.asarray(w, dtype=float)


def _check_scope(scope: str):
    if scope not in SCOPES:
        raise DomainError(f"unknown scope {scope!r}; expected one of {SCOPES}")


def _sup_over_cubes(a: np.ndarray, b: np.ndarray, p: float, scope: str) -> float:
    """sup over cubes of avg(a) * avg(b)^(p-1)."""
    if scope == "dyadic":
        return max(float(np.max(x * y ** (p - 1.0)))
                   for x, y in zip(level_averages(a), level_averages(b)))
    if scope == "all":
        # interval_ap builds b = a^(1-p') itself
        return float(kernels.interval_ap(np.ascontiguousarray(a), float(p)))
    starts, lengths = family(scope, a.size)
    return float(np.max(interval_averages(a, starts, lengths)
                        * interval_averages(b, starts, lengths) ** (p - 1.0)))


def ap_constant(w, p: float, scope: str = "dyadic") -> float:
    """[w]_{A_p} = sup_Q avg_Q(w) avg_Q(w^(1-p'))^(p-1)."""
    if not p > 1:
        raise DomainError(f"p must exceed 1 (use a1_constant for p = 1), got {p}")
    _check_scope(scope)
    a = _as_array(w)
    if np.any(a <= 0):
        raise DomainError("weights must be strictly positive")
    pp = p / (p - 1.0)
    return _sup_over_cubes(a, a ** (1.0 - pp), p, scope)


def a1_constant(w, scope: str = "dyadic") -> float:
    """Smallest c with Mw <= c w at every cell."""
    _check_scope(scope)
    a = _as_array(w)
    if np.any(a <= 0):
        raise DomainError("A_1 constant needs a strictly positive weight")
    return float(np.max(maximal_values(a, _MAXIMAL_MODE[scope]) / a))


@dataclass
class InequalityReport:
    lhs: float
    rhs: float
    ok: bool
    detail: dict = field(default_factory=dict)


def factorization_check(w1, w2, p: float, scope: str = "dyadic") -> InequalityReport:
    """[w1 w2^(1-p)]_{A_p} <= [w1]_{A_1} [w2]_{A_1}^(p-1)."""
    if not p > 1:
        raise DomainError(f"p must exceed 1, got {p}")
    a1, a2 = _as_array(w1), _as_array(w2)
    if a1.shape != a2.shape:
        raise ShapeError("weights must share a grid")
    lhs = ap_constant(a1 * a2 ** (1.0 - p), p, scope)
    rhs = a1_constant(a1, scope) * a1_constant(a2, scope) ** (p - 1.0)
    return InequalityReport(lhs, rhs, lhs <= rhs * (1 + 1e-12))


def bmo_norm(b, scope: str = "dyadic") -> float:
    """sup over cubes of the mean absolute deviation from the cube average."""
    _check_scope(scope)
    a = np.asarray(_as_array(b), dtype=float)
    n = a.size
    if scope == "all":
        return float(kernels.interval_bmo(np.ascontiguousarray(a)))
    if scope == "dyadic":
        L = log2_exact(n)
        best = 0.0
        for k in range(L + 1):
            blocks = a.reshape(1 << k, n >> k)
            dev = np.abs(blocks - blocks.mean(axis=1, keepdims=True)).mean(axis=1)
            best = max(best, float(dev.max()))
        return best
    starts, lengths = family(scope, n)
    best = 0.0
    for s in np.unique(lengths):
        st = starts[lengths == s]
        blocks = a[st[:, None] + np.arange(s)]
        dev = np.abs(blocks - blocks.mean(axis=1, keepdims=True)).mean(axis=1)
        best = max(best, float(dev.max()))
    return best


def lr_norm(a: np.ndarray, r: float) -> float:
    """L^r norm with respect to normalised cell measure."""
    return float(np.mean(np.abs(a) ** r) ** (1.0 / r))


def default_norm_bound(r: float) -> float:
    return 8.0 * r / (r - 1.0)


@dataclass
class RubioReport:
    terms: int
    norm_bound: float
    measured_norm: float
    majorizes: bool
    norm_ratio: float
    a1_excess: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.majorizes and self.norm_ratio <= 2.0 * (1 + 1e-12) and self.a1_excess <= self.tol


def rubio_de_francia(h: GridFunction, r: float, norm_bound: float | None = None,
                     tol: float = 1e-12, mode: str = "exact", max_terms: int = 500,
                     return_report: bool = False):
    """R h = sum_k M^k h / (2A)^k, truncated once the next term drops below ``tol``.

    ``A`` must dominate the operator norm of M on L^r; the ratios
    ||M^{k+1} h||_r / ||M^k h||_r met along the way are checked against it.
    """
    if not r > 1:
        raise DomainError(f"r must exceed 1, got {r}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    a = np.asarray(h.samples, dtype=float)
    if np.any(a < 0):
        raise DomainError("h must be non-negative")
    A = default_norm_bound(r) if norm_bound is None else float(norm_bound)
    total = a.copy()
    term = a.copy()
    cur = a.copy()
    measured = 0.0
    k = 0
    while k < max_terms:
        nxt = maximal_values(cur, mode)
        base = lr_norm(cur, r)
        if base > 0:
            measured = max(measured, lr_norm(nxt, r) / base)
        term = nxt / (2.0 * A) ** (k + 1)
        if term.max() < tol:
            break
        total += term
        cur = nxt
        k += 1
    if measured > A:
        raise DomainError(f"norm_bound {A} is below the measured L^{r} norm {measured:.4f} of M")
    R = h.like(total)
    if not return_report:
        return R
    hn = lr_norm(a, r)
    ratio = lr_norm(total, r) / hn if hn > 0 else 0.0
    excess = float(np.max(maximal_values(total, mode) - 2.0 * A * total))
    slack = 2.0 * A * tol * 2.0 + 1e-12 * max(1.0, float(total.max()))
    rep = RubioReport(k + 1, A, measured, bool(np.all(total >= a)), ratio, excess, slack)
    return R, rep


@dataclass
class CRReport:
    deltas: list
    a1: list
    normalized: list
    baseline: float
    ok: bool


def _cr_protocol(Mv: np.ndarray, deltas, baseline: float, m: int, scope: str) -> CRReport:
    deltas = sorted(set([float(baseline)] + [float(d) for d in np.atleast_1d(deltas)]))
    if np.any(Mv <= 0):
        raise DomainError("maximal function vanishes somewhere; measure must be nonzero")
    a1 = [a1_constant(Mv ** d, scope) for d in deltas]
    norm = [(1.0 - m * d) * c for d, c in zip(deltas, a1)]
    base = norm[deltas.index(float(baseline))]
    ok = all(v <= 2.0 * base * (1 + 1e-12) for v in norm)
    return CRReport(deltas, a1, norm, float(baseline), ok)


def coifman_rochberg_check(mu: GridFunction, delta=(0.5, 0.75, 0.9, 0.95),
                           scope: str = "dyadic", baseline: float = 0.5) -> CRReport:
    """(1 - delta) [(M mu)^delta]_{A_1} must stay within 2x of its baseline value."""
    ds = np.atleast_1d(delta)
    if np.any(ds <= 0) or np.any(ds >= 1) or not 0 < baseline < 1:
        raise DomainError("delta must lie in (0, 1)")
    a = np.abs(np.asarray(mu.samples, dtype=float))
    if not a.any():
        raise DomainError("mu must not vanish identically")
    return _cr_protocol(maximal_values(a, _MAXIMAL_MODE[scope]), ds, baseline, 1, scope)


def _multilinear_values(A: np.ndarray, scope: str) -> np.ndarray:
    if scope == "all":
        return kernels.multilinear_interval_maximal(np.ascontiguousarray(A))
    from .maximal import multilinear_maximal
    return multilinear_maximal(MultiArg(tuple(GridFunction(r) for r in A)), scope).samples


def multilinear_cr_check(muvec: MultiArg, delta=(0.2, 0.35, 0.45), scope: str = "dyadic",
                         baseline: float = 0.2) -> CRReport:
    """(1 - m delta) [(M_m mu)^delta]_{A_1} within 2x of its baseline value."""
    m = muvec.m
    ds = np.atleast_1d(delta)
    if np.any(ds <= 0) or np.any(ds >= 1.0 / m) or not 0 < baseline < 1.0 / m:
        raise DomainError(f"delta must lie in (0, 1/{m})")
    A = np.abs(muvec.stack())
    return _cr_protocol(_multilinear_values(A, scope), ds, baseline, m, scope)


def weighted_l1_norm(f: GridFunction, w, Q: DyadicIndex = ROOT) -> float:
    sl = Q.cells(f.resolution)
    return float(np.sum(np.abs(f.samples[sl]) * _as_array(w)[sl]) * f.cell_width)


def stein_llogl_check(w, Q: DyadicIndex = ROOT, mode: str = "exact") -> InequalityReport:
    """int_Q w log(e + w/w_Q) against int_Q M(w chi_Q)."""
    a = _as_array(w)
    if np.any(a <= 0):
        raise DomainError("weights must be strictly positive")
    L = log2_exact(a.size)
    sl = Q.cells(L)
    v = a[sl]
    h = 1.0 / a.size
    lhs = float(np.sum(v * np.log(math.e + v / v.mean())) * h)
    rhs = float(np.sum(maximal_values(v, mode)) * h)
    ratio = lhs / rhs
    return InequalityReport(lhs, rhs, bool(np.isfinite(ratio)), {"ratio": ratio})


def power_weight(a: float, L: int, x0: float = 0.5) -> Weight:
    return Weight(GridFunction.from_callable(lambda x: np.abs(x - x0) ** a, L))


def cr_weight(delta: float, seed: int, L: int) -> Weight:
    """(M g)^delta for heavy-tailed seeded noise g."""
    if not 0 < delta < 1:
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    rng = np.random.Generator(np.random.PCG64(seed))
    g = rng.exponential(size=1 << L) ** 4
    return Weight(GridFunction(maximal_values(g, "exact") ** delta))


def parse_weight(spec: str, L: int) -> Weight:
    """Weight corpus names: ``const``, ``power:a``, ``cr:delta:seed``."""
    parts = spec.split(":")
    try:
        if parts[0] == "const" and len(parts) == 1:
            return Weight(GridFunction.constant(1.0, L))
        if parts[0] == "power" and len(parts) == 2:
            return power_weight(float(parts[1]), L)
        if parts[0] == "cr" and len(parts) == 3:
            return cr_weight(float(parts[1]), int(parts[2]), L)
    except ValueError as e:
        raise ConfigError(f"bad weight spec {spec!r}: {e}") from None
    raise ConfigError(f"unknown weight spec {spec!r}")
