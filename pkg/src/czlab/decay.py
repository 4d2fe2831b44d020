"""Level-set decay measurements and the weighted/pointwise checks that back them."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import corpus
from .dyadic import ROOT, DyadicIndex, GridFunction
from .errors import DomainError, InsufficientDataError, ShapeError
from .maximal import (MultiArg, VectorGridFunction, hl_maximal, iterated_maximal, m_delta,
                      maximal_values, multilinear_maximal, sharp_maximal, vector_maximal)
from .rearrangement import local_sharp_maximal, lower_median
from .singular import (bilinear_model, commutator, continuous_square, dyadic_square,
                       higher_commutator, maximal_singular, truncated_transform, vector_cz)
from .weights import a1_constant, ap_constant, bmo_norm

MIN_POINTS = 8
GRID_POINTS = 64


@dataclass
class DecayCurve:
    t_values: np.ndarray
    phi_values: np.ndarray
    escaped: float = 0.0

    def __post_init__(self):
        self.t_values = np.asarray(self.t_values, dtype=float)
        self.phi_values = np.asarray(self.phi_values, dtype=float)
        if self.t_values.shape != self.phi_values.shape or self.t_values.size < 2:
            raise DomainError("curve needs matching t and phi arrays of length >= 2")
        if np.any(np.diff(self.t_values) <= 0) or np.any(self.t_values <= 0):
            raise DomainError("t values must be positive and increasing")


@dataclass
class FitReport:
    beta: float
    alpha_hat: float
    intercept: float
    r_squared: float
    points_used: int


@dataclass
class GoodLambdaCurve:
    gamma_values: np.ndarray
    measure_fractions: np.ndarray
    fit: FitReport | None = None


def cell_ratios(t1: np.ndarray, t2: np.ndarray):
    """|t1|/|t2| per cell plus the fraction of cells with t2 = 0 and t1 != 0."""
    a, b = np.abs(t1), np.abs(t2)
    escaped = (b == 0) & (a != 0)
    r = np.zeros(a.size)
    ok = b > 0
    r[ok] = a[ok] / b[ok]
    return r[~escaped], float(escaped.mean())


def _phi(sorted_r: np.ndarray, t: np.ndarray, n_total: int) -> np.ndarray:
    return (sorted_r.size - np.searchsorted(sorted_r, t, side="right")) / n_total


def level_set_ratio(t1f: GridFunction, t2f: GridFunction, Q: DyadicIndex, t_grid) -> DecayCurve:
    """phi(t) = |{x in Q : |T1 f| > t |T2 f|}| / |Q|; cells with T2 f = 0 are excluded."""
    sl = Q.cells(t1f.resolution)
    r, escaped = cell_ratios(t1f.samples[sl], t2f.samples[sl])
    t = np.asarray(t_grid, dtype=float)
    return DecayCurve(t, _phi(np.sort(r), t, sl.stop - sl.start), escaped)


def phi_floor(n: int) -> float:
    return max(10.0 / n, 1e-4)


def make_t_grid(ratios: np.ndarray, phi_min: float, points: int = GRID_POINTS,
                phi_start: float = 0.9) -> np.ndarray:
    """Geometric grid from the phi = phi_start quantile to where phi reaches phi_min."""
    desc = np.sort(ratios)[::-1]
    n = desc.size
    t_hi = desc[min(n - 1, int(math.floor(phi_min * n)))]
    t_lo = desc[min(n - 1, int(math.floor(phi_start * n)))]
    pos = desc[desc > 0]
    if pos.size == 0:
        return np.geomspace(1.0, 2.0, points)
    if t_lo <= 0:
        t_lo = pos.min()
    if t_hi <= t_lo:
        t_hi = t_lo * 2.0
    return np.geomspace(t_lo, t_hi, points)


def fit_decay(curve: DecayCurve, beta: float, phi_min: float = 1e-4, phi_max: float = 0.5) -> FitReport:
    """Least squares of log phi against t^(1/beta) on phi_min <= phi <= phi_max."""
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    if not 0 < phi_min < phi_max <= 1:
        raise DomainError("need 0 < phi_min < phi_max <= 1")
    sel = (curve.phi_values >= phi_min) & (curve.phi_values <= phi_max)
    k = int(sel.sum())
    if k < MIN_POINTS:
        raise InsufficientDataError(f"only {k} points inside the fit window")
    x = curve.t_values[sel] ** (1.0 / beta)
    y = np.log(curve.phi_values[sel])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 0.0
    return FitReport(float(beta), float(-slope), float(intercept), max(0.0, r2), k)


# ---------------------------------------------------------------------------
# operator pairs

PAIRS = ("feffstein", "hilbert", "multilinear-model", "veccz", "vecmax",
         "square", "gstar", "commutator", "commutator-k")
INFORMATIONAL = ("multilinear-model",)


def candidate_betas(pair: str, q: float = 2.0, k: int = 2) -> tuple:
    """{1/2, 1, 2}, plus 1/q for the vector pairs and 3..k+1 for commutator-k."""
    _check_pair(pair)
    betas = {0.5, 1.0, 2.0}
    if pair in ("veccz", "vecmax"):
        betas.add(1.0 / q)
    if pair == "commutator-k":
        betas.update(float(j) for j in range(3, k + 2))
    return tuple(sorted(betas))


def predicted_beta(pair: str, q: float = 2.0, k: int = 2) -> float:
    _check_pair(pair)
    return {"vecmax": 1.0 / q, "square": 0.5, "gstar": 0.5, "commutator": 2.0,
            "commutator-k": float(k + 1)}.get(pair, 1.0)


def _check_pair(pair: str):
    if pair not in PAIRS:
        raise DomainError(f"unknown pair {pair!r}; expected one of {PAIRS}")


def pair_values(pair: str, seed: int, L: int, q: float = 2.0, k: int = 2, mu: float = 4.0):
    """(T1 f, T2 f) sample arrays on the root cube for the seeded corpus member."""
    _check_pair(pair)
    if pair == "feffstein":
        f = corpus.symmetric_log(seed, L)
        return f.samples - lower_median(f.samples), local_sharp_maximal(f, ROOT, 0.125).samples
    if pair == "hilbert":
        f = corpus.lacunary_chain(seed, L, magnitudes=True)
        return maximal_singular(f).samples, hl_maximal(f).samples
    if pair == "multilinear-model":
        fv = MultiArg(corpus.chain_vector(seed, L, 2).components)
        return bilinear_model(fv).samples, multilinear_maximal(fv).samples
    if pair == "veccz":
        fv = corpus.chain_vector(seed, L)
        return vector_cz(fv, q).samples, hl_maximal(fv.lq_norm(q)).samples
    if pair == "vecmax":
        fv = corpus.scale_annuli(seed, L)
        return vector_maximal(fv, q).samples, hl_maximal(fv.lq_norm(q)).samples
    if pair in ("square", "gstar"):
        f = corpus.lacunary_chain(seed, L)
        t1 = dyadic_square(f) if pair == "square" else continuous_square(f, mu)
        return t1.samples, hl_maximal(f).samples
    b = corpus.log_symbol(L)
    f = corpus.odd_profile(seed, L)
    if pair == "commutator":
        return commutator(b, f).samples, iterated_maximal(f, 2).samples
    if k < 1:
        raise DomainError(f"commutator-k needs k >= 1, got {k}")
    return higher_commutator(b, f, k).samples, iterated_maximal(f, k + 1).samples


def control_a1(t2: np.ndarray, q: float = 3.0, scope: str = "all") -> float:
    """[(T2 f)^(1/(q-1))]_{A_1}^(q-1): the A_1 hypothesis on the control operator."""
    if not q > 2:
        raise DomainError(f"q must exceed 2 so that 1/(q-1) < 1, got {q}")
    a = np.abs(np.asarray(t2, dtype=float))
    if np.any(a <= 0):
        return math.inf
    return a1_constant(a ** (1.0 / (q - 1.0)), scope) ** (q - 1.0)


@dataclass
class ExperimentResult:
    pair: str
    seed: int
    L: int
    curve: DecayCurve
    fits: dict
    best_beta: float | None
    predicted_beta: float
    control_a1: float
    params: dict = field(default_factory=dict)

    @property
    def informational(self) -> bool:
        return self.pair in INFORMATIONAL

    def summary(self) -> dict:
        return {"pair": self.pair, "seed": self.seed, "L": self.L, "params": self.params,
                "fits": {f"{b:.6g}": None if r is None else
                         {"alpha_hat": r.alpha_hat, "r_squared": r.r_squared, "points": r.points_used}
                         for b, r in self.fits.items()},
                "best_beta": self.best_beta, "predicted_beta": self.predicted_beta,
                "escaped": self.curve.escaped, "control_a1": self.control_a1,
                "informational": self.informational}


def curve_from_values(t1: np.ndarray, t2: np.ndarray, t_grid=None, phi_min: float | None = None):
    n = t1.size
    r, escaped = cell_ratios(t1, t2)
    pm = phi_floor(n) if phi_min is None else phi_min
    if t_grid is None or np.isscalar(t_grid):
        pts = GRID_POINTS if t_grid is None else int(t_grid)
        t = make_t_grid(r, pm, pts)
    else:
        t = np.asarray(t_grid, dtype=float)
    return DecayCurve(t, _phi(np.sort(r), t, n), escaped)


def run_experiment(pair: str, seed: int, L: int, t_grid=None, q: float = 2.0, k: int = 2,
                   mu: float = 4.0, control_q: float = 3.0) -> ExperimentResult:
    """Level-set curve of one pair and a fit for every candidate beta.

    ``t_grid`` is None (64 automatic points), a point count, or explicit values.
    """
    t1, t2 = pair_values(pair, seed, L, q, k, mu)
    curve = curve_from_values(t1, t2, t_grid)
    pm = phi_floor(t1.size)
    fits = {}
    for b in candidate_betas(pair, q, k):
        try:
            fits[b] = fit_decay(curve, b, pm, 0.5)
        except InsufficientDataError:
            fits[b] = None
    ok = {b: r for b, r in fits.items() if r is not None}
    best = max(ok, key=lambda b: ok[b].r_squared) if ok else None
    params = {"q": q, "k": k} if pair in ("veccz", "vecmax", "commutator-k") else {}
    if pair == "gstar":
        params = {"mu": mu}
    return ExperimentResult(pair, int(seed), int(L), curve, fits, best,
                            predicted_beta(pair, q, k), control_a1(t2, control_q), params)


# ---------------------------------------------------------------------------
# good lambda

def good_lambda_fractions(tstar: np.ndarray, mf: np.ndarray, lambda_level: float,
                          gamma_grid) -> np.ndarray:
    """|{T*f > 2 lambda, Mf <= gamma lambda}| / |Q| for each gamma."""
    g = np.sort(mf[tstar > 2.0 * lambda_level] / lambda_level)
    return np.searchsorted(g, np.asarray(gamma_grid, dtype=float), side="right") / tstar.size


def good_lambda_curve(f: GridFunction, lambda_level: float, gamma_grid=None,
                      Q: DyadicIndex = ROOT, points: int = GRID_POINTS) -> GoodLambdaCurve:
    """Measure of the good-lambda set on Q and a fit of its log against 1/gamma.

    The default grid is geometric between the smallest and largest gamma at
    which a cell of the T*-superlevel set enters.  The fit keeps fractions
    between phi_floor(N) and half of the largest fraction on the grid; it is
    stored with ``beta = -1`` since the regressor is gamma^(-1).
    """
    if not lambda_level > 0:
        raise DomainError(f"lambda must be positive, got {lambda_level}")
    sl = Q.cells(f.resolution)
    ts = maximal_singular(f).samples[sl]
    mf = hl_maximal(f).samples[sl]
    if gamma_grid is None:
        g = mf[ts > 2.0 * lambda_level] / lambda_level
        if g.size == 0 or g.max() <= 0:
            gamma_grid = np.geomspace(1.0, 2.0, points)
        else:
            lo = max(g.min(), g.max() * 1e-6)
            gamma_grid = np.geomspace(lo, max(g.max(), lo * 2.0), points)
    gam = np.asarray(gamma_grid, dtype=float)
    if np.any(gam <= 0) or np.any(np.diff(gam) <= 0):
        raise DomainError("gamma grid must be positive and increasing")
    fr = good_lambda_fractions(ts, mf, lambda_level, gam)
    sel = (fr >= phi_floor(ts.size)) & (fr <= 0.5 * fr.max())
    fit = None
    if sel.sum() >= MIN_POINTS:
        x, y = 1.0 / gam[sel], np.log(fr[sel])
        slope, icpt = np.polyfit(x, y, 1)
        resid = y - (slope * x + icpt)
        ss = float(np.sum((y - y.mean()) ** 2))
        r2 = 1.0 - float(resid @ resid) / ss if ss > 0 else 0.0
        fit = FitReport(-1.0, float(-slope), float(icpt), max(0.0, r2), int(sel.sum()))
    return GoodLambdaCurve(gam, fr, fit)


# ---------------------------------------------------------------------------
# local weighted Coifman-Fefferman checks

@dataclass
class CFReport:
    operator: str
    q: float
    ap: float
    lhs: float
    rhs: float
    normalized: float

    @property
    def finite(self) -> bool:
        return math.isfinite(self.normalized) and math.isfinite(self.ap)


def _wl1(a: np.ndarray, w: np.ndarray, sl: slice) -> float:
    return float(np.sum(np.abs(a[sl]) * w[sl])) / a.size


def _weight_array(w) -> np.ndarray:
    return np.asarray(getattr(w, "samples", w), dtype=float)


def _ratio(lhs: float, rhs: float) -> float:
    if lhs == 0:
        return 0.0
    return lhs / rhs if rhs > 0 else math.inf


CF_OPERATORS = ("tstar", "t", "veccz", "multilinear-model", "square")


def cf_local_check(operator: str, f, w, q: float = 2.0, Q: DyadicIndex = ROOT,
                   scope: str = "all", ap: float | None = None) -> CFReport:
    """||T1 f||_{L1(w,Q)} / (2^q [w]_{A_q} ||T2 f||_{L1(w,Q)}).

    ``square`` compares (S_d f)^2 with (M f)^2.  ``f`` is a VectorGridFunction
    for ``veccz`` and a MultiArg for ``multilinear-model``.  A precomputed
    ``ap`` skips the A_q computation in weight sweeps.
    """
    if operator not in CF_OPERATORS:
        raise DomainError(f"unknown operator {operator!r}; expected one of {CF_OPERATORS}")
    if operator == "veccz" and not isinstance(f, VectorGridFunction):
        raise ShapeError("veccz needs a VectorGridFunction")
    if operator == "multilinear-model" and not isinstance(f, MultiArg):
        raise ShapeError("multilinear-model needs a MultiArg")
    wa = _weight_array(w)
    g = f.grid if isinstance(f, VectorGridFunction) else f
    sl = Q.cells(g.resolution)
    ap = ap_constant(wa, q, scope) if ap is None else float(ap)
    if operator == "tstar":
        t1, t2 = maximal_singular(f).samples, hl_maximal(f).samples
    elif operator == "t":
        t1, t2 = truncated_transform(f).samples, hl_maximal(f).samples
    elif operator == "veccz":
        t1, t2 = vector_cz(f, q).samples, hl_maximal(f.lq_norm(q)).samples
    elif operator == "multilinear-model":
        t1, t2 = bilinear_model(f).samples, multilinear_maximal(f).samples
    else:
        t1, t2 = dyadic_square(f).samples ** 2, hl_maximal(f).samples ** 2
    lhs, rhs = _wl1(t1, wa, sl), _wl1(t2, wa, sl)
    return CFReport(operator, q, ap, lhs, rhs, _ratio(lhs, 2.0 ** q * ap * rhs))


def cf_commutator_check(b: GridFunction, f: GridFunction, w, q: float = 2.0, k: int = 1,
                        Q: DyadicIndex = ROOT, scope: str = "all", ap: float | None = None,
                        b_norm: float | None = None) -> CFReport:
    """||T^k_b f|| / (||b||_BMO^k 2^((k+1)q) [w]^(k+1) ||M^(k+1) f||), norms in L1(w,Q).

    ``b_norm`` defaults to the dyadic BMO norm of ``b``.
    """
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    wa = _weight_array(w)
    sl = Q.cells(f.resolution)
    ap = ap_constant(wa, q, scope) if ap is None else float(ap)
    if k == 0:
        t1 = truncated_transform(f).samples
    elif k == 1:
        t1 = commutator(b, f).samples
    else:
        t1 = higher_commutator(b, f, k).samples
    lhs = _wl1(t1, wa, sl)
    rhs = _wl1(iterated_maximal(f, k + 1).samples, wa, sl)
    if b_norm is None:
        b_norm = bmo_norm(b, "dyadic")
    norm = float(b_norm) ** k
    return CFReport(f"commutator-{k}", q, ap, lhs, rhs,
                    _ratio(lhs, norm * 2.0 ** ((k + 1) * q) * ap ** (k + 1) * rhs))


def previo_check(f: GridFunction, w, q: float = 2.0, delta: float = 0.5,
                 Q: DyadicIndex = ROOT, scope: str = "all", ap: float | None = None) -> CFReport:
    """||f - m_f(Q)||_{L1(w,Q)} / (2^q [w]_{A_q} ||M#d_delta f||_{L1(w,Q)})."""
    if not 0 < delta < 1:
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    wa = _weight_array(w)
    sl = Q.cells(f.resolution)
    ap = ap_constant(wa, q, scope) if ap is None else float(ap)
    dev = np.zeros(f.n)
    dev[sl] = f.samples[sl] - lower_median(f.samples[sl])
    lhs = _wl1(dev, wa, sl)
    rhs = _wl1(sharp_maximal(f, delta, dyadic=True, local_root=Q).samples, wa, sl)
    return CFReport("previo", q, ap, lhs, rhs, _ratio(lhs, 2.0 ** q * ap * rhs))


# ---------------------------------------------------------------------------
# Kolmogorov and weak L log L

@dataclass
class KolmogorovReport:
    lhs: float
    weak_norm: float
    constant: float

    @property
    def ok(self) -> bool:
        return self.lhs <= self.constant * self.weak_norm * (1 + 1e-12)


def weak_norm(values: np.ndarray, p: float) -> float:
    """sup_t t |{|g| > t}|^(1/p) for normalised cell measure, exact from sorted samples."""
    a = np.sort(np.abs(values))[::-1]
    frac = np.arange(1, a.size + 1) / a.size
    return float(np.max(a * frac ** (1.0 / p)))


def kolmogorov_check(g: GridFunction, q: float, p: float, Q: DyadicIndex = ROOT) -> KolmogorovReport:
    if not 0 < q < p:
        raise DomainError(f"need 0 < q < p, got q={q}, p={p}")
    v = np.abs(g.restrict(Q))
    lhs = float(np.mean(v ** q) ** (1.0 / q))
    return KolmogorovReport(lhs, weak_norm(v, p), (p / (p - q)) ** (1.0 / q))


@dataclass
class LLogLReport:
    lambdas: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    ratios: np.ndarray

    @property
    def sup_ratio(self) -> float:
        return float(self.ratios.max()) if self.ratios.size else 0.0


def llogl(t: np.ndarray) -> np.ndarray:
    return t * (1.0 + np.log(np.maximum(t, 1.0)))


def weak_llogl_check(b: GridFunction, f: GridFunction, lambda_grid=None,
                     Q: DyadicIndex = ROOT, points: int = 32) -> LLogLReport:
    """|{x in Q : |[b,T]f| > lambda}| against int_Q phi(|f|/lambda), phi(t) = t(1 + log+ t).

    The default grid runs geometrically between the 1% and 99% quantiles of
    |[b,T]f| on Q.
    """
    sl = Q.cells(f.resolution)
    c = np.abs(commutator(b, f).samples[sl])
    fa = np.abs(f.samples[sl])
    if lambda_grid is None:
        lo, hi = np.quantile(c, [0.01, 0.99]) if c.any() else (1.0, 2.0)
        lo = max(lo, hi * 1e-6) if hi > 0 else 1.0
        lambda_grid = np.geomspace(lo, max(hi, lo * 2.0), points)
    lam = np.asarray(lambda_grid, dtype=float)
    if np.any(lam <= 0):
        raise DomainError("lambda values must be positive")
    h = 1.0 / f.n
    lhs = np.array([np.count_nonzero(c > x) * h for x in lam])
    rhs = np.array([float(np.sum(llogl(fa / x))) * h for x in lam])
    ratios = np.array([_ratio(a, r) for a, r in zip(lhs, rhs)])
    return LLogLReport(lam, lhs, rhs, ratios)


# ---------------------------------------------------------------------------
# pointwise domination

DOMINATION_IDS = ("39", "310", "311", "312", "313", "314", "315", "316", "317")


def domination_values(ident: str, seed: int, L: int):
    """Per-cell (LHS, RHS) of one pointwise inequality on the resolution-free corpus."""
    if ident not in DOMINATION_IDS:
        raise DomainError(f"unknown inequality id {ident!r}; expected one of {DOMINATION_IDS}")
    f = corpus.resolution_free(seed, L)
    if ident == "39":
        return local_sharp_maximal(f, ROOT, 0.125).samples, sharp_maximal(f, 0.5).samples
    if ident == "310":
        return (sharp_maximal(m_delta(f, 0.5, dyadic=True), 0.25).samples,
                sharp_maximal(f, 0.5).samples)
    if ident == "311":
        return sharp_maximal(maximal_singular(f), 0.5, dyadic=False).samples, hl_maximal(f).samples
    if ident in ("312", "317"):
        fv = VectorGridFunction((f, corpus.resolution_free(seed + 1, L), corpus.resolution_free(seed + 2, L)))
        if ident == "312":
            return (sharp_maximal(vector_cz(fv, 2.0), 0.5, dyadic=False).samples,
                    hl_maximal(fv.lq_norm(2.0)).samples)
        mq = vector_maximal(fv, 2.0, "dyadic")
        return (local_sharp_maximal(mq.like(mq.samples ** 2), ROOT, 0.25).samples,
                hl_maximal(fv.lq_norm(2.0), "dyadic").samples ** 2)
    if ident == "313":
        fv = MultiArg((f, corpus.smooth_bump(seed, L)))
        return sharp_maximal(bilinear_model(fv), 0.25, dyadic=False).samples, multilinear_maximal(fv).samples
    if ident == "314":
        b = corpus.log_symbol(L)
        nb = bmo_norm(b)
        rhs = nb * m_delta(truncated_transform(f), 0.5, dyadic=True).samples + nb * iterated_maximal(f, 2).samples
        return sharp_maximal(commutator(b, f), 0.25).samples, rhs
    if ident == "315":
        s = dyadic_square(f)
        return local_sharp_maximal(s.like(s.samples ** 2), ROOT, 0.25).samples, hl_maximal(f).samples ** 2
    g = continuous_square(f)
    return (local_sharp_maximal(g.like(g.samples ** 2), ROOT, 0.25, mode="shifted").samples,
            hl_maximal(f).samples ** 2)


def sup_ratio(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """max over cells of lhs / rhs; cells with rhs = 0 count only if lhs != 0 (then inf)."""
    lhs, rhs = np.abs(lhs), np.abs(rhs)
    tiny = 1e-13 * max(1.0, float(rhs.max(initial=0.0)))
    bad = (rhs <= tiny) & (lhs > tiny)
    if bad.any():
        return math.inf
    ok = rhs > tiny
    return float((lhs[ok] / rhs[ok]).max()) if ok.any() else 0.0


@dataclass
class DominationReport:
    ident: str
    seeds: list
    L_list: list
    sups: dict

    def spread(self, seed: int) -> float:
        v = [self.sups[(seed, L)] for L in self.L_list]
        if not all(math.isfinite(x) for x in v):
            return math.inf
        lo, hi = min(v), max(v)
        if hi == 0:
            return 1.0
        return hi / lo if lo > 0 else math.inf

    @property
    def worst_spread(self) -> float:
        return max(self.spread(s) for s in self.seeds)

    @property
    def ok(self) -> bool:
        return self.worst_spread < 2.0

    def summary(self) -> dict:
        return {"id": self.ident, "L": self.L_list, "worst_spread": self.worst_spread,
                "sups": {f"{s}_L{L}": v for (s, L), v in sorted(self.sups.items())}}


def pointwise_domination_report(ident: str, seeds, L_list=(8, 10, 12)) -> DominationReport:
    seeds, L_list = [int(s) for s in seeds], [int(L) for L in L_list]
    sups = {(s, L): sup_ratio(*domination_values(ident, s, L)) for s in seeds for L in L_list}
    return DominationReport(ident, seeds, L_list, sups)


# ---------------------------------------------------------------------------
# singularity ordering

@dataclass
class OrderingReport:
    t: np.ndarray
    phi_commutator: np.ndarray
    phi_hilbert: np.ndarray

    @property
    def ok(self) -> bool:
        return self.t.size == 3 and bool(np.all(self.phi_commutator >= self.phi_hilbert))


def ordering_check(seed: int, L: int, points: int = GRID_POINTS) -> OrderingReport:
    """phi of [b,T]f / M^2 f against phi of T*f / Mf for the same odd-profile f.

    Both curves are read on one geometric grid over the overlap of their
    automatic t ranges; the three largest t with both phi >= phi_floor(N)
    are compared.
    """
    f = corpus.odd_profile(seed, L)
    b = corpus.log_symbol(L)
    n = f.n
    pm = phi_floor(n)
    m1 = hl_maximal(f).samples
    rc, _ = cell_ratios(commutator(b, f).samples, maximal_values(m1, "exact"))
    rh, _ = cell_ratios(maximal_singular(f).samples, m1)
    tc, th = make_t_grid(rc, pm, points), make_t_grid(rh, pm, points)
    lo, hi = max(tc[0], th[0]), min(tc[-1], th[-1])
    if hi <= lo:
        empty = np.zeros(0)
        return OrderingReport(empty, empty, empty)
    t = np.geomspace(lo, hi, points)
    pc, ph = _phi(np.sort(rc), t, n), _phi(np.sort(rh), t, n)
    idx = np.flatnonzero((pc >= pm) & (ph >= pm))[-3:]
    return OrderingReport(t[idx], pc[idx], ph[idx])
