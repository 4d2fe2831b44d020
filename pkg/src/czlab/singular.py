"""Hilbert transform on the grid and the operators built from it.

Quadrature is the midpoint rule: the value at cell ``i`` sums
``f_j * h / (pi * (x_i - y_j)) = f_j / (pi * (i - j))`` over the cells ``j``
with ``|i - j| >= dmin``.  A truncation ``eps`` keeps cells with midpoint
distance ``> eps``, i.e. ``dmin = floor(eps / h) + 1``.  The untruncated
transform ``Tf`` is the principal value: only the own cell is dropped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernels
from .dyadic import ROOT, DyadicIndex, GridFunction, count_floor, level_averages
from .errors import DomainError, ShapeError
from .maximal import VectorGridFunction, MultiArg


@dataclass(frozen=True)
class Kernel:
    """Off-diagonal kernel ``K(x, y)`` (vectorised) with declared constants."""

    evaluate: Callable[[np.ndarray, np.ndarray], np.ndarray]
    size_constant: float
    regularity_exponent: float = 1.0
    regularity_constant: float = 1.0
    name: str = "custom"

    def __post_init__(self):
        if not (self.size_constant > 0 and self.regularity_constant > 0):
            raise DomainError("declared kernel constants must be positive")
        if not 0 < self.regularity_exponent <= 1:
            raise DomainError("regularity exponent must lie in (0, 1]")


def _hilbert_eval(x, y):
    return 1.0 / (math.pi * (np.asarray(x) - np.asarray(y)))


# |K(x,y)-K(z,y)| + |K(y,x)-K(y,z)| = 2|x-z| / (pi |x-y| |z-y|) < (4/pi) |x-z| / |x-y|^2
HILBERT_KERNEL = Kernel(_hilbert_eval, 1.0 / math.pi, 1.0, 4.0 / math.pi, "hilbert")


def truncation_cells(eps: float | None, h: float) -> int:
    """Smallest admitted cell distance for truncation ``eps`` (None: principal value)."""
    if eps is None:
        return 1
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    return count_floor(eps / h) + 1


def _hilbert_taps(n: int, dmin: int) -> np.ndarray:
    d = np.arange(-(n - 1), n, dtype=float)
    ker = np.zeros(2 * n - 1)
    keep = np.abs(d) >= dmin
    ker[keep] = 1.0 / (math.pi * d[keep])
    return ker


def hilbert_values(a: np.ndarray, dmin: int = 1) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    n = a.size
    if dmin >= n:
        return np.zeros(n)
    return kernels.toeplitz_apply(a, _hilbert_taps(n, dmin), n - 1)


def truncated_transform(f: GridFunction, eps: float | None = None) -> GridFunction:
    """T_eps f at every cell; ``eps=None`` drops only the own cell."""
    return f.like(hilbert_values(f.samples, truncation_cells(eps, f.cell_width)))


def hilbert_truncated(f: GridFunction, x_cell: int, eps: float | None = None) -> float:
    """T_eps f at the midpoint of ``x_cell`` by a direct sum."""
    dmin = truncation_cells(eps, f.cell_width)
    d = x_cell - np.arange(f.n)
    keep = np.abs(d) >= dmin
    return float(np.sum(f.samples[keep] / (math.pi * d[keep])))


def maximal_singular(f: GridFunction) -> GridFunction:
    """T*f: max of |T_eps f| over every truncation.

    ``T_eps f(x_i)`` only changes when ``eps`` crosses a cell distance, so
    scanning the ``N - 1`` thresholds is exact.
    """
    return f.like(kernels.hilbert_maximal(np.ascontiguousarray(f.samples)))


def apply_kernel(K: Kernel, f: GridFunction, eps: float | None = None) -> GridFunction:
    """Midpoint quadrature of a general kernel, dense and chunked by rows."""
    h = f.cell_width
    dmin = truncation_cells(eps, h)
    x = f.midpoints()
    out = np.empty(f.n)
    step = max(1, (1 << 20) // f.n)
    j = np.arange(f.n)
    for a in range(0, f.n, step):
        i = np.arange(a, min(f.n, a + step))
        far = np.abs(i[:, None] - j[None, :]) >= dmin
        with np.errstate(divide="ignore", invalid="ignore"):
            Kv = np.where(far, K.evaluate(x[i][:, None], x[None, :]), 0.0)
        out[i] = Kv @ f.samples * h
    return f.like(out)


@dataclass
class KernelReport:
    name: str
    samples: int
    size_max: float
    regularity_max: float
    size_violations: int
    regularity_violations: int
    worst_size_pair: tuple = field(default=())
    worst_regularity_triple: tuple = field(default=())

    @property
    def ok(self) -> bool:
        return self.size_violations == 0 and self.regularity_violations == 0


def validate_kernel(K: Kernel, sample_count: int = 1000, seed: int = 0,
                    rtol: float = 1e-9) -> KernelReport:
    """Sample the size and regularity quotients against the declared constants.

    Triples are drawn with ``2|x - z| < |x - y|``; half of them have ``z``
    close to the admissible boundary, where the quotient is largest.
    """
    if sample_count < 100:
        raise DomainError("sample_count must be at least 100")
    rng = np.random.default_rng(seed)
    x = rng.random(sample_count)
    y = rng.random(sample_count)
    y = np.where(x == y, y + 0.5 * rng.random(sample_count) + 1e-3, y)
    r = np.abs(x - y)
    with np.errstate(all="ignore"):
        size_q = np.abs(K.evaluate(x, y)) * r
    size_q = np.nan_to_num(size_q, nan=np.inf)

    frac = rng.random(sample_count) * 0.5
    frac[: sample_count // 2] = 0.5 * (1 - rng.random(sample_count // 2) * 1e-3)
    sign = rng.choice([-1.0, 1.0], sample_count)
    z = x + sign * frac * r
    e = K.regularity_exponent
    with np.errstate(all="ignore"):
        num = np.abs(K.evaluate(x, y) - K.evaluate(z, y)) + np.abs(K.evaluate(y, x) - K.evaluate(y, z))
        reg_q = num * r ** (1 + e) / np.abs(x - z) ** e
    reg_q = np.nan_to_num(reg_q, nan=0.0)

    size_bad = size_q > K.size_constant * (1 + rtol)
    reg_bad = reg_q > K.regularity_constant * (1 + rtol)
    i, k = int(np.argmax(size_q)), int(np.argmax(reg_q))
    return KernelReport(K.name, sample_count, float(size_q.max()), float(reg_q.max()),
                        int(size_bad.sum()), int(reg_bad.sum()),
                        (float(x[i]), float(y[i])), (float(x[k]), float(y[k]), float(z[k])))


def _check_pair(b: GridFunction, f: GridFunction):
    if not b.same_grid(f):
        raise ShapeError("b and f must share a grid")


def commutator(b: GridFunction, f: GridFunction, eps: float | None = None,
               check: bool = True, atol: float = 1e-10) -> GridFunction:
    """[b, T]f = b T f - T(b f), cross-checked against the kernel form.

    Both routes use the same truncation, so they agree up to rounding; a
    disagreement beyond ``atol`` (relative to the size of the terms) raises.
    """
    _check_pair(b, f)
    dmin = truncation_cells(eps, f.cell_width)
    bs, fs = b.samples, f.samples
    direct = bs * hilbert_values(fs, dmin) - hilbert_values(bs * fs, dmin)
    if check:
        kernel_form = kernels.kernel_commutator(np.ascontiguousarray(bs), np.ascontiguousarray(fs), 1, dmin)
        scale = max(1.0, float(np.abs(bs).max() * np.abs(fs).max()))
        gap = float(np.abs(direct - kernel_form).max())
        if gap > atol * scale:
            raise ArithmeticError(f"commutator routes disagree by {gap:.3e}")
    return f.like(direct)


def higher_commutator(b: GridFunction, f: GridFunction, k: int,
                      eps: float | None = None) -> GridFunction:
    """T^k_b f(x) = sum (b(x) - b(y))^k K(x, y) f(y) h."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    _check_pair(b, f)
    dmin = truncation_cells(eps, f.cell_width)
    return f.like(kernels.kernel_commutator(np.ascontiguousarray(b.samples),
                                            np.ascontiguousarray(f.samples), int(k), dmin))


def dyadic_square(f: GridFunction, Q0: DyadicIndex = ROOT) -> GridFunction:
    """S_d f over the dyadic cubes strictly inside ``Q0``; zero off ``Q0``."""
    sl = Q0.cells(f.resolution)
    n = sl.stop - sl.start
    avgs = level_averages(f.samples[sl])
    acc = np.zeros(n)
    for k in range(1, len(avgs)):
        diff = avgs[k] - np.repeat(avgs[k - 1], 2)
        acc += np.repeat(diff * diff, n >> k)
    out = np.zeros(f.n)
    out[sl] = np.sqrt(acc)
    return f.like(out)


def gaussian_derivative_antiderivative(u):
    """Antiderivative of the L1-normalised Gaussian derivative profile."""
    return 0.5 * np.exp(-0.5 * np.asarray(u) ** 2)


def _fft_toeplitz(u: np.ndarray, ker: np.ndarray) -> np.ndarray:
    """out_i = sum_j ker[i - j + n - 1] u_j by zero-padded FFT."""
    n = u.size
    m = 1 << int(math.ceil(math.log2(3 * n - 2)))
    full = np.fft.irfft(np.fft.rfft(u, m) * np.fft.rfft(ker, m), m)
    return full[n - 1:2 * n - 1]


def continuous_square(f: GridFunction, mu: float = 4.0, scales: int = 8,
                      psi_antiderivative: Callable = gaussian_derivative_antiderivative) -> GridFunction:
    """g*_mu f with y restricted to the base cube.

    ``psi_t * f`` is exact per cell through the antiderivative of the profile;
    the scale integral uses a trapezoid rule in ``log t`` on
    ``t = h 2^(k/scales)``, ``t`` from one cell width to the cube side.
    """
    if not mu > 3:
        raise DomainError(f"mu must exceed 3, got {mu}")
    if scales < 8:
        raise DomainError(f"scales must be at least 8, got {scales}")
    n, h = f.n, f.cell_width
    d = np.arange(-(n - 1), n, dtype=float)
    ks = np.arange(f.resolution * scales + 1)
    ts = h * 2.0 ** (ks / scales)
    wts = np.full(ks.size, math.log(2.0) / scales)
    wts[[0, -1]] *= 0.5
    acc = np.zeros(n)
    fs = np.asarray(f.samples, dtype=float)
    for t, wt in zip(ts, wts):
        conv_ker = psi_antiderivative((d + 0.5) * h / t) - psi_antiderivative((d - 0.5) * h / t)
        conv = _fft_toeplitz(fs, conv_ker)
        outer = (t / (t + np.abs(d) * h)) ** mu
        acc += wt / t * _fft_toeplitz(conv * conv * h, outer)
    return f.like(np.sqrt(np.maximum(acc, 0.0)))


def _check_q(q: float):
    if not q > 1:
        raise DomainError(f"q must exceed 1, got {q}")


def vector_cz(fv: VectorGridFunction, q: float, maximal: bool = False) -> GridFunction:
    """(sum_j |T f_j|^q)^(1/q), with T* per component when ``maximal``."""
    _check_q(q)
    op = maximal_singular if maximal else truncated_transform
    vals = np.stack([np.abs(op(c).samples) for c in fv.components])
    return fv.grid.like((vals ** q).sum(axis=0) ** (1.0 / q))


def bilinear_model(fvec: MultiArg) -> GridFunction:
    """Heuristic product model T f_1 * ... * T f_m.

    Not an m-linear Calderon-Zygmund operator: its kernel fails the
    multilinear size bound.  Informational use only.
    """
    out = np.ones(fvec.grid.n)
    for c in fvec.components:
        out = out * truncated_transform(c).samples
    return fvec.grid.like(out)
