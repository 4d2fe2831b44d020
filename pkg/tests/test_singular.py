import math

import numpy as np
import pytest

from czlab import corpus, oracles
from czlab.dyadic import GridFunction
from czlab.errors import DomainError, ShapeError
from czlab.maximal import MultiArg, VectorGridFunction
from czlab.singular import (HILBERT_KERNEL, Kernel, apply_kernel, bilinear_model, commutator,
                            continuous_square, dyadic_square, higher_commutator, hilbert_truncated,
                            maximal_singular, truncated_transform, validate_kernel, vector_cz)


def half_indicator(L):
    return GridFunction.from_callable(lambda x: (x < 0.5) * 1.0, L)


def test_constant_is_odd_about_center():
    L = 8
    f = GridFunction.constant(1.0, L)
    n = f.n
    left = hilbert_truncated(f, n // 2 - 1, f.cell_width)
    right = hilbert_truncated(f, n // 2, f.cell_width)
    assert left + right == pytest.approx(0.0, abs=1e-14)


def test_indicator_against_antiderivative():
    L = 10
    f = half_indicator(L)
    i = 3 * f.n // 4
    val = hilbert_truncated(f, i, f.cell_width)
    assert abs(val - math.log(3) / math.pi) < 1e-2
    assert val == pytest.approx(truncated_transform(f, f.cell_width).samples[i], abs=1e-14)
    assert val == pytest.approx(0.3492850463473265, abs=1e-13)


def test_large_truncation_is_empty():
    f = half_indicator(6)
    for i in (0, 17, 63):
        assert hilbert_truncated(f, i, 1.0) == 0.0
    assert np.all(truncated_transform(f, 2.0).samples == 0.0)
    with pytest.raises(DomainError):
        truncated_transform(f, 0.0)


def test_default_truncation_drops_own_cell(rng):
    a = rng.normal(size=32)
    f = GridFunction(a)
    assert np.allclose(truncated_transform(f).samples, oracles.hilbert(a, 1), atol=1e-14)
    assert np.allclose(truncated_transform(f, 3.5 * f.cell_width).samples, oracles.hilbert(a, 4), atol=1e-14)


def test_maximal_singular_examples(rng):
    assert np.all(maximal_singular(GridFunction.constant(0.0, 6)).samples == 0)
    f = half_indicator(7)
    ts = maximal_singular(f).samples
    h = f.cell_width
    for eps in h * 2.0 ** np.arange(8):
        assert np.all(ts >= np.abs(truncated_transform(f, eps).samples) - 1e-14)
    i = 3 * f.n // 4
    scan = max(abs(hilbert_truncated(f, i, e)) for e in h * (np.arange(1, 2 * f.n) / 2.0))
    assert ts[i] == pytest.approx(scan, abs=1e-14)
    a = rng.normal(size=32)
    assert np.allclose(maximal_singular(GridFunction(a)).samples, oracles.hilbert_maximal(a), atol=1e-14)


def test_validate_kernel_examples():
    rep = validate_kernel(HILBERT_KERNEL, 2000)
    assert rep.ok
    assert rep.size_max == pytest.approx(1 / math.pi, rel=1e-12)
    bad = Kernel(lambda x, y: 1.0 / (np.asarray(x) - np.asarray(y)) ** 2, 1.0, 1.0, 1.0, "square")
    assert validate_kernel(bad, 500).size_violations > 0
    zero = Kernel(lambda x, y: np.zeros(np.broadcast(x, y).shape), 1.0, 1.0, 1.0, "zero")
    assert validate_kernel(zero, 100).ok
    with pytest.raises(DomainError):
        validate_kernel(HILBERT_KERNEL, 10)
    with pytest.raises(DomainError):
        Kernel(lambda x, y: x, 0.0)


def test_apply_kernel_matches_hilbert(rng):
    f = GridFunction(rng.normal(size=64))
    assert np.allclose(apply_kernel(HILBERT_KERNEL, f).samples * f.n,
                       truncated_transform(f).samples * f.n, atol=1e-10)


def test_commutator_examples(rng):
    L = 8
    f = GridFunction(rng.normal(size=1 << L))
    assert np.allclose(commutator(GridFunction.constant(3.0, L), f).samples, 0.0, atol=1e-12)
    x = GridFunction.from_callable(lambda t: t, L)
    collapse = (f.samples.sum() - f.samples) * f.cell_width / math.pi
    assert np.allclose(commutator(x, f).samples, collapse, atol=1e-12)
    b = corpus.log_symbol(L)
    direct = commutator(b, f, check=False).samples
    assert np.allclose(direct, oracles.commutator(b.samples, f.samples), atol=1e-10)
    with pytest.raises(ShapeError):
        commutator(GridFunction.constant(1.0, 3), f)


def test_higher_commutator_examples(rng):
    L = 7
    f = GridFunction(rng.normal(size=1 << L))
    b = corpus.log_symbol(L)
    assert np.allclose(higher_commutator(b, f, 0).samples, truncated_transform(f).samples, atol=1e-12)
    assert np.allclose(higher_commutator(b, f, 1).samples, commutator(b, f).samples, atol=1e-10)
    assert np.allclose(higher_commutator(GridFunction.constant(2.0, L), f, 3).samples, 0.0)
    assert np.allclose(higher_commutator(b, f, 2).samples, oracles.commutator(b.samples, f.samples, 2),
                       atol=1e-10)
    with pytest.raises(DomainError):
        higher_commutator(b, f, -1)


def test_dyadic_square_examples(rng):
    assert np.all(dyadic_square(GridFunction.constant(4.0, 5)).samples == 0)
    haar = GridFunction(np.r_[np.ones(16), -np.ones(16)])
    assert np.allclose(dyadic_square(haar).samples, 1.0)
    a = rng.normal(size=64)
    s = dyadic_square(GridFunction(a)).samples
    assert np.sum(s ** 2) == pytest.approx(np.sum((a - a.mean()) ** 2), rel=1e-12)
    assert np.allclose(s, oracles.square(a), rtol=1e-12)


def test_continuous_square_examples(rng):
    L = 7
    assert np.all(continuous_square(GridFunction.constant(0.0, L)).samples == 0)
    f = GridFunction(rng.normal(size=1 << L))
    g = continuous_square(f).samples
    assert np.allclose(continuous_square(f.like(2 * f.samples)).samples, 2 * g, rtol=1e-12)
    fine = continuous_square(f, scales=16).samples
    assert np.max(np.abs(fine - g) / g) < 0.05
    with pytest.raises(DomainError):
        continuous_square(f, mu=3.0)
    with pytest.raises(DomainError):
        continuous_square(f, scales=4)


def test_continuous_square_matches_direct_sum():
    L = 5
    f = GridFunction(np.random.default_rng(3).normal(size=1 << L))
    n, h = f.n, f.cell_width
    x = f.midpoints()
    ts = h * 2.0 ** (np.arange(L * 8 + 1) / 8)
    wts = np.full(ts.size, math.log(2) / 8)
    wts[[0, -1]] /= 2
    ref = np.zeros(n)
    for t, wt in zip(ts, wts):
        edges = np.arange(n + 1) * h
        conv = np.array([np.sum(f.samples * (0.5 * np.exp(-0.5 * ((xi - edges[:-1]) / t) ** 2)
                                             - 0.5 * np.exp(-0.5 * ((xi - edges[1:]) / t) ** 2)))
                         for xi in x])
        for i in range(n):
            ref[i] += wt / t * np.sum(conv ** 2 * h * (t / (t + np.abs(x[i] - x))) ** 4)
    assert np.allclose(continuous_square(f).samples, np.sqrt(ref), rtol=1e-9)


def test_vector_cz_examples(rng):
    g = GridFunction(rng.normal(size=32))
    tg = np.abs(truncated_transform(g).samples)
    assert np.allclose(vector_cz(VectorGridFunction((g,)), 2.0).samples, tg)
    assert np.allclose(vector_cz(VectorGridFunction((g,) * 4), 2.0).samples, 2 * tg)
    comps = [rng.normal(size=32) for _ in range(3)]
    ref = sum(np.abs(oracles.hilbert(c)) ** 3 for c in comps) ** (1 / 3)
    out = vector_cz(VectorGridFunction(tuple(GridFunction(c) for c in comps)), 3.0).samples
    assert np.allclose(out, ref, atol=1e-12)
    mx = vector_cz(VectorGridFunction(tuple(GridFunction(c) for c in comps)), 3.0, maximal=True).samples
    assert np.all(mx >= out - 1e-12)
    with pytest.raises(DomainError):
        vector_cz(VectorGridFunction((g,)), 1.0)


def test_bilinear_model_is_product(rng):
    a, b = GridFunction(rng.normal(size=16)), GridFunction(rng.normal(size=16))
    out = bilinear_model(MultiArg((a, b))).samples
    assert np.allclose(out, truncated_transform(a).samples * truncated_transform(b).samples)


def test_reflection_antisymmetry(rng):
    a = rng.normal(size=64)
    f, fr = GridFunction(a), GridFunction(a[::-1])
    for eps in (None, 0.1, 0.3):
        t = truncated_transform(f, eps).samples
        assert np.allclose(truncated_transform(fr, eps).samples, -t[::-1], atol=1e-14)


def test_commutator_symbol_shift(rng):
    L = 6
    f = GridFunction(rng.normal(size=1 << L))
    b = GridFunction(rng.normal(size=1 << L))
    shifted = b.like(b.samples + 5.0)
    assert np.allclose(commutator(shifted, f).samples, commutator(b, f).samples, atol=1e-12)
