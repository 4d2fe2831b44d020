import numpy as np
import pytest

from czlab import oracles
from czlab.dyadic import ROOT, DyadicIndex, GridFunction
from czlab.errors import DomainError, ShapeError
from czlab.maximal import (MultiArg, VectorGridFunction, dyadic_local_maximal, hl_maximal,
                           iterated_maximal, m_delta, multilinear_maximal, sharp_maximal,
                           vector_maximal)

HALF3 = GridFunction([1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0])


def test_hl_examples():
    assert np.all(hl_maximal(GridFunction.constant(-2.0, 4)).samples == 2.0)
    # the cell ending at x = 3/4 sees the optimal interval [0, 3/4)
    assert hl_maximal(HALF3).samples[5] == pytest.approx(2 / 3, abs=1e-15)
    spike = GridFunction([8.0, 0, 0, 0, 0, 0, 0, 0])
    assert hl_maximal(spike).samples[7] == 1.0
    assert hl_maximal(spike).samples[3] == 2.0


def test_dyadic_examples():
    assert hl_maximal(HALF3, "dyadic").samples[6] == 0.5
    spike = GridFunction(np.r_[8.0, np.zeros(15)] * 2.0)
    assert dyadic_local_maximal(spike).samples[15] == 1.0
    local = dyadic_local_maximal(HALF3, DyadicIndex(1, 1)).samples
    assert np.all(local[:4] == 0) and np.all(local[4:] == 0)


def test_modes_nest(rng):
    f = GridFunction(rng.normal(size=64))
    d, s, e = (hl_maximal(f, m).samples for m in ("dyadic", "shifted", "exact"))
    assert np.all(d <= s * (1 + 1e-12)) and np.all(s <= e * (1 + 1e-12))
    assert np.allclose(hl_maximal(f, "all").samples, e, rtol=1e-13)
    with pytest.raises(DomainError):
        hl_maximal(f, "bogus")


def test_m_delta_examples(rng):
    assert m_delta(HALF3, 0.5).samples[5] == pytest.approx(4 / 9, abs=1e-15)
    f = GridFunction(rng.normal(size=16))
    assert np.allclose(m_delta(f, 1.0).samples, hl_maximal(f).samples)
    assert np.allclose(m_delta(GridFunction.constant(3.0, 3), 0.7).samples, 3.0)
    with pytest.raises(DomainError):
        m_delta(f, 0.0)


def test_sharp_examples(rng):
    assert np.all(sharp_maximal(GridFunction.constant(5.0, 4)).samples == 0)
    assert np.allclose(sharp_maximal(HALF3, 1.0).samples, 0.5)
    f = GridFunction(rng.normal(size=32))
    assert np.all(sharp_maximal(f, 1.0).samples <= 2 * hl_maximal(f).samples + 1e-12)
    with pytest.raises(DomainError):
        sharp_maximal(f, -1.0)


def test_sharp_matches_oracle_small_delta(rng):
    for delta in (0.25, 0.5, 1.0):
        a = rng.normal(size=16)
        assert np.allclose(sharp_maximal(GridFunction(a), delta).samples,
                           oracles.sharp(a, delta), rtol=1e-12, atol=0)
        assert np.allclose(sharp_maximal(GridFunction(a), delta, dyadic=False, mode="all").samples,
                           oracles.sharp(a, delta, dyadic=False), rtol=1e-12, atol=0)


def test_sharp_delta_two_is_standard_deviation(rng):
    a = rng.normal(size=16)
    out = sharp_maximal(GridFunction(a), 2.0).samples
    ref = np.zeros(16)
    size = 16
    while size >= 1:
        for s in range(0, 16, size):
            ref[s:s + size] = np.maximum(ref[s:s + size], a[s:s + size].std())
        size //= 2
    assert np.allclose(out, ref, atol=1e-8)


def test_iterated_examples():
    spike = GridFunction(np.r_[64.0, np.zeros(63)])
    m1 = hl_maximal(spike).samples
    m2 = iterated_maximal(spike, 2).samples
    assert np.array_equal(iterated_maximal(spike, 1).samples, m1)
    assert np.all(m2 >= m1 - 1e-15)
    assert m2[1] > m1[1]
    assert np.allclose(iterated_maximal(GridFunction.constant(2.0, 4), 3).samples, 2.0)
    direct = oracles.maximal(oracles.maximal(spike.samples))
    assert np.allclose(m2, direct, rtol=1e-13)
    with pytest.raises(DomainError):
        iterated_maximal(spike, 0)


def test_vector_maximal_examples(rng):
    g = GridFunction(rng.normal(size=32))
    assert np.allclose(vector_maximal(VectorGridFunction((g,)), 2.0).samples, hl_maximal(g).samples)
    assert np.allclose(vector_maximal(VectorGridFunction((g, g)), 2.0).samples,
                       np.sqrt(2) * hl_maximal(g).samples)
    comps = [rng.normal(size=16) for _ in range(4)]
    ref = sum(oracles.maximal(c) ** 3 for c in comps) ** (1 / 3)
    out = vector_maximal(VectorGridFunction(tuple(GridFunction(c) for c in comps)), 3.0).samples
    assert np.allclose(out, ref, rtol=1e-12)
    with pytest.raises(DomainError):
        vector_maximal(VectorGridFunction((g,)), 1.0)


def test_vector_needs_common_grid():
    with pytest.raises(ShapeError):
        VectorGridFunction((GridFunction.constant(1, 2), GridFunction.constant(1, 3)))
    with pytest.raises(ShapeError):
        VectorGridFunction(())


def test_multilinear_examples(rng):
    g = GridFunction(rng.normal(size=16))
    assert np.allclose(multilinear_maximal(MultiArg((g,))).samples, hl_maximal(g).samples)
    c = MultiArg((GridFunction.constant(2.0, 4), GridFunction.constant(-3.0, 4)))
    assert np.allclose(multilinear_maximal(c).samples, 6.0)
    a, b = rng.normal(size=16), rng.normal(size=16)
    out = multilinear_maximal(MultiArg((GridFunction(a), GridFunction(b)))).samples
    ref = np.zeros(16)
    for s in range(16):
        for e in range(s + 1, 17):
            v = np.abs(a[s:e]).mean() * np.abs(b[s:e]).mean()
            ref[s:e] = np.maximum(ref[s:e], v)
    assert np.allclose(out, ref, rtol=1e-12)
    assert np.all(out <= oracles.maximal(a) * oracles.maximal(b) + 1e-12)
    dy = multilinear_maximal(MultiArg((GridFunction(a), GridFunction(b))), "dyadic").samples
    assert np.all(dy <= out + 1e-12)


def test_local_root_restricts_support():
    f = GridFunction(np.arange(16.0))
    out = sharp_maximal(f, 0.5, local_root=DyadicIndex(1, 1)).samples
    assert np.all(out[:8] == 0) and np.all(out[8:] > 0)
    assert sharp_maximal(f, 0.5, local_root=ROOT).samples.min() > 0
