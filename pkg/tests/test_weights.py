import math

import numpy as np
import pytest

from czlab import corpus, oracles
from czlab.dyadic import DyadicIndex, GridFunction
from czlab.errors import ConfigError, DomainError, ShapeError
from czlab.maximal import MultiArg, hl_maximal
from czlab.weights import (Weight, a1_constant, ap_constant, bmo_norm, coifman_rochberg_check,
                           cr_weight, factorization_check, multilinear_cr_check, parse_weight,
                           power_weight, rubio_de_francia, stein_llogl_check, weighted_l1_norm)

STEP = GridFunction.from_callable(lambda x: 1.0 + (x < 0.5), 3)


@pytest.mark.parametrize("scope", ["dyadic", "shifted", "all"])
@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_constant_weight_is_one(scope, p):
    assert ap_constant(GridFunction.constant(1.0, 6), p, scope) == 1.0
    assert a1_constant(GridFunction.constant(2.0, 6), scope) == 1.0


def test_step_weight_against_scan():
    assert ap_constant(STEP, 2.0) == pytest.approx(oracles.ap_constant(STEP.samples, 2.0, True), rel=1e-14)
    assert ap_constant(STEP, 2.0) == pytest.approx(1.125, rel=1e-14)
    assert ap_constant(STEP, 2.0, "all") == pytest.approx(oracles.ap_constant(STEP.samples, 2.0), rel=1e-14)


def test_power_weight_stabilizes():
    vals = [ap_constant(power_weight(0.5, L), 2.0) for L in (6, 8, 10, 12)]
    assert all(v >= 1 for v in vals)
    assert all(np.diff(vals) > 0)
    assert vals[-1] / vals[-2] < 1.01
    assert vals[-1] == pytest.approx(1.3244236333214714, rel=1e-10)


def test_ap_domain():
    with pytest.raises(DomainError):
        ap_constant(STEP, 1.0)
    with pytest.raises(DomainError):
        ap_constant(STEP, 2.0, "bogus")
    with pytest.raises(DomainError):
        ap_constant(np.array([1.0, 0.0]), 2.0)


def test_a1_zero_cell():
    with pytest.raises(DomainError):
        a1_constant(np.array([1.0, 0.0, 1.0, 1.0]))
    with pytest.raises(DomainError):
        Weight(GridFunction([1.0, 0.0]))


def test_a1_of_cr_weight_is_finite():
    chi = GridFunction.from_callable(lambda x: (x < 0.5) * 1.0, 8)
    w = hl_maximal(chi).samples ** 0.5
    c = a1_constant(w, "all")
    assert 1.0 <= c < math.inf


def test_factorization_examples():
    one = GridFunction.constant(1.0, 6)
    rep = factorization_check(one, one, 2.0)
    assert rep.lhs == 1.0 and rep.rhs == 1.0 and rep.ok
    chi = GridFunction.from_callable(lambda x: (np.abs(x - 0.3) < 0.1) * 1.0, 8)
    w1 = hl_maximal(chi).samples ** 0.5
    rep = factorization_check(w1, np.ones(w1.size), 2.0, "all")
    assert rep.lhs == pytest.approx(ap_constant(w1, 2.0, "all"))
    assert rep.ok
    with pytest.raises(ShapeError):
        factorization_check(w1, one, 2.0)
    for seed in range(5):
        assert factorization_check(cr_weight(0.4, seed, 7), cr_weight(0.7, seed + 50, 7), 3.0, "all").ok


def test_bmo_examples():
    assert bmo_norm(GridFunction.constant(2.0, 5)) == 0.0
    chi = GridFunction.from_callable(lambda x: (x < 0.5) * 1.0, 6)
    assert bmo_norm(chi) == 0.5
    assert bmo_norm(chi, "all") == 0.5
    vals = [bmo_norm(corpus.log_symbol(L)) for L in (10, 12, 14)]
    assert vals[0] == pytest.approx(0.7349016255638643, rel=1e-12)
    assert max(vals) / min(vals) < 1.05


def test_bmo_scopes_nest(rng):
    a = rng.normal(size=64)
    d, s, al = (bmo_norm(a, sc) for sc in ("dyadic", "shifted", "all"))
    assert d <= s * (1 + 1e-12) and s <= al * (1 + 1e-12)
    assert al == pytest.approx(oracles.bmo(a), rel=1e-12)


def test_rubio_examples(rng):
    zero = GridFunction.constant(0.0, 6)
    assert np.all(rubio_de_francia(zero, 2.0).samples == 0)
    one = GridFunction.constant(1.0, 6)
    assert np.allclose(rubio_de_francia(one, 2.0, norm_bound=16.0).samples, 32 / 31, rtol=1e-12)
    h = GridFunction(rng.exponential(size=64))
    R, rep = rubio_de_francia(h, 3.0, return_report=True)
    assert np.all(R.samples >= h.samples)
    assert rep.ok
    with pytest.raises(DomainError):
        rubio_de_francia(h.like(-h.samples), 2.0)
    with pytest.raises(DomainError):
        rubio_de_francia(h, 1.0)


def test_rubio_rejects_small_norm_bound():
    h = GridFunction(np.r_[50.0, np.zeros(63)])
    with pytest.raises(DomainError):
        rubio_de_francia(h, 2.0, norm_bound=1.0)


def test_coifman_rochberg_examples():
    rep = coifman_rochberg_check(GridFunction.constant(1.0, 6))
    assert rep.a1 == [1.0] * 4 and rep.ok
    spike = GridFunction(np.r_[np.zeros(40), 64.0, np.zeros(23)])
    rep = coifman_rochberg_check(spike, scope="all")
    assert rep.ok and all(math.isfinite(c) for c in rep.a1)
    with pytest.raises(DomainError):
        coifman_rochberg_check(spike, delta=1.0)
    with pytest.raises(DomainError):
        coifman_rochberg_check(GridFunction.constant(0.0, 4))


def test_multilinear_cr_examples():
    one = GridFunction.constant(1.0, 6)
    rep = multilinear_cr_check(MultiArg((one, one)), delta=0.3)
    assert all(c == 1.0 for c in rep.a1)
    a = GridFunction(np.r_[np.zeros(10), 64.0, np.zeros(53)])
    b = GridFunction(np.r_[np.zeros(50), 64.0, np.zeros(13)])
    assert multilinear_cr_check(MultiArg((a, b)), scope="all").ok
    with pytest.raises(DomainError):
        multilinear_cr_check(MultiArg((a, b)), delta=0.5)
    single = multilinear_cr_check(MultiArg((a,)), delta=(0.5, 0.75), baseline=0.5, scope="all")
    ref = coifman_rochberg_check(a, delta=(0.5, 0.75), scope="all")
    assert single.normalized == pytest.approx(ref.normalized)


def test_weighted_l1_examples(rng):
    L = 5
    assert weighted_l1_norm(GridFunction.constant(1.0, L), np.ones(1 << L)) == 1.0
    chi = GridFunction.from_callable(lambda x: (x < 0.5) * 1.0, L)
    assert weighted_l1_norm(chi, np.full(1 << L, 2.0)) == 1.0
    f, w = rng.normal(size=32), rng.exponential(size=32)
    assert weighted_l1_norm(GridFunction(f), w) == pytest.approx(np.sum(np.abs(f) * w) / 32)
    Q = DyadicIndex(1, 1)
    assert weighted_l1_norm(GridFunction(f), w, Q) == pytest.approx(np.sum(np.abs(f[16:]) * w[16:]) / 32)


def test_stein_examples():
    rep = stein_llogl_check(GridFunction.constant(1.0, 6))
    # log(e + w/w_Q) = log(e + 1) for a constant weight
    assert rep.lhs == pytest.approx(math.log(math.e + 1))
    assert rep.rhs == pytest.approx(1.0)
    spike = GridFunction(np.r_[64.0, np.full(63, 1e-3)])
    assert math.isfinite(stein_llogl_check(spike).detail["ratio"])
    rep = stein_llogl_check(STEP)
    w = STEP.samples
    lhs = np.mean(w * np.log(math.e + w / w.mean()))
    assert rep.lhs == pytest.approx(lhs)
    assert rep.rhs == pytest.approx(np.mean(oracles.maximal(w)))


def test_stein_ratio_stable_across_resolution():
    r = [stein_llogl_check(power_weight(-0.5, L)).detail["ratio"] for L in (8, 10, 12)]
    assert max(r) / min(r) < 1.1


def test_ap_monotone_in_p_and_jensen(rng):
    w = np.exp(rng.normal(size=64))
    vals = [ap_constant(w, p, "all") for p in (2.0, 3.0, 5.0)]
    assert vals[0] >= vals[1] >= vals[2] >= 1.0
    assert vals[2] > 1.0


def test_parse_weight():
    assert np.all(parse_weight("const", 4).samples == 1)
    assert np.allclose(parse_weight("power:0.5", 4).samples, power_weight(0.5, 4).samples)
    assert np.allclose(parse_weight("cr:0.5:3", 4).samples, cr_weight(0.5, 3, 4).samples)
    for bad in ("power", "cr:x:1", "nope", "const:1"):
        with pytest.raises(ConfigError):
            parse_weight(bad, 4)
