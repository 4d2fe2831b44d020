import numpy as np
import pytest

from czlab import oracles
from czlab.dyadic import ROOT, DyadicIndex, GridFunction
from czlab.errors import DomainError
from czlab.rearrangement import (decreasing_rearrangement, local_sharp_maximal, median,
                                 oscillation, oscillation_values)

HALF = GridFunction([1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0])


def test_rearrangement_examples():
    f = GridFunction([3.0, 1.0, 2.0, 4.0])
    assert decreasing_rearrangement(f, ROOT, 0.5) == 2.0
    assert decreasing_rearrangement(f, ROOT, 0.0) == 4.0
    assert decreasing_rearrangement(f, ROOT, 1.0) == 0.0
    c = GridFunction.constant(-3.0, 4)
    assert decreasing_rearrangement(c, ROOT, 0.7) == 3.0


def test_rearrangement_domain():
    f = GridFunction([3.0, 1.0, 2.0, 4.0])
    with pytest.raises(DomainError):
        decreasing_rearrangement(f, ROOT, -0.1)
    with pytest.raises(DomainError):
        decreasing_rearrangement(f, DyadicIndex(1, 0), 0.75)


def test_rearrangement_on_subcube_uses_local_measure():
    f = GridFunction([3.0, 1.0, 2.0, 4.0])
    assert decreasing_rearrangement(f, DyadicIndex(1, 1), 0.25) == 2.0


def test_median_examples():
    assert median(GridFunction([1.0, 2.0, 3.0, 4.0])) == 2.0
    assert median(GridFunction([5.0, 5.0, 1.0, 5.0])) == 5.0
    assert median(GridFunction.constant(7.0, 3)) == 7.0
    assert median(GridFunction([1.0, 2.0, 3.0, 4.0]), DyadicIndex(1, 1)) == 3.0


def test_oscillation_examples():
    assert oscillation(HALF, ROOT, 0.125) == 0.5
    assert oscillation(HALF, ROOT, 0.5) == 0.0
    assert oscillation(GridFunction.constant(2.0, 3), ROOT, 0.25) == 0.0
    with pytest.raises(DomainError):
        oscillation(HALF, ROOT, 1.0)
    with pytest.raises(DomainError):
        oscillation(HALF, ROOT, 0.0)


def test_local_sharp_examples():
    out = local_sharp_maximal(HALF, ROOT, 0.125)
    assert np.all(out.samples == 0.5)
    assert np.all(local_sharp_maximal(GridFunction.constant(3.0, 4)).samples == 0.0)
    f = GridFunction([3.0, 1.0, 2.0, 4.0])
    assert np.allclose(local_sharp_maximal(f, ROOT, 0.125).samples,
                       oracles.local_sharp(f.samples, 0.125), rtol=0, atol=1e-15)


def test_local_sharp_zero_off_root():
    f = GridFunction(np.arange(8.0) ** 2)
    out = local_sharp_maximal(f, DyadicIndex(1, 0), 0.125).samples
    assert np.all(out[4:] == 0)
    assert np.all(out[:4] > 0)


def test_local_sharp_modes_nest(rng):
    f = GridFunction(rng.normal(size=32))
    d = local_sharp_maximal(f, ROOT, 0.25, "dyadic").samples
    s = local_sharp_maximal(f, ROOT, 0.25, "shifted").samples
    a = local_sharp_maximal(f, ROOT, 0.25, "all").samples
    assert np.all(d <= s + 1e-15) and np.all(s <= a + 1e-15)


@pytest.mark.parametrize("lam", [0.125, 0.25, 0.5])
def test_oscillation_matches_oracle(rng, lam):
    for n in (2, 4, 8, 16):
        v = np.round(rng.normal(size=n), 1)
        assert abs(oscillation_values(v, lam) - oracles.oscillation(v, lam)) < 1e-12
