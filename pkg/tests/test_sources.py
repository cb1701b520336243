import math

import pytest

from rdpc import (
    BinaryPairSource,
    DegenerateSourceError,
    DomainError,
    GaussianMixture2,
    GaussianPairSource,
    binary_derived,
    gaussian_derived,
)


def test_binary_marginal_and_entropies():
    src = BinaryPairSource(a=0.3, p1=0.1)
    assert src.marginal_x1 == pytest.approx(0.25, abs=1e-15)
    assert src.b == pytest.approx(0.25, abs=1e-15)
    derived = binary_derived(src)
    assert derived.h_a == pytest.approx(0.881290899230693, abs=1e-12)
    assert derived.h_p1 == pytest.approx(0.468995593589281, abs=1e-12)
    assert derived.feasibility_floor_c == derived.h_p1


def test_binary_marginal_folding():
    # raw P(X=1) above 1/2 folds onto the lower symmetric value
    src = BinaryPairSource(a=0.5, p1=0.05)
    assert src.marginal_x1 == pytest.approx(0.5, abs=1e-15)
    assert src.b <= 0.5


def test_binary_rejections():
    with pytest.raises(DomainError):
        BinaryPairSource(a=0.6, p1=0.1)
    with pytest.raises(DomainError):
        BinaryPairSource(a=0.1, p1=0.2)
    with pytest.raises(DegenerateSourceError):
        BinaryPairSource(a=0.5, p1=0.5)
    with pytest.raises(DomainError):
        BinaryPairSource(a=0.3, p1=-0.1)


def test_gaussian_derived_quantities():
    src = GaussianPairSource(0.0, 0.0, 1.0, 0.49, 0.63)
    assert src.rho == pytest.approx(0.9, abs=1e-15)
    assert src.h_s == pytest.approx(1.06226358926594, abs=1e-12)
    derived = gaussian_derived(src)
    assert derived.feasibility_floor_c == pytest.approx(
        0.231897985855115, abs=1e-12
    )
    # floor = h(S) + half the log residual variance share
    expected = src.h_s + 0.5 * math.log(1.0 - 0.81)
    assert derived.feasibility_floor_c == pytest.approx(expected, abs=1e-14)


def test_gaussian_fully_correlated_floor_is_minus_inf():
    src = GaussianPairSource(0.0, 0.0, 1.0, 1.0, 1.0)
    assert gaussian_derived(src).feasibility_floor_c == -math.inf


def test_gaussian_rejections():
    with pytest.raises(DomainError):
        GaussianPairSource(0.0, 0.0, 0.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        GaussianPairSource(0.0, 0.0, 1.0, 1.0, 1.5)


def test_mixture_density_normalizes_and_logs_agree():
    mix = GaussianMixture2(w1=0.7, m1=-1.0, v1=1.0, w2=0.3, m2=1.0, v2=1.0)
    xs = [-3.0, -1.0, 0.0, 0.5, 2.0]
    for x in xs:
        dens = mix.density(x)
        assert dens > 0.0
        assert math.log(dens) == pytest.approx(mix.log_density(x), abs=1e-12)
    # trapezoid mass over a wide window
    lo, hi, n = -14.0, 14.0, 20001
    step = (hi - lo) / (n - 1)
    mass = sum(mix.density(lo + i * step) for i in range(n)) * step
    assert mass == pytest.approx(1.0, abs=1e-9)


def test_mixture_weight_validation():
    with pytest.raises(DomainError):
        GaussianMixture2(w1=0.8, m1=-1.0, v1=1.0, w2=0.3, m2=1.0, v2=1.0)
