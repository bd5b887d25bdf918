import logging
import math

import pytest
from hypothesis import given, settings, strategies as st

from termsurv.exceptions import DomainError, QuadratureError
from termsurv.numerics import QuadratureSpec, gamma_fn, integrate_finite, integrate_semi_infinite, quadrature


def test_polynomial_is_exact():
    assert integrate_finite(lambda x: 3.0 * x * x, 0.0, 2.0) == pytest.approx(8.0, rel=1e-12)


def test_empty_interval_is_zero():
    assert integrate_finite(math.exp, 1.5, 1.5) == 0.0


def test_reversed_interval_rejected():
    with pytest.raises(DomainError):
        integrate_finite(math.exp, 2.0, 1.0)


@given(st.floats(min_value=0.05, max_value=20.0))
@settings(max_examples=30, deadline=None)
def test_exponential_tail(rate):
    value = integrate_semi_infinite(lambda y: rate * math.exp(-rate * y), 0.0)
    assert value == pytest.approx(1.0, abs=1e-9)


def test_shifted_tail_with_scale():
    # ∫_a^∞ e^{-y/100}/100 dy = e^{-a/100}
    value = integrate_semi_infinite(lambda y: math.exp(-y / 100.0) / 100.0, 50.0, scale=100.0)
    assert value == pytest.approx(math.exp(-0.5), rel=1e-9)


def _weibull_density(x: float) -> float:
    return 0.75 * math.sqrt(x / 2.0) * math.exp(-((x / 2.0) ** 1.5))


@given(st.floats(min_value=0.1, max_value=10.0))
@settings(max_examples=20, deadline=None)
def test_semi_infinite_is_additive(a):
    whole = integrate_semi_infinite(_weibull_density, 0.0, scale=2.0)
    split = integrate_finite(_weibull_density, 0.0, a) + integrate_semi_infinite(_weibull_density, a, scale=2.0)
    assert whole == pytest.approx(1.0, abs=1e-9)
    assert split == pytest.approx(whole, abs=1e-9)


def test_heavy_tail():
    # ∫_1^∞ y^-2 dy = 1
    assert integrate_semi_infinite(lambda y: y ** -2, 1.0) == pytest.approx(1.0, rel=1e-9)


def test_non_convergence_raises():
    spec = QuadratureSpec(rel_tol=1e-14, abs_tol=1e-16, max_subdivisions=1)
    with pytest.raises(QuadratureError):
        integrate_finite(lambda x: math.sin(50.0 * x), 0.0, 10.0, spec)


def test_semi_infinite_rejects_bad_scale():
    with pytest.raises(DomainError):
        integrate_semi_infinite(math.exp, 0.0, scale=0.0)


def test_double_spec_is_looser():
    assert QuadratureSpec.double().rel_tol > QuadratureSpec().rel_tol
    tight = QuadratureSpec.double().tighter(10.0)
    assert tight.rel_tol == pytest.approx(QuadratureSpec.double().rel_tol / 10.0)


@pytest.mark.parametrize("z, expected", [
    (1.0, 1.0),
    (5.0, 24.0),
    (0.5, math.sqrt(math.pi)),
    (2.5, 1.5 * 0.5 * math.sqrt(math.pi)),
])
def test_gamma_fn(z, expected):
    assert gamma_fn(z) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("z", [0.0, -1.0, math.inf, math.nan])
def test_gamma_fn_domain(z):
    with pytest.raises(DomainError):
        gamma_fn(z)


def test_accepted_warning_is_logged(monkeypatch, caplog):
    def roundoff(f, a, b, **kwargs):
        return 1.0, 1e-11, {}, "The occurrence of roundoff error is detected"

    monkeypatch.setattr(quadrature.integrate, "quad", roundoff)
    with caplog.at_level(logging.WARNING, logger="termsurv.numerics.quadrature"):
        assert integrate_finite(math.exp, 0.0, 1.0) == 1.0
    assert any(r.levelno == logging.WARNING and "accepted" in r.getMessage() for r in caplog.records)
