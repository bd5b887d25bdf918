import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from termsurv.analyzers import BivariateWeibull, WeibullMargin
from termsurv.exceptions import DomainError
from termsurv.models.params import ModelParams
from termsurv.numerics import QuadratureSpec, integrate_finite, integrate_semi_infinite
from termsurv.simulation import mc_joint_survival, mc_tail_prob

wb = BivariateWeibull

PARAM_SETS = [
    ModelParams(alpha=0.3, lambda1=1.0, gamma1=1.0, lambda2=1.0, gamma2=1.0),
    ModelParams(alpha=0.5596, lambda1=35.5837, gamma1=0.5587, lambda2=385.6361, gamma2=0.48300),
    ModelParams(alpha=1.0, lambda1=2.0, gamma1=1.5, lambda2=3.0, gamma2=0.8),
]


def _fd_points(n=20, seed=7):
    """α ∈ {0.3, 0.56, 1.0} 에서 척도 근방의 무작위 (x, y, θ)"""
    rng = np.random.default_rng(seed)
    points = []
    for i in range(n):
        alpha = (0.3, 0.56, 1.0)[i % 3]
        theta = ModelParams(
            alpha=alpha,
            lambda1=float(rng.uniform(10, 500)),
            gamma1=float(rng.uniform(0.5, 1.5)),
            lambda2=float(rng.uniform(10, 500)),
            gamma2=float(rng.uniform(0.5, 1.5)),
        )
        x = theta.lambda1 * float(rng.uniform(0.6, 1.6))
        y = theta.lambda2 * float(rng.uniform(0.6, 1.6))
        points.append((x, y, theta))
    return points


FD_POINTS = _fd_points()


@pytest.mark.parametrize("x, y, theta", FD_POINTS)
def test_partial_derivatives_match_finite_differences(x, y, theta):
    hx, hy = 1e-4 * x, 1e-4 * y
    fd_x = -(wb.joint_survival(x + hx, y, theta) - wb.joint_survival(x - hx, y, theta)) / (2 * hx)
    fd_y = -(wb.joint_survival(x, y + hy, theta) - wb.joint_survival(x, y - hy, theta)) / (2 * hy)
    assert wb.neg_dS_dx(x, y, theta) == pytest.approx(fd_x, rel=1e-5)
    assert wb.neg_dS_dy(x, y, theta) == pytest.approx(fd_y, rel=1e-5)


@pytest.mark.parametrize("x, y, theta", FD_POINTS)
def test_joint_density_matches_mixed_difference(x, y, theta):
    hx, hy = 1e-4 * x, 1e-4 * y
    s = lambda a, b: wb.joint_survival(a, b, theta)
    mixed = (s(x + hx, y + hy) - s(x + hx, y - hy) - s(x - hx, y + hy) + s(x - hx, y - hy)) / (4 * hx * hy)
    assert wb.joint_density(x, y, theta) == pytest.approx(mixed, rel=1e-5)


def test_independence_factorizes():
    theta = PARAM_SETS[2]
    x, y = 1.7, 2.2
    assert wb.joint_survival(x, y, theta) == pytest.approx(
        wb.marginal_survival_x(x, theta) * wb.marginal_survival_y(y, theta), rel=1e-14)
    assert wb.joint_density(x, y, theta) == pytest.approx(
        WeibullMargin.density(x, 2.0, 1.5) * WeibullMargin.density(y, 3.0, 0.8), rel=1e-12)


def test_margins_are_weibull(stanford_theta):
    for x in (1.0, 35.0, 400.0):
        assert wb.marginal_survival_x(x, stanford_theta) == pytest.approx(
            WeibullMargin.survival(x, stanford_theta.lambda1, stanford_theta.gamma1), rel=1e-13)
        assert wb.neg_dS_dx(x, 0.0, stanford_theta) == pytest.approx(
            WeibullMargin.density(x, stanford_theta.lambda1, stanford_theta.gamma1), rel=1e-12)


def test_survival_at_origin_is_one(stanford_theta):
    assert wb.joint_survival(0.0, 0.0, stanford_theta) == 1.0


@given(
    x=st.floats(min_value=0.0, max_value=5000.0),
    y=st.floats(min_value=0.0, max_value=5000.0),
    dx=st.floats(min_value=0.0, max_value=500.0),
    dy=st.floats(min_value=0.0, max_value=500.0),
)
@settings(max_examples=100, deadline=None)
def test_joint_survival_is_monotone(x, y, dx, dy):
    theta = PARAM_SETS[1]
    value = wb.joint_survival(x, y, theta)
    assert 0.0 <= value <= 1.0
    assert wb.joint_survival(x + dx, y + dy, theta) <= value


@pytest.mark.parametrize("call", [
    lambda th: wb.joint_survival(-1.0, 2.0, th),
    lambda th: wb.joint_survival(1.0, math.nan, th),
    lambda th: wb.neg_dS_dx(0.0, 2.0, th),
    lambda th: wb.joint_density(1.0, 0.0, th),
    lambda th: wb.tail_prob(-5.0, th),
])
def test_domain_errors(call, stanford_theta):
    with pytest.raises(DomainError):
        call(stanford_theta)


def test_origin_singularity_is_named():
    theta = ModelParams(alpha=0.8, lambda1=1.0, gamma1=0.5, lambda2=1.0, gamma2=1.0)
    with pytest.raises(DomainError, match="singular at origin"):
        wb.neg_dS_dx(0.0, 1.0, theta)


@pytest.mark.parametrize("theta", PARAM_SETS)
def test_marginal_density_y_normalizes(theta):
    total = integrate_semi_infinite(lambda y: wb.marginal_density_y(y, theta), 0.0, scale=theta.lambda2)
    assert total == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("y", [0.4, 30.0, 900.0])
def test_marginal_density_y_is_survival_derivative(y, stanford_theta):
    h = 1e-5 * y
    fd = -(wb.marginal_survival_y(y + h, stanford_theta) - wb.marginal_survival_y(y - h, stanford_theta)) / (2 * h)
    assert wb.marginal_density_y(y, stanford_theta) == pytest.approx(fd, rel=1e-8)


@pytest.mark.parametrize("theta", PARAM_SETS)
@pytest.mark.parametrize("y_quantile", [0.2, 0.5, 0.9])
def test_joint_density_integrates_to_marginal(theta, y_quantile):
    # ∫_0^∞ f_XY(x, y) dx = f_Y(y)
    y = WeibullMargin.quantile(y_quantile, theta.lambda2, theta.gamma2)
    inner = integrate_semi_infinite(lambda x: wb.joint_density(x, y, theta), 0.0, scale=theta.lambda1)
    assert inner == pytest.approx(wb.marginal_density_y(y, theta), rel=1e-7)


@pytest.mark.slow
@pytest.mark.parametrize("theta", PARAM_SETS)
def test_joint_density_normalizes(theta):
    spec = QuadratureSpec.double()
    inner = spec.tighter(10.0)

    def over_x(y):
        return integrate_semi_infinite(lambda x: wb.joint_density(x, y, theta), 0.0, inner, scale=theta.lambda1)

    total = integrate_semi_infinite(over_x, 0.0, spec, scale=theta.lambda2)
    assert total == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("t", [10.0, 100.0])
def test_tail_prob_matches_double_integral(t, stanford_theta):
    single = wb.tail_prob(t, stanford_theta)
    double = wb.tail_prob_by_double_integral(t, stanford_theta)
    assert single == pytest.approx(double, abs=1e-6)


@pytest.mark.slow
@pytest.mark.parametrize("t", [0.0, 500.0])
def test_tail_prob_matches_double_integral_extremes(t, stanford_theta):
    assert wb.tail_prob(t, stanford_theta) == pytest.approx(
        wb.tail_prob_by_double_integral(t, stanford_theta), abs=1e-6)


def test_tail_prob_at_zero_under_independence(exponential_theta):
    # X, Y 독립 Exp(1): Pr(X < Y) = 1/2
    assert wb.tail_prob(0.0, exponential_theta) == pytest.approx(0.5, abs=1e-10)
    # Pr(t < X < Y) = e^{-2t}/2
    assert wb.tail_prob(0.7, exponential_theta) == pytest.approx(0.5 * math.exp(-1.4), rel=1e-9)


def test_tail_prob_is_log_consistent(stanford_theta):
    assert math.exp(wb.log_tail_prob(100.0, stanford_theta)) == pytest.approx(
        wb.tail_prob(100.0, stanford_theta), rel=1e-12)


def test_tail_prob_decreases_in_t(stanford_theta):
    values = [wb.tail_prob(t, stanford_theta) for t in (0.0, 10.0, 100.0, 500.0, 1460.0)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(0.0 <= v <= wb.joint_survival(t, t, stanford_theta)
               for v, t in zip(values, (0.0, 10.0, 100.0, 500.0, 1460.0)))


def test_tail_prob_when_joint_survival_underflows():
    # S(100, 100) = 0 in double precision, X 가 먼저일 몫도 거의 0
    theta = ModelParams(alpha=0.2, lambda1=1.0, gamma1=1.0, lambda2=1.0, gamma2=3.0)
    assert wb.joint_survival(100.0, 100.0, theta) == 0.0
    assert wb.tail_prob(100.0, theta) == 0.0
    assert wb.log_tail_prob(100.0, theta) < -1e5


def test_tail_prob_when_x_rarely_comes_first():
    # 독립 지수분포 (비율 1/1000, 1): Pr(t < X < Y) = r1/(r1 + r2)·exp(-(r1 + r2)t)
    theta = ModelParams(alpha=1.0, lambda1=1000.0, gamma1=1.0, lambda2=1.0, gamma2=1.0)
    expected = 0.001 / 1.001 * math.exp(-1.001 * 2.0)
    assert wb.tail_prob(2.0, theta) == pytest.approx(expected, rel=1e-7)


def test_joint_survival_splits_at_the_diagonal(stanford_theta):
    # S(t, t) = Pr(t < X < Y) + Pr(t < Y < X), 두 번째 항은 직접 이중적분
    t = 100.0
    spec = QuadratureSpec.double()
    inner = spec.tighter(10.0)

    def over_y(x):
        return integrate_finite(lambda y: wb.joint_density(x, y, stanford_theta), t, x, inner)

    y_first = integrate_semi_infinite(over_y, t, spec, scale=math.sqrt(stanford_theta.lambda1 * stanford_theta.lambda2))
    assert wb.tail_prob(t, stanford_theta) + y_first == pytest.approx(
        wb.joint_survival(t, t, stanford_theta), abs=1e-6)


def test_joint_cdf_matches_density_integral():
    theta = ModelParams(alpha=0.5, lambda1=1.0, gamma1=1.0, lambda2=1.0, gamma2=1.0)
    x0, y0 = 0.7, 1.3
    spec = QuadratureSpec.double()
    inner = spec.tighter(10.0)

    def over_x(y):
        return integrate_finite(lambda x: wb.joint_density(x, y, theta), 0.0, x0, inner)

    cdf = integrate_finite(over_x, 0.0, y0, spec)
    assert wb.joint_cdf(x0, y0, theta) == pytest.approx(cdf, abs=1e-6)


def test_joint_survival_against_monte_carlo(stanford_theta, rng):
    for x0, y0 in [(20.0, 200.0), (60.0, 60.0), (5.0, 900.0)]:
        estimate, std_error = mc_joint_survival(x0, y0, stanford_theta, 1_000_000, rng)
        assert abs(wb.joint_survival(x0, y0, stanford_theta) - estimate) <= 3 * std_error


@pytest.mark.parametrize("t", [10.0, 100.0])
def test_tail_prob_against_monte_carlo(t, stanford_theta, rng):
    estimate, std_error = mc_tail_prob(t, stanford_theta, 1_000_000, rng)
    assert abs(wb.tail_prob(t, stanford_theta) - estimate) <= 3 * std_error


@pytest.mark.slow
@pytest.mark.parametrize("t", [0.0, 10.0, 100.0, 500.0])
def test_tail_prob_against_large_monte_carlo(t, stanford_theta):
    estimate, std_error = mc_tail_prob(t, stanford_theta, 10_000_000, np.random.default_rng(2024))
    assert abs(wb.tail_prob(t, stanford_theta) - estimate) <= 3 * std_error


def test_weibull_margin_quantile_inverts_survival():
    for p in (0.0, 0.1, 0.5, 0.99):
        t = WeibullMargin.quantile(p, 35.0, 0.56)
        assert WeibullMargin.survival(t, 35.0, 0.56) == pytest.approx(1.0 - p, rel=1e-12)
    assert WeibullMargin.median(35.0, 0.56) == pytest.approx(WeibullMargin.quantile(0.5, 35.0, 0.56))
