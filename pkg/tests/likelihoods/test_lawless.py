import math

import numpy as np
import pytest
from scipy import stats

from termsurv.analyzers import BivariateWeibull
from termsurv.likelihoods import LawlessLikelihood, loglik_lawless, loglik_termination, loglik_univariate_weibull
from termsurv.models.params import ModelParams
from termsurv.models.records import Category, Dataset, SubjectRecord

# 두 사건 모두 관측 가능: r 과 중도절단에서 X 는 t_x 에서 절단
LAWLESS_RECORDS = (
    SubjectRecord.both_observed(5.0, 40.0),
    SubjectRecord(category=Category.BOTH_OBSERVED, t_x=60.0, t_y=20.0),
    SubjectRecord.a_observed(12.0, 300.0),
    SubjectRecord(category=Category.B_OBSERVED_NO_A, t_x=90.0, t_y=8.0),
    SubjectRecord(category=Category.BOTH_CENSORED, t_x=150.0, t_y=120.0),
)


def test_lawless_scheme_accepts_any_order():
    data = Dataset(records=LAWLESS_RECORDS, scheme="lawless")
    assert data.counts == {"p": 2, "q": 1, "r": 1, "censored": 1}


def test_lawless_separates_under_independence():
    theta = ModelParams(alpha=1.0, lambda1=40.0, gamma1=0.7, lambda2=300.0, gamma2=1.3)
    data = Dataset(records=LAWLESS_RECORDS, scheme="lawless")
    x_events = [r.category in (Category.BOTH_OBSERVED, Category.A_OBSERVED_B_CENSORED) for r in LAWLESS_RECORDS]
    y_events = [r.category in (Category.BOTH_OBSERVED, Category.B_OBSERVED_NO_A) for r in LAWLESS_RECORDS]
    expected = (
        loglik_univariate_weibull([r.t_x for r in LAWLESS_RECORDS], x_events, theta.lambda1, theta.gamma1)
        + loglik_univariate_weibull([r.t_y for r in LAWLESS_RECORDS], y_events, theta.lambda2, theta.gamma2)
    )
    assert loglik_lawless(data, theta) == pytest.approx(expected, abs=1e-8)


def test_lawless_factors(stanford_theta):
    values = LawlessLikelihood().contributions(Dataset(records=LAWLESS_RECORDS, scheme="lawless"), stanford_theta)
    wb = BivariateWeibull
    assert values[3] == pytest.approx(wb.log_neg_dS_dy(90.0, 8.0, stanford_theta), rel=1e-14)
    assert values[4] == pytest.approx(wb.log_joint_survival(150.0, 120.0, stanford_theta), rel=1e-14)


def test_schemes_agree_on_shared_factors(stanford_theta):
    # p, q 만 있는 자료에서는 두 우도가 같음
    data = Dataset(records=LAWLESS_RECORDS[:1] + LAWLESS_RECORDS[2:3])
    assert loglik_lawless(data, stanford_theta) == pytest.approx(loglik_termination(data, stanford_theta), rel=1e-14)


def test_univariate_weibull_matches_scipy():
    times = np.array([3.0, 17.5, 40.0, 110.0, 2.2])
    events = np.array([True, True, False, True, False])
    lam, gamma = 35.0, 0.8
    expected = (
        stats.weibull_min.logpdf(times[events], gamma, scale=lam).sum()
        + stats.weibull_min.logsf(times[~events], gamma, scale=lam).sum()
    )
    assert loglik_univariate_weibull(times, events, lam, gamma) == pytest.approx(expected, rel=1e-12)


def test_univariate_weibull_exponential_case():
    # 지수분포: loglik = d log(1/λ) - Σt/λ
    times = [1.0, 2.0, 3.0]
    assert loglik_univariate_weibull(times, [True, False, True], 2.0, 1.0) == pytest.approx(
        2 * math.log(0.5) - 3.0)
