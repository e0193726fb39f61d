import math

import numpy as np
import pytest

import _oracles as oracles
from mgfnorm import (
    GammaTooSmall,
    limit_statistic,
    mardia_kurtosis,
    mardia_skewness,
    mrs_skewness,
    scale_factor,
    scaled_residuals,
    t_integrand,
    t_statistic,
)


def _random_residuals(rng, n, d):
    return scaled_residuals(rng.standard_normal((n, d)))


def test_scale_factor_formula():
    assert scale_factor(5.0, 1) == pytest.approx(
        16.0 * 5.0 ** 2.5 / math.pi ** 0.5, rel=1e-15
    )
    assert scale_factor(2.5, 2) == pytest.approx(16.0 * 2.5 ** 3 / math.pi, rel=1e-15)


def test_integrand_two_points():
    # residuals {-1, +1}: M(t) = cosh t, M'(t) = sinh t, so at t = 1 the
    # discrepancy is sinh(1) - cosh(1) = -e^{-1}
    res = scaled_residuals([0.0, 2.0])
    assert res.residuals[:, 0] == pytest.approx([-1.0, 1.0])
    assert t_integrand(res, 1.0) == pytest.approx(math.exp(-2.0), rel=1e-14)
    assert t_integrand(res, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_closed_form_matches_quadrature():
    rng = np.random.default_rng(42)
    for d in (1, 2):
        for gamma in (2.5, 5.0):
            res = _random_residuals(rng, int(rng.integers(d + 2, 11)), d)
            got = t_statistic(res, gamma).raw
            want = oracles.quad_t(res.residuals, gamma)
            assert got == pytest.approx(want, rel=1e-9)


def test_result_fields():
    res = scaled_residuals(np.random.default_rng(0).standard_normal((12, 2)))
    out = t_statistic(res, 4.0)
    assert out.name == "T" and out.n == 12 and out.d == 2 and out.gamma == 4.0
    assert out.scaled == pytest.approx(scale_factor(4.0, 2) * out.raw, rel=1e-15)
    assert out.raw > 0.0


def test_gamma_domain():
    res = scaled_residuals(np.random.default_rng(1).standard_normal((10, 1)))
    with pytest.raises(GammaTooSmall):
        t_statistic(res, 2.0)
    with pytest.raises(GammaTooSmall):
        t_statistic(res, -1.0)
    with pytest.raises(GammaTooSmall):
        t_statistic(res, 0.0, allow_small_gamma=True)
    # the override admits (0, 2]; the value must still match quadrature
    out = t_statistic(res, 1.5, allow_small_gamma=True)
    assert out.raw == pytest.approx(oracles.quad_t(res.residuals, 1.5), rel=1e-9)


def test_raw_value_nonnegative_up_to_roundoff():
    # the integral of a square; at large gamma the double sum cancels to
    # O(1/gamma^2) of its gross magnitude, so the floor scales with that
    rng = np.random.default_rng(6)
    for _ in range(15):
        d = int(rng.integers(1, 4))
        res = scaled_residuals(rng.standard_normal((int(rng.integers(d + 2, 30)), d)))
        for g in (2.5, 10.0, 1e4, 1e8):
            gross = res.n * (math.pi / g) ** (d / 2.0)
            assert t_statistic(res, g).raw >= -1e-10 * gross


def test_overflow_guard():
    y = np.zeros((40, 1))
    y[0] = 200.0  # max ||Y||^2 / gamma far beyond exp range after scaling
    res = scaled_residuals(y)
    big = float(np.max(res.sq_norms))
    with pytest.raises(OverflowError):
        t_statistic(res, big / 800.0, allow_small_gamma=True)


def test_skewness_measures_match_brute_force():
    rng = np.random.default_rng(9)
    for d in (1, 2, 3):
        res = _random_residuals(rng, 15, d)
        assert mardia_skewness(res) == pytest.approx(
            oracles.brute_b1(res.residuals), rel=1e-10
        )
        assert mrs_skewness(res) == pytest.approx(
            oracles.brute_b1_tilde(res.residuals), rel=1e-10
        )
        assert mardia_kurtosis(res) == pytest.approx(
            oracles.brute_b2(res.residuals), rel=1e-12
        )


def test_skewness_nonnegative_and_d1_equality():
    rng = np.random.default_rng(12)
    for _ in range(10):
        res = _random_residuals(rng, int(rng.integers(5, 25)), 1)
        b1 = mardia_skewness(res)
        assert b1 >= 0.0
        # both reduce to (mean of Y^3)^2 in one dimension
        assert mrs_skewness(res) == pytest.approx(b1, rel=1e-9)


def test_limit_statistic_three_points():
    # residuals (-1, -1, 2)/sqrt(2): mean Y^3 = 1/sqrt(2), so b1 = 1/2,
    # b1_tilde = 1/2, limit = 2*0.5 + 0.5 = 1.5; scaled uses the x100 rule
    res = scaled_residuals([0.0, 0.0, 3.0])
    assert limit_statistic(res) == pytest.approx(1.5, rel=1e-12)
    out = t_statistic(res, math.inf)
    assert out.raw == pytest.approx(1.5, rel=1e-12)
    assert out.scaled == pytest.approx(150.0, rel=1e-12)
    assert math.isinf(out.gamma)


def test_limit_convergence_rate():
    # c(gamma, d) T / n -> 2 b1 + b1_tilde with error O(1/gamma)
    rng = np.random.default_rng(5)
    for d in (1, 2, 3):
        res = _random_residuals(rng, 20, d)
        lim = limit_statistic(res)
        errs = []
        for gamma in (1e2, 1e3, 1e4):
            val = scale_factor(gamma, d) * t_statistic(res, gamma).raw / res.n
            errs.append(abs(val - lim))
        assert errs[2] <= 0.01 * lim
        # error ratio about 10 per decade of gamma
        assert 5.0 < errs[0] / errs[1] < 20.0
        assert 5.0 < errs[1] / errs[2] < 20.0
