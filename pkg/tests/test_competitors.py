import math

import numpy as np
import pytest

import _oracles as oracles
from mgfnorm import (
    BetaTooSmall,
    DimensionError,
    GammaTooSmall,
    SampleTooLarge,
    energy_statistic,
    expected_norm_to_gaussian,
    hj_statistic,
    hjm_statistic,
    hz_default_gamma,
    hz_statistic,
    mardia_kurt_test,
    mardia_skew_test,
    scaled_residuals,
    zghoul_statistic,
)


def _res(rng, n, d):
    return scaled_residuals(rng.standard_normal((n, d)))


def test_zghoul_matches_quadrature():
    rng = np.random.default_rng(21)
    for gamma in (2.5, 3.0, 15.0):
        res = _res(rng, 8, 1)
        got = zghoul_statistic(res, gamma)
        assert got == pytest.approx(
            oracles.quad_zghoul(res.residuals[:, 0], gamma), rel=1e-9
        )


def test_zghoul_domain():
    rng = np.random.default_rng(22)
    with pytest.raises(DimensionError):
        zghoul_statistic(_res(rng, 10, 2), 3.0)
    with pytest.raises(GammaTooSmall):
        zghoul_statistic(_res(rng, 10, 1), 2.0)


def test_hj_matches_quadrature_and_reduces_to_zghoul():
    rng = np.random.default_rng(23)
    for d in (1, 2):
        for beta in (1.5, 2.0, 5.0):
            res = _res(rng, int(rng.integers(d + 2, 11)), d)
            got = hj_statistic(res, beta)
            assert got == pytest.approx(oracles.quad_hj(res.residuals, beta), rel=1e-9)
    res = _res(rng, 9, 1)
    # in one dimension the two definitions coincide (same weight parameter)
    assert hj_statistic(res, 3.0) == zghoul_statistic(res, 3.0)


def test_hj_domain():
    res = _res(np.random.default_rng(24), 10, 2)
    with pytest.raises(BetaTooSmall):
        hj_statistic(res, 1.0)


def test_hz_default_bandwidth():
    # (1/sqrt 2) ((2d+1) n / 4)^{1/(d+4)}
    assert hz_default_gamma(50, 2) == pytest.approx(1.408635, abs=5e-6)
    assert hz_default_gamma(4, 1) == pytest.approx(3.0 ** 0.2 / math.sqrt(2.0), rel=1e-15)


def test_hz_matches_quadrature():
    rng = np.random.default_rng(25)
    for d in (1, 2):
        res = _res(rng, 10, d)
        for gamma in (0.8, 1.5, None):
            g = hz_default_gamma(res.n, res.d) if gamma is None else gamma
            got = hz_statistic(res, gamma)
            assert got == pytest.approx(oracles.quad_hz(res.residuals, g), rel=1e-9)
    with pytest.raises(GammaTooSmall):
        hz_statistic(res, 0.0)


def test_hjm_matches_quadrature():
    rng = np.random.default_rng(26)
    for d in (1, 2):
        for gamma in (1.5, 5.0):
            res = _res(rng, 8, d)
            got = hjm_statistic(res, gamma)
            assert got == pytest.approx(oracles.quad_hjm(res.residuals, gamma), rel=1e-9)


def test_hjm_domain_and_cost_cap():
    rng = np.random.default_rng(27)
    with pytest.raises(GammaTooSmall):
        hjm_statistic(_res(rng, 10, 1), 1.0)
    big = _res(rng, 120, 1)
    with pytest.raises(SampleTooLarge):
        hjm_statistic(big, 5.0)
    # explicit cap raise allows it
    assert np.isfinite(hjm_statistic(big, 5.0, n_cap=150))


def test_expected_norm_exact_d1():
    # E|a - Z| = 2 phi(a) + a (2 Phi(a) - 1); at a = 0 it is sqrt(2/pi)
    assert expected_norm_to_gaussian(0.0, 1) == pytest.approx(
        math.sqrt(2.0 / math.pi), rel=1e-12
    )
    for a in (0.25, 1.0, 2.0, 4.0):
        assert expected_norm_to_gaussian(a * a, 1) == pytest.approx(
            oracles.expected_norm_d1_exact(a), rel=1e-10
        )


def test_expected_norm_mc_higher_d():
    for d in (2, 3, 5):
        for a in (0.5, 1.5):
            sq = a * a
            want, se = oracles.expected_norm_mc(np.r_[a, np.zeros(d - 1)], d)
            assert abs(expected_norm_to_gaussian(sq, d) - want) <= 4.0 * se


def test_energy_statistic_matches_definition():
    rng = np.random.default_rng(28)
    for d in (1, 2, 3):
        res = _res(rng, 12, d)
        y = res.residuals
        n = res.n
        mean_const = 2.0 * math.gamma((d + 1) / 2.0) / math.gamma(d / 2.0)
        expect_term = np.mean(
            [expected_norm_to_gaussian(float(v @ v), d) for v in y]
        )
        pair_term = np.mean(np.linalg.norm(y[:, None, :] - y[None, :, :], axis=2))
        want = n * (2.0 * expect_term - mean_const - pair_term)
        assert energy_statistic(res) == pytest.approx(want, rel=1e-8)


def test_mardia_tests_report_statistic_and_pvalue():
    rng = np.random.default_rng(29)
    res = _res(rng, 200, 2)
    b1, p1 = mardia_skew_test(res)
    assert b1 == pytest.approx(oracles.brute_b1(res.residuals), rel=1e-9)
    assert 0.0 < p1 <= 1.0
    b2, p2 = mardia_kurt_test(res)
    assert b2 == pytest.approx(oracles.brute_b2(res.residuals), rel=1e-10)
    assert 0.0 < p2 <= 1.0
    # a grossly skewed sample must be flagged
    skewed = scaled_residuals(rng.standard_exponential(200) ** 2)
    assert mardia_skew_test(skewed)[1] < 1e-4


def test_statistics_nonnegative_up_to_roundoff():
    # every statistic is n * integral of a square, so genuine negatives are
    # sign bugs; the floor is roundoff relative to the gross term magnitude
    rng = np.random.default_rng(31)
    for _ in range(15):
        d = int(rng.integers(1, 4))
        res = _res(rng, int(rng.integers(d + 2, 30)), d)
        n = res.n
        for beta in (1.5, 2.0, 50.0):
            gross = n * math.pi ** (d / 2.0) * (beta - 1.0) ** (-d / 2.0)
            assert hj_statistic(res, beta) >= -1e-10 * gross
        for g in (1e-3, 0.5, 1.0, 10.0):
            assert hz_statistic(res, g) >= -1e-10
        for g in (1.5, 5.0, 100.0):
            gross = n * (math.pi / g) ** (d / 2.0)
            assert hjm_statistic(res, g) >= -1e-9 * gross
        assert energy_statistic(res) >= -1e-9 * n
        if d == 1:
            for g in (2.5, 50.0):
                gross = n * math.sqrt(math.pi / (g - 1.0))
                assert zghoul_statistic(res, g) >= -1e-10 * gross


def test_hz_vanishes_at_tiny_bandwidth():
    # gamma -> 0+ turns every exponential into 1 and the three terms cancel;
    # the closed form must keep that cancellation clean
    rng = np.random.default_rng(32)
    for d in (1, 2, 3):
        res = _res(rng, 20, d)
        assert abs(hz_statistic(res, 1e-3)) <= 1e-3


def test_all_statistics_affine_invariant_spot():
    rng = np.random.default_rng(30)
    x = rng.standard_normal((25, 2))
    a = np.array([[2.0, 0.7], [-0.4, 1.1]])
    b = np.array([5.0, -3.0])
    r1 = scaled_residuals(x)
    r2 = scaled_residuals(x @ a.T + b)
    for f in (
        lambda r: hj_statistic(r, 2.0),
        lambda r: hz_statistic(r),
        energy_statistic,
        lambda r: hjm_statistic(r, 5.0),
        lambda r: mardia_skew_test(r)[0],
        lambda r: mardia_kurt_test(r)[0],
    ):
        assert f(r1) == pytest.approx(f(r2), rel=1e-10)
