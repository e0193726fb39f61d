"""Benchmark battery of normality tests evaluated on scaled residuals.

All of these are classical or recent competitors of the MGF statistic:

* ``zghoul_statistic``: univariate MGF-based L2 statistic
  n * int (M(t) - e^{t^2/2})^2 e^{-gamma t^2} dt.
* ``hj_statistic``: its d-variate generalization with weight e^{-beta ||t||^2}.
* ``hz_statistic``: characteristic-function L2 statistic with Gaussian
  weight, in the normalization (2 pi gamma^2)^{-d/2} int |Psi(t) - e^{-||t||^2/2}|^2
  e^{-||t||^2/(2 gamma^2)} dt (note: no leading factor n in this convention).
* ``energy_statistic``: the interpoint-distance (energy) statistic.
* ``hjm_statistic``: the combined cos/exp characterization statistic with a
  four-fold sum (O(n^4) cost, capped by default).
* ``mardia_skew_test`` / ``mardia_kurt_test``: moment tests with their
  asymptotic chi-square / normal p-values.

The closed forms of the L2 statistics are re-derived from their integral
definitions (the cross-checks against numerical quadrature live in the test
suite); several published displays of these formulas contain index and
bracket misprints, and the forms implemented here are the ones that match
the integrals.

Every statistic consumes only Gram products of the residuals, so all are
affine invariant. p-values for the L2 statistics come from the Monte Carlo
machinery, not from this module.
"""

import math

import numpy as np
from scipy import stats

from ._dispatch import get_kernels
from .errors import (
    BetaTooSmall,
    DimensionError,
    GammaTooSmall,
    SampleTooLarge,
    SeriesNonConvergence,
)
from .statistic import _batched

HJM_DEFAULT_N_CAP = 100


def zghoul_statistic(res, gamma):
    """Univariate MGF-based L2 statistic.

    sqrt(pi) [ n/sqrt(g-1) - 2/sqrt(g-1/2) sum_i e^{Y_i^2/(4g-2)}
               + 1/(n sqrt(g)) sum_{i,j} e^{(Y_i+Y_j)^2/(4g)} ]

    Requires d = 1 and gamma > 2.
    """
    if res.d != 1:
        raise DimensionError("this statistic is univariate, got d = %d" % res.d)
    if gamma <= 2.0:
        raise GammaTooSmall("gamma must exceed 2, got %g" % gamma)
    return hj_statistic(res, gamma)


def hj_statistic(res, beta):
    """Multivariate MGF-based L2 statistic n * int (M - e^{||t||^2/2})^2 e^{-b||t||^2} dt.

    Closed form:
    pi^{d/2} { (1/n) sum_{j,k} b^{-d/2} e^{||Y_j+Y_k||^2/(4b)}
               + n/(b-1)^{d/2}
               - 2 sum_j (b-1/2)^{-d/2} e^{||Y_j||^2/(4b-2)} }

    Requires beta > 1 (the reference-term integral diverges at 1).
    """
    if beta <= 1.0:
        raise BetaTooSmall("beta must exceed 1, got %g" % beta)
    gram, sqn = _batched(res)
    return float(get_kernels().hj_stat(gram, sqn, float(beta), res.d)[0])


def hz_default_gamma(n, d):
    """Bandwidth (1/sqrt2) ((2d+1) n / 4)^{1/(d+4)} (Gaussian-kernel optimum)."""
    return ((2 * d + 1) * n / 4.0) ** (1.0 / (d + 4)) / math.sqrt(2.0)


def hz_statistic(res, gamma=None):
    """Characteristic-function L2 statistic.

    n^-2 sum_{j,k} e^{-g^2 ||Y_j - Y_k||^2 / 2}
    - 2 (1+g^2)^{-d/2} n^-1 sum_j e^{-g^2 ||Y_j||^2/(2(1+g^2))}
    + (1+2g^2)^{-d/2}

    ``gamma=None`` selects the data-driven default bandwidth.
    """
    if gamma is None:
        gamma = hz_default_gamma(res.n, res.d)
    if gamma <= 0.0:
        raise GammaTooSmall("gamma must be positive, got %g" % gamma)
    gram, sqn = _batched(res)
    return float(get_kernels().hz_stat(gram, sqn, float(gamma), res.d)[0])


def expected_norm_to_gaussian(sq_norm, d):
    """E||a - Z|| for Z ~ N(0, I_d), as a function of ||a||^2.

    Evaluated by a positive-term series (see the kernel modules); converges
    for any argument, but an iteration cap guards pathological inputs.
    """
    out = get_kernels().expected_norm_gauss(sq_norm, d)
    if np.any(np.isnan(out)):
        raise SeriesNonConvergence(
            "expected-distance series did not converge; ||a||^2 too large"
        )
    if np.isscalar(sq_norm) or np.ndim(sq_norm) == 0:
        return float(out[0])
    return out


def energy_statistic(res):
    """Energy statistic of the scaled residuals.

    n ( (2/n) sum_j E||Y_j - Z|| - E||Z - Z'|| - n^-2 sum_{j,k} ||Y_j - Y_k|| )

    with Z, Z' independent N(0, I_d); E||Z - Z'|| = 2 Gamma((d+1)/2)/Gamma(d/2).
    """
    gram, sqn = _batched(res)
    out = float(get_kernels().energy_stat(gram, sqn, res.d)[0])
    if math.isnan(out):
        raise SeriesNonConvergence(
            "expected-distance series did not converge for some residual"
        )
    return out


def hjm_statistic(res, gamma, n_cap=HJM_DEFAULT_N_CAP):
    """Combined cos/exp L2 statistic (four-fold sum).

    n * int ( n^-2 sum_j cos(t^T Y_j) sum_k e^{t^T Y_k} - 1 )^2 e^{-g||t||^2} dt

    Requires gamma > 1. Cost is O(n^4); samples larger than ``n_cap``
    (default 100) are refused unless the cap is raised explicitly.
    """
    if gamma <= 1.0:
        raise GammaTooSmall("gamma must exceed 1, got %g" % gamma)
    if res.n > n_cap:
        raise SampleTooLarge(
            "n = %d exceeds the O(n^4) cost cap %d; pass a larger n_cap to "
            "force the computation" % (res.n, n_cap)
        )
    gram, sqn = _batched(res)
    return float(get_kernels().hjm_stat(gram, sqn, float(gamma), res.d)[0])


def mardia_skew_test(res):
    """Mardia skewness test: statistic b1 and asymptotic upper-tail p-value.

    n b1 / 6 is asymptotically chi-square with d(d+1)(d+2)/6 degrees of
    freedom under normality.
    """
    gram, sqn = _batched(res)
    b1, _ = get_kernels().skewness_sums(gram, sqn)
    b1 = float(b1[0])
    df = res.d * (res.d + 1) * (res.d + 2) / 6.0
    p = float(stats.chi2.sf(res.n * b1 / 6.0, df))
    return b1, p


def mardia_kurt_test(res):
    """Mardia kurtosis test: statistic b2 and two-sided asymptotic p-value.

    sqrt(n) (b2 - d(d+2)) is asymptotically N(0, 8d(d+2)); departures in
    either direction count against normality.
    """
    b2 = float(np.mean(res.sq_norms ** 2))
    d = res.d
    z = math.sqrt(res.n) * (b2 - d * (d + 2)) / math.sqrt(8.0 * d * (d + 2))
    p = 2.0 * float(stats.norm.sf(abs(z)))
    return b2, p
