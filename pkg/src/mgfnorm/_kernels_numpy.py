"""Pure-numpy statistic kernels (reference backend).

Every kernel consumes batched Gram matrices ``gram`` of shape (B, n, n) and
squared norms ``sqn`` of shape (B, n) of scaled residuals, never the raw
residuals, so affine invariance is structural. Returns one value per batch
element. The numba backend in ``_kernels_numba`` mirrors these semantics;
``_dispatch`` selects between them.

All formulas are the closed forms of the corresponding weighted-L2 integrals;
see the module docstrings in ``statistic`` and ``competitors``.
"""

import math

import numpy as np
from scipy.special import gammaln

# iteration cap for the expected-distance series; exceeding it returns NaN
# and the caller raises SeriesNonConvergence
_SERIES_MAX_TERMS = 1000


def t_stat(gram, sqn, gamma, d):
    """Raw T statistic: (1/n)(pi/g)^{d/2} sum_jk e^{||Y+||^2/4g} [...]"""
    n = gram.shape[-1]
    plus = sqn[:, :, None] + sqn[:, None, :] + 2.0 * gram
    bracket = (
        gram
        - plus / (2.0 * gamma)
        + d / (2.0 * gamma)
        + plus / (4.0 * gamma * gamma)
    )
    total = np.sum(np.exp(plus / (4.0 * gamma)) * bracket, axis=(1, 2))
    return (math.pi / gamma) ** (d / 2.0) * total / n


def skewness_sums(gram, sqn):
    """Invariant skewness statistics (b1, b1_tilde).

    b1 = n^-2 sum_jk (Y_j^T Y_k)^3
    b1_tilde = n^-2 sum_jk Y_j^T Y_k ||Y_j||^2 ||Y_k||^2
    """
    n = gram.shape[-1]
    b1 = np.sum(gram ** 3, axis=(1, 2)) / (n * n)
    b1t = np.einsum("bjk,bj,bk->b", gram, sqn, sqn) / (n * n)
    return b1, b1t


def hj_stat(gram, sqn, beta, d):
    """MGF-based L2 statistic n * int (M_n - e^{||t||^2/2})^2 e^{-b||t||^2} dt.

    pi^{d/2} { (1/n) sum_jk b^{-d/2} e^{||Y_j+Y_k||^2/4b}
               + n (b-1)^{-d/2}
               - 2 sum_j (b-1/2)^{-d/2} e^{||Y_j||^2/(4b-2)} }
    """
    n = gram.shape[-1]
    plus = sqn[:, :, None] + sqn[:, None, :] + 2.0 * gram
    s1 = np.sum(np.exp(plus / (4.0 * beta)), axis=(1, 2))
    s2 = np.sum(np.exp(sqn / (4.0 * beta - 2.0)), axis=1)
    return math.pi ** (d / 2.0) * (
        s1 * beta ** (-d / 2.0) / n
        + n * (beta - 1.0) ** (-d / 2.0)
        - 2.0 * (beta - 0.5) ** (-d / 2.0) * s2
    )


def hz_stat(gram, sqn, gamma, d):
    """Characteristic-function L2 statistic (Gaussian-kernel weight).

    n^-2 sum_jk e^{-g^2/2 ||Y_j-Y_k||^2}
    - 2 (1+g^2)^{-d/2} n^-1 sum_j e^{-g^2 ||Y_j||^2 / (2(1+g^2))}
    + (1+2g^2)^{-d/2}
    """
    n = gram.shape[-1]
    g2 = gamma * gamma
    dist2 = sqn[:, :, None] + sqn[:, None, :] - 2.0 * gram
    # clip tiny negatives from cancellation on the diagonal
    np.maximum(dist2, 0.0, out=dist2)
    s1 = np.sum(np.exp(-0.5 * g2 * dist2), axis=(1, 2))
    s2 = np.sum(np.exp(-g2 * sqn / (2.0 * (1.0 + g2))), axis=1)
    return (
        s1 / (n * n)
        - 2.0 * (1.0 + g2) ** (-d / 2.0) * s2 / n
        + (1.0 + 2.0 * g2) ** (-d / 2.0)
    )


def expected_norm_gauss(sq_norm, d):
    """E||a - Z||, Z ~ N(0, I_d), as a function of ||a||^2 (vectorized).

    Positive-term series sqrt(2) e^{-lam} sum_k lam^k/k! G((d+1)/2+k)/G(d/2+k)
    with lam = ||a||^2 / 2; every term is positive, so no cancellation.
    Entries that fail to converge within the term cap come back as NaN.
    """
    lam = np.atleast_1d(np.asarray(sq_norm, dtype=float)) / 2.0
    term = np.full(lam.shape, math.exp(gammaln((d + 1) / 2.0) - gammaln(d / 2.0)))
    total = term.copy()
    converged = np.zeros(lam.shape, dtype=bool)
    for k in range(_SERIES_MAX_TERMS):
        term = term * lam / (k + 1.0) * ((d + 1) / 2.0 + k) / (d / 2.0 + k)
        total += np.where(converged, 0.0, term)
        converged |= (term <= 1e-17 * total) & (k >= lam)
        if converged.all():
            break
    else:
        total[~converged] = np.nan
    return math.sqrt(2.0) * np.exp(-lam) * total


def energy_stat(gram, sqn, d):
    """Energy statistic n (2/n sum_j E||Y_j - Z|| - E||Z-Z'|| - n^-2 sum ||Y_j-Y_k||)."""
    n = gram.shape[-1]
    const = 2.0 * math.exp(gammaln((d + 1) / 2.0) - gammaln(d / 2.0))
    e_to_gauss = expected_norm_gauss(sqn.ravel(), d).reshape(sqn.shape)
    dist2 = sqn[:, :, None] + sqn[:, None, :] - 2.0 * gram
    np.maximum(dist2, 0.0, out=dist2)
    mean_pair = np.sum(np.sqrt(dist2), axis=(1, 2)) / (n * n)
    return n * (2.0 * e_to_gauss.mean(axis=1) - const - mean_pair)


def hjm_stat(gram, sqn, gamma, d):
    """Combined cos/exp L2 statistic, corrected closed form (O(n^4) per sample).

    (pi/g)^{d/2} [ (1/2n^3) sum_{jklm} { e^{(||Y+_lm||^2-||Y-_jk||^2)/4g} cos(Y-_jk . Y+_lm / 2g)
                                       + e^{(||Y+_lm||^2-||Y+_jk||^2)/4g} cos(Y+_jk . Y+_lm / 2g) }
                   - (2/n) sum_{jk} e^{(||Y_j||^2-||Y_k||^2)/4g} cos(Y_j.Y_k / 2g) + n ]
    """
    b, n, _ = gram.shape
    out = np.empty(b)
    for i in range(b):
        g = gram[i]
        s = sqn[i]
        # pairwise products with the (l,m) "+" pairs via broadcasting over 4 axes
        a_jl = g[:, None, :, None]
        a_jm = g[:, None, None, :]
        a_kl = g[None, :, :, None]
        a_km = g[None, :, None, :]
        udotv = a_jl + a_jm - a_kl - a_km          # (Y_j - Y_k) . (Y_l + Y_m)
        pdotv = a_jl + a_jm + a_kl + a_km          # (Y_j + Y_k) . (Y_l + Y_m)
        minus_n = (s[:, None] + s[None, :] - 2.0 * g)[:, :, None, None]
        plus_n_jk = (s[:, None] + s[None, :] + 2.0 * g)[:, :, None, None]
        plus_n_lm = (s[:, None] + s[None, :] + 2.0 * g)[None, None, :, :]
        sum1 = np.sum(
            np.exp((plus_n_lm - minus_n) / (4.0 * gamma))
            * np.cos(udotv / (2.0 * gamma))
        )
        sum2 = np.sum(
            np.exp((plus_n_lm - plus_n_jk) / (4.0 * gamma))
            * np.cos(pdotv / (2.0 * gamma))
        )
        sum3 = np.sum(
            np.exp((s[:, None] - s[None, :]) / (4.0 * gamma))
            * np.cos(g / (2.0 * gamma))
        )
        out[i] = (sum1 + sum2) / (2.0 * n ** 3) - 2.0 * sum3 / n + n
    return (math.pi / gamma) ** (d / 2.0) * out
