"""Closed-form objects of the limiting null distribution.

Under normality (and gamma > 2) the statistic converges in distribution to
the squared weighted-L2 norm of a centred Gaussian random field W on R^d
whose matrix covariance kernel is

    K(s,t) = e^{(||s||^2+||t||^2)/2} ( e^{s^T t} (t s^T + I_d)
                                       - t s^T - (1 + s^T t) I_d ).

This module evaluates K, the exact mean of the limiting statistic for any
dimension, and its exact variance for d = 1. None of it is simulated; the
Monte Carlo machinery lives elsewhere.
"""

import math

import numpy as np

from .errors import DimensionMismatch, GammaTooSmall


def kernel(s, t, d=None):
    """Covariance kernel K(s, t), a d x d matrix.

    ``s`` and ``t`` must be vectors of the same length d (which may be
    passed explicitly as a cross-check). K(0,0) = 0 and K(s,t) = K(t,s)^T.
    """
    s = np.atleast_1d(np.asarray(s, dtype=float))
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if s.shape != t.shape or s.ndim != 1 or (d is not None and s.shape[0] != d):
        raise DimensionMismatch(
            "s and t must be vectors of equal length%s, got %r and %r"
            % ("" if d is None else " d = %d" % d, s.shape, t.shape)
        )
    d = s.shape[0]
    st = float(s @ t)
    ts_outer = np.outer(t, s)
    eye = np.eye(d)
    inner = math.exp(st) * (ts_outer + eye) - ts_outer - (1.0 + st) * eye
    return math.exp((s @ s + t @ t) / 2.0) * inner


def kernel_trace(t):
    """tr K(t, t) in closed form: e^{||t||^2}(e^{||t||^2}(d + ||t||^2) - (1+d)||t||^2 - d)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    d = t.shape[0]
    nt = float(t @ t)
    return math.exp(nt) * (math.exp(nt) * (d + nt) - (nt + d * nt) - d)


def limit_mean(gamma, d):
    """Exact mean of the limiting null statistic.

    E = (pi/(g-2))^{d/2} (d + d/(2(g-2)))
        - (d(d+1)/(2(g-1)) + d) (pi/(g-1))^{d/2}

    Requires gamma > 2 (the first term diverges at 2).
    """
    if gamma <= 2.0:
        raise GammaTooSmall("limit mean requires gamma > 2, got %g" % gamma)
    g2 = gamma - 2.0
    g1 = gamma - 1.0
    return (math.pi / g2) ** (d / 2.0) * (d + d / (2.0 * g2)) - (
        d * (d + 1) / (2.0 * g1) + d
    ) * (math.pi / g1) ** (d / 2.0)


def limit_variance_d1(gamma):
    """Exact variance of the limiting null statistic for d = 1.

    With beta = gamma - 1, delta = (beta^2-1)^{-1/2}, eta = (4 beta^2-1)^{-1/2}:

    Var = 2 pi ( 1/beta + 1/beta^3 + delta + delta^3 + (beta^2+2) delta^5 / 4
                 - 4 eta - 12 eta^3 - 16 (2 beta^2 + 1) eta^5 )
    """
    if gamma <= 2.0:
        raise GammaTooSmall("limit variance requires gamma > 2, got %g" % gamma)
    beta = gamma - 1.0
    delta = (beta * beta - 1.0) ** -0.5
    eta = (4.0 * beta * beta - 1.0) ** -0.5
    return 2.0 * math.pi * (
        1.0 / beta
        + beta ** -3.0
        + delta
        + delta ** 3
        + 0.25 * (beta * beta + 2.0) * delta ** 5
        - 4.0 * eta
        - 12.0 * eta ** 3
        - 16.0 * (2.0 * beta * beta + 1.0) * eta ** 5
    )
