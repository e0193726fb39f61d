"""Sample moments and the scaled-residual transformation.

Every test statistic in this package operates on the scaled residuals

    Y_j = S^{-1/2} (X_j - Xbar),   j = 1..n,

where Xbar is the sample mean and S the sample covariance matrix with
divisor n (NOT n-1; the n-1 convention would shift every statistic).
S^{-1/2} is the unique symmetric positive-definite inverse square root.
The residuals have exact mean zero and empirical covariance identity, so
any statistic that consumes only their scalar products is affine invariant
by construction.
"""

import threading

import numpy as np

from .errors import SingularCovariance

# relative eigenvalue threshold below which S is treated as singular
SINGULARITY_RTOL = 1e-12


def validate_data(data):
    """Coerce ``data`` to a float (n, d) matrix of observations and check it.

    Parameters
    ----------
    data : array_like
        n observations in rows, d coordinates in columns. A 1-d array is
        treated as a single column.

    Returns
    -------
    ndarray of shape (n, d)

    Raises
    ------
    ValueError
        on non-finite entries or n < d + 1 (S is a.s. singular otherwise).
    """
    x = np.asarray(data, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise ValueError("data must be a 2-d array of shape (n, d)")
    n, d = x.shape
    if d < 1:
        raise ValueError("data must have at least one column")
    if not np.all(np.isfinite(x)):
        bad = np.argwhere(~np.isfinite(x))[0]
        raise ValueError(
            "non-finite entry at row %d, column %d" % (bad[0], bad[1])
        )
    if n < d + 1:
        raise ValueError(
            "need at least d+1 = %d observations for an invertible "
            "covariance matrix, got n = %d" % (d + 1, n)
        )
    return x


def sample_mean(data):
    """Coordinate-wise arithmetic mean of the observations."""
    x = validate_data(data)
    return x.mean(axis=0)


def sample_covariance(data):
    """Sample covariance matrix with divisor n.

    Returns the d x d matrix S = (1/n) sum_j (X_j - Xbar)(X_j - Xbar)^T.
    """
    x = validate_data(data)
    xc = x - x.mean(axis=0)
    return (xc.T @ xc) / x.shape[0]


def inv_sqrt_sym(s, rtol=SINGULARITY_RTOL):
    """Symmetric inverse square root of a symmetric positive-definite matrix.

    Uses the eigendecomposition S = Q diag(lam) Q^T and returns
    Q diag(lam^{-1/2}) Q^T.

    Parameters
    ----------
    s : array_like, symmetric d x d
    rtol : float
        Relative singularity threshold: raises if
        min(lam) <= rtol * max(lam). Scale-relative so that rescaling the
        data cannot flip the verdict.

    Raises
    ------
    SingularCovariance
        if the matrix is numerically singular or not positive definite.
    """
    s = np.asarray(s, dtype=float)
    evals, evecs = np.linalg.eigh(s)
    if evals[-1] <= 0.0 or evals[0] <= rtol * evals[-1]:
        raise SingularCovariance(
            "matrix is numerically singular (eigenvalue range [%g, %g]); "
            "data may be collinear or n too small" % (evals[0], evals[-1])
        )
    return (evecs / np.sqrt(evals)) @ evecs.T


class ResidualSet(object):
    """Scaled residuals with cached squared norms and lazy Gram matrix.

    Immutable after construction. The Gram matrix G[j, k] = Y_j^T Y_k is
    computed on first access and cached; the compute is guarded by a lock
    so concurrent first reads see a single consistent array.

    Attributes
    ----------
    residuals : ndarray (n, d), rows Y_j
    sq_norms : ndarray (n,), ||Y_j||^2
    n, d : int
    """

    def __init__(self, residuals):
        y = np.asarray(residuals, dtype=float)
        y.setflags(write=False)
        self.residuals = y
        self.n, self.d = y.shape
        sq = np.einsum("ij,ij->i", y, y)
        sq.setflags(write=False)
        self.sq_norms = sq
        self._gram = None
        self._gram_lock = threading.Lock()

    @property
    def gram(self):
        """n x n matrix of scalar products Y_j^T Y_k (computed once)."""
        if self._gram is None:
            with self._gram_lock:
                if self._gram is None:
                    g = self.residuals @ self.residuals.T
                    g.setflags(write=False)
                    self._gram = g
        return self._gram


def scaled_residuals(data):
    """Transform observations to scaled residuals Y_j = S^{-1/2}(X_j - Xbar).

    Returns
    -------
    ResidualSet

    Raises
    ------
    SingularCovariance
        if the sample covariance matrix is numerically singular.
    """
    x = validate_data(data)
    xc = x - x.mean(axis=0)
    s = (xc.T @ xc) / x.shape[0]
    r = inv_sqrt_sym(s)
    return ResidualSet(xc @ r)
