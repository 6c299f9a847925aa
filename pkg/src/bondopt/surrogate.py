"""Stochastic kriging: a Gaussian-kernel GP with a fixed heteroscedastic
noise diagonal.

The model regresses the scalarized sample means y_i observed with known
replication noise Var_i/r_i. The predictive mean solves against the noisy
covariance K + Sigma_eps, while the exploration standard deviation is the
ordinary-kriging one, computed from the noise-free K alone:

    mean(x*) = mu + k* (K + Sigma_eps)^-1 (y - mu)
    sd^2(x*) = max(0, k** - k* K^-1 k*^T)

Outputs are standardized internally for a stable likelihood search; all
stored hyperparameters and factorizations are in natural output units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg, optimize
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .errors import DomainError, ModelError

__all__ = ["KernelParams", "kernel_eval", "gaussian_gram", "StochasticKriging", "noise_diagonal"]


@dataclass(frozen=True)
class KernelParams:
    """Gaussian-kernel hyperparameters: process variance and inverse lengthscales."""

    sigma2: float
    theta: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "theta", tuple(float(t) for t in self.theta))
        if not (math.isfinite(self.sigma2) and self.sigma2 > 0):
            raise DomainError("process variance must be positive and finite")
        if any(t < 0 or not math.isfinite(t) for t in self.theta):
            raise DomainError("inverse lengthscales must be finite and non-negative")


def kernel_eval(x_i, x_j, params: KernelParams) -> float:
    """sigma^2 * exp(-sum_k (theta_k |x_ik - x_jk|)^2)."""
    x_i = np.asarray(x_i, dtype=float)
    x_j = np.asarray(x_j, dtype=float)
    if x_i.shape != x_j.shape or x_i.ndim != 1:
        raise DomainError("kernel inputs must be equal-length vectors")
    if x_i.shape[0] != len(params.theta):
        raise DomainError("kernel input dimension does not match theta")
    theta = np.asarray(params.theta)
    return float(params.sigma2 * np.exp(-np.sum((theta * np.abs(x_i - x_j)) ** 2)))


def _sq_dists(X: np.ndarray, Z: np.ndarray) -> np.ndarray:
    """Per-dimension squared distances, shape (len(X), len(Z), d)."""
    return (X[:, None, :] - Z[None, :, :]) ** 2


def gaussian_gram(X: np.ndarray, Z: np.ndarray, params: KernelParams) -> np.ndarray:
    d2 = _sq_dists(np.asarray(X, float), np.asarray(Z, float))
    theta2 = np.asarray(params.theta) ** 2
    return params.sigma2 * np.exp(-d2 @ theta2)


def _negative_log_likelihood(z, d2, y, noise, jitter):
    """Negative Gaussian log marginal likelihood and its analytic gradient.

    ``z`` stacks (log sigma^2, log theta_1..d); ``d2`` holds per-dimension
    squared input distances of shape (n, n, d).
    """
    n, d = d2.shape[0], d2.shape[2]
    sigma2 = math.exp(z[0])
    theta = np.exp(z[1:])
    R = np.exp(-d2 @ theta**2)
    A = sigma2 * (R + jitter * np.eye(n)) + np.diag(noise)
    try:
        L = linalg.cho_factor(A, lower=True)
    except linalg.LinAlgError:
        return 1e25, np.zeros(d + 1)
    alpha = linalg.cho_solve(L, y)
    logdet = 2 * np.sum(np.log(np.diag(L[0])))
    nll = 0.5 * float(y @ alpha) + 0.5 * logdet + 0.5 * n * math.log(2 * math.pi)
    Ainv = linalg.cho_solve(L, np.eye(n))
    W = Ainv - np.outer(alpha, alpha)
    grad = np.empty(d + 1)
    grad[0] = 0.5 * np.sum(W * (sigma2 * (R + jitter * np.eye(n))))
    for k in range(d):
        dA = sigma2 * R * (-2 * theta[k] ** 2 * d2[:, :, k])
        grad[k + 1] = 0.5 * np.sum(W * dA)
    return nll, grad


class StochasticKriging(BaseEstimator):
    """GP regressor with a known per-point noise diagonal.

    Parameters
    ----------
    n_restarts : multi-start count for the likelihood search.
    random_state : seed for the restart starting points.
    optimize : when False, ``fixed_sigma2``/``fixed_theta`` are used as-is
        (natural output units) and no likelihood search runs.
    log_sigma2_bounds, log_theta_bounds : box for the search, in log space
        of the standardized outputs / unit-cube inputs.
    base_jitter, max_jitter : relative diagonal jitter for the noisy solve,
        escalated tenfold on factorization failure.
    sd_base_jitter : relative jitter for the noise-free ordinary-kriging
        factorization (kept smaller so training-point sd stays near zero).
    """

    def __init__(
        self,
        n_restarts: int = 10,
        random_state: int = 0,
        optimize: bool = True,
        fixed_sigma2: float | None = None,
        fixed_theta=None,
        log_sigma2_bounds: tuple[float, float] = (-6.0, 6.0),
        log_theta_bounds: tuple[float, float] = (-4.0, 4.0),
        base_jitter: float = 1e-8,
        max_jitter: float = 1e-2,
        sd_base_jitter: float = 1e-10,
    ):
        self.n_restarts = n_restarts
        self.random_state = random_state
        self.optimize = optimize
        self.fixed_sigma2 = fixed_sigma2
        self.fixed_theta = fixed_theta
        self.log_sigma2_bounds = log_sigma2_bounds
        self.log_theta_bounds = log_theta_bounds
        self.base_jitter = base_jitter
        self.max_jitter = max_jitter
        self.sd_base_jitter = sd_base_jitter

    # -- fitting ------------------------------------------------------------

    def fit(self, X, y, noise=None):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        y = np.asarray(y, dtype=float).ravel()
        n, d = X.shape
        if n < 1:
            raise DomainError("training set must not be empty")
        if y.shape[0] != n:
            raise DomainError("X and y lengths differ")
        if noise is None:
            noise = np.zeros(n)
        noise = np.asarray(noise, dtype=float).ravel()
        if noise.shape[0] != n:
            raise DomainError("noise diagonal length must match X")
        if not np.all(np.isfinite(X)) or not np.all(np.isfinite(y)) or not np.all(np.isfinite(noise)):
            raise DomainError("training inputs, outputs and noise must be finite")
        if np.any(noise < 0):
            raise DomainError("noise entries must be non-negative")

        mean = float(y.mean())
        resid = y - mean
        scale = float(np.std(y))
        if scale <= 0:
            scale = 1.0

        if self.optimize:
            if n >= 2:
                sigma2_std, theta = self._maximize_likelihood(X, resid / scale, noise / scale**2)
            else:
                sigma2_std, theta = 1.0, np.ones(d)
            sigma2 = sigma2_std * scale**2
        else:
            if self.fixed_sigma2 is None or self.fixed_theta is None:
                raise DomainError("optimize=False requires fixed_sigma2 and fixed_theta")
            sigma2 = float(self.fixed_sigma2)
            theta = np.asarray(self.fixed_theta, dtype=float)
            if theta.shape[0] != d:
                raise DomainError("fixed_theta dimension does not match X")

        params = KernelParams(sigma2=sigma2, theta=tuple(theta))
        K = gaussian_gram(X, X, params)

        L, jitter = self._factorize(K + np.diag(noise), sigma2, self.base_jitter)
        alpha = linalg.cho_solve(L, resid)
        L_sd, sd_jitter = self._factorize(K, sigma2, self.sd_base_jitter)

        self.X_ = X
        self.y_ = y
        self.noise_ = noise
        self.mean_ = mean
        self.y_scale_ = scale
        self.kernel_params_ = params
        self.alpha_ = alpha
        self._cho = L
        self._cho_sd = L_sd
        self.jitter_ = jitter
        self.sd_jitter_ = sd_jitter
        self.log_likelihood_ = self.log_marginal_likelihood(params)
        return self

    @staticmethod
    def _factorize(A: np.ndarray, sigma2: float, start: float, limit: float | None = None):
        """Cholesky with tenfold jitter escalation, relative to sigma^2."""
        jitter = start
        limit = 1e-2 if limit is None else limit
        eye = np.eye(A.shape[0])
        while True:
            try:
                L = linalg.cho_factor(A + jitter * sigma2 * eye, lower=True)
                return L, jitter
            except linalg.LinAlgError:
                jitter *= 10
                if jitter > limit:
                    raise ModelError(
                        "covariance not positive definite even at maximum jitter"
                    ) from None

    def _maximize_likelihood(self, X, y_std, noise_std):
        n, d = X.shape
        d2 = _sq_dists(X, X)
        lo_s, hi_s = self.log_sigma2_bounds
        lo_t, hi_t = self.log_theta_bounds
        bounds = [(lo_s, hi_s)] + [(lo_t, hi_t)] * d

        def nll_and_grad(z):
            return _negative_log_likelihood(z, d2, y_std, noise_std, self.base_jitter)

        rng = np.random.default_rng(self.random_state)
        starts = [np.zeros(d + 1)]
        for _ in range(max(0, self.n_restarts - 1)):
            z = np.empty(d + 1)
            z[0] = rng.uniform(lo_s, hi_s)
            z[1:] = rng.uniform(lo_t, hi_t, size=d)
            starts.append(z)

        best = None
        for z0 in starts[: max(1, self.n_restarts)]:
            res = optimize.minimize(
                nll_and_grad, z0, jac=True, method="L-BFGS-B", bounds=bounds
            )
            if best is None or res.fun < best.fun:
                best = res
        return math.exp(best.x[0]), np.exp(best.x[1:])

    # -- prediction ---------------------------------------------------------

    def _check_fitted(self):
        if not hasattr(self, "alpha_"):
            raise NotFittedError("this StochasticKriging instance is not fitted yet")

    def predict(self, X, return_sd: bool = False):
        """Predictive mean and, optionally, the ordinary-kriging sd."""
        self._check_fitted()
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.X_.shape[1]:
            raise DomainError("prediction input dimension does not match training data")
        Kx = gaussian_gram(X, self.X_, self.kernel_params_)
        mean = self.mean_ + Kx @ self.alpha_
        if not return_sd:
            return mean
        v = linalg.solve_triangular(self._cho_sd[0], Kx.T, lower=True)
        var = self.kernel_params_.sigma2 - np.sum(v**2, axis=0)
        sd = np.sqrt(np.maximum(var, 0.0))
        return mean, sd

    def log_marginal_likelihood(self, params: KernelParams) -> float:
        """Gaussian log marginal likelihood of (y - mean) at given natural-space
        hyperparameters, using the base jitter policy."""
        self._check_fitted()
        n = self.X_.shape[0]
        K = gaussian_gram(self.X_, self.X_, params)
        A = K + np.diag(self.noise_) + self.base_jitter * params.sigma2 * np.eye(n)
        L = linalg.cho_factor(A, lower=True)
        resid = self.y_ - self.mean_
        alpha = linalg.cho_solve(L, resid)
        logdet = 2 * np.sum(np.log(np.diag(L[0])))
        return float(-0.5 * resid @ alpha - 0.5 * logdet - 0.5 * n * math.log(2 * math.pi))


def noise_diagonal(observations, scalarizer) -> np.ndarray:
    """Replication noise of the scalarized mean at each observed point.

    ``scalarizer`` maps one Outcome to its scalar objective; each entry is
    the unbiased sample variance of those scalars divided by the replication
    count, and 0 for a single replication.
    """
    out = np.empty(len(observations))
    for i, obs in enumerate(observations):
        scalars = np.array([scalarizer(o) for o in obs.outcomes])
        if len(scalars) > 1:
            out[i] = scalars.var(ddof=1) / len(scalars)
        else:
            out[i] = 0.0
    return out
