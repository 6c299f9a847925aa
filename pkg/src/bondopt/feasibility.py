"""Logistic regression predicting the probability that a configuration is feasible.

Fitted by Newton iterations on the ridge-penalized Bernoulli log-likelihood
(the intercept is never penalized). The small default penalty keeps the
coefficients finite on linearly separable data, which is common early in a
campaign when only a handful of configurations have been observed.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .errors import DomainError

__all__ = ["FeasibilityClassifier", "majority_label"]


def majority_label(outcomes) -> int:
    """1 iff at least half of the replications are feasible."""
    outcomes = list(outcomes)
    if not outcomes:
        raise DomainError("majority label needs at least one outcome")
    pf = sum(1 for o in outcomes if o.feasible) / len(outcomes)
    return 1 if pf >= 0.5 else 0


def _sigmoid(t: np.ndarray) -> np.ndarray:
    out = np.empty_like(t)
    pos = t >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-t[pos]))
    e = np.exp(t[~pos])
    out[~pos] = e / (1.0 + e)
    return out


class FeasibilityClassifier(BaseEstimator):
    """Ridge-penalized logistic regression on unit-scaled inputs.

    Attributes after fit: ``intercept_``, ``coef_`` (shape (d,)),
    ``converged_``, ``n_iter_`` and ``objective_path_`` (penalized
    log-likelihood after each Newton step, non-decreasing).
    """

    def __init__(self, reg: float = 1e-3, max_iter: int = 200, tol: float = 1e-8):
        self.reg = reg
        self.max_iter = max_iter
        self.tol = tol

    def fit(self, X, y):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        y = np.asarray(y, dtype=float).ravel()
        n, d = X.shape
        if y.shape[0] != n or n < 1:
            raise DomainError("X and y lengths differ or are empty")
        if not np.all(np.isin(y, (0.0, 1.0))):
            raise DomainError("labels must be 0 or 1")

        Xd = np.hstack([np.ones((n, 1)), X])
        beta = np.zeros(d + 1)
        penalty_mask = np.ones(d + 1)
        penalty_mask[0] = 0.0

        def objective(b):
            t = Xd @ b
            # log-likelihood sum(y*t - log(1+e^t)), stable via logaddexp
            ll = float(y @ t - np.logaddexp(0.0, t).sum())
            return ll - self.reg * float(np.sum(penalty_mask * b**2))

        path = [objective(beta)]
        converged = False
        it = 0
        for it in range(1, self.max_iter + 1):
            p = _sigmoid(Xd @ beta)
            grad = Xd.T @ (y - p) - 2 * self.reg * penalty_mask * beta
            if np.linalg.norm(grad) < self.tol:
                converged = True
                it -= 1
                break
            w = np.maximum(p * (1 - p), 1e-12)
            H = (Xd * w[:, None]).T @ Xd + 2 * self.reg * np.diag(penalty_mask)
            try:
                step = np.linalg.solve(H, grad)
            except np.linalg.LinAlgError:
                step = np.linalg.lstsq(H, grad, rcond=None)[0]
            # Backtrack until the penalized likelihood does not decrease
            # beyond float rounding noise of the sum itself.
            scale = 1.0
            current = path[-1]
            slack = 1e-12 * (1.0 + abs(current))
            for _ in range(50):
                candidate = beta + scale * step
                if objective(candidate) >= current - slack:
                    break
                scale /= 2
            beta = beta + scale * step
            path.append(objective(beta))
        else:
            p = _sigmoid(Xd @ beta)
            grad = Xd.T @ (y - p) - 2 * self.reg * penalty_mask * beta
            converged = bool(np.linalg.norm(grad) < self.tol)

        self.intercept_ = float(beta[0])
        self.coef_ = beta[1:].copy()
        self.converged_ = converged
        self.n_iter_ = it
        self.objective_path_ = path
        return self

    def _check_fitted(self):
        if not hasattr(self, "coef_"):
            raise NotFittedError("this FeasibilityClassifier instance is not fitted yet")

    def decision_function(self, X) -> np.ndarray:
        self._check_fitted()
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return self.intercept_ + X @ self.coef_

    def predict_pf(self, X) -> np.ndarray:
        """P(feasible) for each row of X, always strictly inside (0, 1)."""
        return _sigmoid(self.decision_function(X))

    def predict_proba(self, X) -> np.ndarray:
        p1 = self.predict_pf(X)
        return np.column_stack([1 - p1, p1])

    def predict(self, X) -> np.ndarray:
        return (self.predict_pf(X) >= 0.5).astype(int)
