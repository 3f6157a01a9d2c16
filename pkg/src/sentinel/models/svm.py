"""Support vector classifier trained by SMO on the dual problem.

Pairs of dual variables are optimized jointly (working-set choice by
Platt's heuristics) until every KKT violation is below tolerance or the
pass budget runs out. The decision function is
``sign(sum_i alpha_i y_i K(x_i, x) + b)`` with y in {-1, +1}.
"""

import numpy as np

from ..base import BaseEstimator, check_X_y, check_array, check_is_fitted, check_n_features
from ..errors import ValidationError

_GRAM_LIMIT = 5000  # precompute the full kernel matrix up to this many rows
_ALPHA_EPS = 1e-8
_STEP_EPS = 1e-10


def linear_kernel(A, B):
    return A @ B.T


def rbf_kernel(A, B, gamma):
    sq = (
        np.sum(A * A, axis=1)[:, None]
        + np.sum(B * B, axis=1)[None, :]
        - 2.0 * (A @ B.T)
    )
    np.maximum(sq, 0.0, out=sq)
    return np.exp(-gamma * sq)


def resolve_gamma(gamma, X):
    """Numeric gamma for the rbf kernel; 'scale' -> 1 / (d * Var(X))."""
    if gamma == "scale":
        var = float(X.var())
        return 1.0 / (X.shape[1] * var) if var > 0 else 1.0
    g = float(gamma)
    if g <= 0:
        raise ValidationError("rbf gamma must be positive (non-PSD kernel otherwise)")
    return g


class SupportVectorClassifier(BaseEstimator):
    """Binary SVC with linear or rbf kernel, trained by SMO.

    Parameters
    ----------
    C : float
        Box constraint on the dual variables.
    kernel : {"linear", "rbf"}
    gamma : "scale" or float
        rbf width; "scale" resolves to 1 / (d * Var(X)).
    tol : float
        KKT tolerance driving convergence.
    max_passes : int or None
        Work budget: one pass corresponds to n_samples pair steps; None
        means 10 * n_samples passes. If the budget runs out first, the
        best iterate is kept and ``converged_`` is False.
    seed : int
        Recorded for provenance. The maximal-violating-pair selection
        rule is fully deterministic, so the seed does not change the
        fit.
    """

    def __init__(self, C=1.0, kernel="rbf", gamma="scale", tol=1e-3,
                 max_passes=None, seed=0):
        self.C = C
        self.kernel = kernel
        self.gamma = gamma
        self.tol = tol
        self.max_passes = max_passes
        self.seed = seed

    # -- fitting ---------------------------------------------------------

    def fit(self, X, y):
        if self.C <= 0:
            raise ValidationError("C must be positive")
        if self.kernel not in ("linear", "rbf"):
            raise ValidationError("kernel must be 'linear' or 'rbf'")
        X, y = check_X_y(X, y)
        if int(y.max()) != 1:
            raise ValidationError("binary learner needs labels {0, 1} with both present")
        n, d = X.shape
        s = (2.0 * y - 1.0).astype(np.float64)
        gamma = resolve_gamma(self.gamma, X) if self.kernel == "rbf" else None
        max_passes = self.max_passes if self.max_passes is not None else 10 * n

        kern = _KernelCache(X, self.kernel, gamma)
        C, tol = float(self.C), float(self.tol)
        alpha = np.zeros(n)
        u = np.zeros(n)  # decision values excluding the bias

        def take_step(i1, i2):
            nonlocal u
            a1, a2 = alpha[i1], alpha[i2]
            s1, s2 = s[i1], s[i2]
            # E1 - E2 with the bias cancelled.
            dE = (u[i1] - s1) - (u[i2] - s2)
            sg = s1 * s2
            if s1 != s2:
                L, H = max(0.0, a2 - a1), min(C, C + a2 - a1)
            else:
                L, H = max(0.0, a2 + a1 - C), min(C, a2 + a1)
            if L >= H:
                return False
            k11, k12, k22 = kern.at(i1, i1), kern.at(i1, i2), kern.at(i2, i2)
            eta = k11 + k22 - 2.0 * k12
            if eta > 0:
                a2new = a2 + s2 * dE / eta
                a2new = min(max(a2new, L), H)
            else:
                # Flat direction (coincident points): the objective is
                # linear along the constraint, so the gain decides the
                # endpoint.
                gain_L = _pair_gain(L, a1, a2, sg, s1, s2, u[i1], u[i2], k11, k12, k22)
                gain_H = _pair_gain(H, a1, a2, sg, s1, s2, u[i1], u[i2], k11, k12, k22)
                if gain_L > gain_H + _STEP_EPS:
                    a2new = L
                elif gain_H > gain_L + _STEP_EPS:
                    a2new = H
                else:
                    return False
            if abs(a2new - a2) < _STEP_EPS * (a2new + a2 + _STEP_EPS):
                return False
            a1new = a1 + sg * (a2 - a2new)
            d1, d2 = a1new - a1, a2new - a2
            u += s1 * d1 * kern.row(i1) + s2 * d2 * kern.row(i2)
            alpha[i1], alpha[i2] = a1new, a2new
            return True

        # Maximal-violating-pair ascent: each point bounds the feasible
        # bias from one side via F_i = y_i - u_i; optimality holds when
        # the sides agree within 2*tol. Until then the extreme pair is
        # the steepest feasible direction.
        budget = max_passes * n
        steps = 0
        self.converged_ = False
        while True:
            F = s - u
            at_zero = alpha <= _ALPHA_EPS
            at_C = alpha >= C - _ALPHA_EPS
            interior = ~at_zero & ~at_C
            lower = interior | (at_zero & (s > 0)) | (at_C & (s < 0))
            upper = interior | (at_zero & (s < 0)) | (at_C & (s > 0))
            if not lower.any() or not upper.any():
                self.converged_ = True
                break
            lower_idx = np.nonzero(lower)[0]
            upper_idx = np.nonzero(upper)[0]
            i = int(lower_idx[np.argmax(F[lower_idx])])
            j = int(upper_idx[np.argmin(F[upper_idx])])
            if F[i] <= F[j] + 2.0 * tol:
                self.converged_ = True
                break
            if steps >= budget or not take_step(i, j):
                break
            steps += 1

        b = self._recompute_bias(alpha, s, u, 0.0, C)
        yf = s * (u + b)
        interior = (alpha > _ALPHA_EPS) & (alpha < C - _ALPHA_EPS)
        violations = (
            ((alpha <= _ALPHA_EPS) & (yf < 1.0 - tol))
            | ((alpha >= C - _ALPHA_EPS) & (yf > 1.0 + tol))
            | (interior & (np.abs(yf - 1.0) > tol))
        )
        self.converged_ = not bool(violations.any())

        sv = alpha > _ALPHA_EPS
        self.support_vectors_ = X[sv].copy()
        self.alpha_ = np.clip(alpha[sv], 0.0, C)
        self.dual_coef_ = self.alpha_ * s[sv]
        self.intercept_ = float(b)
        self.gamma_ = gamma
        self.n_features_ = d
        self.classes_ = np.arange(2)
        return self

    @staticmethod
    def _recompute_bias(alpha, s, u, b, C):
        """Minimax bias: midpoint of the KKT-feasible interval.

        Each point pins the bias from one side depending on which box
        face its alpha sits on (margin vectors pin it from both), via
        F_i = y_i - u_i. The midpoint of [max lower, min upper] never
        has a larger worst-case KKT violation than any other bias,
        including the working one.
        """
        F = s - u
        at_zero = alpha <= _ALPHA_EPS
        at_C = alpha >= C - _ALPHA_EPS
        interior = ~at_zero & ~at_C
        lower = interior | (at_zero & (s > 0)) | (at_C & (s < 0))
        upper = interior | (at_zero & (s < 0)) | (at_C & (s > 0))
        b_lo = np.max(F[lower]) if lower.any() else None
        b_hi = np.min(F[upper]) if upper.any() else None
        if b_lo is not None and b_hi is not None:
            return float((b_lo + b_hi) / 2.0)
        if b_lo is not None:
            return float(b_lo)
        if b_hi is not None:
            return float(b_hi)
        return float(b)

    # -- inference --------------------------------------------------------

    def decision_function(self, X):
        """sum_i alpha_i y_i K(x_i, x) + b for each row of X."""
        check_is_fitted(self, "support_vectors_")
        X = check_array(X)
        check_n_features(self, X, self.n_features_)
        if self.support_vectors_.shape[0] == 0:
            return np.full(X.shape[0], self.intercept_)
        if self.kernel == "linear":
            K = linear_kernel(X, self.support_vectors_)
        else:
            K = rbf_kernel(X, self.support_vectors_, self.gamma_)
        return K @ self.dual_coef_ + self.intercept_

    def predict(self, X):
        return (self.decision_function(X) > 0.0).astype(np.int64)

    def linear_weights(self):
        """Primal weight vector; only defined for the linear kernel."""
        check_is_fitted(self, "support_vectors_")
        if self.kernel != "linear":
            raise ValidationError("primal weights exist only for the linear kernel")
        return self.dual_coef_ @ self.support_vectors_

    # -- persistence -------------------------------------------------------

    def to_state(self):
        return {
            "params": self.get_params(),
            "n_features": int(self.n_features_),
            "support_vectors": [[float(v) for v in row] for row in self.support_vectors_],
            "dual_coef": [float(v) for v in self.dual_coef_],
            "alpha": [float(v) for v in self.alpha_],
            "intercept": self.intercept_,
            "gamma_resolved": self.gamma_,
            "converged": bool(self.converged_),
        }

    @classmethod
    def from_state(cls, state):
        model = cls(**state["params"])
        model.n_features_ = int(state["n_features"])
        model.support_vectors_ = np.array(state["support_vectors"], dtype=np.float64)
        if model.support_vectors_.size == 0:
            model.support_vectors_ = model.support_vectors_.reshape(0, model.n_features_)
        model.dual_coef_ = np.array(state["dual_coef"], dtype=np.float64)
        model.alpha_ = np.array(state["alpha"], dtype=np.float64)
        model.intercept_ = float(state["intercept"])
        model.gamma_ = state["gamma_resolved"]
        model.converged_ = bool(state["converged"])
        model.classes_ = np.arange(2)
        return model


def _pair_gain(a2cand, a1, a2, sg, s1, s2, u1, u2, k11, k12, k22):
    """Dual objective change if (a1, a2) moves along the constraint."""
    d2 = a2cand - a2
    d1 = sg * -d2
    return (
        d1 + d2
        - d1 * s1 * u1
        - d2 * s2 * u2
        - 0.5 * d1 * d1 * k11
        - 0.5 * d2 * d2 * k22
        - d1 * d2 * s1 * s2 * k12
    )


class _KernelCache:
    """Kernel rows on demand; full Gram matrix for small problems."""

    def __init__(self, X, kernel, gamma):
        self.X = X
        self.kernel = kernel
        self.gamma = gamma
        n = X.shape[0]
        if n <= _GRAM_LIMIT:
            self.full = self._block(X)
            self.rows = None
        else:
            self.full = None
            self.rows = {}

    def _block(self, A):
        if self.kernel == "linear":
            return linear_kernel(A, self.X)
        return rbf_kernel(A, self.X, self.gamma)

    def row(self, i):
        if self.full is not None:
            return self.full[i]
        if i not in self.rows:
            if len(self.rows) > 4096:
                self.rows.clear()
            self.rows[i] = self._block(self.X[i : i + 1])[0]
        return self.rows[i]

    def at(self, i, j):
        return self.row(i)[j]
