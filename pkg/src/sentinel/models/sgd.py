"""Linear classifier fitted by per-sample stochastic gradient descent."""

import numpy as np

from ..base import BaseEstimator, check_X_y, check_array, check_is_fitted, check_n_features
from ..errors import ConvergenceError, ValidationError

LOSSES = ("hinge", "logistic")


class SGDLinearClassifier(BaseEstimator):
    """Binary linear classifier trained with SGD on hinge or logistic loss.

    Each epoch visits every sample once in a freshly shuffled order
    drawn from ``seed``. The learning rate decays as
    ``eta0 / (1 + l2 * eta0 * t)`` with ``t`` counting individual
    updates. The L2 penalty applies to the weights only, never the bias.
    Weights start at zero, so a model fitted for zero epochs predicts
    class 0 everywhere (ties at a zero decision value go to class 0).
    """

    def __init__(self, loss="hinge", eta0=0.01, l2=1e-4, epochs=50, seed=0):
        self.loss = loss
        self.eta0 = eta0
        self.l2 = l2
        self.epochs = epochs
        self.seed = seed

    def fit(self, X, y):
        if self.loss not in LOSSES:
            raise ValidationError(f"loss must be one of {LOSSES}")
        if self.eta0 <= 0:
            raise ValidationError("eta0 must be positive")
        if self.l2 < 0 or self.epochs < 0:
            raise ValidationError("l2 and epochs must be non-negative")
        X, y = check_X_y(X, y)
        if int(y.max()) > 1:
            raise ValidationError("binary learner needs labels in {0, 1}; wrap in OneVsAll")
        n, d = X.shape
        s = 2.0 * y - 1.0  # {0,1} -> {-1,+1}
        rng = np.random.default_rng(self.seed)

        w = np.zeros(d)
        b = 0.0
        t = 0
        self.objective_history_ = []
        for epoch in range(self.epochs):
            for i in rng.permutation(n):
                eta = self.eta0 / (1.0 + self.l2 * self.eta0 * t)
                t += 1
                margin = s[i] * (X[i] @ w + b)
                if self.loss == "hinge":
                    if margin < 1.0:
                        w += eta * (s[i] * X[i] - self.l2 * w)
                        b += eta * s[i]
                    else:
                        w -= eta * self.l2 * w
                else:
                    # d/dm log(1 + exp(-m)) = -sigmoid(-m)
                    g = _sigmoid(-margin)
                    w += eta * (g * s[i] * X[i] - self.l2 * w)
                    b += eta * g * s[i]
            if not (np.all(np.isfinite(w)) and np.isfinite(b)):
                raise ConvergenceError(
                    f"SGD diverged to non-finite weights during epoch {epoch}"
                )
            self.objective_history_.append(self._objective(X, s, w, b))

        self.coef_ = w
        self.intercept_ = float(b)
        self.n_features_ = d
        self.classes_ = np.arange(2)
        return self

    def _objective(self, X, s, w, b):
        margins = s * (X @ w + b)
        if self.loss == "hinge":
            loss = np.maximum(0.0, 1.0 - margins).mean()
        else:
            loss = np.logaddexp(0.0, -margins).mean()
        return float(loss + 0.5 * self.l2 * (w @ w))

    def decision_function(self, X):
        """Signed distance-like score; positive means class 1."""
        check_is_fitted(self, "coef_")
        X = check_array(X)
        check_n_features(self, X, self.n_features_)
        return X @ self.coef_ + self.intercept_

    def predict(self, X):
        return (self.decision_function(X) > 0.0).astype(np.int64)

    def to_state(self):
        return {
            "params": self.get_params(),
            "n_features": int(self.n_features_),
            "coef": [float(v) for v in self.coef_],
            "intercept": self.intercept_,
        }

    @classmethod
    def from_state(cls, state):
        model = cls(**state["params"])
        model.n_features_ = int(state["n_features"])
        model.coef_ = np.array(state["coef"], dtype=np.float64)
        model.intercept_ = float(state["intercept"])
        model.classes_ = np.arange(2)
        return model


def _sigmoid(z):
    if z >= 0:
        return 1.0 / (1.0 + np.exp(-z))
    e = np.exp(z)
    return e / (1.0 + e)
