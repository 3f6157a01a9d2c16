"""One-vs-all reduction for multi-class problems."""

import numpy as np

from ..base import BaseEstimator, check_X_y, check_is_fitted, clone_estimator
from ..errors import ValidationError


class OneVsAllClassifier(BaseEstimator):
    """Trains one binary learner per class; predicts by highest confidence.

    The base learner must expose ``decision_function`` (signed distance
    to its hyperplane). For two classes a single learner is kept and the
    decision reduces to its sign test. Equal confidences resolve to the
    lowest class id.
    """

    def __init__(self, base, seed=0):
        self.base = base
        self.seed = seed

    def fit(self, X, y):
        X, y = check_X_y(X, y)  # errors when a class id has no samples
        self.n_classes_ = int(y.max()) + 1
        if self.n_classes_ < 2:
            raise ValidationError("need at least two classes")
        self.classes_ = np.arange(self.n_classes_)
        self.n_features_ = X.shape[1]

        if self.n_classes_ == 2:
            self.learners_ = [self._spawn_learner(0).fit(X, y)]
        else:
            self.learners_ = []
            for k in range(self.n_classes_):
                learner = self._spawn_learner(k)
                self.learners_.append(learner.fit(X, (y == k).astype(np.int64)))
        return self

    def _spawn_learner(self, k):
        learner = clone_estimator(self.base)
        if "seed" in learner.get_params():
            derived = int(np.random.SeedSequence([self.seed, k]).generate_state(1)[0])
            learner.set_params(seed=derived)
        return learner

    def decision_function(self, X):
        """(n, K) per-class confidences."""
        check_is_fitted(self, "learners_")
        if self.n_classes_ == 2:
            f = self.learners_[0].decision_function(X)
            return np.stack([-f, f], axis=1)
        return np.stack([lr.decision_function(X) for lr in self.learners_], axis=1)

    def predict(self, X):
        return np.argmax(self.decision_function(X), axis=1).astype(np.int64)

    def to_state(self):
        from .io import estimator_to_state, estimator_from_state  # noqa: F401 (symmetry)

        return {
            "params": {"seed": self.seed},
            "n_features": int(self.n_features_),
            "n_classes": int(self.n_classes_),
            "learners": [estimator_to_state(lr) for lr in self.learners_],
        }

    @classmethod
    def from_state(cls, state):
        from .io import estimator_from_state

        learners = [estimator_from_state(s) for s in state["learners"]]
        model = cls(base=clone_estimator(learners[0]), seed=state["params"]["seed"])
        model.n_features_ = int(state["n_features"])
        model.n_classes_ = int(state["n_classes"])
        model.classes_ = np.arange(model.n_classes_)
        model.learners_ = learners
        return model
