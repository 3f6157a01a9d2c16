"""Random forest: bagged Gini trees with per-node feature subsets."""

import numpy as np

from ..base import BaseEstimator, check_X_y, check_array, check_is_fitted, check_n_features
from ..errors import ValidationError
from .tree import DecisionTreeClassifier


class RandomForestClassifier(BaseEstimator):
    """Majority vote over trees grown on bootstrap resamples.

    Every tree trains on an n-sized resample drawn with replacement, and
    each node considers a fresh random subset of ``features_per_split``
    features (default: floor(sqrt(d)), at least 1). Per-tree randomness
    is derived from ``seed`` through spawned seed sequences, so results
    are reproducible and independent of evaluation order. Vote ties go
    to the lowest class id.
    """

    def __init__(self, n_trees=100, features_per_split="sqrt", bootstrap=True,
                 max_depth=None, min_samples_split=2, seed=0):
        self.n_trees = n_trees
        self.features_per_split = features_per_split
        self.bootstrap = bootstrap
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.seed = seed

    def _resolve_features_per_split(self, d):
        if self.features_per_split == "sqrt":
            return max(1, int(np.sqrt(d)))
        if self.features_per_split is None:
            return None
        k = int(self.features_per_split)
        if not 1 <= k <= d:
            raise ValidationError("features_per_split must be within [1, n_features]")
        return k

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        if self.n_trees < 1:
            raise ValidationError("n_trees must be at least 1")
        n, d = X.shape
        k = self._resolve_features_per_split(d)
        self.n_features_ = d
        self.n_classes_ = int(y.max()) + 1
        self.classes_ = np.arange(self.n_classes_)

        self.trees_ = []
        for seq in np.random.SeedSequence(self.seed).spawn(self.n_trees):
            rng = np.random.default_rng(seq)
            if self.bootstrap:
                idx = rng.integers(0, n, size=n)
                Xb, yb = X[idx], y[idx]
            else:
                Xb, yb = X, y
            tree = DecisionTreeClassifier(
                max_depth=self.max_depth,
                min_samples_split=self.min_samples_split,
                features_per_split=k,
                random_state=rng,
            )
            # Resamples may lose a rare class, so the forest's class
            # count is passed down explicitly.
            self.trees_.append(tree.fit(Xb, yb, n_classes=self.n_classes_))
        return self

    def predict(self, X):
        votes = self.vote_counts(X)
        return np.argmax(votes, axis=1).astype(np.int64)

    def vote_counts(self, X):
        """Per-class vote tallies, one row per input record."""
        check_is_fitted(self, "trees_")
        X = check_array(X)
        check_n_features(self, X, self.n_features_)
        per_tree = np.stack([t.predict(X) for t in self.trees_], axis=1)
        counts = np.zeros((X.shape[0], self.n_classes_), dtype=np.int64)
        for k in range(self.n_classes_):
            counts[:, k] = np.sum(per_tree == k, axis=1)
        return counts

    def to_state(self):
        return {
            "params": {
                "n_trees": self.n_trees,
                "features_per_split": self.features_per_split,
                "bootstrap": self.bootstrap,
                "max_depth": self.max_depth,
                "min_samples_split": self.min_samples_split,
                "seed": self.seed,
            },
            "n_features": int(self.n_features_),
            "n_classes": int(self.n_classes_),
            "trees": [t.to_state() for t in self.trees_],
        }

    @classmethod
    def from_state(cls, state):
        model = cls(**state["params"])
        model.n_features_ = int(state["n_features"])
        model.n_classes_ = int(state["n_classes"])
        model.classes_ = np.arange(model.n_classes_)
        model.trees_ = [DecisionTreeClassifier.from_state(s) for s in state["trees"]]
        return model
