"""Decision tree classifier grown by greedy Gini splits.

Split thresholds sit at midpoints of consecutive distinct sorted feature
values; a cell equal to the threshold goes to the left child. Ties in
impurity decrease resolve to the lowest feature index, then the lowest
threshold, so fitting is fully deterministic.
"""

from dataclasses import dataclass

import numpy as np

from ..base import BaseEstimator, check_X_y, check_array, check_is_fitted, check_n_features
from ..errors import ValidationError


def gini_impurity(labels):
    """Gini impurity 1 - sum(p_k^2) of a non-empty label multiset."""
    labels = np.asarray(labels, dtype=np.int64)
    if labels.size == 0:
        raise ValidationError("gini impurity of an empty label set is undefined")
    counts = np.bincount(labels)
    p = counts / labels.size
    return float(1.0 - np.sum(p * p))


def _gini_from_counts(counts, total):
    p = counts / total
    return 1.0 - np.sum(p * p, axis=-1)


def best_split(X, y, candidate_features=None, n_classes=None):
    """Best (feature, threshold, impurity_decrease) over candidate features.

    Scans midpoints between consecutive distinct sorted values of each
    candidate feature and maximizes the Gini decrease weighted by child
    sizes. Returns None when no split strictly decreases impurity.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n = y.size
    if n < 2:
        return None
    if n_classes is None:
        n_classes = int(y.max()) + 1
    if candidate_features is None:
        candidate_features = range(X.shape[1])

    total_counts = np.bincount(y, minlength=n_classes).astype(np.float64)
    parent = _gini_from_counts(total_counts, n)

    best = None  # (decrease, feature, threshold)
    for j in sorted(int(f) for f in candidate_features):
        col = X[:, j]
        order = np.argsort(col, kind="stable")
        sv = col[order]
        sy = y[order]
        cut = np.nonzero(sv[:-1] != sv[1:])[0]
        if cut.size == 0:
            continue
        one_hot = np.zeros((n, n_classes))
        one_hot[np.arange(n), sy] = 1.0
        cum = np.cumsum(one_hot, axis=0)

        left_counts = cum[cut]
        n_left = (cut + 1).astype(np.float64)
        n_right = n - n_left
        gini_left = _gini_from_counts(left_counts, n_left[:, None])
        gini_right = _gini_from_counts(total_counts - left_counts, n_right[:, None])
        decrease = parent - (n_left / n) * gini_left - (n_right / n) * gini_right

        k = int(np.argmax(decrease))
        if decrease[k] > 0.0 and (best is None or decrease[k] > best[0]):
            threshold = (sv[cut[k]] + sv[cut[k] + 1]) / 2.0
            best = (float(decrease[k]), j, float(threshold))

    if best is None:
        return None
    decrease, feature, threshold = best
    return feature, threshold, decrease


@dataclass
class TreeNode:
    """Internal node (feature, threshold, children) or leaf (class, counts)."""

    feature: int | None = None
    threshold: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    class_id: int | None = None
    counts: list | None = None

    @property
    def is_leaf(self):
        return self.feature is None

    def to_dict(self):
        if self.is_leaf:
            return {"class": int(self.class_id), "counts": [int(c) for c in self.counts]}
        return {
            "feature": int(self.feature),
            "threshold": float(self.threshold),
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }

    @classmethod
    def from_dict(cls, d):
        if "class" in d:
            return cls(class_id=int(d["class"]), counts=[int(c) for c in d["counts"]])
        return cls(
            feature=int(d["feature"]),
            threshold=float(d["threshold"]),
            left=cls.from_dict(d["left"]),
            right=cls.from_dict(d["right"]),
        )


def _make_leaf(counts):
    return TreeNode(class_id=int(np.argmax(counts)), counts=[int(c) for c in counts])


class DecisionTreeClassifier(BaseEstimator):
    """Greedy Gini decision tree.

    Parameters
    ----------
    max_depth : int or None
        Depth cap; None grows until purity or no improving split.
    min_samples_split : int
        Nodes with fewer samples become leaves.
    features_per_split : int or None
        When set, each node considers a fresh random subset of this many
        features (used by the forest). None considers all features.
    random_state : int, SeedSequence, or Generator, optional
        Only consulted when features_per_split is set.

    Leaves predict their majority class; ties go to the lowest class id.
    """

    def __init__(self, max_depth=None, min_samples_split=2,
                 features_per_split=None, random_state=None):
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.features_per_split = features_per_split
        self.random_state = random_state

    def fit(self, X, y, n_classes=None):
        X, y = check_X_y(X, y, n_classes=n_classes)
        n, d = X.shape
        if self.min_samples_split < 2:
            raise ValidationError("min_samples_split must be at least 2")
        if self.features_per_split is not None and not 1 <= self.features_per_split <= d:
            raise ValidationError("features_per_split must be within [1, n_features]")
        self.n_features_ = d
        self.n_classes_ = n_classes if n_classes is not None else int(y.max()) + 1
        self.classes_ = np.arange(self.n_classes_)
        rng = np.random.default_rng(self.random_state)

        root = TreeNode()
        # Explicit stack instead of recursion: fully grown trees can be
        # deeper than the interpreter recursion limit.
        stack = [(root, np.arange(n), 0)]
        while stack:
            node, idx, depth = stack.pop()
            counts = np.bincount(y[idx], minlength=self.n_classes_)
            if (
                idx.size < self.min_samples_split
                or np.count_nonzero(counts) == 1
                or (self.max_depth is not None and depth >= self.max_depth)
            ):
                leaf = _make_leaf(counts)
                node.class_id, node.counts = leaf.class_id, leaf.counts
                continue

            if self.features_per_split is not None and self.features_per_split < d:
                candidates = rng.choice(d, size=self.features_per_split, replace=False)
            else:
                candidates = None
            found = best_split(X[idx], y[idx], candidates, n_classes=self.n_classes_)
            if found is None:
                leaf = _make_leaf(counts)
                node.class_id, node.counts = leaf.class_id, leaf.counts
                continue

            feature, threshold, _ = found
            node.feature, node.threshold = feature, threshold
            node.left, node.right = TreeNode(), TreeNode()
            go_left = X[idx, feature] <= threshold
            stack.append((node.left, idx[go_left], depth + 1))
            stack.append((node.right, idx[~go_left], depth + 1))

        self.tree_ = root
        return self

    def predict(self, X):
        check_is_fitted(self, "tree_")
        X = check_array(X)
        check_n_features(self, X, self.n_features_)
        return np.array([self._descend(x).class_id for x in X], dtype=np.int64)

    def leaf_for(self, x):
        """Leaf node reached by one record; exposes the frequency vector."""
        check_is_fitted(self, "tree_")
        x = check_array(x, ensure_2d=True)
        check_n_features(self, x, self.n_features_)
        return self._descend(x[0])

    def _descend(self, x):
        node = self.tree_
        while not node.is_leaf:
            node = node.left if x[node.feature] <= node.threshold else node.right
        return node

    def to_state(self):
        return {
            "params": {"max_depth": self.max_depth,
                       "min_samples_split": self.min_samples_split,
                       "features_per_split": self.features_per_split},
            "n_features": int(self.n_features_),
            "n_classes": int(self.n_classes_),
            "tree": self.tree_.to_dict(),
        }

    @classmethod
    def from_state(cls, state):
        model = cls(**state["params"])
        model.n_features_ = int(state["n_features"])
        model.n_classes_ = int(state["n_classes"])
        model.classes_ = np.arange(model.n_classes_)
        model.tree_ = TreeNode.from_dict(state["tree"])
        return model
