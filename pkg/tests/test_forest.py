import numpy as np
import pytest

from sentinel.errors import ValidationError
from sentinel.models import DecisionTreeClassifier, RandomForestClassifier, TreeNode


def constant_tree(class_id, n_classes, n_features):
    """Hand-built single-leaf tree that always predicts class_id."""
    counts = [0] * n_classes
    counts[class_id] = 1
    t = DecisionTreeClassifier()
    t.n_features_ = n_features
    t.n_classes_ = n_classes
    t.classes_ = np.arange(n_classes)
    t.tree_ = TreeNode(class_id=class_id, counts=counts)
    return t


def test_majority_vote_direct_count():
    forest = RandomForestClassifier(n_trees=3)
    forest.n_features_ = 1
    forest.n_classes_ = 2
    forest.classes_ = np.arange(2)
    forest.trees_ = [constant_tree(c, 2, 1) for c in (1, 1, 0)]
    assert forest.predict([[0.0]])[0] == 1
    assert forest.vote_counts([[0.0]])[0].tolist() == [1, 2]


def test_vote_tie_prefers_low_class_id():
    forest = RandomForestClassifier(n_trees=2)
    forest.n_features_ = 1
    forest.n_classes_ = 2
    forest.classes_ = np.arange(2)
    forest.trees_ = [constant_tree(c, 2, 1) for c in (1, 0)]
    assert forest.predict([[0.0]])[0] == 0


def test_degenerate_forest_equals_single_tree(rng):
    X = rng.normal(size=(50, 3))
    y = (X[:, 1] > 0).astype(int)
    forest = RandomForestClassifier(
        n_trees=1, features_per_split=None, bootstrap=False, seed=9
    ).fit(X, y)
    tree = DecisionTreeClassifier().fit(X, y)
    grid = rng.normal(size=(100, 3))
    assert np.array_equal(forest.predict(grid), tree.predict(grid))
    assert forest.trees_[0].to_state()["tree"] == tree.to_state()["tree"]


def test_forest_deterministic_given_seed(rng):
    X = rng.normal(size=(40, 4))
    y = rng.integers(0, 2, size=40)
    f1 = RandomForestClassifier(n_trees=7, seed=42).fit(X, y)
    f2 = RandomForestClassifier(n_trees=7, seed=42).fit(X, y)
    assert [t.to_state() for t in f1.trees_] == [t.to_state() for t in f2.trees_]


def test_forest_vote_tally_matches_per_tree_recount(rng):
    X = rng.normal(size=(60, 3))
    y = rng.integers(0, 3, size=60)
    forest = RandomForestClassifier(n_trees=9, seed=5).fit(X, y)
    grid = rng.normal(size=(25, 3))
    pred = forest.predict(grid)
    per_tree = np.stack([t.predict(grid) for t in forest.trees_], axis=1)
    for i in range(grid.shape[0]):
        tally = np.bincount(per_tree[i], minlength=3)
        assert pred[i] == int(np.argmax(tally))


def test_forest_unanimous_equals_tree(rng):
    # Perfectly separable data with all features at every split: every
    # tree differs only by its bootstrap sample but still memorizes.
    X = np.vstack([rng.normal(-5, 0.3, size=(25, 2)), rng.normal(5, 0.3, size=(25, 2))])
    y = np.array([0] * 25 + [1] * 25)
    forest = RandomForestClassifier(n_trees=5, features_per_split=None, seed=1).fit(X, y)
    assert np.array_equal(forest.predict(X), y)


def test_forest_survives_rare_class_dropout():
    # Class 2 appears once; many bootstrap resamples will miss it.
    X = np.arange(20, dtype=float).reshape(-1, 1)
    y = np.array([0, 1] * 9 + [0, 2])
    forest = RandomForestClassifier(n_trees=15, seed=3).fit(X, y)
    assert forest.n_classes_ == 3
    assert forest.predict(X).shape == (20,)


def test_forest_rejects_bad_params():
    with pytest.raises(ValidationError):
        RandomForestClassifier(n_trees=0).fit([[1.0], [2.0]], [0, 1])
    with pytest.raises(ValidationError):
        RandomForestClassifier(features_per_split=5).fit([[1.0], [2.0]], [0, 1])
