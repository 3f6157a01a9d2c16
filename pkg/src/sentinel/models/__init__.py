"""From-scratch classifiers behind a scikit-learn style fit/predict API."""

from .forest import RandomForestClassifier
from .io import (
    FeatureField,
    ModelBundle,
    estimator_from_state,
    estimator_to_state,
    load_bundle,
    make_model_id,
    save_bundle,
    schema_from_table,
    training_fingerprint,
)
from .ova import OneVsAllClassifier
from .sgd import SGDLinearClassifier
from .svm import SupportVectorClassifier, linear_kernel, rbf_kernel
from .tree import DecisionTreeClassifier, TreeNode, best_split, gini_impurity

__all__ = [
    "DecisionTreeClassifier",
    "FeatureField",
    "ModelBundle",
    "OneVsAllClassifier",
    "RandomForestClassifier",
    "SGDLinearClassifier",
    "SupportVectorClassifier",
    "TreeNode",
    "best_split",
    "estimator_from_state",
    "estimator_to_state",
    "gini_impurity",
    "linear_kernel",
    "load_bundle",
    "make_model_id",
    "rbf_kernel",
    "save_bundle",
    "schema_from_table",
    "training_fingerprint",
]
