"""Estimator base class and input validation helpers.

The estimators in this package follow the scikit-learn parameter
conventions (``get_params`` / ``set_params``, all hyperparameters as
keyword arguments of ``__init__``, fitted state in trailing-underscore
attributes) so they compose with the wider ecosystem, without requiring
scikit-learn itself.
"""

import inspect

import numpy as np

from .errors import NotFittedError, ValidationError


class BaseEstimator:
    """Parameter handling shared by every estimator.

    Subclasses must accept every hyperparameter as an explicit keyword
    argument of ``__init__`` and store it under the same name, which is
    what makes ``get_params`` / ``set_params`` / ``clone_estimator``
    work mechanically.
    """

    @classmethod
    def _param_names(cls):
        sig = inspect.signature(cls.__init__)
        return [p.name for p in sig.parameters.values() if p.name != "self"]

    def get_params(self, deep=True):
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for key, value in params.items():
            if key not in valid:
                raise ValidationError(f"invalid parameter {key!r} for {type(self).__name__}")
            setattr(self, key, value)
        return self

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in sorted(self.get_params().items()))
        return f"{type(self).__name__}({args})"


def clone_estimator(estimator):
    """Fresh unfitted copy with identical hyperparameters."""
    return type(estimator)(**estimator.get_params())


def check_array(X, name="X", ensure_2d=True):
    """Coerce to a float64 ndarray and reject non-finite entries."""
    arr = np.asarray(X, dtype=np.float64)
    if ensure_2d:
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise ValidationError(f"{name} must be 2-dimensional, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValidationError(f"{name} must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains NaN or infinite values")
    return arr


def check_X_y(X, y, n_classes=None):
    """Validate a feature matrix with class-id labels.

    Labels must be non-negative integers. When ``n_classes`` is None the
    labels must cover the contiguous range ``0..max`` with every class
    present; when given (e.g. for trees grown on bootstrap resamples
    that may lose a rare class) labels only need to lie in
    ``0..n_classes-1``.
    """
    X = check_array(X)
    y_arr = np.asarray(y)
    if y_arr.ndim != 1:
        raise ValidationError(f"y must be 1-dimensional, got shape {y_arr.shape}")
    if y_arr.shape[0] != X.shape[0]:
        raise ValidationError(f"X has {X.shape[0]} rows but y has {y_arr.shape[0]}")
    y_float = np.asarray(y_arr, dtype=np.float64)
    y_int = y_float.astype(np.int64)
    if not np.all(y_float == y_int):
        raise ValidationError("labels must be integers")
    if y_int.min() < 0:
        raise ValidationError("labels must be non-negative class ids")
    if n_classes is not None:
        if y_int.max() >= n_classes:
            raise ValidationError(f"labels exceed declared class count {n_classes}")
        return X, y_int
    present = np.unique(y_int)
    expected = np.arange(y_int.max() + 1)
    if present.shape != expected.shape or not np.all(present == expected):
        missing = sorted(set(expected.tolist()) - set(present.tolist()))
        raise ValidationError(f"class ids must be contiguous from 0; missing {missing}")
    return X, y_int


def check_is_fitted(estimator, attribute):
    if getattr(estimator, attribute, None) is None:
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted yet; call fit() first"
        )


def check_n_features(estimator, X, n_features):
    if X.shape[1] != n_features:
        raise ValidationError(
            f"{type(estimator).__name__} was fitted with {n_features} features, "
            f"got {X.shape[1]}"
        )
