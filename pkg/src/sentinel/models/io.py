"""Model persistence: versioned, self-describing text files.

Layout: a header line ``sentinel-model v1 <kind>`` followed by one JSON
document with sorted keys. Floats round-trip exactly through their
shortest repr, so save -> load -> predict is bit-identical.
"""

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ValidationError
from ..tabular.scaler import StandardizationParams
from .forest import RandomForestClassifier
from .ova import OneVsAllClassifier
from .sgd import SGDLinearClassifier
from .svm import SupportVectorClassifier
from .tree import DecisionTreeClassifier

FORMAT_NAME = "sentinel-model"
FORMAT_VERSION = "v1"

_KINDS = {
    "tree": DecisionTreeClassifier,
    "forest": RandomForestClassifier,
    "sgd": SGDLinearClassifier,
    "svm": SupportVectorClassifier,
    "ova": OneVsAllClassifier,
}
_KIND_OF = {cls: kind for kind, cls in _KINDS.items()}


def kind_of(estimator):
    try:
        return _KIND_OF[type(estimator)]
    except KeyError:
        raise ValidationError(f"unknown model type {type(estimator).__name__}") from None


def estimator_to_state(estimator):
    return {"kind": kind_of(estimator), "state": estimator.to_state()}


def estimator_from_state(tagged):
    kind = tagged["kind"]
    if kind not in _KINDS:
        raise ValidationError(f"unknown model kind {kind!r}")
    return _KINDS[kind].from_state(tagged["state"])


def training_fingerprint(X, y):
    """Stable digest of the training data, embedded in model ids."""
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(X, dtype=np.float64).tobytes())
    h.update(np.ascontiguousarray(y, dtype=np.int64).tobytes())
    return h.hexdigest()[:12]


def make_model_id(kind, fingerprint):
    return f"{kind}-{FORMAT_VERSION}-{fingerprint}"


@dataclass
class FeatureField:
    """One feature of the post-cleaning schema, with its valid range."""

    name: str
    kind: str  # "number" | "toggle"
    min: float
    max: float

    def to_dict(self):
        return {"name": self.name, "kind": self.kind,
                "min": float(self.min), "max": float(self.max)}

    @classmethod
    def from_dict(cls, d):
        return cls(name=d["name"], kind=d["kind"],
                   min=float(d["min"]), max=float(d["max"]))


def schema_from_table(table):
    """Feature schema (name, kind, observed range) from a cleaned table."""
    fields = []
    for meta, j in zip(table.columns, range(table.n_cols)):
        if meta.kind == "label":
            continue
        col = table.values[:, j]
        fields.append(FeatureField(
            name=meta.name,
            kind="toggle" if meta.kind == "binary" else "number",
            min=float(col.min()) if col.size else 0.0,
            max=float(col.max()) if col.size else 0.0,
        ))
    return fields


@dataclass
class ModelBundle:
    """A fitted model plus everything needed to serve it.

    Carries the feature order, the optional scaling parameters applied
    before prediction, the validation schema for incoming records, and a
    stable model id (kind + format version + training-data fingerprint).
    """

    estimator: object
    feature_names: tuple
    label_name: str
    model_id: str
    task: str | None = None
    scaler: StandardizationParams | None = None
    schema: list = field(default_factory=list)
    seed: int | None = None

    @property
    def kind(self):
        return kind_of(self.estimator)

    def predict_record(self, answers):
        """Predict one {feature: value} mapping; returns (class_id, confidence)."""
        x = self.vector_from_answers(answers)
        if self.scaler is not None:
            x = self.scaler.transform_vector(x, self.feature_names)
        return int(self.estimator.predict(x.reshape(1, -1))[0]), self.confidence(x)

    def vector_from_answers(self, answers):
        missing = [n for n in self.feature_names if n not in answers]
        if missing:
            raise ValidationError(f"missing features: {missing}", fields=missing)
        extra = [n for n in answers if n not in self.feature_names]
        if extra:
            raise ValidationError(f"unknown features: {sorted(extra)}", fields=sorted(extra))
        return np.array([float(answers[n]) for n in self.feature_names])

    def confidence(self, x):
        """(kind, value) pair; semantics depend on the model family."""
        row = x.reshape(1, -1)
        est = self.estimator
        if isinstance(est, DecisionTreeClassifier):
            leaf = est.leaf_for(row)
            total = sum(leaf.counts)
            return {"kind": "leaf_frequency",
                    "value": leaf.counts[leaf.class_id] / total if total else 0.0}
        if isinstance(est, RandomForestClassifier):
            counts = est.vote_counts(row)[0]
            return {"kind": "vote_fraction",
                    "value": float(counts.max() / counts.sum())}
        if isinstance(est, OneVsAllClassifier):
            scores = est.decision_function(row)[0]
            return {"kind": "margin", "value": float(scores.max())}
        return {"kind": "margin", "value": float(est.decision_function(row)[0])}

    def to_document(self):
        return {
            "kind": self.kind,
            "model_id": self.model_id,
            "task": self.task,
            "label_name": self.label_name,
            "feature_names": list(self.feature_names),
            "schema": [f.to_dict() for f in self.schema],
            "scaler": self.scaler.to_dict() if self.scaler else None,
            "seed": self.seed,
            "model": estimator_to_state(self.estimator),
        }

    @classmethod
    def from_document(cls, doc):
        return cls(
            estimator=estimator_from_state(doc["model"]),
            feature_names=tuple(doc["feature_names"]),
            label_name=doc["label_name"],
            model_id=doc["model_id"],
            task=doc.get("task"),
            scaler=StandardizationParams.from_dict(doc["scaler"]) if doc.get("scaler") else None,
            schema=[FeatureField.from_dict(f) for f in doc.get("schema", [])],
            seed=doc.get("seed"),
        )


def save_bundle(bundle, path):
    header = f"{FORMAT_NAME} {FORMAT_VERSION} {bundle.kind}\n"
    body = json.dumps(bundle.to_document(), sort_keys=True, indent=2)
    Path(path).write_text(header + body + "\n", encoding="utf-8")
    return path


def load_bundle(path):
    text = Path(path).read_text(encoding="utf-8")
    newline = text.find("\n")
    if newline < 0:
        raise ValidationError(f"{path}: not a model file (missing header)")
    header = text[:newline].split()
    if len(header) != 3 or header[0] != FORMAT_NAME:
        raise ValidationError(f"{path}: bad model header {text[:newline]!r}")
    if header[1] != FORMAT_VERSION:
        raise ValidationError(f"{path}: unsupported model format version {header[1]!r}")
    doc = json.loads(text[newline:])
    if doc.get("kind") != header[2]:
        raise ValidationError(f"{path}: header kind {header[2]!r} != body kind {doc.get('kind')!r}")
    return ModelBundle.from_document(doc)
