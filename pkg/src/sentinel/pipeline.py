"""End-to-end screening pipelines: ingest, clean, train, evaluate.

Two preconfigured tasks ship with the toolkit. ``cervical`` cleans the
858-row risk-factor export down to 688 rows and fits an unbounded
decision tree on a 3:1 split. ``breast`` drops the pre-made ``training``
flag column, dedupes, standardizes, and fits an rbf support vector
classifier on a 1:1 split; to keep desk-scale runtimes the SVC may train
on a stratified subsample of the training split (default 4000 rows)
while both accuracies are still measured on the full splits.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .metrics import EvalReport, evaluate_split
from .models import (
    DecisionTreeClassifier,
    ModelBundle,
    OneVsAllClassifier,
    RandomForestClassifier,
    SGDLinearClassifier,
    SupportVectorClassifier,
    make_model_id,
    schema_from_table,
    training_fingerprint,
)
from .models.io import kind_of
from .tabular import SplitSpec, class_balance, clean, load_csv, split, standardize

MODEL_KINDS = ("tree", "forest", "sgd", "svm")


@dataclass(frozen=True)
class TaskConfig:
    """Normative parameters of one reproduction pipeline."""

    name: str
    label: str
    missing_markers: frozenset
    sparse_threshold: float
    exclude_columns: tuple
    train_fraction: float
    scale: bool
    model_kind: str
    model_params: dict
    svc_subsample: int | None = None
    golden_rows: int | None = None
    golden_duplicates: int | None = None
    expected_balance: float | None = None
    min_test_accuracy: float | None = None
    require_perfect_train: bool = False
    train_within: float | None = None


CERVICAL_TASK = TaskConfig(
    name="cervical",
    label="Dx:Cancer",
    missing_markers=frozenset({"?", "", "NA"}),
    sparse_threshold=0.5,
    exclude_columns=(),
    train_fraction=0.75,
    scale=False,
    model_kind="tree",
    model_params={},
    golden_rows=688,
    expected_balance=0.0255,
    min_test_accuracy=0.97,
    require_perfect_train=True,
)

BREAST_TASK = TaskConfig(
    name="breast",
    label="cancer",
    missing_markers=frozenset({"?", "", "NA"}),
    sparse_threshold=0.5,
    exclude_columns=("training",),
    train_fraction=0.5,
    scale=True,
    model_kind="svm",
    model_params={"C": 1.0, "kernel": "rbf"},
    svc_subsample=4000,
    golden_rows=15203,
    golden_duplicates=14655,
    expected_balance=0.043,
    min_test_accuracy=0.957,
    train_within=0.01,
)

TASKS = {"cervical": CERVICAL_TASK, "breast": BREAST_TASK}


@dataclass
class GoldenCheck:
    name: str
    passed: bool
    detail: str


@dataclass
class PipelineResult:
    task: str
    cleaning_report: object
    class_balance: float
    bundle: ModelBundle
    eval_report: EvalReport
    golden_checks: list = field(default_factory=list)
    subsample_rows: int | None = None

    @property
    def all_golden_passed(self):
        return all(c.passed for c in self.golden_checks)

    def first_failed_check(self):
        for c in self.golden_checks:
            if not c.passed:
                return c
        return None


def make_estimator(kind, params, seed, n_classes=2):
    """Instantiate a classifier by kind name."""
    params = dict(params)
    if kind == "tree":
        return DecisionTreeClassifier(**params)
    if kind == "forest":
        params.setdefault("seed", seed)
        return RandomForestClassifier(**params)
    if kind == "sgd":
        params.setdefault("seed", seed)
        base = SGDLinearClassifier(**params)
        if n_classes > 2:
            return OneVsAllClassifier(base, seed=seed)
        return base
    if kind == "svm":
        params.setdefault("seed", seed)
        return SupportVectorClassifier(**params)
    raise ValidationError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")


def stratified_subsample(y, size, seed):
    """Indices of a label-stratified subsample, quotas by largest remainder."""
    n = y.shape[0]
    if size >= n:
        return np.arange(n)
    rng = np.random.default_rng(seed)
    classes, counts = np.unique(y, return_counts=True)
    quotas = size * counts / n
    take = np.floor(quotas).astype(int)
    order = np.argsort(-(quotas - take), kind="stable")
    for k in order:
        if take.sum() >= size:
            break
        if take[k] < counts[k]:
            take[k] += 1
    picked = []
    for cls, t in zip(classes, take):
        idx = np.nonzero(y == cls)[0]
        picked.append(rng.permutation(idx)[:t])
    return np.sort(np.concatenate(picked))


def resolve_task(task):
    if isinstance(task, str):
        if task not in TASKS:
            raise ValidationError(f"unknown task {task!r}; expected one of {sorted(TASKS)}")
        return TASKS[task]
    return task


def clean_stage(task, source):
    """Ingest and clean one task's CSV: (cleaned table, report, balance)."""
    task = resolve_task(task)
    table = load_csv(source, missing_markers=task.missing_markers, name=task.name)
    cleaned, report = clean(
        table,
        max_missing_fraction=task.sparse_threshold,
        exclude_columns=task.exclude_columns,
    )
    cleaned = cleaned.with_label(task.label)
    balance = class_balance(cleaned, task.label)
    return cleaned, report, balance


def run_pipeline(task, source, seed=42):
    """Run one task end to end; returns a PipelineResult.

    ``source`` is a CSV path or stream matching the task's schema.
    """
    task = resolve_task(task)
    cleaned, report, balance = clean_stage(task, source)
    schema = schema_from_table(cleaned)

    scaler = None
    modeling_table = cleaned
    if task.scale:
        modeling_table, scaler = standardize(cleaned)

    train_table, test_table = split(modeling_table, SplitSpec(task.train_fraction, seed=seed))
    train = train_table.to_labeled_matrix()
    test = test_table.to_labeled_matrix()

    fit_X, fit_y = train.features, train.labels
    subsample_rows = None
    if task.model_kind == "svm" and task.svc_subsample and task.svc_subsample < len(fit_y):
        idx = stratified_subsample(fit_y, task.svc_subsample, seed)
        fit_X, fit_y = fit_X[idx], fit_y[idx]
        subsample_rows = int(len(fit_y))

    n_classes = int(train.labels.max()) + 1
    estimator = make_estimator(task.model_kind, task.model_params, seed, n_classes)
    estimator.fit(fit_X, fit_y)

    class_ids = list(range(max(n_classes, 2)))
    eval_report = EvalReport(
        train=evaluate_split(train.labels, estimator.predict(train.features), class_ids),
        test=evaluate_split(test.labels, estimator.predict(test.features), class_ids),
    )

    bundle = ModelBundle(
        estimator=estimator,
        feature_names=train.feature_names,
        label_name=task.label,
        model_id=make_model_id(kind_of(estimator), training_fingerprint(fit_X, fit_y)),
        task=task.name,
        scaler=scaler,
        schema=schema,
        seed=seed,
    )

    result = PipelineResult(
        task=task.name,
        cleaning_report=report,
        class_balance=balance,
        bundle=bundle,
        eval_report=eval_report,
        subsample_rows=subsample_rows,
    )
    result.golden_checks = _golden_checks(task, result)
    return result


def _golden_checks(task, result):
    checks = []
    report = result.cleaning_report
    if task.golden_rows is not None:
        checks.append(GoldenCheck(
            "rows_out",
            report.rows_out == task.golden_rows,
            f"expected {task.golden_rows}, got {report.rows_out}",
        ))
    if task.golden_duplicates is not None:
        checks.append(GoldenCheck(
            "duplicates_removed",
            report.duplicates_removed == task.golden_duplicates,
            f"expected {task.golden_duplicates}, got {report.duplicates_removed}",
        ))
    if task.expected_balance is not None:
        checks.append(GoldenCheck(
            "class_balance",
            abs(result.class_balance - task.expected_balance) <= 0.001,
            f"expected {task.expected_balance} +- 0.001, got {result.class_balance:.4f}",
        ))
    if task.require_perfect_train:
        checks.append(GoldenCheck(
            "train_accuracy",
            result.eval_report.train_accuracy == 1.0,
            f"expected 1.0, got {result.eval_report.train_accuracy:.4f}",
        ))
    if task.min_test_accuracy is not None:
        checks.append(GoldenCheck(
            "test_accuracy",
            result.eval_report.test_accuracy >= task.min_test_accuracy,
            f"expected >= {task.min_test_accuracy}, got {result.eval_report.test_accuracy:.4f}",
        ))
    if task.train_within is not None:
        ok = result.eval_report.train_accuracy >= result.eval_report.test_accuracy - task.train_within
        checks.append(GoldenCheck(
            "train_vs_test",
            ok,
            f"train {result.eval_report.train_accuracy:.4f} vs "
            f"test {result.eval_report.test_accuracy:.4f}",
        ))
    return checks
