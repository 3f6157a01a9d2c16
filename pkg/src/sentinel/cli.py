"""Operator command line.

Exit codes: 0 success (for ``reproduce``: all golden checks passed),
1 failed golden checks, 2 validation errors, 3 I/O and parse errors,
70 internal invariant violations.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .campaigns import (
    INDICATORS,
    load_case_points,
    load_district_stats,
    plan_campaigns,
    ranking_to_csv,
    rank_districts,
    statewide_means,
)
from .errors import (
    CsvParseError,
    GeocodeError,
    GeocodeNotFound,
    InvariantViolation,
    SentinelError,
    ValidationError,
)
from .geo import GeoPoint, RemoteGeocoder, load_facilities, load_gazetteer
from .metrics import EvalReport, evaluate_split
from .models import (
    ModelBundle,
    load_bundle,
    make_model_id,
    save_bundle,
    schema_from_table,
    training_fingerprint,
)
from .models.io import kind_of
from .pipeline import TASKS, make_estimator, run_pipeline
from .tabular import (
    DEFAULT_MISSING_MARKERS,
    SplitSpec,
    expand_rows_by_count,
    load_csv,
    split,
    standardize,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_INVARIANT = 70


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_VALIDATION
    try:
        return args.func(args)
    except (ValidationError, GeocodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (CsvParseError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except SentinelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sentinel",
        description="Screening triage toolkit: clean, train, evaluate, and serve.",
    )
    parser.add_argument("--version", action="version", version=f"sentinel {__version__}")
    sub = parser.add_subparsers(dest="command")
    parser.set_defaults(command=None)

    p = sub.add_parser("reproduce", help="run a full pipeline and check its golden numbers")
    p.add_argument("task", choices=sorted(TASKS))
    p.add_argument("--data", required=True, help="dataset CSV (see `sentinel fetch`)")
    p.add_argument("--out", default=None, help="artifact directory (default out/<task>)")
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("train", help="fit a classifier on a clean numeric CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--label", required=True, help="label column name")
    p.add_argument("--model", required=True, choices=["tree", "forest", "sgd", "svm"])
    p.add_argument("--scale", action="store_true", help="standardize features before fitting")
    p.add_argument("--expand-by-count", metavar="COLUMN",
                   help="replicate rows by this aggregate-count column before fitting")
    p.add_argument("--test-fraction", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="model hyperparameter, repeatable")
    p.add_argument("--out", required=True, help="model file to write")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a saved model on a labeled CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("predict", help="predict classes for feature rows")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True, help="CSV of feature columns")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("nearest", help="rank care facilities by distance")
    p.add_argument("--facilities", required=True)
    p.add_argument("--lat", type=float)
    p.add_argument("--lon", type=float)
    p.add_argument("--address")
    p.add_argument("--gazetteer", help="offline gazetteer CSV for address lookup")
    p.add_argument("--geocoder-endpoint", help="remote forward-geocoding URL")
    p.add_argument("-k", type=int, default=5)
    p.add_argument("--kind", choices=["hospital", "cancer_centre", "screening_camp"])
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_nearest)

    p = sub.add_parser("rank", help="district ranking by screening indicator")
    p.add_argument("--districts", required=True)
    p.add_argument("--indicator", choices=list(INDICATORS), default="cervical")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("plan", help="k-means campaign siting over case points")
    p.add_argument("--cases", required=True, help="lat,lon[,weight] CSV")
    p.add_argument("--districts", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("fetch", help="print where to obtain the real datasets")
    p.add_argument("task", choices=sorted(TASKS))
    p.set_defaults(func=cmd_fetch)

    return parser


# -- commands -----------------------------------------------------------------


def cmd_reproduce(args):
    data = Path(args.data)
    if not data.exists():
        print(
            f"error: dataset not found: {data}\n"
            f"run `sentinel fetch {args.task}` for download instructions",
            file=sys.stderr,
        )
        return EXIT_IO
    result = run_pipeline(args.task, data, seed=args.seed)
    out_dir = Path(args.out) if args.out else Path("out") / args.task
    out_dir.mkdir(parents=True, exist_ok=True)

    (out_dir / "cleaning_report.csv").write_text(result.cleaning_report.to_csv())
    (out_dir / "eval_report.csv").write_text(result.eval_report.to_csv())
    (out_dir / "confusion_train.csv").write_text(result.eval_report.train.confusion.to_csv())
    (out_dir / "confusion_test.csv").write_text(result.eval_report.test.confusion.to_csv())
    model_path = out_dir / f"{args.task}.model"
    save_bundle(result.bundle, model_path)

    for line in result.cleaning_report.to_log_lines():
        print(line)
    print(f"class balance: {result.class_balance:.4f}")
    if result.subsample_rows:
        print(f"svc trained on stratified subsample of {result.subsample_rows} rows")
    print(f"train accuracy: {result.eval_report.train_accuracy:.4f}")
    print(f"test accuracy: {result.eval_report.test_accuracy:.4f}")
    print(f"model written to {model_path}")
    for check in result.golden_checks:
        status = "ok" if check.passed else "FAILED"
        print(f"check {check.name}: {status} ({check.detail})")
    failed = result.first_failed_check()
    if failed:
        print(f"error: check {failed.name} failed: {failed.detail}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def parse_params(pairs):
    params = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValidationError(f"--param expects KEY=VALUE, got {pair!r}")
        key, value = pair.split("=", 1)
        try:
            params[key] = json.loads(value)
        except json.JSONDecodeError:
            params[key] = value
    return params


def cmd_train(args):
    table = load_csv(args.data, missing_markers=DEFAULT_MISSING_MARKERS)
    if args.expand_by_count:
        table = expand_rows_by_count(table, args.expand_by_count)
    table = table.with_label(args.label)
    if table.missing.any():
        raise ValidationError(
            "training CSV has missing cells; clean it first (see `sentinel reproduce`)"
        )
    schema = schema_from_table(table)
    scaler = None
    if args.scale:
        table, scaler = standardize(table)
    train_table, test_table = split(table, SplitSpec(1.0 - args.test_fraction, seed=args.seed))
    train = train_table.to_labeled_matrix()
    test = test_table.to_labeled_matrix()

    params = parse_params(args.param)
    n_classes = int(train.labels.max()) + 1
    estimator = make_estimator(args.model, params, args.seed, n_classes)
    try:
        estimator.fit(train.features, train.labels)
    except TypeError as exc:
        raise ValidationError(f"bad hyperparameters for {args.model}: {exc}") from exc

    class_ids = list(range(max(n_classes, 2)))
    report = EvalReport(
        train=evaluate_split(train.labels, estimator.predict(train.features), class_ids),
        test=evaluate_split(test.labels, estimator.predict(test.features), class_ids),
    )
    bundle = ModelBundle(
        estimator=estimator,
        feature_names=train.feature_names,
        label_name=args.label,
        model_id=make_model_id(kind_of(estimator),
                               training_fingerprint(train.features, train.labels)),
        scaler=scaler,
        schema=schema,
        seed=args.seed,
    )
    save_bundle(bundle, args.out)
    print(f"model written to {args.out}")
    print(f"train accuracy: {report.train_accuracy:.4f}")
    print(f"test accuracy: {report.test_accuracy:.4f}")
    return EXIT_OK


def _matrix_from_table(table, bundle):
    """Feature matrix in bundle order; extra columns are ignored."""
    if table.missing.any():
        raise ValidationError("input CSV has missing cells")
    missing = [n for n in bundle.feature_names if n not in table.column_names]
    if missing:
        raise ValidationError(f"input lacks feature columns: {missing}", fields=missing)
    cols = [table.column_index(n) for n in bundle.feature_names]
    X = table.values[:, cols]
    if bundle.scaler is not None:
        X = bundle.scaler.transform_vector(X, bundle.feature_names)
    return X


def cmd_eval(args):
    bundle = load_bundle(args.model)
    table = load_csv(args.data, missing_markers=DEFAULT_MISSING_MARKERS)
    table = table.with_label(bundle.label_name)
    X = _matrix_from_table(table, bundle)
    y = table.values[:, table.column_index(bundle.label_name)].astype(np.int64)
    pred = bundle.estimator.predict(X)
    ev = evaluate_split(y, pred, class_ids=sorted(set(y.tolist()) | set(pred.tolist())))
    report = EvalReport(train=ev, test=ev)
    if args.pretty:
        print(report.to_text())
    else:
        # Single-split evaluation: emit only the test section.
        lines = [l for l in report.to_csv().splitlines() if not l.startswith("train,")]
        print("\n".join(lines))
    return EXIT_OK


def cmd_predict(args):
    bundle = load_bundle(args.model)
    table = load_csv(args.input, missing_markers=DEFAULT_MISSING_MARKERS)
    X = _matrix_from_table(table, bundle)
    pred = bundle.estimator.predict(X)
    confidences = [bundle.confidence(x) for x in X]
    if args.pretty:
        for i, (p, c) in enumerate(zip(pred, confidences)):
            print(f"row {i}: class {p} ({c['kind']}={c['value']:.4f})")
    else:
        print("row,prediction,confidence_kind,confidence_value")
        for i, (p, c) in enumerate(zip(pred, confidences)):
            print(f"{i},{p},{c['kind']},{c['value']!r}")
    return EXIT_OK


def cmd_nearest(args):
    store = load_facilities(args.facilities)
    has_point = args.lat is not None and args.lon is not None
    if has_point == bool(args.address):
        raise ValidationError("supply either --lat/--lon or --address")
    source = None
    if has_point:
        origin = GeoPoint(args.lat, args.lon)
    else:
        gazetteer = load_gazetteer(args.gazetteer) if args.gazetteer else None
        remote = (RemoteGeocoder(args.geocoder_endpoint)
                  if args.geocoder_endpoint else None)
        result = _resolve_address(args.address, remote, gazetteer)
        origin, source = result.point, result.source
    ranked = store.nearest(origin, k=args.k, kind=args.kind)
    if args.pretty:
        if source:
            print(f"origin {origin.lat:.4f},{origin.lon:.4f} (via {source})")
        for rank, (f, d) in enumerate(ranked, start=1):
            print(f"{rank}. {f.name} [{f.kind}] {f.district} - {d:.1f} km")
    else:
        print("rank,id,name,kind,district,lat,lon,distance_km")
        for rank, (f, d) in enumerate(ranked, start=1):
            name = '"' + f.name.replace('"', '""') + '"'
            print(f"{rank},{f.id},{name},{f.kind},{f.district},"
                  f"{f.location.lat!r},{f.location.lon!r},{d!r}")
    return EXIT_OK


def _resolve_address(address, remote, gazetteer):
    remote_error = None
    if remote is not None:
        try:
            return remote.geocode(address)
        except GeocodeError as exc:
            remote_error = exc
    if gazetteer is not None:
        try:
            return gazetteer.lookup(address)
        except GeocodeNotFound:
            if remote_error:
                raise remote_error from None
            raise
    if remote_error:
        raise remote_error
    raise ValidationError("address lookup needs --gazetteer or --geocoder-endpoint")


def cmd_rank(args):
    stats = load_district_stats(args.districts)
    if args.pretty:
        means = statewide_means(stats)
        print("statewide means: " + " ".join(
            f"{ind}={means[ind]:.1f}%" for ind in INDICATORS
        ))
        for rank, s in enumerate(rank_districts(stats, args.indicator), start=1):
            print(f"{rank:>3}. {s.district:<28} {s.value(args.indicator):>5.1f}%")
    else:
        print(ranking_to_csv(stats, args.indicator), end="")
    return EXIT_OK


def cmd_plan(args):
    stats = load_district_stats(args.districts)
    cases = load_case_points(args.cases)
    plan = plan_campaigns(stats, cases, args.k, seed=args.seed)
    if args.pretty:
        print(f"{args.k} campaign sites over {len(cases)} case points "
              f"(inertia {plan.inertia:.2f}, {plan.iterations} iterations)")
        for i, (c, label) in enumerate(zip(plan.centroids, plan.district_labels)):
            print(f"{i}: {c.lat:.4f},{c.lon:.4f} near {label}")
    else:
        print(plan.to_csv(cases), end="")
    return EXIT_OK


def cmd_serve(args):
    import uvicorn

    from .service import build_snapshot, create_app, load_config

    config = load_config(args.config)
    app = create_app(build_snapshot(config))
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return EXIT_OK


FETCH_NOTES = {
    "cervical": """\
cervical risk-factor dataset (858 rows x 36 columns)
  1. Download 'risk_factors_cervical_cancer.csv' from the UCI Machine
     Learning Repository ('Cervical cancer (Risk Factors)') or the
     matching Kaggle mirror.
  2. Keep the header row unchanged; missing answers are encoded as '?'.
  3. Save it to data/risk_factors_cervical_cancer.csv (or pass --data).
""",
    "breast": """\
breast screening risk-factor dataset (16 columns, ~462k rows)
  1. Request the BCSC risk-estimation dataset from the Breast Cancer
     Surveillance Consortium (bcsc-research.org); mind its data use
     agreement - this toolkit never bundles it.
  2. Export it as CSV with the documented header: menopaus,agegrp,
     density,race,Hispanic,bmi,agefirst,nrelbc,brstproc,lastmamm,
     surgmeno,hrt,invasive,cancer,training,count. Leave unknown cells
     blank.
  3. Save it to data/bcsc_risk_factors.csv (or pass --data).
""",
}


def cmd_fetch(args):
    print(FETCH_NOTES[args.task], end="")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
