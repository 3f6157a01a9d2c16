#!/usr/bin/env python3
"""Record service responses as fixtures for the frontend contract tests.

Trains the demo models on the bundled synthetic samples, runs the
service in-process, and captures the exact JSON bodies the browser
client consumes. Deterministic: rerunning must reproduce the committed
fixtures byte for byte (tests/test_ui_fixtures.py enforces this).
"""

import json
import sys
from pathlib import Path

import numpy as np
from fastapi.testclient import TestClient

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from sentinel.campaigns import load_district_stats
from sentinel.datafiles import (
    CERVICAL_SAMPLE,
    DISTRICT_STATS,
    FACILITIES,
    GAZETTEER,
    data_path,
)
from sentinel.geo import load_facilities, load_gazetteer
from sentinel.pipeline import CERVICAL_TASK, run_pipeline
from sentinel.service import Snapshot, create_app
from sentinel.tabular import SplitSpec, clean, load_csv, split

DEFAULT_TARGET = Path(__file__).resolve().parents[1] / "frontend" / "tests" / "fixtures"


def build_client():
    result = run_pipeline("cervical", data_path(CERVICAL_SAMPLE), seed=42)
    snapshot = Snapshot(
        bundles={"cervical": result.bundle},
        facilities=load_facilities(data_path(FACILITIES)),
        gazetteer=load_gazetteer(data_path(GAZETTEER)),
        district_stats=load_district_stats(data_path(DISTRICT_STATS)),
    )
    return TestClient(create_app(snapshot))


def sample_answers():
    """A fixed row of the cleaned synthetic sample, as a feature map."""
    table = load_csv(data_path(CERVICAL_SAMPLE),
                     missing_markers=CERVICAL_TASK.missing_markers)
    cleaned, _ = clean(table, max_missing_fraction=CERVICAL_TASK.sparse_threshold)
    cleaned = cleaned.with_label(CERVICAL_TASK.label)
    train, _ = split(cleaned, SplitSpec(CERVICAL_TASK.train_fraction, seed=42))
    label_col = train.column_index(train.label)
    positives = np.nonzero(train.values[:, label_col] == 1.0)[0]
    row = int(positives[0])
    return {
        name: float(train.values[row, col])
        for col, name in enumerate(train.column_names)
        if col != label_col
    }


def record(target_dir):
    target = Path(target_dir)
    target.mkdir(parents=True, exist_ok=True)
    client = build_client()
    answers = sample_answers()

    fixtures = {}
    fixtures["schema_cervical.json"] = client.get("/schema/cervical").json()

    base = client.post("/assess/cervical", json={"answers": answers}).json()
    repeat = client.post("/assess/cervical", json={"answers": answers}).json()
    assert base == repeat, "assess must be deterministic"
    fixtures["assess_base.json"] = {
        "request": {"task": "cervical", "answers": answers},
        "response": base,
    }

    changed_field = "Smokes"
    changed_answers = dict(answers)
    changed_answers[changed_field] = 1.0 - changed_answers[changed_field]
    changed = client.post("/assess/cervical", json={"answers": changed_answers}).json()
    fixtures["assess_changed.json"] = {
        "request": {"task": "cervical", "answers": changed_answers},
        "changed_field": changed_field,
        "response": changed,
    }

    invalid = client.post("/assess/cervical",
                          json={"answers": {k: v for k, v in answers.items()
                                            if k != "Age"}})
    fixtures["assess_invalid.json"] = {
        "status": invalid.status_code,
        "response": invalid.json(),
    }

    fixtures["facilities_near.json"] = {
        "request": {"lat": 17.392, "lon": 78.471, "k": 5},
        "response": client.get(
            "/facilities/near", params={"lat": 17.392, "lon": 78.471, "k": 5}
        ).json(),
    }

    fixtures["districts_ranking.json"] = client.get(
        "/districts/ranking", params={"indicator": "cervical"}
    ).json()

    for name, body in fixtures.items():
        path = target / name
        path.write_text(json.dumps(body, indent=2, sort_keys=True) + "\n")
        print(f"wrote {path}")
    return fixtures


if __name__ == "__main__":
    record(sys.argv[1] if len(sys.argv) > 1 else DEFAULT_TARGET)
