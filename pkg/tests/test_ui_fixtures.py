"""Drift gate between the service and the recorded frontend fixtures.

The browser client's contract tests run against the JSON recorded in
frontend/tests/fixtures/. This test regenerates those fixtures from the
live app and fails if anything no longer matches, so the two components
cannot drift apart silently.
"""

import json
import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[1]
FIXTURE_DIR = REPO_ROOT / "frontend" / "tests" / "fixtures"

sys.path.insert(0, str(REPO_ROOT / "scripts"))


@pytest.mark.skipif(not FIXTURE_DIR.exists(), reason="frontend fixtures not present")
def test_recorded_fixtures_match_live_service(tmp_path):
    from record_ui_fixtures import record

    fresh = record(tmp_path)
    for name in fresh:
        committed = json.loads((FIXTURE_DIR / name).read_text())
        regenerated = json.loads((tmp_path / name).read_text())
        assert regenerated == committed, (
            f"{name} drifted from the live service; "
            f"rerun scripts/record_ui_fixtures.py"
        )
