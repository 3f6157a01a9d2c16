import numpy as np
import pytest

from sentinel.tabular import Table

from stub_geocoder import StubGeocoderServer


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture(scope="session")
def stub_geocoder():
    server = StubGeocoderServer().start()
    yield server
    server.stop()


@pytest.fixture(scope="session")
def cervical_result():
    """Tree pipeline run once on the bundled synthetic sample."""
    from sentinel.datafiles import CERVICAL_SAMPLE, data_path
    from sentinel.pipeline import run_pipeline

    return run_pipeline("cervical", data_path(CERVICAL_SAMPLE), seed=42)


@pytest.fixture(scope="session")
def breast_result():
    """SVC pipeline run once on the bundled synthetic sample."""
    from sentinel.datafiles import BCSC_SAMPLE, data_path
    from sentinel.pipeline import run_pipeline

    return run_pipeline("breast", data_path(BCSC_SAMPLE), seed=42)


def make_table(column_names, rows, name="t", label=None):
    """Build a Table from python rows where None marks a missing cell."""
    values = np.zeros((len(rows), len(column_names)))
    missing = np.zeros_like(values, dtype=bool)
    for i, row in enumerate(rows):
        for j, cell in enumerate(row):
            if cell is None:
                missing[i, j] = True
            else:
                values[i, j] = cell
    return Table(name, column_names, values, missing, label=label)


@pytest.fixture
def table_factory():
    return make_table
