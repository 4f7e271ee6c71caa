import os
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make `oracles` importable

from sagdbscan import Dataset

# Benchmark CSVs the user can supply (class id in the last column).  The
# directory is resolved from $SAGDBSCAN_DATA_DIR, falling back to ./data.
DATA_DIR = Path(os.environ.get("SAGDBSCAN_DATA_DIR", Path(__file__).parent.parent / "data"))


def load_benchmark(name: str) -> Dataset:
    """Load `<name>.csv` from the data directory or skip the calling test."""
    from sagdbscan import load_csv

    path = DATA_DIR / f"{name}.csv"
    if not path.exists():
        pytest.skip(f"benchmark dataset not supplied: put {name}.csv (labels in last "
                    f"column) under {DATA_DIR} or set SAGDBSCAN_DATA_DIR")
    probe = load_csv(path)
    return load_csv(path, label_column=probe.n_features - 1)


@pytest.fixture(scope="session")
def iris_uci() -> Dataset:
    """The UCI distribution of the iris data (scikit-learn ships the Fisher
    variant; rows 35 and 38 are restored to the UCI values)."""
    sklearn = pytest.importorskip("sklearn.datasets")
    raw = sklearn.load_iris()
    data = raw.data.copy()
    data[34] = [4.9, 3.1, 1.5, 0.1]
    data[37] = [4.9, 3.1, 1.5, 0.1]
    return Dataset(data, labels=raw.target, name="iris")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
