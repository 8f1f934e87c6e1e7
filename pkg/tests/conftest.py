from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def pl_en_table_path() -> Path:
    return DATA_DIR / "pl_en_scores.tsv"


@pytest.fixture(scope="session")
def en_pl_table_path() -> Path:
    return DATA_DIR / "en_pl_scores.tsv"
