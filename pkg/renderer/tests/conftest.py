from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def decoherence_path() -> Path:
    return DATA / "decoherence_records.csv"


@pytest.fixture(scope="session")
def fn_path() -> Path:
    return DATA / "fn_records.csv"
