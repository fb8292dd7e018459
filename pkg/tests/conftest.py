from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def real_pages() -> list[Path]:
    return sorted((DATA / "real_pages").glob("*.html"))
