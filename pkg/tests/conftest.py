import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))
sys.path.insert(0, str(Path(__file__).parent))

from ingestion.records import ValueModel  # noqa: E402


@pytest.fixture
def survey_values() -> ValueModel:
    """Scenario values measured on the ME scale"""
    return ValueModel(18.15, 36.32, -16.69, -28.08, -4.82)


@pytest.fixture
def unit_values() -> ValueModel:
    return ValueModel(1.0, 1.0, -1.0, -1.0, -0.1)
