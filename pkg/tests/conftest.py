"""Shared fixtures: the telescope model and fixture paths."""

from pathlib import Path

import pytest

from config.settings import settings
from semantics import load_model_file

FIXTURES = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture
def telescope():
    """The bundled telescope model: three countries, four states."""
    return load_model_file(settings.telescope_path)


@pytest.fixture
def telescope_path():
    return settings.telescope_path


@pytest.fixture
def fixtures_dir():
    return FIXTURES
