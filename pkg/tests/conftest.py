from pathlib import Path

import pytest

from matkb.filtering import load_rules
from matkb.tagger import TaggerConfig

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def rules():
    return load_rules()


@pytest.fixture(scope="session")
def tagger_config():
    return TaggerConfig.load()


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
