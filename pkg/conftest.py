import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from utils.constants import CACHE_DIR_ENV
from utils.logger import LabLogger


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_DIR_ENV, str(tmp_path / "cache"))
    LabLogger.LOG_DIGITS = False
    yield tmp_path / "cache"
