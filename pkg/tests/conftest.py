import random

import pytest

from src.algebra.ids import AlgebraId
from src.utils import config
from src.utils.logger import DetailedLogger


@pytest.fixture(autouse=True)
def isolated_run_dirs(tmp_path, monkeypatch):
    """Logs, reports and the result cache of every test go into tmp_path."""
    monkeypatch.setattr(config, "LOG_DIR", tmp_path / "log")
    monkeypatch.setattr(config, "OUTPUT_DIR", tmp_path / "output")
    monkeypatch.setattr(config, "CACHE_DIR", tmp_path / "cache")
    DetailedLogger.reset()
    yield
    DetailedLogger.reset()


@pytest.fixture
def rng():
    return random.Random(20240917)


@pytest.fixture
def sl2():
    return AlgebraId.parse("sl2")


@pytest.fixture
def osp12():
    return AlgebraId.parse("osp12")


@pytest.fixture
def gl1():
    return AlgebraId.parse("gl1")
