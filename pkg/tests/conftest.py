import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from fracobs.logging import get_live_logger
from fracobs.mesh import build_graded_mesh, build_uniform_mesh

REPO_ROOT = Path(__file__).parent.parent


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running convergence and iteration studies")


@pytest.fixture
def live_logger():
    logger = get_live_logger()
    enabled, level = logger.enabled, logger.min_level
    callbacks = {lvl: list(cbs) for lvl, cbs in logger._callbacks.items()}
    yield logger
    logger.set_enabled(enabled)
    logger.set_level(level)
    logger._callbacks = callbacks


@pytest.fixture
def uniform8():
    return build_uniform_mesh(-1.0, 1.0, 8)


@pytest.fixture
def uniform64():
    return build_uniform_mesh(-1.0, 1.0, 64)


@pytest.fixture
def graded64():
    return build_graded_mesh(-1.0, 1.0, 64, 7.0 / 3.0)


@pytest.fixture
def repo_root():
    return REPO_ROOT


