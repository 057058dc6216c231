"""Pytest configuration and fixtures for tdaboot tests."""
import os
import sys
from pathlib import Path

# Add the project root to the Python path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

# Set up environment for testing
os.environ["TESTING"] = "1"
os.environ["PYTHONPATH"] = str(PROJECT_ROOT)

import logging

import numpy as np
import pytest

import config
from tda_models import Grid, GridField, PointCloud


@pytest.fixture(autouse=True)
def isolated_debug_log(tmp_path, monkeypatch):
    """Send the debug log of every CLI run in a test to a temporary file."""
    monkeypatch.setattr(config, 'DEBUG_LOG_PATH', tmp_path / 'debug.log')
    root = logging.getLogger()
    before = set(root.handlers)
    level = root.level
    yield
    # setup_logging installs root handlers bound to this test's streams and files
    for handler in root.handlers[:]:
        if handler not in before:
            handler.close()
            root.removeHandler(handler)
    root.setLevel(level)


@pytest.fixture
def rng() -> np.random.Generator:
    """A fixed generator for building random test inputs."""
    return np.random.default_rng(20240601)


@pytest.fixture
def unit_square() -> PointCloud:
    """Corners of the unit square in cyclic order."""
    return PointCloud(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))


@pytest.fixture
def field_1d() -> GridField:
    """The 1D field with vertex values [1, 3, 2, 4]."""
    return GridField(Grid((0.0,), (3.0,), (3,)), np.array([1.0, 3.0, 2.0, 4.0]))


@pytest.fixture
def three_point_cloud() -> PointCloud:
    return PointCloud(np.array([[0.0, 0.0], [0.5, 0.2], [-0.3, 0.4]]))
