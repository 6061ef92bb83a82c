"""Pytest configuration and shared fixtures."""

import os
import sys
from pathlib import Path

import pytest

# Add src to Python path
project_root = Path(__file__).parent.parent
src_path = project_root / "src"
sys.path.insert(0, str(src_path))

from hyperprod.config.settings import get_settings  # noqa: E402
from hyperprod.core.logging import logger, setup_logging  # noqa: E402

# Set DEBUG_TESTS=1 to see pipeline logs
setup_logging("DEBUG" if os.getenv("DEBUG_TESTS") else "WARNING")


@pytest.fixture(autouse=True)
def log_test_info(request):
    """Log test information for debugging."""
    if os.getenv("DEBUG_TESTS"):
        logger.debug(f"Running test: {request.node.name}")
    yield


@pytest.fixture(autouse=True)
def fresh_settings():
    """Drop the cached settings around every test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def write_source(tmp_path):
    """Write program text to a file under tmp_path and return its path."""

    def write(text: str, name: str = "program.rp") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
