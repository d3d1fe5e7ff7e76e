"""Pytest configuration and fixtures."""

from pathlib import Path

import pytest


@pytest.fixture
def golden() -> Path:
    """Directory of committed certificates and derivations, byte-exact."""
    return Path(__file__).parent / "golden"
