"""
Shared fixtures: the windowed ring on [-1, 1] and its homomorphisms are
expensive enough to build once per session.
"""

import pytest

from ghostring.closure.subring import build_D
from ghostring.core.vectors import Window
from ghostring.homs.enumerate import enumerate_homs


@pytest.fixture(scope="session")
def small_window():
    return Window(-1, 1)


@pytest.fixture(scope="session")
def small_ring(small_window):
    return build_D(small_window)


@pytest.fixture(scope="session")
def small_homs(small_ring):
    return enumerate_homs(small_ring)


@pytest.fixture
def quiet_config(tmp_path):
    """Config file that keeps log output off the CLI output stream."""
    path = tmp_path / "quiet.toml"
    path.write_text('[logging]\nlevel = "ERROR"\n')
    return path
