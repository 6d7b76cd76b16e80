"""Pytest configuration and shared fixtures."""
import shutil
from pathlib import Path

import pytest

from wdrd.classify import load_catalog
from wdrd.config import settings
from wdrd.digraph import Digraph, dump_digraph
from wdrd.families import FamilySpec, build_family
from wdrd.utils.file_utils import sidecar_path


@pytest.fixture(scope="session")
def catalog():
    """Load the shipped group catalog once."""
    return load_catalog()


@pytest.fixture(scope="session")
def family_i():
    """Cay(Z7, {1, 2, 4})."""
    return build_family(FamilySpec("I"))


@pytest.fixture(scope="session")
def sporadic():
    """The shipped sporadic 18-vertex digraph."""
    return build_family(FamilySpec("IV"))


@pytest.fixture
def not_wdrd():
    """Strongly connected 3-vertex digraph whose arcs (1, 2) and (2, 0) share a label but not their counts."""
    return Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0), (1, 0)])


@pytest.fixture
def path_digraph():
    """0 -> 1 -> 2, not strongly connected."""
    return Digraph.from_arcs(3, [(0, 1), (1, 2)])


@pytest.fixture
def write_digraph(tmp_path):
    """Write a digraph document into tmp_path and return its path."""
    def _write(d: Digraph, name: str = "digraph.json") -> Path:
        path = tmp_path / name
        path.write_text(dump_digraph(d), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def sporadic_cache(tmp_path):
    """Point the sporadic cache at a writable copy of the shipped one."""
    cache = tmp_path / "sporadic18.json"
    shutil.copy(settings.sporadic_cache, cache)
    shutil.copy(sidecar_path(settings.sporadic_cache), sidecar_path(cache))

    # Override settings
    original_cache = settings.sporadic_cache
    settings.sporadic_cache = cache

    yield cache

    # Restore original settings
    settings.sporadic_cache = original_cache
