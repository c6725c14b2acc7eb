import functools

import pytest

from egl import catalog


@functools.lru_cache(maxsize=None)
def group(key):
    """Catalog groups are immutable once built, so share them across tests."""
    return catalog.named(key).group()


@pytest.fixture
def q8():
    return group("q8")


@pytest.fixture
def d8():
    return group("d8")


@pytest.fixture
def d16():
    return group("d16")
