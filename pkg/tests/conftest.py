import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kcone import build_root_datum, full_basis


@pytest.fixture(scope="session")
def a1():
    return build_root_datum("A1")


@pytest.fixture(scope="session")
def a2():
    return build_root_datum("A2")


@pytest.fixture(scope="session")
def b2():
    return build_root_datum("B2")


@pytest.fixture(scope="session")
def basis_cache():
    """Share expensive full_basis computations across test modules."""
    cache = {}

    def get(label, bound_sq):
        key = (label, bound_sq)
        if key not in cache:
            cache[key] = full_basis(build_root_datum(label), bound_sq)
        return cache[key]

    return get
