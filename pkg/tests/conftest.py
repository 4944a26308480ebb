import pytest

from geoeval import load_edges, load_registry

from helpers import WORLD_DATA, make_registry


@pytest.fixture(scope="session")
def world_registry():
    return load_registry(WORLD_DATA / "registry.jsonl")


@pytest.fixture(scope="session")
def world_borders():
    return load_edges(WORLD_DATA / "border_edges.csv")


@pytest.fixture(scope="session")
def world_specials():
    return load_edges(WORLD_DATA / "special_edges.csv")


@pytest.fixture
def mini_registry():
    """Five countries in a row plus one island, with easy centroids."""
    return make_registry(
        [
            ("AA", "Alphaland", 0.0, 0.0, False),
            ("BB", "Betaland", 0.0, 10.0, False),
            ("CC", "Gammaland", 0.0, 20.0, False),
            ("DD", "Deltaland", 0.0, 30.0, False),
            ("EE", "Epsilonia", 0.0, 40.0, False),
            ("II", "Islandia", 0.0, 55.0, True),
        ]
    )
