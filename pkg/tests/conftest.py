import pytest

from cosilt.algebra import QuiverSpec, build_algebra
from cosilt.catalog import build_hereditary, build_nakayama, tables
from cosilt.exactfield import GF

F2 = GF(2)

_cache = {}


def linear_an_spec(n, p=2):
    verts = [str(i) for i in range(1, n + 1)]
    arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)]
    return QuiverSpec(GF(p), verts, arrows, [], n + 1)


def kx_spec(n, p=2):
    return QuiverSpec(GF(p), ["1"], [("x", "1", "1")], [[("1", ["x"] * n)]], n + 1)


def nonlinear_a3_spec(p=2):
    return QuiverSpec(GF(p), ["1", "2", "3"],
                      [("a", "1", "2"), ("b", "3", "2")], [], 4)


def get_algebra(key):
    if ("alg", key) not in _cache:
        specs = {
            "a2": linear_an_spec(2),
            "a3": linear_an_spec(3),
            "a4": linear_an_spec(4),
            "a5": linear_an_spec(5),
            "a3nl": nonlinear_a3_spec(),
            "kx2": kx_spec(2),
            "kx3": kx_spec(3),
            "kx4": kx_spec(4),
        }
        _cache[("alg", key)] = build_algebra(specs[key])
    return _cache[("alg", key)]


def get_catalog(key):
    if ("cat", key) not in _cache:
        alg = get_algebra(key)
        builder = build_nakayama if key.startswith("kx") else build_hereditary
        _cache[("cat", key)] = tables(builder(alg))
    return _cache[("cat", key)]


def get_lattice(key):
    if ("lat", key) not in _cache:
        from cosilt.torslat import enumerate_torsion_pairs, hasse_with_labels

        lat = enumerate_torsion_pairs(get_catalog(key))
        hasse_with_labels(lat)
        _cache[("lat", key)] = lat
    return _cache[("lat", key)]


def get_context(key):
    if ("ctx", key) not in _cache:
        from cosilt.cosiltpair import PairContext

        _cache[("ctx", key)] = PairContext(get_lattice(key))
    return _cache[("ctx", key)]


@pytest.fixture
def a2_catalog():
    return get_catalog("a2")


@pytest.fixture
def kx2_catalog():
    return get_catalog("kx2")
