import pytest

from conftest import get_catalog, get_context, get_lattice

from cosilt.algebra import ConsistencyError, InputError
from cosilt.cosiltpair import (
    CosiltingPair,
    assemble_and_check,
    brick_grain_bijection,
    brick_of_grain,
    exhaustive_cosilting_pairs,
    grain_of_brick,
    grains,
    is_grain,
    left_almost_split_certificate,
    order_compare,
    pair_of_torsion_pair,
    pairs_report,
    reject_sequence,
    theorem_a_report,
    torsion_pair_of_pair,
    verify_cosilting_pair,
)
from cosilt.repmod import iso_test
from cosilt.torslat import mask_names


def by_name(cat):
    return {nm: i for i, nm in enumerate(cat.names())}


def mask_of(cat, names):
    idx = by_name(cat)
    m = 0
    for nm in names:
        m |= 1 << idx[nm]
    return m


def vertex_mask(cat, names):
    m = 0
    for nm in names:
        m |= 1 << cat.algebra.vertices.index(nm)
    return m


# -- Theorem A assignments -------------------------------------------------------

def test_pair_of_torsion_pair_a2():
    cat = get_catalog("a2")
    lat = get_lattice("a2")
    ctx = get_context("a2")
    expected = {
        frozenset(): (["P1", "S1"], []),
        frozenset({"S2"}): (["S1"], ["2"]),
        frozenset({"S1"}): (["P1", "S2"], []),
        frozenset({"S1", "P1"}): (["S2"], ["1"]),
        frozenset({"S1", "S2", "P1"}): ([], ["1", "2"]),
    }
    for i, p in enumerate(lat.pairs):
        cp = pair_of_torsion_pair(ctx, i)
        key = frozenset(mask_names(cat, p.t_mask))
        z_names, i_names = expected[key]
        assert sorted(mask_names(cat, cp.z_mask)) == sorted(z_names)
        got_i = [cat.algebra.vertices[v] for v in range(2) if cp.i_mask >> v & 1]
        assert got_i == i_names


def test_torsion_pair_of_pair_examples():
    cat = get_catalog("a2")
    ctx = get_context("a2")
    # Z = injectives cogenerates everything
    cp = CosiltingPair(mask_of(cat, ["S1", "P1"]), 0)
    pair = torsion_pair_of_pair(ctx, cp)
    assert pair.t_mask == 0
    # empty Z cogenerates nothing
    cp = CosiltingPair(0, 0b11)
    pair = torsion_pair_of_pair(ctx, cp)
    assert pair.f_mask == 0
    # Z = {S2, P1}
    cp = CosiltingPair(mask_of(cat, ["S2", "P1"]), 0)
    pair = torsion_pair_of_pair(ctx, cp)
    assert mask_names(cat, pair.t_mask) == ["S1"]
    assert sorted(mask_names(cat, pair.f_mask)) == ["P1", "S2"]


def test_verify_examples():
    cat = get_catalog("a2")
    ctx = get_context("a2")
    good = CosiltingPair(mask_of(cat, ["S2", "P1"]), 0)
    assert verify_cosilting_pair(ctx, good)["ok"]
    good = CosiltingPair(mask_of(cat, ["S1"]), vertex_mask(cat, ["2"]))
    assert verify_cosilting_pair(ctx, good)["ok"]
    # {S2} with empty injectives is not maximal: I_1 can be added
    bad = CosiltingPair(mask_of(cat, ["S2"]), 0)
    cert = verify_cosilting_pair(ctx, bad)
    assert not cert["ok"]
    assert ("maximality-injective", 0) in cert["failures"]
    # a non-rigid set fails condition (ii)
    bad = CosiltingPair(mask_of(cat, ["S1", "S2"]), 0)
    cert = verify_cosilting_pair(ctx, bad)
    assert any(kind == "rigidity" for kind, _ in cert["failures"])


def test_exhaustive_matches_lattice():
    for key in ("a2", "a3", "kx2", "kx3", "a3nl"):
        ctx = get_context(key)
        found = exhaustive_cosilting_pairs(ctx)
        assert len(found) == len(ctx.lattice.pairs)


def test_theorem_a_roundtrip_and_order():
    for key in ("a2", "a3", "kx2", "kx3"):
        report = theorem_a_report(get_context(key))
        assert report["exhaustive_count"] == len(get_lattice(key).pairs)


def test_order_compare_examples():
    cat = get_catalog("a2")
    ctx = get_context("a2")
    top = CosiltingPair(0, 0b11)
    bottom = CosiltingPair(mask_of(cat, ["S1", "P1"]), 0)
    assert order_compare(ctx, bottom, top) in ("leq", "geq")
    a = CosiltingPair(mask_of(cat, ["S1"]), vertex_mask(cat, ["2"]))
    b = CosiltingPair(mask_of(cat, ["S2", "P1"]), 0)
    assert order_compare(ctx, a, b) == "incomparable"
    assert order_compare(ctx, a, a) == "equal"


def test_assemble_and_check_counts():
    cat = get_catalog("a2")
    ctx = get_context("a2")
    cp = CosiltingPair(mask_of(cat, ["S2", "P1"]), 0)
    out = assemble_and_check(ctx, cp)
    assert out["cosilting"] and out["z_plus_i"] == 2 == out["n_vertices"]
    cp = CosiltingPair(mask_of(cat, ["S1"]), vertex_mask(cat, ["2"]))
    assert assemble_and_check(ctx, cp)["z_plus_i"] == 2
    cp = CosiltingPair(mask_of(cat, ["S1", "P1"]), 0)
    assert assemble_and_check(ctx, cp)["cosilting"]


# -- grains ------------------------------------------------------------------------

def test_grains_a2_all():
    ctx = get_context("a2")
    for rec in grains(ctx):
        assert rec.is_grain and rec.is_cmi


def test_grains_kx2():
    cat = get_catalog("kx2")
    ctx = get_context("kx2")
    idx = by_name(cat)
    s = is_grain(ctx, idx["S1"])
    assert not s.is_grain
    a = is_grain(ctx, idx["P1"])
    assert a.is_grain and a.is_cmi


def test_grains_kx3():
    cat = get_catalog("kx3")
    ctx = get_context("kx3")
    flags = {cat.names()[r.index]: r.is_grain for r in grains(ctx)}
    # only the projective-injective regular module is a grain
    assert sum(flags.values()) == 1
    assert flags[cat.names()[max(range(len(cat)), key=lambda i: cat.members[i].total_dim)]]


# -- reject sequences ---------------------------------------------------------------

def test_reject_of_brick():
    cat = get_catalog("a2")
    idx = by_name(cat)
    rej = reject_sequence(cat.members[idx["P1"]])
    assert rej.phi is None
    assert rej.s_n.total_dim == cat.members[idx["P1"]].total_dim
    assert rej.n_tilde.total_dim == 0


def test_reject_of_kx2_regular():
    cat = get_catalog("kx2")
    idx = by_name(cat)
    A = cat.members[idx["P1"]]
    rej = reject_sequence(A)
    assert rej.s_n.total_dim == 1 and rej.n_tilde.total_dim == 1
    assert iso_test(rej.s_n, cat.members[idx["S1"]])
    assert rej.s_n.total_dim + rej.n_tilde.total_dim == A.total_dim


def test_reject_left_almost_split():
    cat = get_catalog("kx2")
    ctx = get_context("kx2")
    idx = by_name(cat)
    rej = reject_sequence(cat.members[idx["P1"]])
    ok, witness = left_almost_split_certificate(ctx, idx["P1"], rej)
    assert ok, witness


def test_reject_matches_min_left_approximation():
    # the kernel inclusion is the minimal left approximation of the socle
    # into the additive closure of the grain
    from cosilt.repmod import left_min_approx

    cat = get_catalog("kx2")
    idx = by_name(cat)
    A = cat.members[idx["P1"]]
    rej = reject_sequence(A)
    C, f = left_min_approx(rej.s_n, [A])
    assert C.dims == A.dims and f.is_injective()


# -- the brick correspondence -----------------------------------------------------------

def test_brick_of_grain_examples():
    cat = get_catalog("a2")
    ctx = get_context("a2")
    for rec in grains(ctx):
        assert brick_of_grain(ctx, rec) == rec.index  # identity on A2
    catk = get_catalog("kx2")
    ctxk = get_context("kx2")
    idx = by_name(catk)
    rec = is_grain(ctxk, idx["P1"])
    assert brick_of_grain(ctxk, rec) == idx["S1"]


def test_grain_of_brick_examples():
    cat = get_catalog("a2")
    ctx = get_context("a2")
    idx = by_name(cat)
    assert grain_of_brick(ctx, idx["S1"]).index == idx["S1"]
    assert grain_of_brick(ctx, idx["P1"]).index == idx["P1"]
    catk = get_catalog("kx2")
    ctxk = get_context("kx2")
    idxk = by_name(catk)
    assert grain_of_brick(ctxk, idxk["S1"]).index == idxk["P1"]


def test_grain_of_brick_rejects_non_brick():
    catk = get_catalog("kx2")
    ctxk = get_context("kx2")
    idxk = by_name(catk)
    with pytest.raises(InputError):
        grain_of_brick(ctxk, idxk["P1"])


def test_bijection_families():
    for key in ("a2", "a3", "kx2", "kx3", "kx4", "a3nl"):
        ctx = get_context(key)
        bij = brick_grain_bijection(ctx)
        assert len(bij) == len(ctx.catalog.bricks())


def test_pairs_report_shape():
    ctx = get_context("a2")
    rep = pairs_report(ctx)
    assert len(rep["pairs"]) == 5
    assert all(row["verified"] for row in rep["pairs"])
    assert all(row["z_plus_i"] == 2 for row in rep["pairs"])
    assert len(rep["grains"]) == 3
