"""Acceptance gate: every criterion runs at its stated tolerance and prints
one pass/fail line (run with pytest -s to see them)."""

import json
import subprocess
import sys
import time

import pytest

from conftest import (
    get_catalog,
    get_context,
    get_lattice,
    kx_spec,
    linear_an_spec,
    nonlinear_a3_spec,
)

from cosilt.algebra import build_algebra
from cosilt.catalog import build_hereditary, build_nakayama, tables
from cosilt.cosiltpair import (
    PairContext,
    brick_grain_bijection,
    exhaustive_cosilting_pairs,
    is_grain,
    left_almost_split_certificate,
    pair_of_torsion_pair,
    reject_sequence,
    theorem_a_report,
    verify_cosilting_pair,
)
from cosilt.repmod import iso_test
from cosilt.torslat import (
    cmi_elements,
    enumerate_torsion_pairs,
    hasse_with_labels,
    mask_names,
)
from cosilt.verify import run_suites

ALL_KEYS = ("a2", "a3", "a4", "kx2", "kx3", "kx4", "a3nl")


def _report(number, ok, text):
    status = "PASS" if ok else "FAIL"
    print(f"{status} criterion {number}: {text}")
    assert ok, f"criterion {number}: {text}"


def _fresh(key):
    builders = {
        "a2": (linear_an_spec(2), build_hereditary),
        "a3": (linear_an_spec(3), build_hereditary),
        "a4": (linear_an_spec(4), build_hereditary),
        "a3nl": (nonlinear_a3_spec(), build_hereditary),
        "kx2": (kx_spec(2), build_nakayama),
        "kx3": (kx_spec(3), build_nakayama),
        "kx4": (kx_spec(4), build_nakayama),
    }
    spec, builder = builders[key]
    return builder(build_algebra(spec))


def test_criterion_1_a2():
    t0 = time.monotonic()
    cat = tables(_fresh("a2"))
    lat = enumerate_torsion_pairs(cat)
    hasse_with_labels(lat)
    ctx = PairContext(lat)
    ok = len(cat) == 3
    ok = ok and len(lat.pairs) == 5
    ok = ok and len(cat.bricks()) == 3
    ok = ok and len(cmi_elements(lat)) == 3
    expected = {
        frozenset(): (frozenset({"P1", "S1"}), frozenset()),
        frozenset({"S2"}): (frozenset({"S1"}), frozenset({"2"})),
        frozenset({"S1"}): (frozenset({"P1", "S2"}), frozenset()),
        frozenset({"S1", "P1"}): (frozenset({"S2"}), frozenset({"1"})),
        frozenset({"S1", "S2", "P1"}): (frozenset(), frozenset({"1", "2"})),
    }
    pairs = []
    for i, p in enumerate(lat.pairs):
        cp = pair_of_torsion_pair(ctx, i)
        pairs.append(cp)
        want_z, want_i = expected[frozenset(mask_names(cat, p.t_mask))]
        got_z = frozenset(mask_names(cat, cp.z_mask))
        got_i = frozenset(cat.algebra.vertices[v] for v in range(2) if cp.i_mask >> v & 1)
        ok = ok and got_z == want_z and got_i == want_i
    ok = ok and len(pairs) == 5
    bij = brick_grain_bijection(ctx)
    ok = ok and len(bij) == 3 and all(k == v for k, v in bij.items())
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 1.0
    _report(1, ok, f"A2 exact values and bijections ({elapsed:.2f}s < 1s)")


def test_criterion_2_a3():
    t0 = time.monotonic()
    cat = tables(_fresh("a3"))
    lat = enumerate_torsion_pairs(cat)
    edges = hasse_with_labels(lat)  # raises unless every cover has a unique brick label
    ctx = PairContext(lat)
    ok = len(cat) == 6
    ok = ok and len(lat.pairs) == 14
    ok = ok and len(cat.bricks()) == 6
    ok = ok and len(cmi_elements(lat)) == 6
    bij = brick_grain_bijection(ctx)
    ok = ok and len(bij) == 6
    theorem_a_report(ctx)  # raises unless every round trip is the identity
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 5.0
    _report(2, ok, f"A3 counts, labels and round trips ({elapsed:.2f}s < 5s)")


def test_criterion_3_kx2():
    t0 = time.monotonic()
    cat = tables(_fresh("kx2"))
    lat = enumerate_torsion_pairs(cat)
    hasse_with_labels(lat)
    ctx = PairContext(lat)
    names = cat.names()
    idx = {nm: i for i, nm in enumerate(names)}
    ok = len(cat) == 2 and len(lat.pairs) == 2
    ok = ok and list(cat.bricks()) == [idx["S1"]]
    a_idx = idx["P1"]
    rec = is_grain(ctx, a_idx)
    ok = ok and rec.is_grain
    rej = reject_sequence(cat.members[a_idx])
    s = cat.members[idx["S1"]]
    ok = ok and rej.s_n.total_dim == 1 and rej.n_tilde.total_dim == 1
    ok = ok and iso_test(rej.s_n, s) and iso_test(rej.n_tilde, s)
    from cosilt.repmod import soc_over_end
    ok = ok and soc_over_end(cat.members[a_idx]).total_dim == 1
    from cosilt.cosiltpair import brick_of_grain
    ok = ok and brick_of_grain(ctx, rec) == idx["S1"]
    las_ok, _ = left_almost_split_certificate(ctx, a_idx, rej)
    ok = ok and las_ok
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 1.0
    _report(3, ok, f"k[x]/(x^2) reject sequence and certificates ({elapsed:.2f}s < 1s)")


def test_criterion_4_criteria_equivalence():
    t0 = time.monotonic()
    ok = True
    for key in ALL_KEYS:
        report = run_suites(get_catalog(key), names="criteria", seed=0)
        ok = ok and report["suites"]["criteria"]["pass"]
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 60.0
    _report(4, ok, f"three grain criteria agree on all catalogs ({elapsed:.1f}s < 60s)")


def test_criterion_5_theorem_a_exhaustion():
    ok = True
    for key in ("a2", "a3", "kx2", "kx3", "kx4", "a3nl"):
        ctx = get_context(key)
        found = exhaustive_cosilting_pairs(ctx)
        ok = ok and len(found) == len(ctx.lattice.pairs)
        report = theorem_a_report(ctx)  # mutual inverses and order preservation
        ok = ok and report["exhaustive_count"] == len(ctx.lattice.pairs)
    _report(5, ok, "exhaustive (Z, I) search matches |tors| with inverse, order-preserving maps")


def test_criterion_6_structural_suites():
    ok = True
    for key in ALL_KEYS:
        report = run_suites(get_catalog(key),
                            names=["exactfield", "yoneda", "ar", "exactness"], seed=0)
        for name, res in report["suites"].items():
            ok = ok and res["pass"]
            if "instances" in res:
                ok = ok and res["instances"] >= 200
    _report(6, ok, "structural suites pass on 200 seeded instances per algebra")


def test_criterion_7_z_plus_i():
    ok = True
    for key in ALL_KEYS:
        ctx = get_context(key)
        nv = ctx.catalog.algebra.n_vertices
        for i in range(len(ctx.lattice.pairs)):
            cp = pair_of_torsion_pair(ctx, i)
            z = bin(cp.z_mask).count("1")
            iinj = bin(cp.i_mask).count("1")
            ok = ok and z + iinj == nv
    _report(7, ok, "|Z| + |I| equals the vertex count on every pair (imported cross-check)")


def test_criterion_8_determinism(tmp_path):
    spec = tmp_path / "a2.json"
    spec.write_text(json.dumps({
        "field": {"prime": 2}, "vertices": ["1", "2"],
        "arrows": [{"name": "a", "from": "1", "to": "2"}],
        "relations": [], "nilpotency_bound": 3,
    }))
    blobs = []
    for k in (1, 2):
        out = tmp_path / f"r{k}.json"
        res = subprocess.run(
            [sys.executable, "-m", "cosilt.cli", "verify", "--algebra", str(spec),
             "--check", "all", "--seed", "11", "--json", str(out)],
            capture_output=True, text=True,
        )
        assert res.returncode == 0
        blobs.append((res.stdout, out.read_bytes()))
    ok = blobs[0] == blobs[1]
    _report(8, ok, "verify --check all is byte-identical across runs with one seed")
