"""Named verification suites over one algebra: structural invariants,
criterion equivalences, and the two main bijections.

Each suite returns a dict with a pass flag and deterministic details; the
CLI prints one line per suite and the whole report is byte-stable for a
fixed seed.
"""

from __future__ import annotations

import random

from .algebra import (
    build_algebra,
    direct_sum,
    module_radical_socle_top,
    std_module,
    std_modules,
    submodule_to_rep,
)
from .catalog import IndecCatalog, tables
from .cosiltpair import (
    PairContext,
    assemble_and_check,
    brick_grain_bijection,
    grains,
    is_grain,
    left_almost_split_certificate,
    pairs_report,
    reject_sequence,
    theorem_a_report,
    verify_cosilting_pair,
)
from .exactfield import GF, Mat, kernel_basis, rank, rref, solve
from .repmod import (
    ar_translate,
    enumerate_submodules,
    ext1,
    hom_basis,
    hom_dim,
    inj_copresentation,
    iso_test,
    is_brick,
    min_proj_presentation,
)
from .torslat import (
    cmi_elements,
    cmi_brick_bijection,
    enumerate_torsion_pairs,
    hasse_with_labels,
    heart_simples,
    lattice_meet_join,
    mask_names,
)
from .twoterm import hom_derived_shift, in_c_sigma, mu

SUITE_NAMES = (
    "exactfield",
    "yoneda",
    "ar",
    "exactness",
    "criteria",
    "lattice",
    "theorem-a",
    "brick-grain",
)


def _random_mat(field, rows, cols, rng):
    return Mat.from_rows(field, [[field.rand(rng) for _ in range(cols)] for _ in range(rows)])


def suite_exactfield(cat, lat, ctx, seed, instances=200):
    rng = random.Random(seed + 101)
    checked = 0
    for field in (cat.algebra.field, GF(2), GF(5)):
        for _ in range(instances // 3 + 1):
            r, c = rng.randrange(1, 6), rng.randrange(1, 6)
            m = _random_mat(field, r, c, rng)
            red, _, rk = rref(m)
            if rref(red)[0] != red or rank(m.transpose()) != rk:
                return {"pass": False, "detail": "rref property failed"}
            vecs = kernel_basis(m)
            if len(vecs) != c - rk or any(not (m * v).is_zero() for v in vecs):
                return {"pass": False, "detail": "kernel property failed"}
            b = _random_mat(field, r, 1, rng)
            x = solve(m, b)
            aug_rank = rank(m.hstack(b))
            if (x is None) != (aug_rank == rk + 1):
                return {"pass": False, "detail": "solvability criterion failed"}
            if x is not None and m * x != b:
                return {"pass": False, "detail": "solve returned a non-solution"}
            checked += 1
    return {"pass": True, "instances": checked}


def _random_member_sum(cat, rng, max_summands=3):
    k = rng.randrange(1, max_summands + 1)
    return tuple(sorted(rng.randrange(len(cat)) for _ in range(k)))


def _sum_of(cat, picks):
    mods = [cat.members[i] for i in picks]
    return direct_sum(mods)[0] if len(mods) > 1 else mods[0]


def suite_yoneda(cat, lat, ctx, seed, instances=200):
    alg = cat.algebra
    rng = random.Random(seed + 202)
    projs = std_modules(alg, "projective")
    injs = std_modules(alg, "injective")
    cache = {}
    checked = 0
    for _ in range(instances):
        picks = _random_member_sum(cat, rng)
        v = rng.randrange(alg.n_vertices)
        key = (picks, v)
        if key not in cache:
            m = _sum_of(cat, picks)
            cache[key] = (hom_dim(projs[v], m) == m.dims[v]
                          and hom_dim(m, injs[v]) == m.dims[v])
        if not cache[key]:
            return {"pass": False, "detail": f"Yoneda dimension check failed at vertex {alg.vertices[v]}"}
        checked += 1
    return {"pass": True, "instances": checked}


def suite_ar(cat, lat, ctx, seed, instances=200):
    rng = random.Random(seed + 303)
    inj_idx, proj_idx = cat.std_indices()
    cache = {}

    def check(i):
        if i in cache:
            return cache[i]
        m = cat.members[i]
        ok = True
        if i not in proj_idx:
            back = ar_translate(ar_translate(m, "tau"), "minus")
            ok = ok and iso_test(back, m)
        if i not in inj_idx:
            back = ar_translate(ar_translate(m, "minus"), "tau")
            ok = ok and iso_test(back, m)
        cache[i] = ok
        return ok

    checked = 0
    for _ in range(instances):
        i = rng.randrange(len(cat))
        if not check(i):
            return {"pass": False, "detail": f"AR translate round trip failed on {cat.names()[i]}"}
        checked += 1
    return {"pass": True, "instances": checked}


def suite_exactness(cat, lat, ctx, seed, instances=200):
    from .repmod import map_kernel_cokernel_image

    rng = random.Random(seed + 404)
    cache = {}
    checked = 0
    for _ in range(instances):
        picks = _random_member_sum(cat, rng, max_summands=2)
        if picks not in cache:
            m = _sum_of(cat, picks)
            inj_copresentation(m)  # raises if the kernel certificate fails
            pres = min_proj_presentation(m)
            img = map_kernel_cokernel_image(pres.differential).image
            ker = map_kernel_cokernel_image(pres.cover).kernel
            cache[picks] = img.total_dim == ker.total_dim
        if not cache[picks]:
            return {"pass": False, "detail": "presentation is not exact in the middle"}
        checked += 1
    return {"pass": True, "instances": checked}


def suite_criteria(cat, lat, ctx, seed, submodule_budget=1 << 16):
    """The three rigidity criteria agree on every ordered pair of members.

    tau: Hom(tau^- N, M) = 0; mu: the derived Hom of copresentations
    vanishes; sub: every submodule of M is Ext-orthogonal to N.  The last
    uses the catalog's submodule decompositions and Ext table, which were
    computed by independent code paths.
    """
    n = len(cat)
    rigid_pairs = 0
    for mi in range(n):
        sub_masks = {u for u, _ in lat.data.pairs[mi]}
        sub_members = set()
        for u in sub_masks:
            for k in range(n):
                if u >> k & 1:
                    sub_members.add(k)
        for ni in range(n):
            tm = cat.tau_minus(ni)
            crit_tau = tm is None or cat.hom(tm, mi) == 0
            crit_mu = hom_derived_shift(cat.mu(mi), cat.mu(ni)) == 0
            crit_sub = all(cat.ext(u, ni) == 0 for u in sub_members)
            if not (crit_tau == crit_mu == crit_sub):
                return {
                    "pass": False,
                    "detail": f"criteria disagree on ({cat.names()[mi]}, {cat.names()[ni]}): "
                              f"tau={crit_tau} mu={crit_mu} sub={crit_sub}",
                }
            rigid_pairs += int(crit_tau)
    # C_sigma membership is closed under submodules
    for ni in range(n):
        mu_n = cat.mu(ni)
        member_in = [in_c_sigma(cat.members[mi], mu_n) for mi in range(n)]
        for mi in range(n):
            if not member_in[mi]:
                continue
            for u, _ in lat.data.pairs[mi]:
                for k in range(n):
                    if u >> k & 1 and not member_in[k]:
                        return {"pass": False,
                                "detail": f"C_sigma of {cat.names()[ni]} not submodule-closed"}
    return {"pass": True, "pairs": n * n, "rigid_pairs": rigid_pairs}


def suite_lattice(cat, lat, ctx, seed, submodule_budget=1 << 16):
    from .repmod import decompose

    edges = hasse_with_labels(lat)
    cmi = cmi_elements(lat)
    cmi_brick_bijection(lat)
    bottom, top = lattice_meet_join(lat, range(len(lat.pairs)))
    if lat.pairs[bottom].t_mask != 0 or lat.pairs[top].f_mask != 0:
        return {"pass": False, "detail": "meet/join of everything is not bottom/top"}
    for i in range(len(lat.pairs)):
        heart_simples(lat, i)  # raises on violation of the quotient condition
    # spot check: summand masks of submodules of two-member sums, computed
    # once per member pair, must stay inside every torsionfree class
    n = len(cat)
    pair_mask = {}
    maxdim = max(m.total_dim for m in cat.members)
    if cat.algebra.field.p ** (2 * maxdim) <= submodule_budget:
        for a in range(n):
            for b in range(a, n):
                big = direct_sum([cat.members[a], cat.members[b]])[0]
                mask = 0
                for s in enumerate_submodules(big, budget=submodule_budget):
                    rep = submodule_to_rep(s)[0]
                    if rep.total_dim == 0:
                        continue
                    mult = cat.summand_multiplicities(rep)
                    if mult is None:
                        mult = {}
                        for piece, _ in decompose(rep):
                            idx = cat.index_of(piece)
                            if idx is None:
                                return {"pass": False,
                                        "detail": "a submodule summand of a pair sum left the catalog"}
                            mult[idx] = 1
                    for idx in mult:
                        mask |= 1 << idx
                pair_mask[(a, b)] = mask
        for p in lat.pairs:
            fs = [i for i in range(n) if p.f_mask >> i & 1]
            for x, a in enumerate(fs):
                for b in fs[x:]:
                    if pair_mask[(min(a, b), max(a, b))] & ~p.f_mask:
                        return {"pass": False,
                                "detail": "a torsionfree class is not closed under "
                                          "submodule summands of pair sums"}
    return {"pass": True, "pairs": len(lat.pairs), "covers": len(edges), "cmi": len(cmi)}


def suite_theorem_a(cat, lat, ctx, seed):
    report = theorem_a_report(ctx)
    for cp in report["pairs"]:
        cert = verify_cosilting_pair(ctx, cp)
        if not cert["ok"]:
            return {"pass": False, "detail": f"verification failed: {cert['failures']}"}
        check = assemble_and_check(ctx, cp)
        if check["z_plus_i"] != cat.algebra.n_vertices:
            return {"pass": False,
                    "detail": f"|Z|+|I| = {check['z_plus_i']} != {cat.algebra.n_vertices} vertices"}
    return {
        "pass": True,
        "pairs": len(report["pairs"]),
        "exhaustive": report["exhaustive_count"],
    }


def suite_brick_grain(cat, lat, ctx, seed):
    bij = brick_grain_bijection(ctx)
    recs = grains(ctx)
    n_grains = sum(1 for r in recs if r.is_grain)
    for rec in recs:
        if not rec.is_grain:
            continue
        rej = reject_sequence(cat.members[rec.index])
        brick = is_brick(cat.members[rec.index])
        if brick:
            if rej.s_n.total_dim != cat.members[rec.index].total_dim:
                return {"pass": False, "detail": "reject kernel of a brick is not the brick"}
        else:
            if rej.s_n.total_dim == 0:
                # flagged as noteworthy rather than wrong
                continue
            ok, witness = left_almost_split_certificate(ctx, rec.index, rej)
            if not ok:
                return {"pass": False,
                        "detail": f"left almost split certificate failed at {cat.names()[witness]}"}
            if rec.is_cmi and not iso_test(rej.s_n, cat.members[brick_grain_target(ctx, rec)]):
                return {"pass": False, "detail": "reject kernel differs from the brick"}
    return {
        "pass": True,
        "bricks": len(cat.bricks()),
        "cmi_grains": len(bij),
        "grains": n_grains,
    }


def brick_grain_target(ctx, rec):
    from .cosiltpair import brick_of_grain

    return brick_of_grain(ctx, rec)


SUITES = {
    "exactfield": suite_exactfield,
    "yoneda": suite_yoneda,
    "ar": suite_ar,
    "exactness": suite_exactness,
    "criteria": suite_criteria,
    "lattice": suite_lattice,
    "theorem-a": suite_theorem_a,
    "brick-grain": suite_brick_grain,
}


def run_suites(cat: IndecCatalog, names="all", seed=0, subset_budget=1 << 20,
               submodule_budget=1 << 16):
    """Run the named suites and return a deterministic report."""
    tables(cat)
    lat = enumerate_torsion_pairs(cat, subset_budget=subset_budget,
                                  submodule_budget=submodule_budget)
    hasse_with_labels(lat)
    ctx = PairContext(lat)
    if names == "all":
        chosen = list(SUITE_NAMES)
    else:
        chosen = [names] if isinstance(names, str) else list(names)
        for nm in chosen:
            if nm not in SUITES:
                raise ValueError(f"unknown check {nm!r}; known: {', '.join(SUITE_NAMES)}")
    results = {}
    for nm in chosen:
        fn = SUITES[nm]
        if nm in ("criteria", "lattice"):
            results[nm] = fn(cat, lat, ctx, seed, submodule_budget=submodule_budget)
        else:
            results[nm] = fn(cat, lat, ctx, seed)
    from .catalog import completeness_block

    report = {
        "catalog": {
            "members": list(cat.names()),
            "completeness": completeness_block(cat),
        },
        "seed": seed,
        "suites": results,
        "pass": all(r["pass"] for r in results.values()),
    }
    return report
