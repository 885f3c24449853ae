"""Cosilting pairs (Z, I), grains, reject sequences and the brick
correspondence, machine-checked over a complete catalog.

Everything here is finite: Z is a set of catalog members, I a set of
indecomposable injectives, products are finite direct sums, and rigidity of
the copresentation complexes is decided by the two-term calculus.
"""

from __future__ import annotations

from collections import namedtuple

from .algebra import ConsistencyError, InputError, direct_sum, identity_map, zero_module
from .catalog import IndecCatalog
from .exactfield import rank
from .repmod import (
    end_algebra,
    hom_basis,
    is_brick,
    iso_test,
    map_kernel_cokernel_image,
    soc_over_end,
    submodule_to_rep,
    _maps_matrix,
    coords_of_map,
)
from .torslat import (
    TorsLattice,
    TorsionPairFin,
    cmi_elements,
    left_perp,
    mask_names,
    torsionfree_closure,
    _submask,
)
from .twoterm import (
    cogen_member,
    finite_cosilting_check,
    hom_derived_shift,
    sum_complexes,
)

CosiltingPair = namedtuple("CosiltingPair", "z_mask i_mask")

GrainRecord = namedtuple("GrainRecord", "index is_grain t_mask f_mask is_cmi")

RejectSequence = namedtuple("RejectSequence", "module end phi s_n s_n_incl n_tilde quotient_map")


class PairContext:
    """Cached pairwise data for cosilting computations over one lattice."""

    def __init__(self, lattice: TorsLattice):
        self.lattice = lattice
        self.catalog = lattice.catalog
        n = len(self.catalog)
        self._rigid = [[None] * n for _ in range(n)]
        self._cogen = {}
        inj, _ = self.catalog.std_indices()
        self.injective_member_of_vertex = inj

    def rigid(self, i, j):
        """Whether Hom_D(mu_i, mu_j[1]) vanishes."""
        if self._rigid[i][j] is None:
            self._rigid[i][j] = hom_derived_shift(self.catalog.mu(i), self.catalog.mu(j)) == 0
        return self._rigid[i][j]

    def rigid_set_mask(self, z_mask):
        idxs = [i for i in range(len(self.catalog)) if z_mask >> i & 1]
        for i in idxs:
            for j in idxs:
                if not self.rigid(i, j):
                    return False, (i, j)
        return True, None

    def hom_to_injective(self, x, v):
        """dim Hom(member x, I_v)."""
        inj_idx = self.injective_member_of_vertex[v]
        return self.catalog.hom(x, inj_idx)

    def cogen_mask(self, z_mask):
        """Members embedding into a finite sum of the Z members."""
        if z_mask in self._cogen:
            return self._cogen[z_mask]
        cat = self.catalog
        idxs = [i for i in range(len(cat)) if z_mask >> i & 1]
        if not idxs:
            out = 0
        else:
            C = direct_sum([cat.members[i] for i in idxs])[0] if len(idxs) > 1 else cat.members[idxs[0]]
            out = 0
            for x in range(len(cat)):
                if cogen_member(cat.members[x], C):
                    out |= 1 << x
        self._cogen[z_mask] = out
        return out


# ---------------------------------------------------------------------------
# the Theorem A assignments

def pair_of_torsion_pair(ctx: PairContext, pair_index: int) -> CosiltingPair:
    """Z = Ext-injectives of the torsionfree class, I = injectives orthogonal to it."""
    cat = ctx.catalog
    f_mask = ctx.lattice.pairs[pair_index].f_mask
    n = len(cat)
    fs = [i for i in range(n) if f_mask >> i & 1]
    z_mask = 0
    for x in fs:
        if all(cat.ext(g, x) == 0 for g in fs):
            z_mask |= 1 << x
    i_mask = 0
    for v in range(cat.algebra.n_vertices):
        if all(ctx.hom_to_injective(x, v) == 0 for x in fs):
            i_mask |= 1 << v
    cp = CosiltingPair(z_mask, i_mask)
    cert = verify_cosilting_pair(ctx, cp)
    if not cert["ok"]:
        raise ConsistencyError(f"derived pair fails verification: {cert['failures']}")
    return cp


def torsion_pair_of_pair(ctx: PairContext, cp: CosiltingPair) -> TorsionPairFin:
    """f = Cogen Z on the catalog, t = its left Hom-orthogonal."""
    f_mask = ctx.cogen_mask(cp.z_mask)
    t_mask = left_perp(ctx.catalog, f_mask)
    idx = ctx.lattice.index_of_t(t_mask)
    if idx is None or ctx.lattice.pairs[idx].f_mask != f_mask:
        raise ConsistencyError("cosilting pair does not induce a torsion pair of the lattice")
    return ctx.lattice.pairs[idx]


def verify_cosilting_pair(ctx: PairContext, cp: CosiltingPair):
    """Certificate for the rigid-pair axioms and one-step maximality."""
    cat = ctx.catalog
    n = len(cat)
    nv = cat.algebra.n_vertices
    failures = []
    ok_rigid, witness = ctx.rigid_set_mask(cp.z_mask)
    if not ok_rigid:
        failures.append(("rigidity", witness))
    for x in range(n):
        if cp.z_mask >> x & 1:
            for v in range(nv):
                if cp.i_mask >> v & 1 and ctx.hom_to_injective(x, v) != 0:
                    failures.append(("orthogonality", (x, v)))
    # maximality against one-step enlargements
    for x in range(n):
        if cp.z_mask >> x & 1:
            continue
        breaks = not ctx.rigid(x, x)
        if not breaks:
            for z in range(n):
                if cp.z_mask >> z & 1 and (not ctx.rigid(x, z) or not ctx.rigid(z, x)):
                    breaks = True
                    break
        if not breaks:
            for v in range(nv):
                if cp.i_mask >> v & 1 and ctx.hom_to_injective(x, v) != 0:
                    breaks = True
                    break
        if not breaks:
            failures.append(("maximality-module", x))
    for v in range(nv):
        if cp.i_mask >> v & 1:
            continue
        if all(ctx.hom_to_injective(z, v) == 0 for z in range(n) if cp.z_mask >> z & 1):
            failures.append(("maximality-injective", v))
    return {"ok": not failures, "failures": failures}


def exhaustive_cosilting_pairs(ctx: PairContext, max_members=8):
    """All verified cosilting pairs by brute force over (Z, I) candidates."""
    cat = ctx.catalog
    n = len(cat)
    if n > max_members:
        raise InputError(f"exhaustive search is limited to catalogs with <= {max_members} members")
    nv = cat.algebra.n_vertices
    out = []
    for z_mask in range(1 << n):
        ok, _ = ctx.rigid_set_mask(z_mask)
        if not ok:
            continue
        allowed = 0
        for v in range(nv):
            if all(ctx.hom_to_injective(z, v) == 0 for z in range(n) if z_mask >> z & 1):
                allowed |= 1 << v
        cp = CosiltingPair(z_mask, allowed)
        if verify_cosilting_pair(ctx, cp)["ok"]:
            out.append(cp)
    return out


def order_compare(ctx: PairContext, cp1: CosiltingPair, cp2: CosiltingPair) -> str:
    """Order by reverse inclusion of the cogenerated classes."""
    c1 = ctx.cogen_mask(cp1.z_mask)
    c2 = ctx.cogen_mask(cp2.z_mask)
    if c1 == c2:
        if (cp1.z_mask, cp1.i_mask) != (cp2.z_mask, cp2.i_mask):
            raise ConsistencyError("distinct cosilting pairs cogenerate the same class")
        return "equal"
    if _submask(c2, c1):
        return "leq"
    if _submask(c1, c2):
        return "geq"
    return "incomparable"


def assemble_and_check(ctx: PairContext, cp: CosiltingPair):
    """Build the module C and the complex of the pair and certify both."""
    cat = ctx.catalog
    alg = cat.algebra
    z_idx = [i for i in range(len(cat)) if cp.z_mask >> i & 1]
    i_verts = [v for v in range(alg.n_vertices) if cp.i_mask >> v & 1]
    sigma = sum_complexes(alg, [cat.mu(i) for i in z_idx], stalk_vertices=i_verts)
    ok, report = finite_cosilting_check(sigma, cat)
    if not ok:
        raise ConsistencyError(f"finite cosilting check failed: {report}")
    pair = torsion_pair_of_pair(ctx, cp)
    cogen = ctx.cogen_mask(cp.z_mask)
    if cogen != pair.f_mask:
        raise ConsistencyError("cogenerated class disagrees with the torsion pair")
    count = len(z_idx) + len(i_verts)
    return {
        "cosilting": True,
        "cogen": mask_names(cat, cogen),
        "z_plus_i": count,
        "n_vertices": alg.n_vertices,
    }


# ---------------------------------------------------------------------------
# grains

def is_grain(ctx: PairContext, n_idx: int) -> GrainRecord:
    """Both grain criteria, the induced torsion pair, and the cmi flag."""
    cat = ctx.catalog
    tm = cat.tau_minus(n_idx)
    crit_tau = tm is None or cat.hom(tm, n_idx) == 0
    crit_mu = ctx.rigid(n_idx, n_idx)
    if crit_tau != crit_mu:
        raise ConsistencyError(
            f"grain criteria disagree on {cat.names()[n_idx]}: tau {crit_tau}, mu {crit_mu}"
        )
    t_mask = left_perp(cat, 1 << n_idx)
    cogen = ctx.cogen_mask(1 << n_idx)
    f_mask = torsionfree_closure(ctx.lattice.data, cogen)
    if crit_tau and f_mask != cogen:
        raise ConsistencyError("a grain's cogenerated class is not torsionfree-closed")
    idx = ctx.lattice.index_of_t(t_mask)
    if idx is None or ctx.lattice.pairs[idx].f_mask != f_mask:
        raise ConsistencyError("grain candidate does not induce a lattice pair")
    cmi = {i for i, _ in cmi_elements(ctx.lattice)}
    return GrainRecord(n_idx, crit_tau, t_mask, f_mask, idx in cmi)


def grains(ctx: PairContext):
    return [is_grain(ctx, i) for i in range(len(ctx.catalog))]


def reject_sequence(N, budget_seed=(None, None)) -> RejectSequence:
    """0 -> S_N -> N -> N~ -> 0 with S_N the socle over End(N)."""
    end = end_algebra(N)
    if not end.is_local:
        raise InputError("reject sequences need an indecomposable module")
    rad = end.radical_basis
    alg = N.algebra
    if not rad:
        z = zero_module(alg)
        return RejectSequence(N, end, None, N, identity_map(N), z, None)
    target, embeds, _ = direct_sum([N] * len(rad))
    phi = None
    for emb, f in zip(embeds, rad):
        term = emb.compose(f)
        phi = term if phi is None else phi + term
    kci = map_kernel_cokernel_image(phi)
    s_n, s_incl = kci.kernel, kci.kernel_incl
    soc = soc_over_end(N)
    soc_rep, _ = submodule_to_rep(soc)
    if soc_rep.dims != s_n.dims:
        raise ConsistencyError("kernel of the reject map differs from the socle over End")
    n_tilde, n_incl = submodule_to_rep(kci.image)
    # the quotient map N -> N~ through the image
    from .twoterm import _corestrict

    g = _corestrict(phi, kci.image, n_incl)
    if not g.is_surjective():
        raise ConsistencyError("reject quotient map is not surjective")
    if s_n.total_dim + n_tilde.total_dim != N.total_dim:
        raise ConsistencyError("reject sequence is not exact")
    return RejectSequence(N, end, phi, s_n, s_incl, n_tilde, g)


def left_almost_split_certificate(ctx: PairContext, n_idx: int, rej: RejectSequence):
    """Every catalog map N -> M into Cogen N that is not a split mono must
    factor through the reject quotient."""
    cat = ctx.catalog
    N = cat.members[n_idx]
    g = rej.quotient_map
    if g is None:
        raise InputError("a brick has no reject quotient to certify")
    cogen = ctx.cogen_mask(1 << n_idx)
    for m in range(len(cat)):
        if not cogen >> m & 1:
            continue
        M = cat.members[m]
        maps_nm = hom_basis(N, M)
        if not maps_nm:
            continue
        through = [h.compose(g) for h in hom_basis(rej.n_tilde, M)]
        if m != n_idx:
            # no split monos N -> M at all, so everything must factor
            if not through:
                return False, m
            mat = _maps_matrix(through, N, M)
            if rank(mat) < len(maps_nm):
                return False, m
        else:
            # the non-isomorphisms N -> N are exactly the radical
            for f in rej.end.radical_basis:
                if not through:
                    return False, m
                if coords_of_map(f, through, N, M) is None:
                    return False, m
    return True, None


# ---------------------------------------------------------------------------
# the brick correspondence

def brick_of_grain(ctx: PairContext, rec: GrainRecord) -> int:
    """The unique brick whose smallest torsionfree class is the grain's."""
    if not rec.is_grain or not rec.is_cmi:
        raise InputError("brick_of_grain needs a grain with completely meet irreducible torsion class")
    cat = ctx.catalog
    candidates = [b for b in cat.bricks()
                  if torsionfree_closure(ctx.lattice.data, 1 << b) == rec.f_mask]
    if len(candidates) != 1:
        raise ConsistencyError(
            f"{len(candidates)} bricks cogenerate the torsionfree class of {cat.names()[rec.index]}"
        )
    b = candidates[0]
    rej = reject_sequence(cat.members[rec.index])
    if rej.s_n.total_dim:
        if not iso_test(rej.s_n, cat.members[b]):
            raise ConsistencyError("the reject kernel is not the corresponding brick")
    return b


def grain_of_brick(ctx: PairContext, b: int) -> GrainRecord:
    """The unique member of the Ext-injectives of F(B) receiving a map from B."""
    cat = ctx.catalog
    if b not in cat.bricks():
        raise InputError(f"member {cat.names()[b]} is not a brick")
    f_mask = torsionfree_closure(ctx.lattice.data, 1 << b)
    fs = [i for i in range(len(cat)) if f_mask >> i & 1]
    z = [x for x in fs if all(cat.ext(g, x) == 0 for g in fs)]
    receivers = [x for x in z if cat.hom(b, x) > 0]
    if len(receivers) != 1:
        raise ConsistencyError(
            f"brick {cat.names()[b]} maps to {len(receivers)} Ext-injectives of its class"
        )
    rec = is_grain(ctx, receivers[0])
    if not rec.is_grain or not rec.is_cmi:
        raise ConsistencyError("the critical module of a brick is not a cmi grain")
    if brick_of_grain(ctx, rec) != b:
        raise ConsistencyError("brick -> grain -> brick round trip failed")
    return rec


def brick_grain_bijection(ctx: PairContext):
    """Mutually inverse maps between cmi grains and bricks."""
    cat = ctx.catalog
    cmi_grains = [rec for rec in grains(ctx) if rec.is_grain and rec.is_cmi]
    fwd = {}
    for rec in cmi_grains:
        fwd[rec.index] = brick_of_grain(ctx, rec)
    if len(set(fwd.values())) != len(fwd):
        raise ConsistencyError("two cmi grains map to the same brick")
    for b in cat.bricks():
        rec = grain_of_brick(ctx, b)
        if fwd.get(rec.index) != b:
            raise ConsistencyError("grain_of_brick is not inverse to brick_of_grain")
    if set(fwd.values()) != set(cat.bricks()):
        raise ConsistencyError("brick correspondence is not onto the bricks")
    return fwd


# ---------------------------------------------------------------------------
# whole-lattice verification and reporting

def theorem_a_report(ctx: PairContext, exhaustive_limit=8):
    """Round trips between torsion pairs and cosilting pairs, with the
    exhaustive search cross-check on small catalogs."""
    lat = ctx.lattice
    pairs = []
    seen = {}
    for i in range(len(lat.pairs)):
        cp = pair_of_torsion_pair(ctx, i)
        back = torsion_pair_of_pair(ctx, cp)
        if back != lat.pairs[i]:
            raise ConsistencyError(f"torsion pair {i} does not round trip through its cosilting pair")
        if cp in seen:
            raise ConsistencyError("two torsion pairs share a cosilting pair")
        seen[cp] = i
        pairs.append(cp)
    exhaustive = None
    if len(ctx.catalog) <= exhaustive_limit:
        found = exhaustive_cosilting_pairs(ctx, max_members=exhaustive_limit)
        if sorted(found) != sorted(pairs):
            raise ConsistencyError(
                f"exhaustive search found {len(found)} cosilting pairs, lattice has {len(pairs)}"
            )
        exhaustive = len(found)
    # order preservation both ways
    for i in range(len(lat.pairs)):
        for j in range(len(lat.pairs)):
            t_leq = lat.leq(i, j)
            cmp = order_compare(ctx, pairs[i], pairs[j])
            pair_leq = cmp in ("leq", "equal")
            if t_leq != pair_leq:
                raise ConsistencyError(f"order mismatch between pairs {i} and {j}")
    return {"pairs": pairs, "exhaustive_count": exhaustive}


def pairs_report(ctx: PairContext):
    """Per torsion pair: the cosilting pair, its certificates, grains and rejects."""
    cat = ctx.catalog
    names = cat.names()
    report = theorem_a_report(ctx)
    out = []
    for i, cp in enumerate(report["pairs"]):
        cert = verify_cosilting_pair(ctx, cp)
        check = assemble_and_check(ctx, cp)
        out.append({
            "pair": i,
            "torsion": mask_names(cat, ctx.lattice.pairs[i].t_mask),
            "torsionfree": mask_names(cat, ctx.lattice.pairs[i].f_mask),
            "Z": mask_names(cat, cp.z_mask),
            "I": [cat.algebra.vertices[v] for v in range(cat.algebra.n_vertices) if cp.i_mask >> v & 1],
            "verified": cert["ok"],
            "z_plus_i": check["z_plus_i"],
        })
    grain_rows = []
    for rec in grains(ctx):
        row = {
            "member": names[rec.index],
            "is_grain": rec.is_grain,
            "is_cmi": rec.is_cmi,
        }
        if rec.is_grain:
            rej = reject_sequence(cat.members[rec.index])
            row["reject"] = {
                "socle_dim": rej.s_n.total_dim,
                "image_dim": rej.n_tilde.total_dim,
            }
            if rej.s_n.total_dim == 0:
                row["reject"]["noteworthy"] = "reject kernel vanishes for a non-brick grain"
            if rec.is_cmi:
                row["brick"] = names[brick_of_grain(ctx, rec)]
        grain_rows.append(row)
    from .catalog import completeness_block

    return {"completeness": completeness_block(cat), "pairs": out, "grains": grain_rows}
