"""The module calculus: Hom and Ext spaces, kernels and cokernels,
envelopes and covers, minimal (co)presentations, AR translates,
decomposition into indecomposables, endomorphism algebras with their
radicals, and socles over the endomorphism ring.

All of it reduces to exact linear algebra.  Endomorphism radicals are
computed characteristic-free from a composition series of the module over
its own endomorphism ring (trace forms are useless over F_2, which is the
workhorse field for enumeration).
"""

from __future__ import annotations

import random
from collections import namedtuple

import numpy as np

from .algebra import (
    ConsistencyError,
    InputError,
    Mat,
    ModMap,
    ModuleRep,
    Path,
    SubmoduleData,
    direct_sum,
    identity_map,
    module_radical_socle_top,
    quotient_by,
    std_module,
    submodule_to_rep,
    zero_map,
    zero_module,
)
from .exactfield import (
    PrimeField,
    column_space_basis,
    inverse,
    is_invertible,
    kernel_basis,
    rank,
    rref,
    solve,
)


class BudgetExceededError(RuntimeError):
    pass


class UnsupportedFieldError(RuntimeError):
    pass


DEFAULT_ELEMENT_BUDGET = 4096
DEFAULT_SUBMODULE_BUDGET = 1 << 16


# ---------------------------------------------------------------------------
# hom spaces

def _vec_offsets(M, N):
    offs = []
    run = 0
    for v in range(M.algebra.n_vertices):
        offs.append(run)
        run += N.dims[v] * M.dims[v]
    return offs, run


def map_to_vec(f: ModMap):
    parts = [f.components[v].a.reshape(-1) for v in range(len(f.components))]
    field = f.source.algebra.field
    if isinstance(field, PrimeField):
        return np.concatenate([p.astype(np.int64) for p in parts]) if parts else np.zeros(0, dtype=np.int64)
    out = np.empty(sum(p.size for p in parts), dtype=object)
    i = 0
    for p in parts:
        out[i : i + p.size] = p
        i += p.size
    return out


def map_from_vec(M: ModuleRep, N: ModuleRep, vec) -> ModMap:
    field = M.algebra.field
    offs, total = _vec_offsets(M, N)
    comps = []
    for v in range(M.algebra.n_vertices):
        r, c = N.dims[v], M.dims[v]
        block = np.asarray(vec[offs[v] : offs[v] + r * c]).reshape(r, c)
        comps.append(Mat(field, block))
    return ModMap(M, N, comps, check=False)


def _kron(a, b, field):
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]),
                        dtype=np.int64 if isinstance(field, PrimeField) else object)
    return np.kron(a, b)


def hom_basis(M: ModuleRep, N: ModuleRep):
    """Basis of Hom_A(M, N), the solution space of the intertwining system."""
    if M.algebra is not N.algebra:
        raise InputError("modules over different algebras")
    alg = M.algebra
    field = alg.field
    offs, total = _vec_offsets(M, N)
    if total == 0:
        return []
    blocks = []
    for ai, a in enumerate(alg.arrows):
        s, t = a.src, a.tgt
        nrows = N.dims[t] * M.dims[s]
        if nrows == 0:
            continue
        row = np.zeros((nrows, total), dtype=np.int64 if isinstance(field, PrimeField) else object)
        if not isinstance(field, PrimeField):
            row[...] = field.zero
        # C_t * M_a  contributes  (I ox M_a^T) vec(C_t)
        if N.dims[t] * M.dims[t] > 0:
            eye = Mat.identity(field, N.dims[t]).a
            row[:, offs[t] : offs[t] + N.dims[t] * M.dims[t]] += _kron(eye, M.action[ai].a.T, field)
        # N_a * C_s  contributes  (N_a ox I) vec(C_s)
        if N.dims[s] * M.dims[s] > 0:
            eye = Mat.identity(field, M.dims[s]).a
            row[:, offs[s] : offs[s] + N.dims[s] * M.dims[s]] -= _kron(N.action[ai].a, eye, field)
        blocks.append(row)
    if blocks:
        sys_mat = Mat(field, np.vstack(blocks) if isinstance(field, PrimeField) else _obj_vstack(blocks))
    else:
        sys_mat = Mat.zeros(field, 0, total)
    vecs = kernel_basis(sys_mat)
    return [map_from_vec(M, N, v.a[:, 0]) for v in vecs]


def _obj_vstack(blocks):
    rows = sum(b.shape[0] for b in blocks)
    cols = blocks[0].shape[1]
    out = np.empty((rows, cols), dtype=object)
    i = 0
    for b in blocks:
        out[i : i + b.shape[0]] = b
        i += b.shape[0]
    return out


def hom_dim(M, N):
    return len(hom_basis(M, N))


def _maps_matrix(maps, M, N):
    """Matrix whose columns are the vectorised maps."""
    field = M.algebra.field
    _, total = _vec_offsets(M, N)
    cols = Mat.zeros(field, total, len(maps)).a.copy()
    for j, f in enumerate(maps):
        cols[:, j] = map_to_vec(f)
    return Mat(field, cols)


def coords_of_map(f: ModMap, basis, M=None, N=None):
    """Coordinates of f in a given hom basis, or None if outside the span."""
    M = M or f.source
    N = N or f.target
    mat = _maps_matrix(basis, M, N)
    target = Mat(M.algebra.field, map_to_vec(f).reshape(-1, 1))
    return solve(mat, target)


# ---------------------------------------------------------------------------
# kernels, cokernels, images

KernelCokernelImage = namedtuple("KernelCokernelImage", "kernel kernel_incl cokernel cokernel_proj image")


def map_kernel_cokernel_image(f: ModMap) -> KernelCokernelImage:
    M, N = f.source, f.target
    field = M.algebra.field
    ker_rows = []
    img_rows = []
    for v in range(M.algebra.n_vertices):
        vecs = kernel_basis(f.components[v])
        if vecs:
            stacked = vecs[0]
            for w in vecs[1:]:
                stacked = stacked.hstack(w)
            ker_rows.append(stacked.transpose())
        else:
            ker_rows.append(Mat.zeros(field, 0, M.dims[v]))
        img_rows.append(column_space_basis(f.components[v]).transpose())
    ker_sub = SubmoduleData(M, ker_rows)
    img_sub = SubmoduleData(N, img_rows)
    ker_rep, ker_incl = submodule_to_rep(ker_sub)
    coker_rep, coker_proj = quotient_by(img_sub)
    if not f.compose(ker_incl).is_zero():
        raise ConsistencyError("kernel inclusion does not vanish under the map")
    if not coker_proj.compose(f).is_zero():
        raise ConsistencyError("cokernel projection does not kill the image")
    return KernelCokernelImage(ker_rep, ker_incl, coker_rep, coker_proj, img_sub)


# ---------------------------------------------------------------------------
# submodule enumeration over a finite field

def enumerate_submodules(M: ModuleRep, budget=DEFAULT_SUBMODULE_BUDGET):
    """Every submodule of M, exactly once.

    Cyclic submodules are generated from all p^dim vectors; arbitrary
    submodules are their pairwise joins, closed to a fixpoint.
    """
    from itertools import product as iproduct

    from .algebra import submodule_from_vectors, zero_submodule

    alg = M.algebra
    field = alg.field
    if not isinstance(field, PrimeField):
        raise UnsupportedFieldError("submodule enumeration needs a finite field")
    total = M.total_dim
    if field.p ** total > budget:
        raise BudgetExceededError(
            f"submodule enumeration over {field} needs {field.p}^{total} > budget {budget}"
        )
    offsets = []
    run = 0
    for v in range(alg.n_vertices):
        offsets.append(run)
        run += M.dims[v]
    found = {}
    zero = zero_submodule(M)
    found[zero.key()] = zero
    for coeffs in iproduct(range(field.p), repeat=total):
        if not any(coeffs):
            continue
        vecs = []
        for v in range(alg.n_vertices):
            piece = list(coeffs[offsets[v] : offsets[v] + M.dims[v]])
            if any(piece):
                vecs.append([Mat.column(field, piece)])
            else:
                vecs.append([])
        sub = submodule_from_vectors(M, vecs)
        found.setdefault(sub.key(), sub)
    # close under pairwise joins
    frontier = list(found.values())
    while frontier:
        new = []
        for s in frontier:
            for t in list(found.values()):
                joined = _join_submodules(s, t)
                if joined.key() not in found:
                    found[joined.key()] = joined
                    new.append(joined)
        frontier = new
    out = sorted(found.values(), key=lambda s: (s.total_dim, s.key()))
    return out


def _join_submodules(s: SubmoduleData, t: SubmoduleData) -> SubmoduleData:
    rows = []
    for v in range(len(s.rows)):
        rows.append(s.rows[v].vstack(t.rows[v]))
    return SubmoduleData(s.ambient, rows)


# ---------------------------------------------------------------------------
# envelopes, covers, presentations

Envelope = namedtuple("Envelope", "module mono vertices")
Cover = namedtuple("Cover", "module epi vertices")
ProjPresentation = namedtuple("ProjPresentation", "p1 p0 differential cover vertices1 vertices0")
InjCopres = namedtuple("InjCopres", "e0 e1 differential mono vertices0 vertices1")


def _extend_along_mono(mono: ModMap, f: ModMap) -> ModMap:
    """Find g with g o mono = f; the target of f must be injective."""
    M = mono.target
    Z = f.target
    alg = M.algebra
    field = alg.field
    offs, total = _vec_offsets(M, Z)
    if total == 0:
        return zero_map(M, Z)
    blocks = []
    rhs = []
    intl = np.int64 if isinstance(field, PrimeField) else object

    def new_block(nrows):
        b = np.zeros((nrows, total), dtype=intl)
        if not isinstance(field, PrimeField):
            b[...] = field.zero
        return b

    for ai, a in enumerate(alg.arrows):
        s, t = a.src, a.tgt
        nrows = Z.dims[t] * M.dims[s]
        if nrows == 0:
            continue
        row = new_block(nrows)
        if Z.dims[t] * M.dims[t] > 0:
            row[:, offs[t] : offs[t] + Z.dims[t] * M.dims[t]] += _kron(
                Mat.identity(field, Z.dims[t]).a, M.action[ai].a.T, field
            )
        if Z.dims[s] * M.dims[s] > 0:
            row[:, offs[s] : offs[s] + Z.dims[s] * M.dims[s]] -= _kron(
                Z.action[ai].a, Mat.identity(field, M.dims[s]).a, field
            )
        blocks.append(row)
        rhs.extend([field.zero] * nrows)
    S = mono.source
    for v in range(alg.n_vertices):
        nrows = Z.dims[v] * S.dims[v]
        if nrows == 0:
            continue
        row = new_block(nrows)
        row[:, offs[v] : offs[v] + Z.dims[v] * M.dims[v]] += _kron(
            Mat.identity(field, Z.dims[v]).a, mono.components[v].a.T, field
        )
        blocks.append(row)
        rhs.extend(list(f.components[v].a.reshape(-1)))
    if not blocks:
        return zero_map(M, Z)
    sys_mat = Mat(field, np.vstack(blocks)) if isinstance(field, PrimeField) else Mat(field, _obj_vstack(blocks))
    x = solve(sys_mat, Mat.column(field, rhs))
    if x is None:
        raise ConsistencyError("extension along a mono into an injective failed")
    return map_from_vec(M, Z, x.a[:, 0])


def injective_envelope(M: ModuleRep) -> Envelope:
    """E(M) = sum of indecomposable injectives matching the socle, with the embedding."""
    alg = M.algebra
    field = alg.field
    if M.is_zero():
        return Envelope(zero_module(alg), identity_map(M), ())
    _, socle, _ = module_radical_socle_top(alg, M)
    soc_rep, soc_incl = submodule_to_rep(socle)
    vertices = []
    for v in range(alg.n_vertices):
        vertices.extend([v] * socle.dims[v])
    injs = [std_module(alg, "injective", alg.vertices[v]) for v in vertices]
    if not injs:
        raise ConsistencyError("nonzero module with zero socle")
    E, embeds, _ = direct_sum(injs)
    # map the socle into E: the basis vector at a vertex goes to the socle
    # generator of its own injective copy
    comps = [Mat.zeros(field, E.dims[v], soc_rep.dims[v]).a.copy() for v in range(alg.n_vertices)]
    copy_idx = 0
    for v in range(alg.n_vertices):
        for j in range(socle.dims[v]):
            inj = injs[copy_idx]
            _, inj_soc, _ = module_radical_socle_top(alg, inj)
            if inj_soc.dims != tuple(1 if w == v else 0 for w in range(alg.n_vertices)):
                raise ConsistencyError("indecomposable injective with non-simple socle")
            gen = inj_soc.rows[v].transpose()
            target_col = embeds[copy_idx].components[v] * gen
            comps[v][:, j] = target_col.a[:, 0]
            copy_idx += 1
    f = ModMap(soc_rep, E, [Mat(field, c) for c in comps], check=False)
    if not f.is_valid():
        raise ConsistencyError("socle placement map does not intertwine")
    g = _extend_along_mono(soc_incl, f)
    if not g.is_injective():
        raise ConsistencyError("envelope embedding is not injective")
    return Envelope(E, g, tuple(vertices))


def inj_copresentation(M: ModuleRep) -> InjCopres:
    """The minimal injective copresentation as raw data."""
    env0 = injective_envelope(M)
    kci = map_kernel_cokernel_image(env0.mono)
    C, proj = kci.cokernel, kci.cokernel_proj
    env1 = injective_envelope(C)
    d = env1.mono.compose(proj)
    # certificate: the kernel of the differential is the embedded copy of M
    kd = map_kernel_cokernel_image(d)
    if kd.kernel.total_dim != M.total_dim:
        raise ConsistencyError("kernel of the copresentation differential is not M")
    return InjCopres(env0.module, env1.module, d, env0.mono, env0.vertices, env1.vertices)


def min_inj_copresentation(M: ModuleRep):
    """mu_M as a two-term complex of injectives."""
    from .twoterm import TwoTermComplex

    data = inj_copresentation(M)
    return TwoTermComplex(data.e0, data.e1, data.differential, data.vertices0, data.vertices1)


def projective_cover(M: ModuleRep) -> Cover:
    alg = M.algebra
    field = alg.field
    if M.is_zero():
        return Cover(zero_module(alg), identity_map(M), ())
    radical, _, (top, top_proj) = module_radical_socle_top(alg, M)
    vertices = []
    lifts = []
    for v in range(alg.n_vertices):
        sec = _quotient_section(field, radical.rows[v], M.dims[v])
        for j in range(top.dims[v]):
            vertices.append(v)
            lifts.append((v, sec.col(j)))
    projs = [std_module(alg, "projective", alg.vertices[v]) for v in vertices]
    P, embeds, _ = direct_sum(projs)
    comps = [Mat.zeros(field, M.dims[w], P.dims[w]).a.copy() for w in range(alg.n_vertices)]
    from .algebra import proj_paths_by_vertex

    for k, (v, m_col) in enumerate(lifts):
        paths = proj_paths_by_vertex(alg, v)
        for w in range(alg.n_vertices):
            for idx, p in enumerate(paths[w]):
                # the generator of this copy goes to the lift; the basis
                # path p then lands on its image under the path action
                img = M.act_path(p) * m_col
                offset = int(np.argmax(embeds[k].components[w].a[:, idx]))
                comps[w][:, offset] = img.a[:, 0]
    cover = ModMap(P, M, [Mat(field, c) for c in comps], check=False)
    if not cover.is_valid():
        raise ConsistencyError("projective cover map does not intertwine")
    if not cover.is_surjective():
        raise ConsistencyError("projective cover map is not surjective")
    return Cover(P, cover, tuple(vertices))


def _quotient_section(field, sub_rows, d):
    red, piv, _ = rref(sub_rows)
    pivots = set(piv)
    comp_cols = [j for j in range(d) if j not in pivots]
    out = Mat.zeros(field, d, len(comp_cols)).a.copy()
    for idx, j in enumerate(comp_cols):
        out[j, idx] = field.one
    return Mat(field, out)


def min_proj_presentation(M: ModuleRep) -> ProjPresentation:
    cover0 = projective_cover(M)
    kci = map_kernel_cokernel_image(cover0.epi)
    omega, omega_incl = kci.kernel, kci.kernel_incl
    cover1 = projective_cover(omega)
    d = omega_incl.compose(cover1.epi)
    return ProjPresentation(cover1.module, cover0.module, d, cover0.epi, cover1.vertices, cover0.vertices)


def syzygy(M: ModuleRep):
    """Kernel of the projective cover, with its inclusion into P0."""
    cover0 = projective_cover(M)
    kci = map_kernel_cokernel_image(cover0.epi)
    return kci.kernel, kci.kernel_incl, cover0


# ---------------------------------------------------------------------------
# Ext^1

class Ext1Result:
    """dim Ext^1(M, N) plus an enumerator of extension middle terms."""

    def __init__(self, M, N, dim, omega, omega_incl, p0, complement_maps):
        self.M = M
        self.N = N
        self.dim = dim
        self._omega = omega
        self._omega_incl = omega_incl
        self._p0 = p0
        self._reps = complement_maps

    def middle_terms(self, dedup=True, budget=DEFAULT_ELEMENT_BUDGET):
        """All p^dim extension classes' middle terms; finite fields only."""
        field = self.M.algebra.field
        if not isinstance(field, PrimeField):
            raise UnsupportedFieldError("extension enumeration needs a finite field")
        if field.p ** self.dim > budget:
            raise BudgetExceededError(f"{field.p}^{self.dim} extension classes exceed budget {budget}")
        from itertools import product as iproduct

        out = []
        for coeffs in iproduct(range(field.p), repeat=self.dim):
            f = zero_map(self._omega, self.N)
            for c, g in zip(coeffs, self._reps):
                if c:
                    f = f + g.scale(c)
            mid = self._pushout_middle(f)
            if mid.total_dim != self.M.total_dim + self.N.total_dim:
                raise ConsistencyError("extension middle term has wrong dimension")
            out.append(mid)
        if dedup:
            uniq = []
            for m in out:
                if not any(iso_test(m, u) for u in uniq):
                    uniq.append(m)
            return uniq
        return out

    def _pushout_middle(self, f: ModMap) -> ModuleRep:
        # (N + P0) / {(f(w), -incl(w)) : w in Omega}
        total, embeds, _ = direct_sum([self.N, self._p0])
        gen_map = embeds[0].compose(f) - embeds[1].compose(self._omega_incl)
        img_rows = []
        for v in range(total.algebra.n_vertices):
            img_rows.append(column_space_basis(gen_map.components[v]).transpose())
        W = SubmoduleData(total, img_rows)
        rep, _ = quotient_by(W)
        return rep


def ext1(M: ModuleRep, N: ModuleRep) -> Ext1Result:
    """Ext^1 computed from the syzygy sequence 0 -> Omega M -> P0 -> M -> 0."""
    if M.algebra is not N.algebra:
        raise InputError("modules over different algebras")
    omega, omega_incl, cover0 = syzygy(M)
    hom_p0 = hom_basis(cover0.module, N)
    hom_om = hom_basis(omega, N)
    if not hom_om:
        return Ext1Result(M, N, 0, omega, omega_incl, cover0.module, [])
    restricted = [g.compose(omega_incl) for g in hom_p0]
    img = _maps_matrix(restricted, omega, N)
    # greedily extend the image to the full space by hom basis elements;
    # the added elements represent a basis of the cokernel
    cur = img
    cur_rank = rank(img)
    reps = []
    for g in hom_om:
        cand = cur.hstack(_maps_matrix([g], omega, N))
        r = rank(cand)
        if r > cur_rank:
            reps.append(g)
            cur, cur_rank = cand, r
    dim = len(hom_om) - rank(img)
    if dim != len(reps):
        raise ConsistencyError("cokernel dimension mismatch in ext1")
    return Ext1Result(M, N, dim, omega, omega_incl, cover0.module, reps)


def ext1_dim(M, N):
    return ext1(M, N).dim


# ---------------------------------------------------------------------------
# AR translates via the Nakayama correspondence on (co)presentations

def _proj_hom_path_basis(alg, i, j):
    """Basis paths p: j -> i and their maps P_i -> P_j (precompose with p)."""
    key = ("proj", i, j)
    if key in alg._path_maps_cache:
        return alg._path_maps_cache[key]
    from .algebra import proj_paths_by_vertex

    paths = [p for p in alg.basis if p.src == j and alg.path_tgt(p) == i]
    src_paths = proj_paths_by_vertex(alg, i)
    tgt_paths = proj_paths_by_vertex(alg, j)
    P_i = std_module(alg, "projective", alg.vertices[i])
    P_j = std_module(alg, "projective", alg.vertices[j])
    out = []
    for p in paths:
        comps = []
        for w in range(alg.n_vertices):
            m = Mat.zeros(alg.field, P_j.dims[w], P_i.dims[w]).a.copy()
            for col, q in enumerate(src_paths[w]):
                for bi, c in alg.reduce_to_basis(j, p.arrows + q.arrows).items():
                    r = alg.basis[bi]
                    ridx = tgt_paths[w].index(r)
                    m[ridx, col] = c
            comps.append(Mat(alg.field, m))
        out.append(ModMap(P_i, P_j, comps, check=False))
    alg._path_maps_cache[key] = (paths, out)
    return paths, out


def _inj_hom_path_basis(alg, i, j):
    """Basis paths p: j -> i and their maps I_i -> I_j (transposed appending)."""
    key = ("inj", i, j)
    if key in alg._path_maps_cache:
        return alg._path_maps_cache[key]
    from .algebra import inj_paths_by_vertex

    paths = [p for p in alg.basis if p.src == j and alg.path_tgt(p) == i]
    src_paths = inj_paths_by_vertex(alg, i)
    tgt_paths = inj_paths_by_vertex(alg, j)
    I_i = std_module(alg, "injective", alg.vertices[i])
    I_j = std_module(alg, "injective", alg.vertices[j])
    out = []
    for p in paths:
        comps = []
        for w in range(alg.n_vertices):
            # append: span(paths w -> j) -> span(paths w -> i), q |-> q*p
            pre = Mat.zeros(alg.field, I_i.dims[w], I_j.dims[w]).a.copy()
            for col, q in enumerate(tgt_paths[w]):
                for bi, c in alg.reduce_to_basis(q.src, q.arrows + p.arrows).items():
                    r = alg.basis[bi]
                    ridx = src_paths[w].index(r)
                    pre[ridx, col] = c
            comps.append(Mat(alg.field, pre).transpose())
        out.append(ModMap(I_i, I_j, comps, check=False))
    alg._path_maps_cache[key] = (paths, out)
    return paths, out


def _nakayama_transport(alg, f_comp: ModMap, i, j, to_projective):
    """Transport a map I_i -> I_j to P_i -> P_j (or back) along the path basis."""
    new_kind = "projective" if to_projective else "injective"
    new_src = std_module(alg, new_kind, alg.vertices[i])
    new_tgt = std_module(alg, new_kind, alg.vertices[j])
    if to_projective:
        paths, basis_src = _inj_hom_path_basis(alg, i, j)
        _, basis_dst = _proj_hom_path_basis(alg, i, j)
    else:
        paths, basis_src = _proj_hom_path_basis(alg, i, j)
        _, basis_dst = _inj_hom_path_basis(alg, i, j)
    if not paths:
        if not f_comp.is_zero():
            raise ConsistencyError("map between standard modules outside the path span")
        return zero_map(new_src, new_tgt)
    coeffs = coords_of_map(f_comp, basis_src)
    if coeffs is None:
        raise ConsistencyError("map between standard modules outside the path span")
    out = zero_map(new_src, new_tgt)
    for k in range(len(paths)):
        c = coeffs.entry(k, 0)
        if c != alg.field.zero:
            out = out + basis_dst[k].scale(c)
    return out


def _transport_sum_map(alg, d: ModMap, src_vertices, tgt_vertices, kind_src, to_projective):
    """Apply the Nakayama functor blockwise to a map between sums of standards."""
    new_kind = "projective" if to_projective else "injective"
    src_std = [std_module(alg, new_kind, alg.vertices[v]) for v in src_vertices]
    tgt_std = [std_module(alg, new_kind, alg.vertices[v]) for v in tgt_vertices]
    old_src = [std_module(alg, kind_src, alg.vertices[v]) for v in src_vertices]
    old_tgt = [std_module(alg, kind_src, alg.vertices[v]) for v in tgt_vertices]
    if src_std:
        S, _, s_prj = direct_sum(src_std)
    else:
        S, s_prj = zero_module(alg), []
    if tgt_std:
        T, t_emb, _ = direct_sum(tgt_std)
    else:
        T, t_emb = zero_module(alg), []
    if not src_vertices or not tgt_vertices:
        return S, T, zero_map(S, T)
    _, old_s_emb, _ = direct_sum(old_src)
    _, _, old_t_prj = direct_sum(old_tgt)
    out = zero_map(S, T)
    for si, i in enumerate(src_vertices):
        for ti, j in enumerate(tgt_vertices):
            comp = old_t_prj[ti].compose(d).compose(old_s_emb[si])
            moved = _nakayama_transport(alg, comp, i, j, to_projective)
            out = out + t_emb[ti].compose(moved).compose(s_prj[si])
    return S, T, out


def ar_translate(M: ModuleRep, direction: str) -> ModuleRep:
    """tau or tau^- via the Nakayama functor on minimal (co)presentations."""
    alg = M.algebra
    if M.is_zero():
        return zero_module(alg)
    if direction in ("minus", "tau_minus", "-"):
        data = inj_copresentation(M)
        if not data.vertices1:
            return zero_module(alg)
        S, T, nu_d = _transport_sum_map(alg, data.differential, data.vertices0, data.vertices1,
                                        "injective", to_projective=True)
        kci = map_kernel_cokernel_image(nu_d)
        return kci.cokernel
    if direction in ("plus", "tau", "+"):
        pres = min_proj_presentation(M)
        if not pres.vertices1:
            return zero_module(alg)
        S, T, nu_d = _transport_sum_map(alg, pres.differential, pres.vertices1, pres.vertices0,
                                        "projective", to_projective=False)
        kci = map_kernel_cokernel_image(nu_d)
        return kci.kernel
    raise InputError(f"unknown AR direction {direction!r}")


# ---------------------------------------------------------------------------
# polynomial helpers (coefficient lists, low degree first)

def _poly_trim(f, zero):
    while f and f[-1] == zero:
        f.pop()
    return f


def _poly_deg(f):
    return len(f) - 1


def _poly_divmod(f, g, field):
    f = list(f)
    q = [field.zero] * max(0, len(f) - len(g) + 1)
    inv_lead = field.inv(g[-1]) if isinstance(field, PrimeField) else 1 / g[-1]
    while len(f) >= len(g) and _poly_trim(f, field.zero):
        if len(f) < len(g):
            break
        c = f[-1] * inv_lead
        if isinstance(field, PrimeField):
            c %= field.p
        k = len(f) - len(g)
        q[k] = c
        for i in range(len(g)):
            f[k + i] = f[k + i] - c * g[i]
            if isinstance(field, PrimeField):
                f[k + i] %= field.p
        _poly_trim(f, field.zero)
    return q, f


def _poly_mul(f, g, field):
    if not f or not g:
        return []
    out = [field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
            if isinstance(field, PrimeField):
                out[i + j] %= field.p
    return _poly_trim(out, field.zero)


def _poly_gcd(f, g, field):
    f, g = list(f), list(g)
    while _poly_trim(g, field.zero):
        _, r = _poly_divmod(f, g, field)
        f, g = g, r
    if not f:
        return []
    lead = f[-1]
    inv = field.inv(lead) if isinstance(field, PrimeField) else 1 / lead
    out = [c * inv for c in f]
    if isinstance(field, PrimeField):
        out = [c % field.p for c in out]
    return out


def _poly_powmod(base, e, mod, field):
    result = [field.one]
    b = list(base)
    _, b = _poly_divmod(b, mod, field)
    while e:
        if e & 1:
            result = _poly_mul(result, b, field)
            _, result = _poly_divmod(result, mod, field)
        b = _poly_mul(b, b, field)
        _, b = _poly_divmod(b, mod, field)
        e >>= 1
    return result


def _poly_derivative(f, field):
    out = []
    for i in range(1, len(f)):
        c = f[i] * (i if not isinstance(field, PrimeField) else i % field.p)
        if isinstance(field, PrimeField):
            c %= field.p
        out.append(c)
    return _poly_trim(out, field.zero)


def _poly_eval(f, x, field):
    acc = field.zero
    for c in reversed(f):
        acc = acc * x + c
        if isinstance(field, PrimeField):
            acc %= field.p
    return acc


def _min_poly(mat: Mat, field):
    """Minimal polynomial of a square matrix, low-degree coefficients first."""
    n = mat.rows
    if n == 0:
        return [field.one]
    powers = [Mat.identity(field, n)]
    vecs = [powers[0].a.reshape(-1)]
    while True:
        nxt = powers[-1] * mat
        cols = Mat(field, np.column_stack([np.asarray(v) for v in vecs]) if isinstance(field, PrimeField)
                   else _obj_colstack(vecs))
        target = Mat(field, np.asarray(nxt.a.reshape(-1, 1)))
        x = solve(cols, target)
        if x is not None:
            coeffs = [-x.entry(i, 0) for i in range(len(vecs))] + [field.one]
            if isinstance(field, PrimeField):
                coeffs = [c % field.p for c in coeffs]
            return _poly_trim(coeffs, field.zero)
        powers.append(nxt)
        vecs.append(nxt.a.reshape(-1))


def _obj_colstack(vecs):
    out = np.empty((len(vecs[0]), len(vecs)), dtype=object)
    for j, v in enumerate(vecs):
        out[:, j] = v
    return out


def _coprime_split(m_poly, field):
    """Some factorisation m = f*g with gcd(f, g) = 1, both nonconstant, or None."""
    deg = _poly_deg(m_poly)
    if deg < 2:
        return None
    if isinstance(field, PrimeField):
        p = field.p
        for lam in range(p):
            if _poly_eval(m_poly, lam, field) == 0:
                lin = [(-lam) % p, 1]
                f = [field.one]
                rest = list(m_poly)
                while True:
                    q, r = _poly_divmod(rest, lin, field)
                    if _poly_trim(list(r), field.zero):
                        break
                    f = _poly_mul(f, lin, field)
                    rest = q
                if _poly_deg(rest) > 0:
                    return f, rest
        # distinct-degree separation
        for d in range(1, deg):
            xq = _poly_powmod([field.zero, field.one], p ** d, m_poly, field)
            diff = list(xq)
            while len(diff) < 2:
                diff.append(field.zero)
            diff[1] = (diff[1] - 1) % p
            h = _poly_gcd(m_poly, _poly_trim(diff, field.zero), field)
            if 0 < _poly_deg(h) < deg:
                u = h
                while True:
                    q, r = _poly_divmod(m_poly, u, field)
                    g2 = _poly_gcd(q, h, field)
                    if _poly_deg(g2) < 1:
                        break
                    u = _poly_mul(u, g2, field)
                q, _ = _poly_divmod(m_poly, u, field)
                if _poly_deg(u) > 0 and _poly_deg(q) > 0:
                    return u, q
        return None
    # characteristic zero: split off the squarefree defect
    der = _poly_derivative(m_poly, field)
    g = _poly_gcd(m_poly, der, field)
    if 0 < _poly_deg(g) < deg:
        u = g
        while True:
            q, _ = _poly_divmod(m_poly, u, field)
            g2 = _poly_gcd(q, g, field)
            if _poly_deg(g2) < 1:
                break
            u = _poly_mul(u, g2, field)
        q, _ = _poly_divmod(m_poly, u, field)
        if _poly_deg(u) > 0 and _poly_deg(q) > 0 and _poly_deg(_poly_gcd(u, q, field)) == 0:
            return u, q
    # rational root scan on small candidates
    from fractions import Fraction

    for num in range(-6, 7):
        for den in range(1, 4):
            lam = Fraction(num, den)
            if _poly_eval(m_poly, lam, field) == 0:
                lin = [-lam, field.one]
                f = [field.one]
                rest = list(m_poly)
                while True:
                    q, r = _poly_divmod(rest, lin, field)
                    if _poly_trim(list(r), field.zero):
                        break
                    f = _poly_mul(f, lin, field)
                    rest = q
                if _poly_deg(rest) > 0:
                    return f, rest
    return None


# ---------------------------------------------------------------------------
# decomposition into indecomposables

def _flatten_map(f: ModMap) -> Mat:
    M = f.source
    field = M.algebra.field
    T = M.total_dim
    out = Mat.zeros(field, T, T).a.copy()
    off = 0
    offs = []
    for v in range(M.algebra.n_vertices):
        offs.append(off)
        off += M.dims[v]
    for v in range(M.algebra.n_vertices):
        c = f.components[v]
        out[offs[v] : offs[v] + c.rows, offs[v] : offs[v] + c.cols] = c.a
    return Mat(field, out)


def _poly_of_map(f: ModMap, poly) -> ModMap:
    M = f.source
    field = M.algebra.field
    comps = []
    for v in range(M.algebra.n_vertices):
        d = M.dims[v]
        acc = Mat.zeros(field, d, d)
        power = Mat.identity(field, d)
        for c in poly:
            if c != field.zero:
                acc = acc + power.scale(c)
            power = power * f.components[v]
        comps.append(acc)
    return ModMap(M, M, comps, check=False)


def _split_by_submodule_pair(M, rows_a, rows_b):
    sub_a = SubmoduleData(M, rows_a)
    sub_b = SubmoduleData(M, rows_b)
    if sub_a.total_dim + sub_b.total_dim != M.total_dim:
        return None
    rep_a, incl_a = submodule_to_rep(sub_a)
    rep_b, incl_b = submodule_to_rep(sub_b)
    # directness: stacked inclusions must be invertible
    for v in range(M.algebra.n_vertices):
        joined = incl_a.components[v].hstack(incl_b.components[v])
        if not is_invertible(joined):
            return None
    return (rep_a, incl_a), (rep_b, incl_b)


def _kernel_rows_of_endo(g: ModMap):
    M = g.source
    field = M.algebra.field
    rows = []
    for v in range(M.algebra.n_vertices):
        vecs = kernel_basis(g.components[v])
        if vecs:
            stacked = vecs[0]
            for w in vecs[1:]:
                stacked = stacked.hstack(w)
            rows.append(stacked.transpose())
        else:
            rows.append(Mat.zeros(field, 0, M.dims[v]))
    return rows


def _image_rows_of_endo(g: ModMap):
    M = g.source
    return [column_space_basis(g.components[v]).transpose() for v in range(M.algebra.n_vertices)]


def _try_split(M: ModuleRep, phi: ModMap):
    """Fitting or minimal-polynomial splitting along one endomorphism."""
    field = M.algebra.field
    n = M.total_dim
    power = phi
    for _ in range(max(1, n.bit_length())):
        power = power.compose(power)
    K = _kernel_rows_of_endo(power)
    I = _image_rows_of_endo(power)
    split = _split_by_submodule_pair(M, K, I)
    if split is not None:
        (ra, ia), (rb, ib) = split
        if 0 < ra.total_dim < M.total_dim:
            return split
    mp = _min_poly(_flatten_map(phi), field)
    fg = _coprime_split(mp, field)
    if fg is not None:
        f, g = fg
        kf = _kernel_rows_of_endo(_poly_of_map(phi, f))
        kg = _kernel_rows_of_endo(_poly_of_map(phi, g))
        split = _split_by_submodule_pair(M, kf, kg)
        if split is not None:
            (ra, _), _ = split
            if 0 < ra.total_dim < M.total_dim:
                return split
    return None


def _endo_pool(basis, field, budget, seed):
    """Deterministic then seeded-random candidate endomorphisms."""
    for b in basis:
        yield b
    n = len(basis)
    for i in range(n):
        for j in range(i + 1, n):
            yield basis[i] + basis[j]
    for i in range(n):
        for j in range(n):
            if i != j:
                yield basis[i].compose(basis[j])
    rng = random.Random(seed)
    trials = min(budget, 64)
    for _ in range(trials):
        f = None
        for b in basis:
            c = field.rand(rng)
            term = b.scale(c)
            f = term if f is None else f + term
        if f is not None and not f.is_zero():
            yield f


def _all_field_vectors(field, n, budget):
    from itertools import product as iproduct

    if field.p ** n > budget:
        raise BudgetExceededError(f"{field.p}^{n} element scan exceeds budget {budget}")
    return iproduct(range(field.p), repeat=n)


def decompose(M: ModuleRep, budget=DEFAULT_ELEMENT_BUDGET, seed=0):
    """Indecomposable summands with multiplicities (Krull-Schmidt)."""
    pieces = _decompose_pieces(M, budget, seed)
    groups = []
    for rep in pieces:
        for g in groups:
            if _iso_indecomposable(g[0], rep):
                g[1] += 1
                break
        else:
            groups.append([rep, 1])
    return [(rep, mult) for rep, mult in groups]


def _decompose_pieces(M: ModuleRep, budget, seed):
    if M.total_dim == 0:
        return []
    basis = hom_basis(M, M)
    if len(basis) == 1:
        return [M]
    field = M.algebra.field
    for phi in _endo_pool(basis, field, budget, seed):
        split = _try_split(M, phi)
        if split is not None:
            (ra, _), (rb, _) = split
            return _decompose_pieces(ra, budget, seed) + _decompose_pieces(rb, budget, seed)
    # exhaustive idempotent scan certifies indecomposability over a finite field
    if isinstance(field, PrimeField) and field.p ** len(basis) <= budget:
        ident = identity_map(M)
        for coeffs in _all_field_vectors(field, len(basis), budget):
            e = None
            for c, b in zip(coeffs, basis):
                if c:
                    term = b.scale(c)
                    e = term if e is None else e + term
            if e is None:
                continue
            if not (e.compose(e) - e).is_zero():
                continue
            if e.is_zero() or (e - ident).is_zero():
                continue
            K = _kernel_rows_of_endo(e)
            I = _image_rows_of_endo(e)
            split = _split_by_submodule_pair(M, K, I)
            if split is not None:
                (ra, _), (rb, _) = split
                return _decompose_pieces(ra, budget, seed) + _decompose_pieces(rb, budget, seed)
        return [M]
    # no split found and no exhaustive certificate available: fall back to
    # the endomorphism-ring locality test
    if end_algebra(M, budget=budget, seed=seed).is_local:
        return [M]
    raise BudgetExceededError(
        f"module of dimension {M.total_dim} is decomposable but no splitting was found within budget {budget}"
    )


def _iso_indecomposable(M: ModuleRep, N: ModuleRep):
    """Isomorphism test for indecomposable inputs.

    Correct whenever End(M) is local: if M and N are isomorphic, some basis
    composite Hom(N,M) o Hom(M,N) avoids the radical, hence is invertible.
    """
    if M.dims != N.dims:
        return False
    if M.total_dim == 0:
        return True
    fwd = hom_basis(M, N)
    bwd = hom_basis(N, M)
    for g in bwd:
        for f in fwd:
            comp = g.compose(f)
            if all(is_invertible(comp.components[v]) for v in range(len(comp.components))):
                return True
    return False


def iso_test(M: ModuleRep, N: ModuleRep, budget=DEFAULT_ELEMENT_BUDGET, seed=0):
    """Isomorphism of arbitrary finite-dimensional modules."""
    if M.algebra is not N.algebra:
        raise InputError("modules over different algebras")
    if M.dims != N.dims:
        return False
    if M.total_dim == 0:
        return True
    pieces_m = _decompose_pieces(M, budget, seed)
    pieces_n = _decompose_pieces(N, budget, seed)
    if len(pieces_m) != len(pieces_n):
        return False
    remaining = list(pieces_n)
    for pm in pieces_m:
        for k, pn in enumerate(remaining):
            if _iso_indecomposable(pm, pn):
                remaining.pop(k)
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# composition series over the endomorphism ring, radical, locality

class CannotCertifyError(RuntimeError):
    """Simplicity of a module over its endomorphism ring could not be decided."""


def _spin(vcol: Mat, ops):
    """The cyclic submodule generated by a vector: span of {op(v)}."""
    cols = [op * vcol for op in ops]
    stacked = cols[0]
    for c in cols[1:]:
        stacked = stacked.hstack(c)
    red, piv, rk = rref(stacked.transpose())
    field = vcol.field
    return Mat(field, red.a[:rk]) if rk else Mat.zeros(field, 0, vcol.rows)


def _find_proper_stable_subspace(dim, ops, field, budget, seed):
    """A proper nonzero subspace stable under all ops, or None if the module
    is simple.  ops must span a unital subalgebra of End(F^dim)."""
    if dim == 1:
        return None
    std = [Mat.column(field, [field.one if i == j else field.zero for i in range(dim)]) for j in range(dim)]
    pool = list(std)
    singular = None
    for op in ops:
        vecs = kernel_basis(op)
        if vecs and not op.is_zero():
            singular = singular or op
            pool.extend(vecs)
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            op = ops[i] + ops[j]
            vecs = kernel_basis(op)
            if vecs and not op.is_zero():
                singular = singular or op
                pool.extend(vecs[:2])
    for v in pool:
        if v.is_zero():
            continue
        W = _spin(v, ops)
        if 0 < W.rows < dim:
            return W
    if isinstance(field, PrimeField) and field.p ** dim <= budget:
        from itertools import product as iproduct

        for coeffs in iproduct(range(field.p), repeat=dim):
            if not any(coeffs):
                continue
            v = Mat.column(field, list(coeffs))
            W = _spin(v, ops)
            if 0 < W.rows < dim:
                return W
        return None
    if singular is not None:
        # Norton's criterion: every kernel vector of the singular op must
        # spin to the whole space, and one dual kernel vector must spin to
        # the whole dual space; a failed spin hands us a proper submodule
        for v in kernel_basis(singular):
            W = _spin(v, ops)
            if 0 < W.rows < dim:
                return W
        ops_t = [op.transpose() for op in ops]
        w = kernel_basis(singular.transpose())[0]
        Wt = _spin(w, ops_t)
        if Wt.rows == dim:
            return None
        perp = kernel_basis(Wt)
        stacked = perp[0]
        for c in perp[1:]:
            stacked = stacked.hstack(c)
        red, _, rk = rref(stacked.transpose())
        return Mat(field, red.a[:rk])
    if isinstance(field, PrimeField):
        raise BudgetExceededError(f"{field.p}^{dim} spin scan exceeds budget {budget}")
    raise CannotCertifyError(
        "cannot certify simplicity over the rationals without a singular endomorphism"
    )


def _restrict_ops(rows: Mat, ops, field):
    """Operators induced on a stable subspace, in its row-basis coordinates."""
    base = rows.transpose()
    out = []
    for op in ops:
        img = op * base
        sol = Mat.zeros(field, rows.rows, rows.rows).a.copy()
        for j in range(img.cols):
            x = solve(base, img.col(j))
            if x is None:
                raise ConsistencyError("subspace is not stable under the operators")
            sol[:, j] = x.a[:, 0]
        out.append(Mat(field, sol))
    return out


def _quotient_ops(rows: Mat, dim, ops, field):
    """Operators induced on the quotient by a stable subspace."""
    red, piv, _ = rref(rows)
    pivots = set(piv)
    comp = [j for j in range(dim) if j not in pivots]
    t = rows.transpose()
    for j in comp:
        e = Mat.zeros(field, dim, 1).a.copy()
        e[j, 0] = field.one
        t = t.hstack(Mat(field, e))
    tinv = inverse(t)
    proj = Mat(field, tinv.a[rows.rows :, :])
    sec = Mat.zeros(field, dim, len(comp)).a.copy()
    for idx, j in enumerate(comp):
        sec[j, idx] = field.one
    sec = Mat(field, sec)
    return [proj * op * sec for op in ops], proj, sec


def _composition_flag(dim, ops, field, budget, seed):
    """A strictly increasing flag 0 < V_1 < ... < V_k = F^dim of stable
    subspaces with simple subquotients.  Subspaces are rref row matrices."""
    flag = []
    current = Mat.zeros(field, 0, dim)
    while current.rows < dim:
        if current.rows == 0:
            q_ops, sec = ops, Mat.identity(field, dim)
        else:
            q_ops, _, sec = _quotient_ops(current, dim, ops, field)
        qdim = dim - current.rows
        sub = _find_proper_stable_subspace(qdim, q_ops, field, budget, seed)
        if sub is None:
            current = Mat.identity(field, dim)
            flag.append(current)
            break
        # descend inside the quotient until the submodule is simple
        while True:
            sub_ops = _restrict_ops(sub, q_ops, field)
            deeper = _find_proper_stable_subspace(sub.rows, sub_ops, field, budget, seed)
            if deeper is None:
                break
            lifted = deeper * sub
            red, _, rk = rref(lifted)
            sub = Mat(field, red.a[:rk])
        # preimage in the ambient space: current together with the sections
        lift_rows = (sec * sub.transpose()).transpose()
        new_rows = current.vstack(lift_rows) if current.rows else lift_rows
        red, _, rk = rref(new_rows)
        current = Mat(field, red.a[:rk])
        flag.append(current)
    if not flag or flag[-1].rows < dim:
        flag.append(Mat.identity(field, dim))
    return flag


class EndAlgebraData:
    """End_A(M) with a basis adapted to the radical."""

    def __init__(self, module, basis, radical_indices, is_local, flag):
        self.module = module
        self.basis = basis
        self.radical_indices = tuple(radical_indices)
        self.is_local = is_local
        self.flag = flag

    @property
    def dim(self):
        return len(self.basis)

    @property
    def radical_basis(self):
        return [self.basis[i] for i in self.radical_indices]

    def radical_dim(self):
        return len(self.radical_indices)

    def __repr__(self):
        return f"EndAlgebraData(dim={self.dim}, rad={self.radical_dim()}, local={self.is_local})"


def end_algebra(M: ModuleRep, budget=DEFAULT_ELEMENT_BUDGET, seed=0) -> EndAlgebraData:
    """Endomorphism algebra with its radical, computed from a composition
    series of M over End(M)."""
    field = M.algebra.field
    basis0 = hom_basis(M, M)
    e = len(basis0)
    if e == 0:
        return EndAlgebraData(M, [], (), False, [])
    if e == 1:
        # spanned by the identity: a division algebra, radical zero
        return EndAlgebraData(M, basis0, (), True, [Mat.identity(field, M.total_dim)])
    T = M.total_dim
    ops = [_flatten_map(f) for f in basis0]
    flag = _composition_flag(T, ops, field, budget, seed)
    # Rad(E) = maps sending each flag step into the previous one
    constraints = []
    prev = Mat.zeros(field, 0, T)
    for step in flag:
        if prev.rows == 0:
            proj = Mat.identity(field, T)
        else:
            _, proj, _ = _quotient_ops(prev, T, ops, field)
        base = step.transpose()
        for j in range(base.cols):
            # proj(op_x(b)) = 0 for b in the step, as linear conditions on x
            cols = None
            for op in ops:
                col = proj * (op * base.col(j))
                cols = col if cols is None else cols.hstack(col)
            constraints.append(cols)
        prev = step
    stacked = constraints[0]
    for c in constraints[1:]:
        stacked = stacked.vstack(c)
    rad_coord_vecs = kernel_basis(stacked)
    # adapt the basis: complement of the radical first, radical last
    rad_rows = Mat.zeros(field, 0, e)
    if rad_coord_vecs:
        stackedv = rad_coord_vecs[0]
        for v in rad_coord_vecs[1:]:
            stackedv = stackedv.hstack(v)
        red, piv, rk = rref(stackedv.transpose())
        rad_rows = Mat(field, red.a[:rk])
    comp_idx = []
    cur = rad_rows
    cur_rank = cur.rows
    for j in range(e):
        ej = Mat.zeros(field, 1, e).a.copy()
        ej[0, j] = field.one
        cand = cur.vstack(Mat(field, ej))
        r = rank(cand)
        if r > cur_rank:
            comp_idx.append(j)
            cur, cur_rank = cand, r
    basis = [basis0[j] for j in comp_idx]
    for i in range(rad_rows.rows):
        f = None
        for j in range(e):
            c = rad_rows.entry(i, j)
            if c != field.zero:
                term = basis0[j].scale(c)
                f = term if f is None else f + term
        basis.append(f)
    radical_indices = tuple(range(len(comp_idx), e))
    # locality: E/Rad is a division algebra iff its regular module is simple
    quot_dim = len(comp_idx)
    if quot_dim == 1:
        local = True
    else:
        local = _quotient_is_division(M, basis, radical_indices, field, budget, seed)
    return EndAlgebraData(M, basis, radical_indices, local, flag)


def _quotient_is_division(M, basis, radical_indices, field, budget, seed):
    """Whether E/Rad(E) is a division algebra, via its left regular module."""
    e = len(basis)
    rad_start = radical_indices[0] if radical_indices else e
    quot = list(range(rad_start))
    mats = _maps_matrix(basis, M, M)
    # coordinates of a product in the adapted basis
    def coords(f):
        x = solve(mats, Mat(field, map_to_vec(f).reshape(-1, 1)))
        if x is None:
            raise ConsistencyError("product escaped the endomorphism algebra")
        return [x.entry(i, 0) for i in range(e)]

    left_mult = []
    for i in quot:
        cols = []
        for j in quot:
            c = coords(basis[i].compose(basis[j]))
            cols.append([c[k] for k in quot])
        m = Mat.zeros(field, len(quot), len(quot)).a.copy()
        for j, col in enumerate(cols):
            for k, val in enumerate(col):
                m[k, j] = val
        left_mult.append(Mat(field, m))
    sub = _find_proper_stable_subspace(len(quot), left_mult, field, budget, seed)
    return sub is None


def soc_over_end(N: ModuleRep, budget=DEFAULT_ELEMENT_BUDGET, seed=0) -> SubmoduleData:
    """{n : phi(n) = 0 for every radical endomorphism}, the socle over End(N)."""
    from .algebra import full_submodule

    end = end_algebra(N, budget=budget, seed=seed)
    rad = end.radical_basis
    if not rad:
        return full_submodule(N)
    field = N.algebra.field
    rows = []
    for v in range(N.algebra.n_vertices):
        stacked = rad[0].components[v]
        for f in rad[1:]:
            stacked = stacked.vstack(f.components[v])
        vecs = kernel_basis(stacked)
        if vecs:
            cols = vecs[0]
            for w in vecs[1:]:
                cols = cols.hstack(w)
            rows.append(cols.transpose())
        else:
            rows.append(Mat.zeros(field, 0, N.dims[v]))
    return SubmoduleData(N, rows)


def is_brick(M: ModuleRep, budget=DEFAULT_ELEMENT_BUDGET, seed=0):
    """Whether every nonzero endomorphism is invertible."""
    if M.total_dim == 0:
        raise InputError("the zero module is not a brick candidate")
    end = end_algebra(M, budget=budget, seed=seed)
    if not end.is_local:
        raise InputError("is_brick needs an indecomposable input")
    return end.radical_dim() == 0


# ---------------------------------------------------------------------------
# minimal left approximations

def left_min_approx(B: ModuleRep, targets, budget=DEFAULT_ELEMENT_BUDGET):
    """A minimal left add(targets)-approximation f: B -> C0."""
    if not targets:
        raise InputError("targets must be nonempty")
    alg = B.algebra
    field = alg.field
    copies = []
    for T in targets:
        for g in hom_basis(B, T):
            copies.append((T, g))
    if not copies:
        z = zero_module(alg)
        return z, zero_map(B, z)

    def assemble(chosen):
        total, embeds, _ = direct_sum([T for T, _ in chosen]) if chosen else (zero_module(alg), [], [])
        f = zero_map(B, total)
        for emb, (_, g) in zip(embeds, chosen):
            f = f + emb.compose(g)
        return total, f

    def is_approx(C, f):
        for T in targets:
            want = hom_basis(B, T)
            if not want:
                continue
            have = [h.compose(f) for h in hom_basis(C, T)]
            if not have:
                return False
            m = _maps_matrix(have, B, T)
            if rank(m) < len(want):
                return False
        return True

    chosen = list(copies)
    k = len(chosen) - 1
    while k >= 0:
        trial = chosen[:k] + chosen[k + 1 :]
        C, f = assemble(trial)
        if is_approx(C, f):
            chosen = trial
            k = min(k, len(chosen) - 1)
        else:
            k -= 1
    C, f = assemble(chosen)
    # minimality certificate: no nonzero idempotent kills f on the left
    h0 = [h for h in hom_basis(C, C) if h.compose(f).is_zero()]
    if h0 and isinstance(field, PrimeField):
        if field.p ** len(h0) <= budget:
            ident = identity_map(C)
            for coeffs in _all_field_vectors(field, len(h0), budget):
                if not any(coeffs):
                    continue
                cand = None
                for c, h in zip(coeffs, h0):
                    if c:
                        term = h.scale(c)
                        cand = term if cand is None else cand + term
                if cand is not None and (cand.compose(cand) - cand).is_zero() and not cand.is_zero():
                    raise ConsistencyError("greedy minimisation left a redundant summand")
        else:
            raise BudgetExceededError("minimality certificate exceeds the element budget")
    return C, f

