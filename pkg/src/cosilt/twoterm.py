"""Two-term complexes of injective modules and their derived-category
calculus: Hom into shifts, rigid sets, strip decomposition, the surjectivity
class C_sigma, and the finite cosilting certificate.

Everything is reduced to closed-form linear algebra on the two degrees; no
derived-category formalism is needed at this scale.
"""

from __future__ import annotations

from .algebra import (
    ConsistencyError,
    InputError,
    Mat,
    ModMap,
    ModuleRep,
    SubmoduleData,
    direct_sum,
    identity_map,
    quotient_by,
    std_module,
    submodule_to_rep,
    zero_map,
    zero_module,
)
from .exactfield import is_invertible, rank
from .repmod import (
    _extend_along_mono,
    _maps_matrix,
    hom_basis,
    injective_envelope,
    iso_test,
    map_kernel_cokernel_image,
    map_to_vec,
)


class TwoTermComplex:
    """A complex E0 -> E1 of injectives, nonzero only in degrees 0 and 1.

    e0 and e1 are canonical direct sums of indecomposable injectives; the
    vertex index lists inj0, inj1 are the decomposition certificates.
    """

    __slots__ = ("e0", "e1", "differential", "inj0", "inj1")

    def __init__(self, e0, e1, differential, inj0, inj1):
        if differential.source is not e0 or differential.target is not e1:
            if differential.source.dims != e0.dims or differential.target.dims != e1.dims:
                raise InputError("differential endpoints do not match the complex terms")
        self.e0 = e0
        self.e1 = e1
        self.differential = differential
        self.inj0 = tuple(inj0)
        self.inj1 = tuple(inj1)

    @property
    def algebra(self):
        return self.e0.algebra

    def h0(self):
        """Kernel of the differential, with its inclusion into e0."""
        kci = map_kernel_cokernel_image(self.differential)
        return kci.kernel, kci.kernel_incl

    def h1(self):
        """Cokernel of the differential, with the projection from e1."""
        kci = map_kernel_cokernel_image(self.differential)
        return kci.cokernel, kci.cokernel_proj

    def is_zero(self):
        return self.e0.total_dim == 0 and self.e1.total_dim == 0

    def __repr__(self):
        return f"TwoTermComplex(e0={list(self.e0.dims)}, e1={list(self.e1.dims)})"


def mu(M: ModuleRep) -> TwoTermComplex:
    """The minimal injective copresentation of a module as a complex."""
    from .repmod import min_inj_copresentation

    return min_inj_copresentation(M)


def stalk_complex(alg, vertices) -> TwoTermComplex:
    """The complex 0 -> I (sum over the given vertices) in degree one."""
    vertices = tuple(vertices)
    injs = [std_module(alg, "injective", alg.vertices[v]) for v in vertices]
    e1 = direct_sum(injs)[0] if injs else zero_module(alg)
    e0 = zero_module(alg)
    return TwoTermComplex(e0, e1, zero_map(e0, e1), (), vertices)


def sum_complexes(alg, complexes, stalk_vertices=()) -> TwoTermComplex:
    """Direct sum of two-term complexes plus injective stalks in degree one."""
    complexes = list(complexes)
    parts0 = [c.e0 for c in complexes]
    parts1 = [c.e1 for c in complexes]
    stalks = [std_module(alg, "injective", alg.vertices[v]) for v in stalk_vertices]
    if parts0:
        e0, _, proj0 = direct_sum(parts0)
    else:
        e0, proj0 = zero_module(alg), []
    if parts1 or stalks:
        e1, emb1, _ = direct_sum(parts1 + stalks)
    else:
        e1, emb1 = zero_module(alg), []
    d = zero_map(e0, e1)
    for k, c in enumerate(complexes):
        d = d + emb1[k].compose(c.differential).compose(proj0[k])
    inj0 = tuple(v for c in complexes for v in c.inj0)
    inj1 = tuple(v for c in complexes for v in c.inj1) + tuple(stalk_vertices)
    return TwoTermComplex(e0, e1, d, inj0, inj1)


def hom_derived_shift(s: TwoTermComplex, t: TwoTermComplex) -> int:
    """dim Hom_D(s, t[1]): chain maps s -> t[1] modulo null-homotopic ones.

    A chain map is just a map s.e0 -> t.e1; it is null-homotopic exactly
    when it has the form h o d_s + d_t o g.
    """
    if s.algebra is not t.algebra:
        raise InputError("complexes over different algebras")
    full = hom_basis(s.e0, t.e1)
    if not full:
        return 0
    homotopies = []
    for h in hom_basis(s.e1, t.e1):
        homotopies.append(h.compose(s.differential))
    for g in hom_basis(s.e0, t.e0):
        homotopies.append(t.differential.compose(g))
    if not homotopies:
        return len(full)
    m = _maps_matrix(homotopies, s.e0, t.e1)
    return len(full) - rank(m)


def is_rigid_set(cs) -> tuple:
    """Whether all derived homs into first shifts vanish; returns a witness
    pair of indices on failure."""
    cs = list(cs)
    for i, x in enumerate(cs):
        for j, y in enumerate(cs):
            if hom_derived_shift(x, y) != 0:
                return False, (i, j)
    return True, None


def in_c_sigma(M: ModuleRep, s: TwoTermComplex) -> bool:
    """Whether Hom(M, e0) -> Hom(M, e1) induced by the differential is onto."""
    if M.algebra is not s.algebra:
        raise InputError("module and complex over different algebras")
    target = hom_basis(M, s.e1)
    if not target:
        return True
    source = hom_basis(M, s.e0)
    if not source:
        return False
    induced = [s.differential.compose(f) for f in source]
    m = _maps_matrix(induced, M, s.e1)
    return rank(m) == len(target)


def cogen_member(X: ModuleRep, C: ModuleRep) -> bool:
    """Whether X embeds into a finite direct sum of copies of C: the
    universal map X -> C^{dim Hom(X, C)} must be injective."""
    if X.total_dim == 0:
        return True
    if C.total_dim == 0:
        return False
    maps = hom_basis(X, C)
    if not maps:
        return False
    for v in range(X.algebra.n_vertices):
        if X.dims[v] == 0:
            continue
        stacked = maps[0].components[v]
        for f in maps[1:]:
            stacked = stacked.vstack(f.components[v])
        if rank(stacked) < X.dims[v]:
            return False
    return True


def finite_cosilting_check(s: TwoTermComplex, catalog):
    """Whether, over a complete catalog, Cogen(H0 s) matches C_sigma.

    Returns (flag, report) where the report lists both member sets.
    """
    if not catalog.completeness.complete:
        raise InputError("finite cosilting check needs a catalog declared complete")
    C, _ = s.h0()
    cogen = []
    csigma = []
    for idx, X in enumerate(catalog.members):
        if cogen_member(X, C):
            cogen.append(idx)
        if in_c_sigma(X, s):
            csigma.append(idx)
    ok = cogen == csigma
    report = {"cogen": cogen, "c_sigma": csigma}
    return ok, report


# ---------------------------------------------------------------------------
# strip decomposition

def strip_decompose(s: TwoTermComplex):
    """Split s into a minimal copresentation of H0, an invertible part and
    degree-one injective stalks; chain-level certificates are verified.

    Returns (muPart, isoPart, stalk vertex indices).
    """
    alg = s.algebra
    field = alg.field
    K, kappa = s.h0()
    env0 = injective_envelope(K)
    E0 = env0.module
    # phi: E0 -> e0 extending the kernel inclusion; mono since it embeds the socle
    phi = _extend_along_mono(env0.mono, kappa)
    if not phi.is_injective():
        raise ConsistencyError("envelope of the kernel does not embed into e0")
    # retraction r onto E0 and the complement X = ker r
    if E0.total_dim:
        r = _extend_along_mono(phi, identity_map(E0))
        X_sub = _kernel_submodule(r)
    else:
        r = zero_map(s.e0, E0)
        X_sub = _full_sub(s.e0)
    X_rep, incl_X = submodule_to_rep(X_sub)
    if E0.total_dim + X_rep.total_dim != s.e0.total_dim:
        raise ConsistencyError("e0 does not split along the kernel envelope")
    dX = s.differential.compose(incl_X)
    if not dX.is_injective():
        raise ConsistencyError("differential is not injective on the complement of the envelope")
    # split e1 = d(X) + Y with d(phi(E0)) inside Y
    d_phi = s.differential.compose(phi)
    p = _projection_killing(dX, d_phi)
    Y_sub = _kernel_submodule(p)
    Y_rep, incl_Y = submodule_to_rep(Y_sub)
    if X_rep.total_dim + Y_rep.total_dim != s.e1.total_dim:
        raise ConsistencyError("e1 does not split along the image of the complement")
    # factor d(phi) through Y and take the envelope of its image there
    d_phi_Y = _corestrict(d_phi, Y_sub, incl_Y)
    img = map_kernel_cokernel_image(d_phi_Y).image
    img_rep, incl_img = submodule_to_rep(img)
    env1 = injective_envelope(img_rep)
    E1 = env1.module
    psi = _extend_along_mono(env1.mono, incl_img) if E1.total_dim else zero_map(E1, Y_rep)
    if E1.total_dim and not psi.is_injective():
        raise ConsistencyError("envelope of the image does not embed")
    c = _corestrict(d_phi_Y, img, incl_img)
    delta = env1.mono.compose(c)
    mu_part = TwoTermComplex(E0, E1, delta, env0.vertices, env1.vertices)
    # complement J of E1 inside Y
    if E1.total_dim:
        sigma = _extend_along_mono(psi, identity_map(E1))
        J_sub = _kernel_submodule(sigma)
    else:
        J_sub = _full_sub(Y_rep)
    J_rep, incl_J = submodule_to_rep(J_sub)
    if E1.total_dim + J_rep.total_dim != Y_rep.total_dim:
        raise ConsistencyError("Y does not split along the image envelope")
    # chain map certificate: [phi | incl_X] and [psi' | dX | incl_J'] invertible,
    # commuting with the block differentials
    for v in range(alg.n_vertices):
        m0 = phi.components[v].hstack(incl_X.components[v])
        if not is_invertible(m0):
            raise ConsistencyError("degree-zero comparison map is not invertible")
        m1 = incl_Y.compose(psi).components[v] if E1.total_dim else Mat.zeros(field, s.e1.dims[v], 0)
        m1 = m1.hstack(dX.components[v]).hstack(incl_Y.compose(incl_J).components[v])
        if not is_invertible(m1):
            raise ConsistencyError("degree-one comparison map is not invertible")
    lhs = s.differential.compose(phi)
    rhs = incl_Y.compose(psi).compose(delta) if E1.total_dim else zero_map(E0, s.e1)
    if not (lhs - rhs).is_zero():
        raise ConsistencyError("comparison maps do not commute with the differentials")
    # the invertible part, presented over a canonical sum of injectives
    iso_vertices = _match_injective_sum(X_rep)
    iso_canon = (direct_sum([std_module(alg, "injective", alg.vertices[v]) for v in iso_vertices])[0]
                 if iso_vertices else zero_module(alg))
    iso_part = TwoTermComplex(iso_canon, iso_canon, identity_map(iso_canon), iso_vertices, iso_vertices)
    stalk_vertices = _match_injective_sum(J_rep)
    return mu_part, iso_part, tuple(stalk_vertices)


def _full_sub(M):
    from .algebra import full_submodule

    return full_submodule(M)


def _kernel_submodule(f: ModMap) -> SubmoduleData:
    from .exactfield import kernel_basis

    M = f.source
    field = M.algebra.field
    rows = []
    for v in range(M.algebra.n_vertices):
        vecs = kernel_basis(f.components[v])
        if vecs:
            stacked = vecs[0]
            for w in vecs[1:]:
                stacked = stacked.hstack(w)
            rows.append(stacked.transpose())
        else:
            rows.append(Mat.zeros(field, 0, M.dims[v]))
    return SubmoduleData(M, rows)


def _corestrict(f: ModMap, sub: SubmoduleData, incl: ModMap) -> ModMap:
    """Factor f through a submodule of its target containing the image."""
    from .exactfield import solve_matrix

    comps = []
    for v in range(len(f.components)):
        x = solve_matrix(incl.components[v], f.components[v])
        if x is None:
            raise ConsistencyError("map does not factor through the submodule")
        comps.append(x)
    return ModMap(f.source, incl.source, comps, check=False)


def _projection_killing(mono: ModMap, kill: ModMap) -> ModMap:
    """A retraction p of mono with p o kill = 0.

    mono: X -> E with injective X, kill: W -> E with images meeting only in 0.
    """
    from .exactfield import solve

    X, E = mono.source, mono.target
    field = X.algebra.field
    # define on the submodule generated by both images, then extend
    sub_rows = []
    for v in range(E.algebra.n_vertices):
        joined = mono.components[v].hstack(kill.components[v])
        sub_rows.append(joined.transpose())
    U = SubmoduleData(E, sub_rows)
    U_rep, U_incl = submodule_to_rep(U)
    comps = []
    for v in range(E.algebra.n_vertices):
        # express each U basis vector as mono*a + kill*b and send it to a
        joined = mono.components[v].hstack(kill.components[v])
        block = Mat.zeros(field, X.dims[v], U_rep.dims[v]).a.copy()
        for j in range(U_rep.dims[v]):
            u = U_incl.components[v].col(j)
            x = solve(joined, u)
            if x is None:
                raise ConsistencyError("generator outside the joint image")
            block[:, j] = x.a[: X.dims[v], 0]
        comps.append(Mat(field, block))
    f_U = ModMap(U_rep, X, comps, check=False)
    if not f_U.is_valid():
        raise ConsistencyError("partial retraction does not intertwine")
    p = _extend_along_mono(U_incl, f_U)
    if not (p.compose(mono) - identity_map(X)).is_zero():
        raise ConsistencyError("retraction fails on the split part")
    if not p.compose(kill).is_zero():
        raise ConsistencyError("retraction does not kill the prescribed image")
    return p


def _match_injective_sum(M: ModuleRep):
    """Vertex indices v with M isomorphic to the sum of the I_v."""
    from .repmod import decompose

    alg = M.algebra
    if M.total_dim == 0:
        return ()
    injs = [std_module(alg, "injective", nm) for nm in alg.vertices]
    out = []
    for piece, mult in decompose(M):
        for v, inj in enumerate(injs):
            if iso_test(piece, inj):
                out.extend([v] * mult)
                break
        else:
            raise ConsistencyError("summand is not an indecomposable injective")
    return tuple(sorted(out))
