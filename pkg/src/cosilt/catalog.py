"""Complete catalogs of indecomposable modules with cached Hom/Ext/tau data.

A catalog is the finite stand-in for the full set of indecomposables of a
representation-finite algebra.  Completeness is a declared property with a
provenance tag, never silently inferred: the hereditary and Nakayama
builders certify it structurally, user-supplied lists only assert it.
"""

from __future__ import annotations

import threading
from collections import namedtuple

from .algebra import (
    AlgebraData,
    InputError,
    ModuleRep,
    ConsistencyError,
    module_radical_socle_top,
    quotient_by,
    rep_from_json_dict,
    rep_to_json_dict,
    std_module,
)
from .repmod import (
    ar_translate,
    decompose,
    end_algebra,
    ext1,
    hom_basis,
    is_brick,
    iso_test,
)

Completeness = namedtuple("Completeness", "complete provenance")

# every report produced from a catalog carries this banner: the finite member
# list stands in for the full set of indecomposables, which is only valid for
# representation-finite algebras
FINITENESS_ASSUMPTION = (
    "the catalog members stand in for all indecomposable modules; "
    "results are meaningful only if the algebra is representation-finite"
)


def completeness_block(cat):
    return {
        "complete": cat.completeness.complete,
        "provenance": cat.completeness.provenance,
        "assumption": FINITENESS_ASSUMPTION,
    }


class IndecCatalog:
    """An ordered list of pairwise non-isomorphic indecomposables."""

    def __init__(self, algebra: AlgebraData, members, completeness: Completeness):
        self.algebra = algebra
        self.members = tuple(members)
        self.completeness = completeness
        self._lock = threading.Lock()
        self._hom = {}
        self._ext = {}
        self._mu = {}
        self._tau_minus = None
        self._tau = None
        self._bricks = None
        self._names = None
        self._hom_inverse = None
        self.injective_indices = None
        self.projective_indices = None

    def __len__(self):
        return len(self.members)

    # -- cached calculus -------------------------------------------------

    def hom(self, i, j):
        key = (i, j)
        if key not in self._hom:
            with self._lock:
                if key not in self._hom:
                    self._hom[key] = len(hom_basis(self.members[i], self.members[j]))
        return self._hom[key]

    def ext(self, i, j):
        key = (i, j)
        if key not in self._ext:
            with self._lock:
                if key not in self._ext:
                    self._ext[key] = ext1(self.members[i], self.members[j]).dim
        return self._ext[key]

    def mu(self, i):
        if i not in self._mu:
            from .twoterm import mu

            with self._lock:
                if i not in self._mu:
                    self._mu[i] = mu(self.members[i])
        return self._mu[i]

    def index_of(self, rep: ModuleRep):
        """The member isomorphic to rep, or None."""
        for i, m in enumerate(self.members):
            if m.dims == rep.dims and iso_test(m, rep):
                return i
        return None

    def tau_minus(self, i):
        self._fill_tau()
        return self._tau_minus[i]

    def tau(self, i):
        self._fill_tau()
        return self._tau[i]

    def _fill_tau(self):
        if self._tau_minus is not None:
            return
        with self._lock:
            if self._tau_minus is not None:
                return
            tm, tp = [], []
            for m in self.members:
                t = ar_translate(m, "minus")
                tm.append(None if t.total_dim == 0 else self._index_or_fail(t, "tau-minus"))
                t = ar_translate(m, "tau")
                tp.append(None if t.total_dim == 0 else self._index_or_fail(t, "tau"))
            self._tau_minus, self._tau = tm, tp

    def _index_or_fail(self, rep, what):
        idx = self.index_of(rep)
        if idx is None:
            raise ConsistencyError(
                f"{what} translate left the catalog: a module of dims {list(rep.dims)} is missing"
            )
        return idx

    def bricks(self):
        if self._bricks is None:
            with self._lock:
                if self._bricks is None:
                    self._bricks = tuple(i for i, m in enumerate(self.members) if is_brick(m))
        return self._bricks

    def summand_multiplicities(self, rep: ModuleRep):
        """Multiplicities of each member in a module known to decompose into
        members, solved from Hom dimensions; falls back to splitting if the
        Hom matrix is singular.

        Valid over a complete catalog: Hom(X, M_j) is additive in X, and the
        Hom matrix of the members is invertible, so the multiplicities are
        the unique solution of the linear system.
        """
        if rep.total_dim == 0:
            return {}
        n = len(self.members)
        if self._hom_inverse is None:
            from fractions import Fraction

            from .exactfield import Mat, QQ, inverse

            rows = [[Fraction(self.hom(i, j)) for i in range(n)] for j in range(n)]
            try:
                self._hom_inverse = inverse(Mat.from_rows(QQ, rows))
            except ValueError:
                self._hom_inverse = "singular"
        if self._hom_inverse == "singular":
            return None
        from fractions import Fraction

        from .exactfield import Mat, QQ

        h = Mat.column(QQ, [Fraction(len(hom_basis(rep, self.members[j]))) for j in range(n)])
        mult = self._hom_inverse * h
        out = {}
        for i in range(n):
            c = mult.entry(i, 0)
            if c.denominator != 1 or c < 0:
                return None
            if c:
                out[i] = int(c)
        dims = [0] * self.algebra.n_vertices
        for i, k in out.items():
            for v in range(len(dims)):
                dims[v] += k * self.members[i].dims[v]
        if tuple(dims) != rep.dims:
            return None
        return out

    # -- names and standard module indices -------------------------------

    def names(self):
        if self._names is None:
            alg = self.algebra
            simples = [std_module(alg, "simple", v) for v in alg.vertices]
            projs = [std_module(alg, "projective", v) for v in alg.vertices]
            injs = [std_module(alg, "injective", v) for v in alg.vertices]
            out = []
            for i, m in enumerate(self.members):
                name = None
                for fam, tag in ((simples, "S"), (projs, "P"), (injs, "I")):
                    for v, cand in enumerate(fam):
                        if m.dims == cand.dims and iso_test(m, cand):
                            name = f"{tag}{alg.vertices[v]}"
                            break
                    if name:
                        break
                out.append(name or f"M{i}({','.join(str(d) for d in m.dims)})")
            self._names = tuple(out)
        return self._names

    def std_indices(self):
        if self.injective_indices is None:
            alg = self.algebra
            inj, proj = [], []
            for v in alg.vertices:
                i = self.index_of(std_module(alg, "injective", v))
                p = self.index_of(std_module(alg, "projective", v))
                if self.completeness.complete and (i is None or p is None):
                    raise ConsistencyError("a complete catalog is missing a standard module")
                inj.append(i)
                proj.append(p)
            self.injective_indices = tuple(inj)
            self.projective_indices = tuple(proj)
        return self.injective_indices, self.projective_indices

    def __repr__(self):
        return (f"IndecCatalog({len(self.members)} members, "
                f"complete={self.completeness.complete}, {self.completeness.provenance})")


def tables(cat: IndecCatalog):
    """Fill all pairwise hom/ext dimensions and the tau links; idempotent."""
    n = len(cat)
    for i in range(n):
        for j in range(n):
            cat.hom(i, j)
            cat.ext(i, j)
    cat._fill_tau()
    cat.bricks()
    cat.std_indices()
    cat.names()
    return cat


# ---------------------------------------------------------------------------
# builders

def _underlying_components(alg: AlgebraData):
    n = alg.n_vertices
    adj = {v: set() for v in range(n)}
    for a in alg.arrows:
        adj[a.src].add(a.tgt)
        adj[a.tgt].add(a.src)
    seen = set()
    comps = []
    for v in range(n):
        if v in seen:
            continue
        comp = []
        stack = [v]
        seen.add(v)
        while stack:
            w = stack.pop()
            comp.append(w)
            for u in adj[w]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def _is_dynkin_component(alg: AlgebraData, comp):
    edges = [(a.src, a.tgt) for a in alg.arrows if a.src in comp]
    if len(edges) != len(comp) - 1:
        return False  # not a tree (multi-edges and cycles included)
    degree = {v: 0 for v in comp}
    for s, t in edges:
        degree[s] += 1
        degree[t] += 1
    high = [v for v in comp if degree[v] >= 3]
    if any(degree[v] > 3 for v in comp):
        return False
    if not high:
        return True  # type A
    if len(high) > 1:
        return False
    # arm lengths from the unique branch vertex
    center = high[0]
    adj = {v: [] for v in comp}
    for s, t in edges:
        adj[s].append(t)
        adj[t].append(s)
    arms = []
    for start in adj[center]:
        length = 1
        prev, cur = center, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] != 1:
        return False
    if arms[1] == 1:
        return True  # type D
    return arms[1] == 2 and arms[2] in (2, 3, 4)  # E6, E7, E8


def _is_acyclic(alg: AlgebraData):
    n = alg.n_vertices
    indeg = [0] * n
    for a in alg.arrows:
        indeg[a.tgt] += 1
    queue = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for a in alg.arrows:
            if a.src == v:
                indeg[a.tgt] -= 1
                if indeg[a.tgt] == 0:
                    queue.append(a.tgt)
    return seen == n


def build_hereditary(alg: AlgebraData) -> IndecCatalog:
    """Catalog of a hereditary Dynkin algebra by tau-minus knitting."""
    if alg.relations:
        raise InputError("hereditary builder needs an algebra without relations")
    if not _is_acyclic(alg):
        raise InputError("hereditary builder needs an acyclic quiver")
    for comp in _underlying_components(alg):
        if not _is_dynkin_component(alg, comp):
            raise InputError(
                "representation-infinite: the underlying graph is not a disjoint union of A/D/E diagrams"
            )
    members = [std_module(alg, "projective", v) for v in alg.vertices]
    frontier = list(members)
    guard = 0
    while frontier:
        guard += 1
        if guard > 64:
            raise ConsistencyError("tau-minus knitting did not terminate")
        new = []
        for m in frontier:
            t = ar_translate(m, "minus")
            if t.total_dim == 0:
                continue
            if not any(t.dims == k.dims and iso_test(t, k) for k in members):
                members.append(t)
                new.append(t)
        frontier = new
    cat = IndecCatalog(alg, members, Completeness(True, "built-in:hereditary"))
    return cat


def _loewy_length(alg, P):
    length = 0
    cur = P
    while cur.total_dim:
        rad, _, (top, _) = module_radical_socle_top(alg, cur)
        from .algebra import submodule_to_rep

        cur = submodule_to_rep(rad)[0]
        length += 1
        if length > alg.dim + 1:
            raise ConsistencyError("radical series did not terminate")
    return length


def build_nakayama(alg: AlgebraData) -> IndecCatalog:
    """Catalog of a Nakayama algebra: the modules P_i / rad^j P_i."""
    n = alg.n_vertices
    outdeg = [0] * n
    indeg = [0] * n
    for a in alg.arrows:
        outdeg[a.src] += 1
        indeg[a.tgt] += 1
    if any(d > 1 for d in outdeg) or any(d > 1 for d in indeg):
        raise InputError("Nakayama builder needs in- and out-degree at most one everywhere")
    for rel in alg.relations:
        if len(rel) != 1:
            raise InputError("Nakayama builder needs monomial relations")
    members = []
    for v in alg.vertices:
        P = std_module(alg, "projective", v)
        ll = _loewy_length(alg, P)
        for j in range(1, ll + 1):
            m = _mod_rad_power(alg, P, j)
            if not any(m.dims == k.dims and iso_test(m, k) for k in members):
                members.append(m)
    members.sort(key=lambda m: (m.total_dim, m.dims))
    return IndecCatalog(alg, members, Completeness(True, "built-in:nakayama"))


def _mod_rad_power(alg, P, j):
    from .algebra import SubmoduleData, submodule_to_rep

    cur_rows = None
    cur = P
    sub = None
    # rad^j as a submodule of P
    amb = P
    rad, _, _ = module_radical_socle_top(alg, P)
    from .algebra import full_submodule

    sub = full_submodule(P)
    for _ in range(j):
        rep, incl = submodule_to_rep(sub)
        rad, _, _ = module_radical_socle_top(alg, rep)
        # push the radical rows back into the ambient coordinates
        rows = []
        for v in range(alg.n_vertices):
            rows.append((incl.components[v] * rad.rows[v].transpose()).transpose())
        sub = SubmoduleData(P, rows)
    rep, _ = quotient_by(sub)
    return rep


def build_explicit(alg: AlgebraData, modules, assert_complete=False) -> IndecCatalog:
    """Catalog from user-supplied modules; rejects decomposable entries."""
    members = []
    for k, m in enumerate(modules):
        if m.total_dim == 0:
            raise InputError(f"module {k} is zero")
        parts = decompose(m)
        if len(parts) > 1 or parts[0][1] > 1:
            shape = " + ".join(f"{mult} x {list(rep.dims)}" for rep, mult in parts)
            raise InputError(f"module {k} is decomposable: {shape}")
        if not any(m.dims == x.dims and iso_test(m, x) for x in members):
            members.append(m)
    completeness = Completeness(bool(assert_complete), "user-asserted" if assert_complete else "none")
    return IndecCatalog(alg, members, completeness)


# ---------------------------------------------------------------------------
# JSON round trip

def catalog_to_json_dict(cat: IndecCatalog):
    tables(cat)
    n = len(cat)
    return {
        "completeness": completeness_block(cat),
        "members": [
            {"name": cat.names()[i], **rep_to_json_dict(cat.members[i])} for i in range(n)
        ],
        "hom": [[cat.hom(i, j) for j in range(n)] for i in range(n)],
        "ext": [[cat.ext(i, j) for j in range(n)] for i in range(n)],
        "tau_minus": [cat.tau_minus(i) for i in range(n)],
        "tau": [cat.tau(i) for i in range(n)],
        "bricks": list(cat.bricks()),
        "injective_indices": list(cat.std_indices()[0]),
        "projective_indices": list(cat.std_indices()[1]),
    }


def catalog_from_json_dict(alg: AlgebraData, data) -> IndecCatalog:
    members = [rep_from_json_dict(alg, m) for m in data["members"]]
    comp = data.get("completeness", {})
    cat = IndecCatalog(alg, members, Completeness(bool(comp.get("complete")), comp.get("provenance", "none")))
    return cat
