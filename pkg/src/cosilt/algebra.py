"""Bound quiver algebras A = kQ/I and their finite-dimensional modules.

An algebra is built from a textual spec: vertices, arrows, relations (linear
combinations of parallel paths of length >= 2) and a nilpotency bound.  The
relations are turned into a rewriting system ordered by length then arrow
names; builds are rejected when the system is not confluent rather than
risking a wrong basis.  Modules are representations: one exact-field matrix
per arrow.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .exactfield import (
    FieldMismatchError,
    GF,
    Mat,
    QQ,
    column_space_basis,
    kernel_basis,
    rref,
    solve,
    solve_matrix,
)


class InputError(ValueError):
    """A malformed algebra or module spec."""


class AmbiguousReductionError(InputError):
    """The relation rewriting system is not confluent; names the overlap."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; this would falsify the implementation."""


@dataclass(frozen=True)
class Arrow:
    name: str
    src: int
    tgt: int


@dataclass(frozen=True)
class Path:
    """A basis path: source vertex plus the arrow index sequence traversed."""

    src: int
    arrows: tuple

    def __len__(self):
        return len(self.arrows)


class QuiverSpec:
    """Validated input data for a bound quiver algebra."""

    def __init__(self, field, vertices, arrows, relations, nilpotency_bound):
        if len(set(vertices)) != len(vertices):
            raise InputError("duplicate vertex names")
        self.field = field
        self.vertices = tuple(str(v) for v in vertices)
        vidx = {v: i for i, v in enumerate(self.vertices)}
        arrs = []
        seen = set()
        for name, src, tgt in arrows:
            if name in seen:
                raise InputError(f"duplicate arrow name {name!r}")
            seen.add(name)
            if src not in vidx or tgt not in vidx:
                raise InputError(f"arrow {name!r} has undeclared endpoint {src!r} or {tgt!r}")
            arrs.append(Arrow(str(name), vidx[src], vidx[tgt]))
        self.arrows = tuple(arrs)
        aidx = {a.name: i for i, a in enumerate(self.arrows)}
        if nilpotency_bound < 2:
            raise InputError(f"nilpotency bound must be >= 2, got {nilpotency_bound}")
        self.nilpotency_bound = int(nilpotency_bound)
        rels = []
        for k, rel in enumerate(relations):
            terms = []
            for coeff, path_names in rel:
                try:
                    c = field.coerce(coeff)
                except (ValueError, ZeroDivisionError) as exc:
                    raise InputError(f"relation {k}: bad coefficient {coeff!r}: {exc}")
                word = []
                for nm in path_names:
                    if nm not in aidx:
                        raise InputError(f"relation {k}: unknown arrow {nm!r}")
                    word.append(aidx[nm])
                for x, y in zip(word, word[1:]):
                    if self.arrows[x].tgt != self.arrows[y].src:
                        raise InputError(
                            f"relation {k}: path {list(path_names)} is not composable at "
                            f"{self.arrows[x].name!r} -> {self.arrows[y].name!r}"
                        )
                if len(word) < 2:
                    raise InputError(f"relation {k}: path {list(path_names)} has length < 2 (ideal not admissible)")
                terms.append((c, tuple(word)))
            if not terms:
                raise InputError(f"relation {k} is empty")
            endpoints = {(self.arrows[w[0]].src, self.arrows[w[-1]].tgt) for _, w in terms}
            if len(endpoints) != 1:
                raise InputError(f"relation {k}: terms do not share source and target")
            rels.append(tuple(terms))
        self.relations = tuple(rels)

    @staticmethod
    def from_json_dict(data):
        try:
            fdesc = data["field"]
            if fdesc == "rationals":
                fld = QQ
            else:
                fld = GF(int(fdesc["prime"]))
            vertices = list(data["vertices"])
            arrows = [(a["name"], a["from"], a["to"]) for a in data["arrows"]]
            relations = [[(t["coeff"], list(t["path"])) for t in rel] for rel in data.get("relations", [])]
            n = int(data.get("nilpotency_bound", 2))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed algebra spec: {exc}")
        return QuiverSpec(fld, vertices, arrows, relations, n)

    @staticmethod
    def from_json_file(path):
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")
        return QuiverSpec.from_json_dict(data)


def _deglex_key(word, arrows):
    return (len(word), tuple(arrows[i].name for i in word))


class _Rewriter:
    """Word rewriting modulo the relation ideal, ordered by length then name."""

    def __init__(self, arrows, relations, field):
        self.arrows = arrows
        self.field = field
        self.rules = {}
        work = [dict((w, c) for c, w in rel) for rel in relations]
        guard = 0
        while work:
            guard += 1
            if guard > 10000:
                raise InputError("relation completion did not terminate")
            rel = self._reduce_combo(work.pop())
            rel = {w: c for w, c in rel.items() if c != self.field.zero}
            if not rel:
                continue
            lead = max(rel, key=lambda w: _deglex_key(w, self.arrows))
            clead = rel[lead]
            rhs = {w: -c / clead if self.field.char == 0 else (-c * self.field.inv(clead)) % self.field.p
                   for w, c in rel.items() if w != lead}
            stale = [l for l in self.rules if self._contains(l, lead) or self._contains(lead, l) == -2]
            self.rules[lead] = rhs
            # rules whose sides became reducible go back to the work list
            requeue = []
            for l in list(self.rules):
                if l == lead:
                    continue
                if self._find_lhs(l, exclude=l) is not None or any(
                    self._find_lhs(m) is not None for m in self.rules[l]
                ):
                    requeue.append(l)
            for l in requeue:
                r = self.rules.pop(l)
                combo = dict(r)
                combo[l] = combo.get(l, self.field.zero) - self.field.one
                work.append({w: -c if self.field.char == 0 else (-c) % self.field.p for w, c in combo.items()})
        self._check_confluence()

    def _contains(self, word, sub):
        n, m = len(word), len(sub)
        for i in range(n - m + 1):
            if word[i : i + m] == sub:
                return i
        return None

    def _find_lhs(self, word, exclude=None):
        """Leftmost occurrence of any rule lhs inside word, longest rule first."""
        best = None
        for i in range(len(word)):
            for lhs in self.rules:
                if exclude is not None and lhs == exclude:
                    continue
                m = len(lhs)
                if word[i : i + m] == lhs:
                    if best is None or len(lhs) > len(best[1]):
                        best = (i, lhs)
            if best is not None:
                return best
        return None

    def is_irreducible(self, word):
        return self._find_lhs(word) is None

    def reduce_word(self, word):
        """Fully reduce a word; returns {irreducible word: coefficient}."""
        out = {}
        stack = [(tuple(word), self.field.one)]
        guard = 0
        while stack:
            guard += 1
            if guard > 200000:
                raise InputError("reduction did not terminate")
            w, c = stack.pop()
            hit = self._find_lhs(w)
            if hit is None:
                out[w] = out.get(w, self.field.zero) + c
                continue
            i, lhs = hit
            for m, cm in self.rules[lhs].items():
                stack.append((w[:i] + m + w[i + len(lhs) :], c * cm))
        return {w: c for w, c in out.items() if c != self.field.zero}

    def _reduce_combo(self, combo):
        out = {}
        for w, c in combo.items():
            for w2, c2 in self.reduce_word(w).items():
                out[w2] = out.get(w2, self.field.zero) + c * c2
        return out

    def _check_confluence(self):
        lhss = sorted(self.rules, key=lambda w: _deglex_key(w, self.arrows))
        names = lambda w: "".join(self.arrows[i].name for i in w)
        for l1 in lhss:
            for l2 in lhss:
                overlaps = []
                # proper suffix of l1 equals proper prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[len(l1) - k :] == l2[:k]:
                        overlaps.append(l1 + l2[k:])
                # l2 occurs strictly inside l1
                if l1 != l2:
                    pos = self._contains(l1, l2)
                    if pos is not None:
                        overlaps.append(l1)
                for w in overlaps:
                    if not self._normal_forms_agree(w):
                        raise AmbiguousReductionError(
                            f"relations are not confluent at overlap {names(w)!r} "
                            f"(rules {names(l1)!r}, {names(l2)!r}); rewrite the relations"
                        )

    def _normal_forms_agree(self, word):
        # reduce via every possible first step and compare normal forms
        forms = []
        for i in range(len(word)):
            for lhs in self.rules:
                m = len(lhs)
                if word[i : i + m] == lhs:
                    combo = {}
                    for mono, cm in self.rules[lhs].items():
                        w2 = word[:i] + mono + word[i + m :]
                        for w3, c3 in self.reduce_word(w2).items():
                            combo[w3] = combo.get(w3, self.field.zero) + cm * c3
                    forms.append({w: c for w, c in combo.items() if c != self.field.zero})
        return all(f == forms[0] for f in forms[1:])


class AlgebraData:
    """A bound quiver algebra with its path basis and multiplication."""

    def __init__(self, spec: QuiverSpec):
        self.spec = spec
        self.field = spec.field
        self.vertices = spec.vertices
        self.arrows = spec.arrows
        self.relations = spec.relations
        self._rw = _Rewriter(self.arrows, self.relations, self.field)
        self._build_basis()
        self._mult_cache = {}
        self._std_cache = {}
        self._path_maps_cache = {}

    # -- construction ----------------------------------------------------

    def _build_basis(self):
        n_bound = self.spec.nilpotency_bound
        basis = [Path(v, ()) for v in range(len(self.vertices))]
        frontier = list(basis)
        length = 0
        while frontier:
            length += 1
            new = []
            for p in frontier:
                end = self.path_tgt(p)
                for ai, a in enumerate(self.arrows):
                    if a.src != end:
                        continue
                    w = p.arrows + (ai,)
                    if self._rw.is_irreducible(w):
                        if length >= n_bound:
                            nm = "".join(self.arrows[i].name for i in w)
                            raise InputError(
                                f"nilpotency bound {n_bound} is insufficient: path {nm!r} of "
                                f"length {length} does not reduce to zero"
                            )
                        new.append(Path(p.src, w))
            new.sort(key=lambda q: _deglex_key(q.arrows, self.arrows))
            basis.extend(new)
            frontier = new
        self.basis = tuple(basis)
        self.basis_index = {(p.src, p.arrows): i for i, p in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.idempotents = tuple(self.basis_index[(v, ())] for v in range(len(self.vertices)))

    def path_tgt(self, p: Path):
        return p.src if not p.arrows else self.arrows[p.arrows[-1]].tgt

    def path_name(self, p: Path):
        if not p.arrows:
            return f"e_{self.vertices[p.src]}"
        return "*".join(self.arrows[i].name for i in p.arrows)

    def reduce_to_basis(self, src, word):
        """Reduce a word starting at src to {basis index: coefficient}."""
        out = {}
        for w, c in self._rw.reduce_word(word).items():
            key = (src, w)
            if key not in self.basis_index:
                raise ConsistencyError(f"reduced word escaped the basis: {w}")
            out[self.basis_index[key]] = out.get(self.basis_index[key], self.field.zero) + c
        return {i: c for i, c in out.items() if c != self.field.zero}

    def mult(self, i, j):
        """Product of basis paths i then j as {basis index: coefficient}."""
        key = (i, j)
        if key in self._mult_cache:
            return self._mult_cache[key]
        p, q = self.basis[i], self.basis[j]
        if self.path_tgt(p) != q.src:
            out = {}
        else:
            out = self.reduce_to_basis(p.src, p.arrows + q.arrows)
        self._mult_cache[key] = out
        return out

    def check_associativity(self):
        """Spot-check associativity of the multiplication table."""
        idxs = range(self.dim)
        for i in idxs:
            for j in idxs:
                ij = self.mult(i, j)
                for k in idxs:
                    left = {}
                    for m, c in ij.items():
                        for r, c2 in self.mult(m, k).items():
                            left[r] = left.get(r, self.field.zero) + c * c2
                    right = {}
                    for m, c in self.mult(j, k).items():
                        for r, c2 in self.mult(i, m).items():
                            right[r] = right.get(r, self.field.zero) + c * c2
                    left = {r: c for r, c in left.items() if c != self.field.zero}
                    right = {r: c for r, c in right.items() if c != self.field.zero}
                    if left != right:
                        return False
        return True

    @property
    def n_vertices(self):
        return len(self.vertices)

    def __repr__(self):
        return f"AlgebraData({list(self.vertices)}, dim={self.dim})"


def build_algebra(spec: QuiverSpec) -> AlgebraData:
    alg = AlgebraData(spec)
    if alg.dim <= 30 and not alg.check_associativity():
        raise ConsistencyError("multiplication table is not associative")
    return alg


# ---------------------------------------------------------------------------
# modules

class ModuleRep:
    """A finite-dimensional representation: dims per vertex, a matrix per arrow."""

    __slots__ = ("algebra", "dims", "action")

    def __init__(self, algebra, dims, action, check=True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.n_vertices:
            raise InputError(f"expected {algebra.n_vertices} vertex dimensions, got {len(self.dims)}")
        acts = []
        for ai, a in enumerate(algebra.arrows):
            m = action[ai]
            if m.shape != (self.dims[a.tgt], self.dims[a.src]):
                raise InputError(
                    f"arrow {a.name!r}: matrix shape {m.shape} does not match "
                    f"({self.dims[a.tgt]}, {self.dims[a.src]})"
                )
            if m.field != algebra.field:
                raise FieldMismatchError(f"arrow {a.name!r} matrix over {m.field}, algebra over {algebra.field}")
            acts.append(m)
        self.action = tuple(acts)
        if check:
            self._check_relations()

    def _check_relations(self):
        for rel in self.algebra.relations:
            src = self.algebra.arrows[rel[0][1][0]].src
            tgt = self.algebra.arrows[rel[0][1][-1]].tgt
            total = Mat.zeros(self.algebra.field, self.dims[tgt], self.dims[src])
            for c, word in rel:
                total = total + self._act_word(word).scale(c)
            if not total.is_zero():
                names = ["*".join(self.algebra.arrows[i].name for i in word) for _, word in rel]
                raise InputError(f"representation does not satisfy the relation on {names}")

    def _act_word(self, word):
        src = self.algebra.arrows[word[0]].src
        m = Mat.identity(self.algebra.field, self.dims[src])
        for ai in word:
            m = self.action[ai] * m
        return m

    def act_path(self, p: Path) -> Mat:
        """The matrix by which the basis path p acts, M_src -> M_tgt."""
        if not p.arrows:
            return Mat.identity(self.algebra.field, self.dims[p.src])
        return self._act_word(p.arrows)

    @property
    def total_dim(self):
        return sum(self.dims)

    def is_zero(self):
        return self.total_dim == 0

    def dims_by_name(self):
        return {v: d for v, d in zip(self.algebra.vertices, self.dims)}

    def __repr__(self):
        return f"ModuleRep({list(self.dims)})"


def zero_module(algebra) -> ModuleRep:
    dims = [0] * algebra.n_vertices
    action = [Mat.zeros(algebra.field, 0, 0) for _ in algebra.arrows]
    return ModuleRep(algebra, dims, action, check=False)


def rep_from_json_dict(algebra, data) -> ModuleRep:
    try:
        dims_map = dict(data["dims"])
        act_map = dict(data.get("action", {}))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed module spec: {exc}")
    vidx = {v: i for i, v in enumerate(algebra.vertices)}
    dims = [0] * algebra.n_vertices
    for v, d in dims_map.items():
        if v not in vidx:
            raise InputError(f"module spec: unknown vertex {v!r}")
        dims[vidx[v]] = int(d)
    action = []
    for a in algebra.arrows:
        rows = act_map.get(a.name)
        if rows is None:
            action.append(Mat.zeros(algebra.field, dims[a.tgt], dims[a.src]))
        else:
            m = Mat.from_rows(algebra.field, rows, cols=dims[a.src])
            if m.shape != (dims[a.tgt], dims[a.src]):
                raise InputError(f"module spec: arrow {a.name!r} matrix has shape {m.shape}")
            action.append(m)
    return ModuleRep(algebra, dims, action)


def rep_from_json_file(algebra, path) -> ModuleRep:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")
    return rep_from_json_dict(algebra, data)


def rep_to_json_dict(m: ModuleRep):
    return {
        "dims": {v: d for v, d in zip(m.algebra.vertices, m.dims) if d},
        "action": {
            a.name: [[str(x) for x in row] for row in m.action[ai].a.tolist()]
            for ai, a in enumerate(m.algebra.arrows)
            if not m.action[ai].is_zero()
        },
    }


class ModMap:
    """A homomorphism of representations: one matrix per vertex."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source, target, components, check=True):
        if source.algebra is not target.algebra:
            raise InputError("source and target live over different algebras")
        self.source = source
        self.target = target
        comps = []
        for v in range(source.algebra.n_vertices):
            m = components[v]
            if m.shape != (target.dims[v], source.dims[v]):
                raise InputError(f"component at vertex {v} has shape {m.shape}")
            comps.append(m)
        self.components = tuple(comps)
        if check and not self.is_valid():
            raise ConsistencyError("map does not intertwine the arrow actions")

    def is_valid(self):
        for ai, a in enumerate(self.source.algebra.arrows):
            left = self.components[a.tgt] * self.source.action[ai]
            right = self.target.action[ai] * self.components[a.src]
            if left != right:
                return False
        return True

    def compose(self, other):
        """self after other (other first)."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise InputError("composition mismatch")
        return ModMap(other.source, self.target,
                      [self.components[v] * other.components[v] for v in range(len(self.components))],
                      check=False)

    def __add__(self, other):
        return ModMap(self.source, self.target,
                      [a + b for a, b in zip(self.components, other.components)], check=False)

    def __sub__(self, other):
        return ModMap(self.source, self.target,
                      [a - b for a, b in zip(self.components, other.components)], check=False)

    def scale(self, c):
        return ModMap(self.source, self.target, [m.scale(c) for m in self.components], check=False)

    def is_zero(self):
        return all(m.is_zero() for m in self.components)

    def is_injective(self):
        from .exactfield import rank
        return all(rank(m) == m.cols for m in self.components)

    def is_surjective(self):
        from .exactfield import rank
        return all(rank(m) == m.rows for m in self.components)

    def is_isomorphism(self):
        return all(m.rows == m.cols for m in self.components) and self.is_injective()

    def __repr__(self):
        return f"ModMap({self.source!r} -> {self.target!r})"


def identity_map(m: ModuleRep) -> ModMap:
    return ModMap(m, m, [Mat.identity(m.algebra.field, d) for d in m.dims], check=False)


def zero_map(source: ModuleRep, target: ModuleRep) -> ModMap:
    return ModMap(source, target,
                  [Mat.zeros(source.algebra.field, target.dims[v], source.dims[v])
                   for v in range(source.algebra.n_vertices)], check=False)


# ---------------------------------------------------------------------------
# submodules, quotients, direct sums

class SubmoduleData:
    """A subspace family closed under all arrow actions, in canonical form.

    rows[v] is a k_v x d_v reduced-row-echelon matrix whose rows span the
    subspace at vertex v.
    """

    __slots__ = ("ambient", "rows")

    def __init__(self, ambient, rows, canonical=False):
        self.ambient = ambient
        if canonical:
            self.rows = tuple(rows)
        else:
            canon = []
            for m in rows:
                red, pivots, rk = rref(m)
                canon.append(Mat(m.field, red.a[:rk]) if rk else Mat.zeros(m.field, 0, m.cols))
            self.rows = tuple(canon)

    @property
    def dims(self):
        return tuple(m.rows for m in self.rows)

    @property
    def total_dim(self):
        return sum(self.dims)

    def basis_columns(self):
        return [m.transpose() for m in self.rows]

    def is_stable(self):
        for ai, a in enumerate(self.ambient.algebra.arrows):
            image = self.ambient.action[ai] * self.rows[a.src].transpose()
            for j in range(image.cols):
                if not vector_in_rowspace(self.rows[a.tgt], image.col(j)):
                    return False
        return True

    def contains(self, other):
        """Subspace family containment, other <= self."""
        for v in range(len(self.rows)):
            b = other.rows[v].transpose()
            for j in range(b.cols):
                if not vector_in_rowspace(self.rows[v], b.col(j)):
                    return False
        return True

    def key(self):
        return tuple((m.shape, tuple(m.a.flat)) for m in self.rows)

    def __eq__(self, other):
        return isinstance(other, SubmoduleData) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"SubmoduleData(dims={self.dims})"


def vector_in_rowspace(rows: Mat, v: Mat):
    if v.is_zero():
        return True
    if rows.rows == 0:
        return False
    return solve(rows.transpose(), v) is not None


def full_submodule(m: ModuleRep) -> SubmoduleData:
    return SubmoduleData(m, [Mat.identity(m.algebra.field, d) for d in m.dims], canonical=True)


def zero_submodule(m: ModuleRep) -> SubmoduleData:
    return SubmoduleData(m, [Mat.zeros(m.algebra.field, 0, d) for d in m.dims], canonical=True)


def submodule_from_vectors(m: ModuleRep, vectors_by_vertex) -> SubmoduleData:
    """Smallest submodule containing the given per-vertex column vectors."""
    alg = m.algebra
    spans = [list(vs) for vs in vectors_by_vertex]
    changed = True
    while changed:
        changed = False
        sub = SubmoduleData(m, [
            _stack_columns(m.algebra.field, spans[v], m.dims[v]).transpose() for v in range(alg.n_vertices)
        ])
        for ai, a in enumerate(alg.arrows):
            base = sub.rows[a.src].transpose()
            for j in range(base.cols):
                w = m.action[ai] * base.col(j)
                if not vector_in_rowspace(sub.rows[a.tgt], w):
                    spans[a.tgt].append(w)
                    changed = True
    return SubmoduleData(m, [
        _stack_columns(m.algebra.field, spans[v], m.dims[v]).transpose() for v in range(alg.n_vertices)
    ])


def _stack_columns(field, cols, dim):
    if not cols:
        return Mat.zeros(field, dim, 0)
    out = cols[0]
    for c in cols[1:]:
        out = out.hstack(c)
    return out


def submodule_to_rep(sub: SubmoduleData):
    """Extract the submodule as a representation with its inclusion map."""
    m = sub.ambient
    alg = m.algebra
    bases = sub.basis_columns()
    dims = [b.cols for b in bases]
    action = []
    for ai, a in enumerate(alg.arrows):
        img = m.action[ai] * bases[a.src]
        x = solve_matrix(bases[a.tgt], img)
        if x is None:
            raise ConsistencyError("subspace family is not arrow-stable")
        action.append(x)
    rep = ModuleRep(alg, dims, action, check=False)
    incl = ModMap(rep, m, bases, check=False)
    return rep, incl


def quotient_by(sub: SubmoduleData):
    """Quotient of the ambient module by a submodule, with the projection."""
    m = sub.ambient
    alg = m.algebra
    field = alg.field
    projs = []
    dims = []
    for v in range(alg.n_vertices):
        d = m.dims[v]
        rowsp = sub.rows[v]
        k = rowsp.rows
        # complete the subspace basis to a full basis with unit vectors
        pivots = set()
        red, piv, _ = rref(rowsp)
        pivots = set(piv)
        comp_cols = [j for j in range(d) if j not in pivots]
        t = rowsp.transpose()
        for j in comp_cols:
            e = Mat.zeros(field, d, 1).a.copy()
            e[j, 0] = field.one
            t = t.hstack(Mat(field, e))
        dims.append(len(comp_cols))
        if d == 0:
            projs.append(Mat.zeros(field, len(comp_cols), 0))
            continue
        from .exactfield import inverse
        tinv = inverse(t)
        projs.append(Mat(field, tinv.a[k:, :]))
    action = []
    for ai, a in enumerate(alg.arrows):
        # section: complement coordinates -> ambient
        sec = _section_matrix(field, sub.rows[a.src], m.dims[a.src])
        action.append(projs[a.tgt] * m.action[ai] * sec)
    rep = ModuleRep(alg, dims, action, check=False)
    proj = ModMap(m, rep, projs, check=False)
    return rep, proj


def _section_matrix(field, rowsp, d):
    red, piv, _ = rref(rowsp)
    pivots = set(piv)
    comp_cols = [j for j in range(d) if j not in pivots]
    out = Mat.zeros(field, d, len(comp_cols)).a.copy()
    for idx, j in enumerate(comp_cols):
        out[j, idx] = field.one
    return Mat(field, out)


def direct_sum(reps):
    """Direct sum with canonical embeddings and projections."""
    if not reps:
        raise InputError("direct sum of an empty list needs an algebra; use zero_module")
    alg = reps[0].algebra
    field = alg.field
    for r in reps:
        if r.algebra is not alg:
            raise InputError("summands over different algebras")
    dims = [sum(r.dims[v] for r in reps) for v in range(alg.n_vertices)]
    offsets = []
    run = [0] * alg.n_vertices
    for r in reps:
        offsets.append(tuple(run))
        run = [run[v] + r.dims[v] for v in range(alg.n_vertices)]
    action = []
    for ai, a in enumerate(alg.arrows):
        big = Mat.zeros(field, dims[a.tgt], dims[a.src]).a.copy()
        for r, off in zip(reps, offsets):
            block = r.action[ai]
            big[off[a.tgt] : off[a.tgt] + block.rows, off[a.src] : off[a.src] + block.cols] = block.a
        action.append(Mat(field, big))
    total = ModuleRep(alg, dims, action, check=False)
    embeds, projects = [], []
    for r, off in zip(reps, offsets):
        emb, prj = [], []
        for v in range(alg.n_vertices):
            e = Mat.zeros(field, dims[v], r.dims[v]).a.copy()
            p = Mat.zeros(field, r.dims[v], dims[v]).a.copy()
            for i in range(r.dims[v]):
                e[off[v] + i, i] = field.one
                p[i, off[v] + i] = field.one
            emb.append(Mat(field, e))
            prj.append(Mat(field, p))
        embeds.append(ModMap(r, total, emb, check=False))
        projects.append(ModMap(total, r, prj, check=False))
    return total, embeds, projects


# ---------------------------------------------------------------------------
# standard modules

def proj_paths_by_vertex(alg: AlgebraData, v: int):
    """Basis paths starting at v, grouped by endpoint, in basis order."""
    return {w: [p for p in alg.basis if p.src == v and alg.path_tgt(p) == w]
            for w in range(alg.n_vertices)}


def inj_paths_by_vertex(alg: AlgebraData, v: int):
    """Basis paths ending at v, grouped by start, in basis order."""
    return {w: [p for p in alg.basis if alg.path_tgt(p) == v and p.src == w]
            for w in range(alg.n_vertices)}


def std_module(alg: AlgebraData, kind: str, vertex) -> ModuleRep:
    """The simple, indecomposable projective or indecomposable injective at a vertex."""
    if vertex not in alg.vertices:
        raise InputError(f"unknown vertex {vertex!r}")
    key = (kind, vertex)
    if key in alg._std_cache:
        return alg._std_cache[key]
    out = _std_module_uncached(alg, kind, vertex)
    alg._std_cache[key] = out
    return out


def _std_module_uncached(alg: AlgebraData, kind: str, vertex) -> ModuleRep:
    v = alg.vertices.index(vertex)
    field = alg.field
    if kind == "simple":
        dims = [1 if w == v else 0 for w in range(alg.n_vertices)]
        action = [Mat.zeros(field, dims[a.tgt], dims[a.src]) for a in alg.arrows]
        return ModuleRep(alg, dims, action, check=False)
    if kind == "projective":
        by_tgt = proj_paths_by_vertex(alg, v)
        index = {w: {(p.src, p.arrows): i for i, p in enumerate(by_tgt[w])} for w in by_tgt}
        dims = [len(by_tgt[w]) for w in range(alg.n_vertices)]
        action = []
        for ai, a in enumerate(alg.arrows):
            m = Mat.zeros(field, dims[a.tgt], dims[a.src]).a.copy()
            for j, p in enumerate(by_tgt[a.src]):
                for bi, c in alg.reduce_to_basis(v, p.arrows + (ai,)).items():
                    q = alg.basis[bi]
                    m[index[a.tgt][(q.src, q.arrows)], j] = c if field.char else Fraction(c)
            action.append(Mat(field, m))
        return ModuleRep(alg, dims, action)
    if kind == "injective":
        # dual of the paths ending at the vertex; arrows act by transposed prepending
        by_src = inj_paths_by_vertex(alg, v)
        index = {w: {(p.src, p.arrows): i for i, p in enumerate(by_src[w])} for w in by_src}
        dims = [len(by_src[w]) for w in range(alg.n_vertices)]
        action = []
        for ai, a in enumerate(alg.arrows):
            # prepend: span(paths tgt(a) -> v) -> span(paths src(a) -> v)
            pre = Mat.zeros(field, dims[a.src], dims[a.tgt]).a.copy()
            for j, q in enumerate(by_src[a.tgt]):
                for bi, c in alg.reduce_to_basis(a.src, (ai,) + q.arrows).items():
                    r = alg.basis[bi]
                    pre[index[a.src][(r.src, r.arrows)], j] = c if field.char else Fraction(c)
            action.append(Mat(field, pre).transpose())
        return ModuleRep(alg, dims, action)
    raise InputError(f"unknown standard module kind {kind!r}")


def std_modules(alg: AlgebraData, kind: str):
    return [std_module(alg, kind, v) for v in alg.vertices]


def module_radical_socle_top(alg: AlgebraData, m: ModuleRep):
    """Radical and socle submodules and the top quotient of a module."""
    field = alg.field
    rad_cols = [[] for _ in range(alg.n_vertices)]
    for ai, a in enumerate(alg.arrows):
        img = column_space_basis(m.action[ai])
        for j in range(img.cols):
            rad_cols[a.tgt].append(img.col(j))
    radical = SubmoduleData(m, [
        _stack_columns(field, rad_cols[v], m.dims[v]).transpose() for v in range(alg.n_vertices)
    ])
    soc_rows = []
    for v in range(alg.n_vertices):
        outgoing = [m.action[ai] for ai, a in enumerate(alg.arrows) if a.src == v]
        if not outgoing:
            soc_rows.append(Mat.identity(field, m.dims[v]))
            continue
        stacked = outgoing[0]
        for mm in outgoing[1:]:
            stacked = stacked.vstack(mm)
        vecs = kernel_basis(stacked)
        soc_rows.append(_stack_columns(field, vecs, m.dims[v]).transpose())
    socle = SubmoduleData(m, soc_rows)
    top_rep, top_proj = quotient_by(radical)
    return radical, socle, (top_rep, top_proj)
