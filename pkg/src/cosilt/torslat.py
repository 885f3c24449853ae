"""The lattice of torsion pairs over a complete catalog.

Torsionfree classes are encoded as bitsets of catalog member indices.  A
subset is a torsionfree class when it is closed under indecomposable
summands of submodules of its members and under binary extensions; the
extension step uses the filtration characterisation, so no Ext-class
bookkeeping is needed.  Enumeration is brute force over subsets with the
submodule/quotient decompositions of each member precomputed once.
"""

from __future__ import annotations

import json
from collections import namedtuple

from .algebra import ConsistencyError, InputError
from .catalog import IndecCatalog
from .exactfield import PrimeField
from .repmod import (
    BudgetExceededError,
    DEFAULT_SUBMODULE_BUDGET,
    decompose,
    enumerate_submodules,
    quotient_by,
    submodule_to_rep,
)

DEFAULT_SUBSET_BUDGET = 1 << 20

TorsionPairFin = namedtuple("TorsionPairFin", "t_mask f_mask")
HasseEdge = namedtuple("HasseEdge", "lower upper label")


class SubquotientData:
    """For each member, the summand masks of all (submodule, quotient) pairs."""

    def __init__(self, catalog: IndecCatalog, submodule_budget=DEFAULT_SUBMODULE_BUDGET):
        if not isinstance(catalog.algebra.field, PrimeField):
            raise InputError("torsion lattice enumeration needs a finite field")
        self.catalog = catalog
        self.pairs = []
        for idx, X in enumerate(catalog.members):
            entries = []
            for sub in enumerate_submodules(X, budget=submodule_budget):
                u_mask = self._summand_mask(submodule_to_rep(sub)[0])
                q_mask = self._summand_mask(quotient_by(sub)[0])
                entries.append((u_mask, q_mask))
            self.pairs.append(tuple(entries))

    def _summand_mask(self, rep):
        if rep.total_dim == 0:
            return 0
        mult = self.catalog.summand_multiplicities(rep)
        if mult is not None:
            mask = 0
            for idx in mult:
                mask |= 1 << idx
            return mask
        mask = 0
        for piece, _ in decompose(rep):
            idx = self.catalog.index_of(piece)
            if idx is None:
                raise ConsistencyError(
                    f"a subquotient summand of dims {list(piece.dims)} is not in the catalog; "
                    "the catalog cannot be complete"
                )
            mask |= 1 << idx
        return mask


def _submask(a, b):
    return a & ~b == 0


def is_torsionfree_set(data: SubquotientData, mask: int) -> bool:
    """Closed under summands of submodules and under binary extensions."""
    n = len(data.catalog)
    for x in range(n):
        if mask >> x & 1:
            for u, _ in data.pairs[x]:
                if not _submask(u, mask):
                    return False
        else:
            for u, q in data.pairs[x]:
                if _submask(u, mask) and _submask(q, mask):
                    return False
    return True


def torsionfree_closure(data: SubquotientData, seed_mask: int) -> int:
    """Least torsionfree class containing the seed members."""
    n = len(data.catalog)
    mask = seed_mask
    changed = True
    while changed:
        changed = False
        for x in range(n):
            if mask >> x & 1:
                for u, _ in data.pairs[x]:
                    if not _submask(u, mask):
                        mask |= u
                        changed = True
            else:
                for u, q in data.pairs[x]:
                    if _submask(u, mask) and _submask(q, mask):
                        mask |= 1 << x
                        changed = True
                        break
    return mask


def left_perp(catalog: IndecCatalog, f_mask: int) -> int:
    """{X : Hom(X, F) = 0 for every F in the class}."""
    n = len(catalog)
    t = 0
    for x in range(n):
        if all(catalog.hom(x, y) == 0 for y in range(n) if f_mask >> y & 1):
            t |= 1 << x
    return t


class TorsLattice:
    """All torsion pairs with their Hasse quiver and brick labels."""

    def __init__(self, catalog, pairs, data):
        self.catalog = catalog
        self.pairs = pairs
        self.data = data
        self.hasse = None
        self._cmi = None

    def __len__(self):
        return len(self.pairs)

    def index_of_t(self, t_mask):
        for i, p in enumerate(self.pairs):
            if p.t_mask == t_mask:
                return i
        return None

    def index_of_f(self, f_mask):
        for i, p in enumerate(self.pairs):
            if p.f_mask == f_mask:
                return i
        return None

    def leq(self, i, j):
        return _submask(self.pairs[i].t_mask, self.pairs[j].t_mask)


def enumerate_torsion_pairs(catalog: IndecCatalog, subset_budget=DEFAULT_SUBSET_BUDGET,
                            submodule_budget=DEFAULT_SUBMODULE_BUDGET) -> TorsLattice:
    """All torsion pairs, ordered by inclusion of torsion classes."""
    if not catalog.completeness.complete:
        raise InputError("torsion pair enumeration needs a catalog declared complete")
    n = len(catalog)
    if 2 ** n > subset_budget:
        raise BudgetExceededError(f"2^{n} subsets exceed the subset budget {subset_budget}")
    data = SubquotientData(catalog, submodule_budget)
    pairs = []
    for mask in range(1 << n):
        if is_torsionfree_set(data, mask):
            t = left_perp(catalog, mask)
            if t & mask:
                raise ConsistencyError("torsion and torsionfree classes intersect")
            _check_pair_covers_all(catalog, t, mask)
            pairs.append(TorsionPairFin(t, mask))
    pairs.sort(key=lambda p: (bin(p.t_mask).count("1"), p.t_mask))
    return TorsLattice(catalog, pairs, data)


def _check_pair_covers_all(catalog, t_mask, f_mask):
    n = len(catalog)
    for x in range(n):
        if t_mask >> x & 1:
            continue
        if not any(catalog.hom(x, y) > 0 for y in range(n) if f_mask >> y & 1):
            raise ConsistencyError(
                f"member {x} is neither torsion nor maps to the torsionfree class"
            )


def hasse_with_labels(lat: TorsLattice):
    """Cover edges, each labelled by its unique brick."""
    if lat.hasse is not None:
        return lat.hasse
    n = len(lat.pairs)
    bricks = set(lat.catalog.bricks())
    edges = []
    for i in range(n):
        for j in range(n):
            ti, tj = lat.pairs[i].t_mask, lat.pairs[j].t_mask
            if i == j or not _submask(ti, tj) or ti == tj:
                continue
            if any(k != i and k != j and _submask(ti, lat.pairs[k].t_mask)
                   and _submask(lat.pairs[k].t_mask, tj)
                   and lat.pairs[k].t_mask not in (ti, tj) for k in range(n)):
                continue
            window = tj & lat.pairs[i].f_mask
            candidates = [m for m in range(len(lat.catalog)) if window >> m & 1 and m in bricks]
            if len(candidates) != 1:
                names = [lat.catalog.names()[m] for m in candidates]
                raise ConsistencyError(
                    f"cover {i} -> {j} has {len(candidates)} brick label candidates {names}"
                )
            edges.append(HasseEdge(i, j, candidates[0]))
    edges.sort(key=lambda e: (e.lower, e.upper))
    lat.hasse = edges
    return edges


def lattice_meet_join(lat: TorsLattice, indices):
    """Meet and join of a family of pairs, as lattice indices.

    The empty family yields (top, bottom)."""
    indices = list(indices)
    meet_mask = (1 << len(lat.catalog)) - 1
    for i in indices:
        meet_mask &= lat.pairs[i].t_mask
    meet_idx = lat.index_of_t(meet_mask)
    if meet_idx is None:
        raise ConsistencyError("meet of torsion classes is not a torsion class")
    union = 0
    for i in indices:
        union |= lat.pairs[i].t_mask
    join_idx = None
    best = None
    for k, p in enumerate(lat.pairs):
        if _submask(union, p.t_mask):
            if best is None or _submask(p.t_mask, best):
                best, join_idx = p.t_mask, k
    if join_idx is None:
        raise ConsistencyError("no torsion class contains the union")
    return meet_idx, join_idx


def cmi_elements(lat: TorsLattice):
    """Completely meet irreducible pairs with their unique covers."""
    if lat._cmi is not None:
        return lat._cmi
    edges = hasse_with_labels(lat)
    up = {}
    for e in edges:
        up.setdefault(e.lower, []).append(e.upper)
    out = []
    for i in range(len(lat.pairs)):
        covers = up.get(i, [])
        if len(covers) != 1:
            continue
        star = lat.pairs[covers[0]].t_mask
        ti = lat.pairs[i].t_mask
        if all(_submask(star, p.t_mask)
               for p in lat.pairs if _submask(ti, p.t_mask) and p.t_mask != ti):
            out.append((i, covers[0]))
    lat._cmi = out
    return out


def cmi_brick_bijection(lat: TorsLattice):
    """brick B -> the pair ({X : Hom(X,B)=0}, F(B)); asserted bijective."""
    cat = lat.catalog
    cmi = {i for i, _ in cmi_elements(lat)}
    out = []
    seen = set()
    for b in cat.bricks():
        f_mask = torsionfree_closure(lat.data, 1 << b)
        t_mask = left_perp(cat, 1 << b)
        idx = lat.index_of_t(t_mask)
        if idx is None or lat.pairs[idx].f_mask != f_mask:
            raise ConsistencyError(f"brick {cat.names()[b]} does not induce a torsion pair in the lattice")
        if idx not in cmi:
            raise ConsistencyError(f"the pair of brick {cat.names()[b]} is not completely meet irreducible")
        if idx in seen:
            raise ConsistencyError("two bricks induce the same torsion pair")
        seen.add(idx)
        out.append((b, idx))
    if seen != cmi:
        raise ConsistencyError("brick-to-cmi assignment is not onto the cmi elements")
    return out


def heart_simples(lat: TorsLattice, pair_index: int):
    """Labels of the covers above (torsionfree, almost torsion modules) and
    below (torsion, almost torsionfree); the upper labels are re-checked
    against the direct quotient condition."""
    edges = hasse_with_labels(lat)
    tfat = sorted(e.label for e in edges if e.lower == pair_index)
    tatf = sorted(e.label for e in edges if e.upper == pair_index)
    pair = lat.pairs[pair_index]
    for b in tfat:
        if not pair.f_mask >> b & 1:
            raise ConsistencyError("an upper cover label is not torsionfree for the pair")
        for u, q in lat.data.pairs[b]:
            if u != 0 and not _submask(q, pair.t_mask):
                raise ConsistencyError(
                    "an upper cover label has a proper quotient that is not torsion"
                )
    return tfat, tatf


# ---------------------------------------------------------------------------
# exports

def mask_names(catalog, mask):
    names = catalog.names()
    return [names[i] for i in range(len(catalog)) if mask >> i & 1]


def lattice_to_json_dict(lat: TorsLattice):
    edges = hasse_with_labels(lat)
    cmi = cmi_elements(lat)
    names = lat.catalog.names()
    from .catalog import completeness_block

    return {
        "completeness": completeness_block(lat.catalog),
        "members": list(names),
        "pairs": [
            {"index": i, "torsion": mask_names(lat.catalog, p.t_mask),
             "torsionfree": mask_names(lat.catalog, p.f_mask)}
            for i, p in enumerate(lat.pairs)
        ],
        "hasse": [{"lower": e.lower, "upper": e.upper, "label": names[e.label]} for e in edges],
        "cmi": [{"pair": i, "cover": j} for i, j in cmi],
    }


def lattice_to_dot(lat: TorsLattice):
    edges = hasse_with_labels(lat)
    names = lat.catalog.names()
    lines = ["digraph tors {"]
    for i, p in enumerate(lat.pairs):
        label = "{" + ",".join(mask_names(lat.catalog, p.t_mask)) + "}"
        lines.append(f'  n{i} [label="{label}"];')
    for e in edges:
        lines.append(f'  n{e.lower} -> n{e.upper} [label="{names[e.label]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
