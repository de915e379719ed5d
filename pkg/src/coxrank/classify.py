"""Recognition of finite (spherical) irreducible types and basic subsets.

Types use Coxeter's naming: A(n) the linear all-3 diagram, B(n) the Y-shaped
all-3 diagram with two short arms, C(n) the linear diagram ending in a 4,
D2(k) the dihedral edge labeled k, plus E6/E7/E8, F4, and G3/G4 (the
icosahedral pair).  Low-rank coincidences are kept as aliases rather than
collapsed: B(3) = A(3), D2(3) = A(2), D2(4) = C(2).

Recognition is exact: each candidate type of the right rank is rendered as a
template matrix and matched against the induced diagram by labeled-graph
isomorphism (census filter, then backtracking).  No numerics are involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import CoxError
from .matrix import INFINITY, CoxeterMatrix, Gen, components, is_irreducible

_EXCEPTIONAL_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G3": 3, "G4": 4}
_EXCEPTIONAL_ORDER = {
    "E6": 51840,
    "E7": 2903040,
    "E8": 696729600,
    "F4": 1152,
    "G3": 120,
    "G4": 14400,
}
_EXCEPTIONAL_ROOTS = {"E6": 36, "E7": 63, "E8": 120, "F4": 24, "G3": 15, "G4": 60}


@dataclass(frozen=True)
class SphericalType:
    """An irreducible finite type: family plus rank (or k for the dihedral family)."""

    family: str
    param: int

    def __post_init__(self):
        f, n = self.family, self.param
        if f == "A":
            ok = n >= 1
        elif f == "B":
            ok = n >= 3
        elif f == "C":
            ok = n >= 2
        elif f == "D2":
            ok = n >= 3
        elif f in _EXCEPTIONAL_RANK:
            ok = n == _EXCEPTIONAL_RANK[f]
        else:
            ok = False
        if not ok:
            raise CoxError("BAD_TYPE", f"no spherical type {f}({n})")

    @property
    def rank(self) -> int:
        return 2 if self.family == "D2" else self.param

    @property
    def alias_of(self) -> "SphericalType | None":
        """The classical coincidence this type participates in, if any."""
        if self == SphericalType("B", 3):
            return SphericalType("A", 3)
        if self == SphericalType("D2", 3):
            return SphericalType("A", 2)
        if self == SphericalType("D2", 4):
            return SphericalType("C", 2)
        return None

    def canonical(self) -> "SphericalType":
        """The representative the classifier reports for this diagram shape."""
        if self == SphericalType("B", 3):
            return SphericalType("A", 3)
        if self == SphericalType("A", 2):
            return SphericalType("D2", 3)
        if self == SphericalType("C", 2):
            return SphericalType("D2", 4)
        return self

    def equivalent(self, other: "SphericalType") -> bool:
        return self.canonical() == other.canonical()

    @property
    def order(self) -> int:
        f, n = self.family, self.param
        if f == "A":
            return math.factorial(n + 1)
        if f == "B":
            return 2 ** (n - 1) * math.factorial(n)
        if f == "C":
            return 2 ** n * math.factorial(n)
        if f == "D2":
            return 2 * n
        return _EXCEPTIONAL_ORDER[f]

    @property
    def positive_roots(self) -> int:
        """Length of the longest element."""
        f, n = self.family, self.param
        if f == "A":
            return n * (n + 1) // 2
        if f == "B":
            return n * n - n
        if f == "C":
            return n * n
        if f == "D2":
            return n
        return _EXCEPTIONAL_ROOTS[f]

    def is_blow_down_type(self) -> bool:
        """B(2p+1) or D2(2p+1) for some p >= 1 (aliases included)."""
        c = self.canonical()
        if c.family == "A" and c.param == 3:
            return True  # doubles as B(3)
        if c.family == "B" and c.param % 2 == 1:
            return True
        return c.family == "D2" and c.param % 2 == 1

    def is_blow_up_type(self) -> bool:
        """C(2q+1) or D2(4q+2) for some q >= 1."""
        c = self.canonical()
        if c.family == "C" and c.param % 2 == 1:
            return True
        return c.family == "D2" and c.param % 4 == 2 and c.param >= 6

    def __str__(self):
        if self.family == "D2":
            return f"D2({self.param})"
        if self.family in _EXCEPTIONAL_RANK:
            return self.family
        return f"{self.family}{self.param}"


def group_order(stype: SphericalType) -> int:
    return stype.order


def template_matrix(stype: SphericalType, labels: Iterable[Gen] | None = None) -> CoxeterMatrix:
    """Canonical Coxeter matrix of an irreducible spherical type.

    Vertex naming follows the conventional numbering: A/C are chains, the
    type-B chain forks at the end (split ends are the last two labels), E
    types hang the last vertex off the branch point, G types put the 5 first.
    """
    f, n = stype.family, stype.param
    gens = list(labels) if labels is not None else [f"v{i}" for i in range(1, stype.rank + 1)]
    if len(gens) != stype.rank:
        raise CoxError("BAD_TYPE", f"{stype} needs {stype.rank} labels, got {len(gens)}")
    edges = {}

    def chain(seq, label_last=None):
        for i in range(len(seq) - 1):
            edges[(seq[i], seq[i + 1])] = 3
        if label_last is not None:
            edges[(seq[-2], seq[-1])] = label_last

    if f == "A":
        chain(gens)
    elif f == "C":
        chain(gens, label_last=4)
    elif f == "B":
        # path through the first n-1 vertices, last vertex forks off vertex n-2
        chain(gens[:-1])
        edges[(gens[-3], gens[-1])] = 3
    elif f == "D2":
        edges[(gens[0], gens[1])] = n
    elif f in ("E6", "E7", "E8"):
        chain(gens[:-1])
        edges[(gens[2], gens[-1])] = 3  # branch at the third vertex of the chain
    elif f == "F4":
        edges[(gens[0], gens[1])] = 3
        edges[(gens[1], gens[2])] = 4
        edges[(gens[2], gens[3])] = 3
    elif f in ("G3", "G4"):
        edges[(gens[0], gens[1])] = 5
        chain(gens[1:])
    # pairs without a C-diagram edge commute
    keyed = {frozenset(pair) for pair in edges}
    for s, t in combinations(gens, 2):
        if frozenset((s, t)) not in keyed:
            edges[(s, t)] = 2
    return CoxeterMatrix(gens, edges)


def direct_product(*mats: CoxeterMatrix) -> CoxeterMatrix:
    """Join matrices with order-2 labels between all cross pairs."""
    gens = []
    edges = {}
    for mat in mats:
        for g in mat.generators:
            if g in gens:
                raise CoxError("BAD_LABEL", f"duplicate label {g!r} across factors")
        for s, t, value in mat.finite_edges():
            edges[(s, t)] = value
        for g in mat.generators:
            for h in gens:
                edges[(h, g)] = 2
        gens.extend(mat.generators)
    return CoxeterMatrix(gens, edges)


def free_product(*mats: CoxeterMatrix) -> CoxeterMatrix:
    """Join matrices with no relations between cross pairs."""
    gens = []
    edges = {}
    for mat in mats:
        for s, t, value in mat.finite_edges():
            edges[(s, t)] = value
        gens.extend(mat.generators)
    return CoxeterMatrix(gens, edges)


# -- labeled-graph isomorphism ----------------------------------------------

def _census(mat: CoxeterMatrix, members: tuple[Gen, ...]):
    labels = sorted(str(mat.m(s, t)) for s, t in combinations(members, 2))
    degrees = sorted(
        str(sorted(str(mat.m(g, h)) for h in members if h != g)) for g in members
    )
    return labels, degrees


def find_isomorphism(mat_a: CoxeterMatrix, mat_b: CoxeterMatrix,
                     sub_a: Iterable[Gen] | None = None,
                     sub_b: Iterable[Gen] | None = None) -> dict[Gen, Gen] | None:
    """Label-preserving vertex bijection between two (sub)diagrams, or None.

    Compares the full order function, so this is simultaneously C-diagram,
    P-diagram, and odd-diagram isomorphism.  Backtracking with a census
    prefilter; fine for the small diagrams this package works with.
    """
    va = mat_a.sorted_gens(mat_a.check_subset(sub_a) if sub_a is not None else mat_a.generators)
    vb = mat_b.sorted_gens(mat_b.check_subset(sub_b) if sub_b is not None else mat_b.generators)
    if len(va) != len(vb):
        return None
    if _census(mat_a, va) != _census(mat_b, vb):
        return None

    # candidate targets per vertex, filtered by each vertex's own label profile
    def profile(mat, g, pool):
        return sorted(str(mat.m(g, h)) for h in pool if h != g)

    prof_b: dict[Gen, list] = {g: profile(mat_b, g, vb) for g in vb}
    candidates = {
        g: [h for h in vb if profile(mat_a, g, va) == prof_b[h]] for g in va
    }
    order = sorted(va, key=lambda g: (len(candidates[g]), mat_a.index(g)))
    mapping: dict[Gen, Gen] = {}
    used: set[Gen] = set()

    def assign(i: int) -> bool:
        if i == len(order):
            return True
        g = order[i]
        for h in candidates[g]:
            if h in used:
                continue
            if all(mat_a.m(g, g2) == mat_b.m(h, h2) for g2, h2 in mapping.items()):
                mapping[g] = h
                used.add(h)
                if assign(i + 1):
                    return True
                del mapping[g]
                used.remove(h)
        return False

    return dict(mapping) if assign(0) else None


def _candidate_types(n: int, mat: CoxeterMatrix, members: tuple[Gen, ...]) -> list[SphericalType]:
    if n == 1:
        return [SphericalType("A", 1)]
    if n == 2:
        s, t = members
        value = mat.m(s, t)
        if value == INFINITY:
            return []
        return [SphericalType("D2", value)]
    out = [SphericalType("A", n)]
    if n >= 3:
        out.append(SphericalType("C", n))
    if n >= 4:
        out.append(SphericalType("B", n))
    for f, r in _EXCEPTIONAL_RANK.items():
        if r == n:
            out.append(SphericalType(f, r))
    return out


def classify_irreducible(mat: CoxeterMatrix, subset: Iterable[Gen]) -> SphericalType | None:
    """The spherical type of an irreducible subset, or None if the group is infinite."""
    stype_map = classify_with_mapping(mat, subset)
    return stype_map[0] if stype_map else None


def classify_with_mapping(mat: CoxeterMatrix, subset: Iterable[Gen]):
    """(type, mapping template-label -> generator) for an irreducible subset, or None."""
    members = mat.check_subset(subset)
    if not members:
        raise CoxError("NOT_IRREDUCIBLE", "the empty set has no components")
    if not is_irreducible(mat, members):
        raise CoxError("NOT_IRREDUCIBLE", f"{sorted(members)} has several components")
    ordered = mat.sorted_gens(members)
    n = len(ordered)
    if n >= 3:
        # spherical C-diagrams of rank >= 3 are trees with every pair finite
        values = [mat.m(s, t) for s, t in combinations(ordered, 2)]
        if INFINITY in values or sum(1 for v in values if v > 2) != n - 1:
            return None
    for stype in _candidate_types(n, mat, ordered):
        template = template_matrix(stype)
        mapping = find_isomorphism(template, mat, None, members)
        if mapping is not None:
            return stype, mapping
    return None


def is_spherical(mat: CoxeterMatrix, subset: Iterable[Gen]) -> bool:
    """True iff every C-diagram component of the subset has a finite type."""
    members = mat.check_subset(subset)
    return all(classify_irreducible(mat, comp) is not None
               for comp in components(mat, members))


def spherical_order(mat: CoxeterMatrix, subset: Iterable[Gen]) -> int:
    """Order of the visible subgroup on a spherical subset (product over components)."""
    total = 1
    for comp in components(mat, mat.check_subset(subset)):
        stype = classify_irreducible(mat, comp)
        if stype is None:
            raise CoxError("NOT_SPHERICAL", f"{sorted(comp)} generates an infinite group")
        total *= stype.order
    return total


# -- bases -------------------------------------------------------------------

@dataclass(frozen=True)
class Base:
    """A basic subset: maximal irreducible spherical subset generating a noncyclic group.

    `split_ends` is set for the blow-down types (the two short-arm endpoints
    of an odd-rank B diagram, the endpoints for B(3) = A(3), or both members
    of an odd dihedral).  `four_end` is the endpoint on the unique label-4
    edge of a type-C base.  `distinguished_pair` repeats the members of a
    dihedral base in generator order.
    """

    members: frozenset
    stype: SphericalType
    split_ends: tuple[Gen, Gen] | None = None
    four_end: Gen | None = None
    distinguished_pair: tuple[Gen, Gen] | None = None

    def sorted_members(self, mat: CoxeterMatrix) -> tuple[Gen, ...]:
        return mat.sorted_gens(self.members)


def _decorate_base(mat: CoxeterMatrix, members: frozenset, stype: SphericalType) -> Base:
    split_ends = None
    four_end = None
    pair = None
    canon = stype.canonical()
    if canon.family == "D2":
        pair = tuple(mat.sorted_gens(members))
        if canon.param % 2 == 1:
            split_ends = pair
    elif canon == SphericalType("A", 3) or (canon.family == "B" and canon.param % 2 == 1):
        template = template_matrix(SphericalType("B", len(members)))
        mapping = find_isomorphism(template, mat, None, members)
        ends = [mapping[template.generators[-2]], mapping[template.generators[-1]]]
        split_ends = tuple(mat.sorted_gens(ends))
    elif canon.family == "C":
        _, mapping = classify_with_mapping(mat, members)
        template = template_matrix(canon)
        four_end = mapping[template.generators[-1]]
    return Base(members, stype, split_ends, four_end, pair)


def basic_subsets(mat: CoxeterMatrix) -> list[Base]:
    """All bases, with their types and distinguished elements, in member order.

    Works outward from the finite dihedral edges: every irreducible spherical
    subset of rank >= 2 reaches any irreducible spherical superset one
    generator at a time, so a subset is maximal iff no single extension is
    irreducible and spherical.
    """
    seeds = set()
    for s, t, value in mat.finite_edges():
        if value > 2:
            seeds.add(frozenset((s, t)))
    visited: set[frozenset] = set(seeds)
    queue = list(seeds)
    maximal = []
    while queue:
        current = queue.pop()
        extended = False
        for g in mat.generators:
            if g in current:
                continue
            bigger = current | {g}
            if not is_irreducible(mat, bigger):
                continue
            if classify_irreducible(mat, bigger) is None:
                continue
            extended = True
            if bigger not in visited:
                visited.add(bigger)
                queue.append(bigger)
        if not extended:
            maximal.append(current)
    maximal.sort(key=lambda ms: tuple(mat.index(g) for g in mat.sorted_gens(ms)))
    out = []
    for members in maximal:
        stype = classify_irreducible(mat, members)
        out.append(_decorate_base(mat, members, stype))
    return out


def find_base(mat: CoxeterMatrix, members: Iterable[Gen]) -> Base:
    wanted = mat.check_subset(members)
    for base in basic_subsets(mat):
        if base.members == wanted:
            return base
    raise CoxError("NOT_A_BASE", f"{sorted(wanted)} is not a basic subset")
