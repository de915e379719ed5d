"""Coxeter matrices and the purely diagrammatic operations on them.

A Coxeter matrix assigns to every unordered pair of distinct generators an
order m(s, t) in {2, 3, ...} or infinity; m(s, s) = 1 implicitly.  Three
derived graphs on the generators are used throughout:

  C-diagram   edges m(s, t) > 2 (infinity included), labeled by m
  P-diagram   edges m(s, t) < infinity, labeled by m
  odd diagram P-diagram edges with odd label

Generators are plain string labels.  Labels produced by transforms contain
the reserved separator ``!`` so they can never collide with user labels.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable, Mapping

from .errors import CoxError

INFINITY = math.inf

FRESH_SEPARATOR = "!"

C_DIAGRAM = "c"
P_DIAGRAM = "p"
ODD_DIAGRAM = "odd"

DEFAULT_CYCLE_SEARCH_CAP = 16

Gen = str
Pair = frozenset


def provenance(g: Gen) -> str:
    """Origin tag of a generator label: 'user' or 'fresh-from-transform'."""
    return "fresh-from-transform" if FRESH_SEPARATOR in g else "user"


class CoxeterMatrix:
    """Immutable Coxeter matrix over an ordered set of generator labels.

    `edges` maps unordered pairs to finite orders >= 2; pairs not present
    have order infinity.  The generator order is significant: it fixes the
    shortlex order of the word engine and every deterministic tie-break.
    """

    __slots__ = ("generators", "_index", "_m", "_key", "_hash")

    def __init__(self, generators: Iterable[Gen], edges: Mapping | Iterable = ()):
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise CoxError("BAD_LABEL", f"duplicate generator labels in {gens}")
        self.generators = gens
        self._index = {g: i for i, g in enumerate(gens)}
        m: dict[Pair, int] = {}
        items = edges.items() if isinstance(edges, Mapping) else edges
        for key, value in items:
            s, t = key
            if s == t:
                raise CoxError("SELF_EDGE", f"edge {s}-{t} is a self edge")
            for g in (s, t):
                if g not in self._index:
                    raise CoxError("UNKNOWN_GENERATOR", f"edge uses unknown generator {g!r}")
            if value == INFINITY:
                continue  # infinity is the default; never stored
            if not isinstance(value, int) or isinstance(value, bool) or value < 2:
                raise CoxError("BAD_M", f"m({s},{t}) = {value!r} must be an integer >= 2 or infinity")
            pair = frozenset((s, t))
            if pair in m and m[pair] != value:
                raise CoxError("DUPLICATE_EDGE", f"conflicting orders for pair {s}-{t}")
            m[pair] = value
        self._m = m
        self._key = (gens, tuple(sorted((min(self._index[a] for a in p), max(self._index[a] for a in p), v)
                                        for p, v in m.items())))
        self._hash = hash(self._key)

    def m(self, s: Gen, t: Gen):
        """Order of st; 1 on the diagonal, infinity for unlisted pairs."""
        self.check_member(s)
        self.check_member(t)
        if s == t:
            return 1
        return self._m.get(frozenset((s, t)), INFINITY)

    def index(self, g: Gen) -> int:
        self.check_member(g)
        return self._index[g]

    def has_generator(self, g: Gen) -> bool:
        return g in self._index

    def check_member(self, g: Gen) -> None:
        if g not in self._index:
            raise CoxError("UNKNOWN_GENERATOR", f"unknown generator {g!r}")

    def check_subset(self, subset: Iterable[Gen]) -> frozenset:
        members = frozenset(subset)
        for g in members:
            self.check_member(g)
        return members

    def finite_edges(self) -> list[tuple[Gen, Gen, int]]:
        """All finite pairs (s, t, m) with index(s) < index(t), sorted."""
        out = []
        for pair, value in self._m.items():
            s, t = sorted(pair, key=self._index.__getitem__)
            out.append((s, t, value))
        out.sort(key=lambda e: (self._index[e[0]], self._index[e[1]]))
        return out

    def sorted_gens(self, subset: Iterable[Gen]) -> tuple[Gen, ...]:
        return tuple(sorted(subset, key=self._index.__getitem__))

    def rank(self) -> int:
        return len(self.generators)

    def __eq__(self, other):
        return isinstance(other, CoxeterMatrix) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"CoxeterMatrix({list(self.generators)}, {len(self._m)} finite edges)"

    # -- diagram views ------------------------------------------------------

    def edge_in_view(self, s: Gen, t: Gen, view: str) -> bool:
        value = self.m(s, t)
        if s == t:
            return False
        if view == C_DIAGRAM:
            return value > 2
        if view == P_DIAGRAM:
            return value < INFINITY
        if view == ODD_DIAGRAM:
            return value < INFINITY and value % 2 == 1
        raise CoxError("BAD_VIEW", f"unknown diagram view {view!r}")

    def view_edges(self, view: str) -> list[tuple[Gen, Gen]]:
        out = [(s, t) for s, t in combinations(self.generators, 2) if self.edge_in_view(s, t, view)]
        return out

    def adjacent(self, g: Gen, view: str, within: Iterable[Gen] | None = None) -> list[Gen]:
        pool = self.generators if within is None else self.sorted_gens(within)
        return [t for t in pool if t != g and self.edge_in_view(g, t, view)]


def neighborhood(mat: CoxeterMatrix, a: Gen) -> frozenset:
    """N(a): all s with m(s, a) finite.  Includes a itself since m(a, a) = 1."""
    mat.check_member(a)
    return frozenset(s for s in mat.generators if mat.m(s, a) < INFINITY)


def perp(mat: CoxeterMatrix, subset: Iterable[Gen]) -> frozenset:
    """A-perp: the generators commuting with every member of A.  Disjoint from A."""
    members = mat.check_subset(subset)
    return frozenset(s for s in mat.generators if all(mat.m(s, a) == 2 for a in members))


def _component_of(mat: CoxeterMatrix, start: Gen, pool: frozenset, view: str) -> frozenset:
    seen = {start}
    stack = [start]
    while stack:
        g = stack.pop()
        for t in pool:
            if t not in seen and mat.edge_in_view(g, t, view):
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def components(mat: CoxeterMatrix, subset: Iterable[Gen], view: str = C_DIAGRAM) -> list[frozenset]:
    """Connected components of the induced diagram on `subset`, in generator order."""
    members = mat.check_subset(subset)
    remaining = set(members)
    out = []
    for g in mat.sorted_gens(members):
        if g in remaining:
            comp = _component_of(mat, g, members, view)
            remaining -= comp
            out.append(comp)
    return out


def is_irreducible(mat: CoxeterMatrix, subset: Iterable[Gen]) -> bool:
    members = mat.check_subset(subset)
    return len(components(mat, members)) == 1


def odd_component(mat: CoxeterMatrix, a: Gen) -> frozenset:
    """Odd(a): a's component in the odd diagram (the conjugates of a within S)."""
    mat.check_member(a)
    return _component_of(mat, a, frozenset(mat.generators), ODD_DIAGRAM)


def extended_odd(mat: CoxeterMatrix, a: Gen) -> frozenset:
    """EOdd(a): Odd(a) plus everything joined to it by a finite even label."""
    odd = odd_component(mat, a)
    extra = set()
    for s in mat.generators:
        if s in odd:
            continue
        for b in odd:
            value = mat.m(s, b)
            if value < INFINITY and value % 2 == 0:
                extra.add(s)
                break
    return odd | frozenset(extra)


def is_simplex(mat: CoxeterMatrix, subset: Iterable[Gen]) -> bool:
    """True iff every pair within the subset has finite order (P-complete)."""
    members = mat.check_subset(subset)
    return all(mat.m(s, t) < INFINITY for s, t in combinations(members, 2))


def _canonical_cycle(mat: CoxeterMatrix, cycle: tuple[Gen, ...]) -> tuple[Gen, ...]:
    # Identity of a cycle = lexicographically least rotation/reflection,
    # compared in generator-index order.
    idx = [mat.index(g) for g in cycle]
    n = len(idx)
    best = None
    best_gens = None
    for seq, gens in ((idx, cycle), (idx[::-1], cycle[::-1])):
        for r in range(n):
            rot = tuple(seq[(r + i) % n] for i in range(n))
            if best is None or rot < best:
                best = rot
                best_gens = tuple(gens[(r + i) % n] for i in range(n))
    return best_gens


def find_cycles_chord_free_through(mat: CoxeterMatrix, x: Gen, y: Gen, min_len: int = 3,
                                   cap: int = DEFAULT_CYCLE_SEARCH_CAP) -> list[tuple[Gen, ...]]:
    """All chord-free P-diagram cycles through x and y with at least `min_len` vertices.

    Exhaustive search; intended as a small-instance oracle.  Each cycle is
    reported once, as its canonical rotation/reflection.  A chord is a finite
    label between two cyclically non-adjacent members.
    """
    mat.check_member(x)
    mat.check_member(y)
    if x == y:
        raise CoxError("UNKNOWN_GENERATOR", "cycle endpoints must be distinct")
    if min_len < 3:
        raise CoxError("BAD_M", f"min_len must be >= 3, got {min_len}")
    if mat.rank() > cap:
        raise CoxError("SEARCH_CAP_EXCEEDED",
                       f"{mat.rank()} generators exceeds the search cap {cap}")

    found: set[tuple[Gen, ...]] = set()

    def extend(path: list[Gen]) -> None:
        last = path[-1]
        for nxt in mat.generators:
            if nxt in path:
                continue
            if mat.m(last, nxt) == INFINITY:
                continue
            # chordlessness: nxt may touch no path member except `last`,
            # and x only when closing the cycle
            if any(mat.m(nxt, p) < INFINITY for p in path[1:-1]):
                continue
            if len(path) == 1:
                extend(path + [nxt])  # nxt-x is the first cycle edge, not a chord
            elif mat.m(nxt, x) < INFINITY:
                cycle = path + [nxt]
                if len(cycle) >= min_len and y in cycle:
                    found.add(_canonical_cycle(mat, tuple(cycle)))
                # extending past nxt would leave the chord nxt-x
            else:
                extend(path + [nxt])

    extend([x])
    return sorted(found, key=lambda c: tuple(mat.index(g) for g in c))
