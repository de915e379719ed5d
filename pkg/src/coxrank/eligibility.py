"""Per-base decision procedures for the diagram rewriting moves.

A base of type B(2p+1) or D2(2p+1) with split ends x, y can be traded for a
strictly larger base exactly when

  (1) N(x) and N(y) intersect in B union B-perp,
  (2) x, y lie on no chord-free cycle of length >= 4, and
  (3) some r in B-perp has N(r) = B union B-perp and Odd(r) = {r}, with the
      component K of B-perp containing r of type A1, C(2q+1), or D2(4q+2).

Condition (2) is decided by a reachability split: with T the generators
outside B union B-perp, the sets T_x and T_y reachable from x and y through
finite labels inside T must be disjoint.  Under condition (1) this agrees
with the exhaustive chord-free-cycle search in `matrix`, and that equivalence
is tested against the oracle.

A sink is an r whose component K is just {r}; sinks are what the blow-down
construction consumes.  Blow-up applies to bases of type C(2q+1) or D2(4q+2)
whose distinguished member's neighborhood is exactly B union B-perp.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import Base, SphericalType, basic_subsets, classify_irreducible
from .errors import CoxError
from .matrix import (INFINITY, CoxeterMatrix, Gen, components, neighborhood,
                     odd_component, perp)


@dataclass(frozen=True)
class Cond3Witness:
    r: Gen
    component: frozenset
    component_type: SphericalType


@dataclass(frozen=True)
class EligibilityReport:
    base: Base
    cond1: bool | None            # None: base has the wrong type for blow-down
    cond2: bool | None            # None: not evaluated (cond1 absent or false)
    cond3: bool | None
    cond3_witness: Cond3Witness | None
    cond3_candidates: tuple[Gen, ...]
    sinks: tuple[Gen, ...]
    blow_up_eligible: bool
    blow_up_pivot: Gen | None

    @property
    def blow_down_eligible(self) -> bool:
        return bool(self.cond1 and self.cond2 and self.cond3)


def _split_ends(base: Base) -> tuple[Gen, Gen]:
    if not base.stype.is_blow_down_type() or base.split_ends is None:
        raise CoxError("INELIGIBLE_TYPE",
                       f"base {sorted(base.members)} of type {base.stype} has no split ends")
    return base.split_ends


def condition1(mat: CoxeterMatrix, base: Base) -> bool:
    """N(x) intersect N(y) equals B union B-perp."""
    x, y = _split_ends(base)
    both = neighborhood(mat, x) & neighborhood(mat, y)
    return both == base.members | perp(mat, base.members)


def _reachable_in_t(mat: CoxeterMatrix, start: Gen, t_set: frozenset) -> frozenset:
    reached = set(g for g in t_set if mat.m(start, g) < INFINITY)
    frontier = list(reached)
    while frontier:
        g = frontier.pop()
        for h in t_set:
            if h not in reached and mat.m(g, h) < INFINITY:
                reached.add(h)
                frontier.append(h)
    return frozenset(reached)


def condition2(mat: CoxeterMatrix, base: Base) -> bool:
    """No chord-free cycle of length >= 4 through the split ends.

    Decided by the T_x / T_y disjointness criterion, which presumes
    condition (1) holds.
    """
    x, y = _split_ends(base)
    outside = frozenset(mat.generators) - base.members - perp(mat, base.members)
    return not (_reachable_in_t(mat, x, outside) & _reachable_in_t(mat, y, outside))


def _admissible_component_type(stype: SphericalType | None) -> bool:
    if stype is None:
        return False
    c = stype.canonical()
    if c == SphericalType("A", 1):
        return True
    return stype.is_blow_up_type()


def condition3(mat: CoxeterMatrix, base: Base):
    """Search B-perp for an admissible r.

    Returns (found, first witness or None, all admissible r in generator
    order).  r must see exactly B union B-perp, be its own odd component,
    and sit in a B-perp component of type A1, C(2q+1), or D2(4q+2).
    """
    _split_ends(base)  # type gate
    perp_set = perp(mat, base.members)
    full = base.members | perp_set
    perp_comps = components(mat, perp_set)
    candidates = []
    witness = None
    for r in mat.sorted_gens(perp_set):
        if neighborhood(mat, r) != full:
            continue
        if odd_component(mat, r) != frozenset((r,)):
            continue
        comp = next(c for c in perp_comps if r in c)
        ctype = classify_irreducible(mat, comp)
        if not _admissible_component_type(ctype):
            continue
        candidates.append(r)
        if witness is None:
            witness = Cond3Witness(r, comp, ctype)
    return witness is not None, witness, tuple(candidates)


def sinks_of(mat: CoxeterMatrix, base: Base) -> tuple[Gen, ...]:
    """All r with {r} a component of B-perp and N(r) = B union B-perp.

    Such an r commutes with everything in B union B-perp and sees nothing
    outside it, so Odd(r) = {r} automatically.  Defined for any base type.
    """
    perp_set = perp(mat, base.members)
    full = base.members | perp_set
    out = []
    for r in mat.sorted_gens(perp_set):
        if neighborhood(mat, r) != full:
            continue
        if any(g != r and mat.m(r, g) != 2 for g in perp_set):
            continue
        out.append(r)
    return tuple(out)


def blow_up_eligible(mat: CoxeterMatrix, base: Base) -> tuple[bool, Gen | None]:
    """Whether the base can be blown up, and the pivot generator.

    For C(2q+1) the pivot is the four-end; for D2(4q+2) it is the first
    member (in generator order) whose neighborhood is exactly B union
    B-perp.  Every executed blow-up is certified afterwards, so this check
    errs on the permissive side by design.
    """
    if not base.stype.is_blow_up_type():
        return False, None
    full = base.members | perp(mat, base.members)
    canon = base.stype.canonical()
    if canon.family == "C":
        pivot = base.four_end
        if pivot is not None and neighborhood(mat, pivot) == full:
            return True, pivot
        return False, None
    for pivot in base.sorted_members(mat):
        if neighborhood(mat, pivot) == full:
            return True, pivot
    return False, None


def report(mat: CoxeterMatrix, base: Base) -> EligibilityReport:
    """Full per-base verdict sheet."""
    up, pivot = blow_up_eligible(mat, base)
    sinks = sinks_of(mat, base)
    if not base.stype.is_blow_down_type():
        return EligibilityReport(base, None, None, None, None, (), sinks, up, pivot)
    c1 = condition1(mat, base)
    c2 = condition2(mat, base) if c1 else None  # reachability form needs (1)
    c3, witness, candidates = condition3(mat, base)
    return EligibilityReport(base, c1, c2, c3, witness, candidates, sinks, up, pivot)


def all_reports(mat: CoxeterMatrix) -> list[EligibilityReport]:
    return [report(mat, base) for base in basic_subsets(mat)]


def is_contractible(mat: CoxeterMatrix) -> tuple[bool, tuple[Base, Gen] | None]:
    """Whether some base satisfies (1), (2), (3) with a sink, dropping the rank."""
    for rep in all_reports(mat):
        if rep.cond1 and rep.cond2 and rep.sinks:
            return True, (rep.base, rep.sinks[0])
    return False, None
