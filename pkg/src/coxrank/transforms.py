"""The three presentation-rewriting moves, each emitting a certified record.

Every move returns a TransformRecord holding the input and output matrices
together with generator-substitution words in both directions.  The record is
released only after `verify_isomorphism` confirms that the substitutions are
mutually inverse group isomorphisms, so a construction bug cannot silently
corrupt downstream results.

  twist       re-glues S = S1 union S2 along S0 by conjugating the S2 side
              with the longest element of a spherical subset of S0; rank and
              group are unchanged, labels between S0 and the moved part are
              permuted by the conjugation.

  blow-down   consumes a sink r of a base B of type B(2q+1) or D2(2q+1):
              the sink and the split end y disappear into a single new
              generator a = r * (longest element of <B>), and the base
              becomes type C(2q+1) or D2(4q+2).  Rank drops by one.

  blow-up     the inverse move at a base of type C(2q+1) or D2(4q+2) whose
              pivot a sees exactly B union B-perp: a is replaced by
              d = a b a plus the longest element z of <B>, which becomes a
              sink of the new base.  Rank grows by one.

Fresh generators are labeled "<stem>!<n>" with n taken past the largest
fresh index already present in the input, so names never collide and every
run over the same input is reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .classify import Base, basic_subsets, classify_irreducible, find_base
from .eligibility import blow_up_eligible, condition1, condition2, sinks_of
from .errors import CertificationFailed, CoxError, InternalInconsistency
from .matrix import (FRESH_SEPARATOR, INFINITY, CoxeterMatrix, Gen,
                     neighborhood, perp)
from .words import (Word, conjugation_permutation, enumerate_elements,
                    longest_element, reduce_word, verify_isomorphism)

TWIST = "TWIST"
BLOW_DOWN = "BLOW_DOWN"
BLOW_UP = "BLOW_UP"


@dataclass(frozen=True)
class TransformRecord:
    kind: str
    input: CoxeterMatrix
    output: CoxeterMatrix
    forward_map: dict[Gen, Word]   # output generator -> word over input generators
    backward_map: dict[Gen, Word]  # input generator -> word over output generators
    metadata: dict = field(default_factory=dict)

    @property
    def relabel(self) -> dict[Gen, Gen]:
        """Where each surviving input generator went (twisted twins included)."""
        return self.metadata["relabel"]


def track(members: Iterable[Gen], record: TransformRecord) -> frozenset:
    """Follow a base (or a sink) through a transform.

    Under a twist, a simplex lies entirely on one side of the splitting; a
    set inside S2 moves by conjugation, so its S0 part goes through sigma
    and the rest to the fresh twins.  Under a blow-down or blow-up the
    surviving generators keep their names.  Raises if a member was consumed
    by the move; the persistence lemmas guarantee that never happens to the
    bases and sinks the rank-spectrum scripts follow.
    """
    wanted = frozenset(members)
    if record.kind == TWIST:
        set1 = frozenset(record.metadata["s1"])
        set2 = frozenset(record.metadata["s2"])
        if wanted <= set1:
            return wanted
        if wanted <= set2:
            sigma = record.metadata["sigma"]
            relabel = record.relabel
            return frozenset(sigma[g] if g in sigma else relabel[g] for g in wanted)
        raise InternalInconsistency(
            f"{sorted(wanted)} straddles the twist splitting; cannot track it")
    relabel = record.relabel
    out = set()
    for g in wanted:
        if g not in relabel:
            raise InternalInconsistency(
                f"generator {g!r} was consumed by {record.kind}; cannot track it")
        out.add(relabel[g])
    return frozenset(out)


def fresh_label(mat: CoxeterMatrix, stem: str, offset: int = 0) -> Gen:
    top = 0
    for g in mat.generators:
        match = re.search(re.escape(FRESH_SEPARATOR) + r"(\d+)$", g)
        if match:
            top = max(top, int(match.group(1)))
    plain = stem.split(FRESH_SEPARATOR)[0]
    return f"{plain}{FRESH_SEPARATOR}{top + 1 + offset}"


def _certify(record: TransformRecord) -> TransformRecord:
    if not verify_isomorphism(record.input, record.output,
                              record.forward_map, record.backward_map):
        raise CertificationFailed(
            f"{record.kind} produced maps that are not an isomorphism certificate")
    return record


def _base_members(mat: CoxeterMatrix, base) -> frozenset:
    if isinstance(base, Base):
        return base.members
    return mat.check_subset(base)


def twist(mat: CoxeterMatrix, s1: Iterable[Gen], s2: Iterable[Gen], base) -> TransformRecord:
    """Elementary twist determined by (S1, ell, S2) with ell = longest of <B>."""
    set1 = mat.check_subset(s1)
    set2 = mat.check_subset(s2)
    members = _base_members(mat, base)
    if set1 | set2 != frozenset(mat.generators):
        raise CoxError("TWIST_INVALID", "S1 and S2 do not cover the generators")
    s0 = set1 & set2
    for a in mat.sorted_gens(set1 - s0):
        for b in mat.sorted_gens(set2 - s0):
            if mat.m(a, b) != INFINITY:
                raise CoxError("TWIST_INVALID",
                               f"m({a},{b}) is finite across the splitting")
    if not members <= s0:
        raise CoxError("TWIST_INVALID", "the twisting base must lie in S1 and S2")
    ell = longest_element(mat, members)  # raises NOT_SPHERICAL if unsuitable
    sigma = conjugation_permutation(mat, ell, s0)
    if sigma is None:
        raise CoxError("TWIST_INVALID",
                       "conjugation by the longest element does not permute S1 & S2")

    moved = mat.sorted_gens(set2 - s0)
    twins = {}
    for i, t in enumerate(moved):
        twins[t] = fresh_label(mat, t, offset=i)
    gens_out = [g for g in mat.generators if g in set1] + [twins[t] for t in moved]
    edges = {}
    for s, t, value in mat.finite_edges():
        if s in set1 and t in set1:
            edges[(s, t)] = value
        elif s in twins and t in twins:
            edges[(twins[s], twins[t])] = value
    for v in mat.sorted_gens(s0):
        for t in moved:
            value = mat.m(sigma[v], t)
            if value < INFINITY:
                edges[(v, twins[t])] = value
    output = CoxeterMatrix(gens_out, edges)

    forward = {g: (g,) for g in gens_out if g in set1}
    backward = {g: (g,) for g in mat.generators if g in set1}
    for t, twin in twins.items():
        forward[twin] = ell + (t,) + ell
        backward[t] = ell + (twin,) + ell
    relabel = {g: g for g in mat.generators if g in set1}
    relabel.update(twins)
    record = TransformRecord(
        TWIST, mat, output, forward, backward,
        metadata={
            "s1": list(mat.sorted_gens(set1)),
            "s2": list(mat.sorted_gens(set2)),
            "base": list(mat.sorted_gens(members)),
            "ell": list(ell),
            "sigma": dict(sigma),
            "relabel": relabel,
        })
    return _certify(record)


@dataclass(frozen=True)
class NormalizeResult:
    """Outcome of pre-blow-down normalization: possibly a twist, plus the
    split-end orientation (x, y) under which N(y) = B union B-perp holds."""

    record: TransformRecord | None
    x: Gen
    y: Gen

    @property
    def identity(self) -> bool:
        return self.record is None


def _reach_through_outside(mat: CoxeterMatrix, start: Gen, outside: frozenset) -> frozenset:
    reached = set(g for g in outside if mat.m(start, g) < INFINITY)
    frontier = list(reached)
    while frontier:
        g = frontier.pop()
        for h in outside:
            if h not in reached and mat.m(g, h) < INFINITY:
                reached.add(h)
                frontier.append(h)
    return frozenset(reached)


def normalize_for_blow_down(mat: CoxeterMatrix, base: Base) -> NormalizeResult:
    """Twist (at most once) so that the chosen split end y sees only B union B-perp.

    Both split-end orientations are tried; one that already has T_y empty is
    preferred, with generator order breaking ties.
    """
    if base.split_ends is None:
        raise CoxError("INELIGIBLE_TYPE",
                       f"base {sorted(base.members)} of type {base.stype} cannot be blown down")
    if not condition1(mat, base):
        raise CoxError("NORMALIZE_PRECONDITION", "condition (1) fails for this base")
    if not condition2(mat, base):
        raise CoxError("NORMALIZE_PRECONDITION", "condition (2) fails for this base")
    perp_set = perp(mat, base.members)
    full = base.members | perp_set
    outside = frozenset(mat.generators) - full
    ends = base.split_ends
    orientations = [(ends[0], ends[1]), (ends[1], ends[0])]
    t_sets = {y: _reach_through_outside(mat, y, outside) for y in ends}
    for x, y in orientations:
        if not t_sets[y]:
            return NormalizeResult(None, x, y)
    x, y = orientations[0]
    t_y = t_sets[y]
    record = twist(mat, frozenset(mat.generators) - t_y, full | t_y, base)
    if neighborhood(record.output, y) != full:
        raise InternalInconsistency("twist did not clear the split end's neighborhood")
    return NormalizeResult(record, x, y)


def _blow_down_shape(mat: CoxeterMatrix, base: Base):
    canon = base.stype.canonical()
    if canon.family == "D2":
        q = (canon.param - 1) // 2
        return "D2", q
    return "B", (len(base.members) - 1) // 2


def blow_down(mat: CoxeterMatrix, base: Base, sink: Gen) -> TransformRecord:
    """Lemma-style contraction at a sink: {sink, y} collapse to a = sink * ell."""
    if base.split_ends is None or not base.stype.is_blow_down_type():
        raise CoxError("INELIGIBLE_TYPE",
                       f"base {sorted(base.members)} of type {base.stype} cannot be blown down")
    if sink not in sinks_of(mat, base):
        raise CoxError("BLOW_DOWN_PRECONDITION", f"{sink!r} is not a sink for this base")
    perp_set = perp(mat, base.members)
    full = base.members | perp_set
    ends = base.split_ends
    for x, y in [(ends[0], ends[1]), (ends[1], ends[0])]:
        if neighborhood(mat, y) == full:
            break
    else:
        raise CoxError("BLOW_DOWN_PRECONDITION",
                       "no split end sees exactly B union B-perp; normalize first")

    family, q = _blow_down_shape(mat, base)
    ell = longest_element(mat, base.members)
    a = fresh_label(mat, "a")
    removed = {sink, y}
    gens_out = [g for g in mat.generators if g not in removed] + [a]
    edges = {}
    for s, t, value in mat.finite_edges():
        if s not in removed and t not in removed:
            edges[(s, t)] = value
    edges[(x, a)] = 4 * q + 2 if family == "D2" else 4
    for s in base.members - {x, y}:
        edges[(s, a)] = 2
    for s in perp_set - {sink}:
        edges[(s, a)] = 2
    output = CoxeterMatrix(gens_out, edges)

    forward = {g: (g,) for g in gens_out if g != a}
    forward[a] = (sink,) + ell
    y_word = (a, x, a)
    ell_new = tuple(letter if letter != y else y_word for letter in ell)
    ell_new = tuple(g for part in ell_new for g in (part if isinstance(part, tuple) else (part,)))
    backward = {g: (g,) for g in mat.generators if g not in removed}
    backward[y] = y_word
    backward[sink] = (a,) + ell_new

    new_members = (base.members - {y}) | {a}
    record = TransformRecord(
        BLOW_DOWN, mat, output, forward, backward,
        metadata={
            "base": list(mat.sorted_gens(base.members)),
            "new_base": sorted(new_members, key=gens_out.index),
            "sink": sink,
            "split_ends": [x, y],
            "type_before": str(base.stype),
            "relabel": {g: g for g in mat.generators if g not in removed},
        })
    _check_blow_down_postconditions(record, base, sink, new_members)
    return _certify(record)


def _check_blow_down_postconditions(record, base, sink, new_members):
    output = record.output
    new_type = classify_irreducible(output, new_members)
    if new_type is None or not new_type.is_blow_up_type():
        raise InternalInconsistency(f"blow-down produced base of type {new_type}")
    record.metadata["type_after"] = str(new_type)
    old_perp = perp(record.input, base.members)
    new_perp = perp(output, new_members)
    if new_perp != old_perp - {sink}:
        raise InternalInconsistency("perp of the new base is not B-perp minus the sink")
    a = record.metadata["new_base"][-1]
    if neighborhood(output, a) != new_members | new_perp:
        raise InternalInconsistency("fresh generator sees more than the new base and its perp")
    before = {b.members for b in basic_subsets(record.input)}
    after = {b.members for b in basic_subsets(output)}
    if after != (before - {base.members}) | {frozenset(new_members)}:
        raise InternalInconsistency("blow-down disturbed an unrelated base")
    if 2 * base.stype.order != new_type.order:
        raise InternalInconsistency("blow-down did not double the base order")


def blow_up(mat: CoxeterMatrix, base: Base, pivot: Gen | None = None) -> TransformRecord:
    """Inverse move: split the pivot into d = a b a plus the longest element z."""
    ok, default_pivot = blow_up_eligible(mat, base)
    if not ok:
        raise CoxError("BLOW_UP_PRECONDITION",
                       f"base {sorted(base.members)} of type {base.stype} cannot be blown up")
    perp_set = perp(mat, base.members)
    full = base.members | perp_set
    if pivot is None:
        pivot = default_pivot
    else:
        mat.check_member(pivot)
        if pivot not in base.members or neighborhood(mat, pivot) != full:
            raise CoxError("BLOW_UP_PRECONDITION", f"{pivot!r} is not an admissible pivot")
        canon = base.stype.canonical()
        if canon.family == "C" and pivot != base.four_end:
            raise CoxError("BLOW_UP_PRECONDITION", "the pivot of a type-C base is its four-end")

    partners = [s for s in base.members if 2 < mat.m(pivot, s) < INFINITY]
    if len(partners) != 1:
        raise InternalInconsistency(f"pivot {pivot!r} has {len(partners)} finite partners > 2")
    b = partners[0]
    canon = base.stype.canonical()
    d = fresh_label(mat, "d")
    z = fresh_label(mat, "z", offset=1)
    gens_out = [g for g in mat.generators if g != pivot] + [d, z]
    edges = {}
    for s, t, value in mat.finite_edges():
        if pivot not in (s, t):
            edges[(s, t)] = value
    if canon.family == "C":
        branch = [s for s in base.members if s != pivot and mat.m(s, b) == 3]
        if len(branch) != 1:
            raise InternalInconsistency("type-C base has no unique branch vertex")
        edges[(branch[0], d)] = 3
        for s in base.members - {pivot, branch[0]}:
            edges[(s, d)] = 2
    else:
        edges[(b, d)] = canon.param // 2
    for s in perp_set:
        edges[(s, d)] = 2
    new_members = (base.members - {pivot}) | {d}
    for s in sorted(new_members | perp_set, key=lambda g: gens_out.index(g)):
        edges[(s, z)] = 2
    output = CoxeterMatrix(gens_out, edges)

    ell = longest_element(mat, base.members)
    forward = {g: (g,) for g in gens_out if g not in (d, z)}
    forward[d] = (pivot, b, pivot)
    forward[z] = ell
    backward = {g: (g,) for g in mat.generators if g != pivot}
    backward[pivot] = (z,) + longest_element(output, new_members)
    if not _pivot_word_ok(mat, backward[pivot], forward, pivot):
        backward[pivot] = _search_pivot_word(mat, output, forward, pivot,
                                             new_members | {z})

    record = TransformRecord(
        BLOW_UP, mat, output, forward, backward,
        metadata={
            "base": list(mat.sorted_gens(base.members)),
            "new_base": sorted(new_members, key=gens_out.index),
            "pivot": pivot,
            "type_before": str(base.stype),
            "relabel": {g: g for g in mat.generators if g != pivot},
        })
    _check_blow_up_postconditions(record, base, pivot, new_members, z)
    return _certify(record)


def _pivot_word_ok(mat, word, forward, pivot):
    image = tuple(g for letter in word for g in forward[letter])
    return reduce_word(mat, image, cap=max(64, len(image))).word == (pivot,)


def _search_pivot_word(mat, output, forward, pivot, subgroup):
    # Fallback: a word for the old pivot must exist in <new base, z>; scan that
    # finite subgroup shortest-first.  The direct candidate z * w0(new base)
    # always passes in practice, so this is a safety net.
    for form in sorted(enumerate_elements(output, subgroup),
                       key=lambda f: (f.length, f.word)):
        if _pivot_word_ok(mat, form.word, forward, pivot):
            return form.word
    raise CertificationFailed("no backward word for the blow-up pivot was found")


def _check_blow_up_postconditions(record, base, pivot, new_members, z):
    output = record.output
    new_type = classify_irreducible(output, new_members)
    if new_type is None or not new_type.is_blow_down_type():
        raise InternalInconsistency(f"blow-up produced base of type {new_type}")
    record.metadata["type_after"] = str(new_type)
    if 2 * new_type.order != base.stype.order:
        raise InternalInconsistency("blow-up did not halve the base order")
    new_base = find_base(output, new_members)
    if z not in sinks_of(output, new_base):
        raise InternalInconsistency("longest-element generator is not a sink of the new base")
    before = {b.members for b in basic_subsets(record.input)}
    after = {b.members for b in basic_subsets(output)}
    if after != (before - {base.members}) | {frozenset(new_members)}:
        raise InternalInconsistency("blow-up disturbed an unrelated base")
