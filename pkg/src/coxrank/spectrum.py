"""Rank spectrum of a finitely generated Coxeter group from one presentation.

The achievable ranks form the integer interval [|S| - k, |S| + l] where

  k = size of a maximum matching between the blow-down-eligible bases that
      own sinks and their sinks (distinct bases must consume distinct sinks),
  l = number of bases along which the presentation can be blown up.

Alongside the numbers, `spectrum` assembles executable witness scripts: the
minimum-rank script normalizes and blows down each matched base in turn, the
maximum-rank script blows up every eligible base.  Bases and sinks are
followed through earlier steps via each record's relabel map; the
persistence lemmas guarantee the tracked sets stay bases with unchanged
verdicts, and that is re-checked at every step.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classify import Base, basic_subsets
from .eligibility import report
from .errors import InternalInconsistency
from .matrix import CoxeterMatrix, Gen
from .transforms import TransformRecord, blow_down, blow_up, normalize_for_blow_down, track


def _maximum_matching(edges: dict[int, list[Gen]], order: list[int]) -> dict[int, Gen]:
    """Deterministic augmenting-path maximum matching; left side are base indices."""
    matched_right: dict[Gen, int] = {}

    def augment(i: int, banned: set[Gen]) -> bool:
        for r in edges[i]:
            if r in banned:
                continue
            banned.add(r)
            if r not in matched_right or augment(matched_right[r], banned):
                matched_right[r] = i
                return True
        return False

    for i in order:
        augment(i, set())
    return {i: r for r, i in matched_right.items()}


def compute_k(mat: CoxeterMatrix) -> tuple[int, list[tuple[Base, Gen]]]:
    """Maximum number of simultaneously blow-down-able bases, with a witness matching."""
    bases = basic_subsets(mat)
    edges = {}
    for i, base in enumerate(bases):
        rep = report(mat, base)
        if rep.blow_down_eligible and rep.sinks:
            edges[i] = list(rep.sinks)
    matching = _maximum_matching(edges, sorted(edges))
    witness = [(bases[i], matching[i]) for i in sorted(matching)]
    return len(witness), witness


def compute_l(mat: CoxeterMatrix) -> tuple[int, list[Base]]:
    """Number of blow-up-eligible bases (each base counted once)."""
    out = [base for base in basic_subsets(mat)
           if report(mat, base).blow_up_eligible]
    return len(out), out


@dataclass(frozen=True)
class RankSpectrum:
    base_rank: int
    k: int
    l: int
    matching: list[tuple[Base, Gen]]
    blow_up_bases: list[Base]
    min_script: list[TransformRecord] = field(default_factory=list)
    max_script: list[TransformRecord] = field(default_factory=list)

    @property
    def min_rank(self) -> int:
        return self.base_rank - self.k

    @property
    def max_rank(self) -> int:
        return self.base_rank + self.l

    @property
    def ranks(self) -> list[int]:
        return list(range(self.min_rank, self.max_rank + 1))


def _relocate(mat: CoxeterMatrix, members: frozenset) -> Base:
    for base in basic_subsets(mat):
        if base.members == members:
            return base
    raise InternalInconsistency(
        f"tracked base {sorted(members)} is no longer a basic subset")


def min_rank_script(mat: CoxeterMatrix,
                    matching: list[tuple[Base, Gen]]) -> list[TransformRecord]:
    """Normalize-and-blow-down each matched base, tracking images through twists."""
    records: list[TransformRecord] = []
    current = mat
    tracked = [(base.members, sink) for base, sink in matching]

    def follow(record: TransformRecord, start: int) -> None:
        tracked[start:] = [(track(m, record), next(iter(track([s], record))))
                           for m, s in tracked[start:]]

    for i in range(len(tracked)):
        members, sink = tracked[i]
        base = _relocate(current, members)
        norm = normalize_for_blow_down(current, base)
        if norm.record is not None:
            records.append(norm.record)
            current = norm.record.output
            follow(norm.record, i)
            members, sink = tracked[i]
            base = _relocate(current, members)
        step = blow_down(current, base, sink)
        records.append(step)
        current = step.output
        follow(step, i + 1)
    return records


def max_rank_script(mat: CoxeterMatrix, bases: list[Base]) -> list[TransformRecord]:
    """Blow up every eligible base in discovery order."""
    records: list[TransformRecord] = []
    current = mat
    tracked = [base.members for base in bases]
    for i, members in enumerate(tracked):
        base = _relocate(current, members)
        step = blow_up(current, base)
        records.append(step)
        current = step.output
        tracked[i + 1:] = [track(m, step) for m in tracked[i + 1:]]
    return records


def spectrum(mat: CoxeterMatrix) -> RankSpectrum:
    k, matching = compute_k(mat)
    l, up_bases = compute_l(mat)
    min_script = min_rank_script(mat, matching)
    max_script = max_rank_script(mat, up_bases)
    result = RankSpectrum(mat.rank(), k, l, matching, up_bases, min_script, max_script)
    final_min = min_script[-1].output if min_script else mat
    final_max = max_script[-1].output if max_script else mat
    if final_min.rank() != result.min_rank:
        raise InternalInconsistency("minimum-rank script missed its target rank")
    if final_max.rank() != result.max_rank:
        raise InternalInconsistency("maximum-rank script missed its target rank")
    return result


def executed_output(mat: CoxeterMatrix, script: list[TransformRecord]) -> CoxeterMatrix:
    """Final matrix of a script (scripts always start at `mat`)."""
    current = mat
    for record in script:
        if record.input != current:
            raise InternalInconsistency("script records do not chain")
        current = record.output
    return current
