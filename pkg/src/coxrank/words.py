"""Exact word problem via braid-move search, plus the helpers built on it.

Every element of the group has a unique shortlex-least reduced word (shortlex
in the matrix's stored generator order).  Canonicalization explores the
braid-equivalence class of a word breadth-first: replace any alternating
window s t s ... of length m(s, t) by t s t ...; whenever a class member
contains an adjacent equal pair, delete the pair and start over.  A word is
reduced exactly when no class member has such a pair, and the reduced words
of one element form a single braid class, so the class minimum is canonical.

Exponential worst case is accepted; classes stay small at the scale this
package targets, and results are memoized per matrix.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .classify import classify_irreducible, spherical_order
from .errors import CoxError, InternalInconsistency
from .matrix import INFINITY, CoxeterMatrix, Gen, components

DEFAULT_WORD_CAP = 64
DEFAULT_ENUMERATION_CAP = 50000

Word = tuple[Gen, ...]


@dataclass(frozen=True)
class CanonicalForm:
    """Shortlex-least reduced representative of a group element."""

    word: Word

    @property
    def length(self) -> int:
        return len(self.word)


class _Engine:
    """Canonicalizer for one matrix.  Words are tuples of generator indices."""

    def __init__(self, mat: CoxeterMatrix):
        self.mat = mat
        n = len(mat.generators)
        self.orders = [[0] * n for _ in range(n)]
        for i, s in enumerate(mat.generators):
            for j, t in enumerate(mat.generators):
                value = mat.m(s, t)
                self.orders[i][j] = 0 if value == INFINITY else int(value)
        self.cache: dict[tuple[int, ...], tuple[int, ...]] = {(): ()}

    def _braid_neighbors(self, word: tuple[int, ...]):
        orders = self.orders
        n = len(word)
        for i in range(n - 1):
            a, b = word[i], word[i + 1]
            if a == b:
                continue
            m = orders[a][b]
            if m == 0 or i + m > n:
                continue
            window = word[i:i + m]
            if all(window[k] == (a if k % 2 == 0 else b) for k in range(m)):
                flipped = tuple(b if k % 2 == 0 else a for k in range(m))
                yield word[:i] + flipped + word[i + m:]

    def canon(self, word: tuple[int, ...]) -> tuple[int, ...]:
        cache = self.cache
        trail: list[set] = []
        w = word
        while True:
            hit = cache.get(w)
            if hit is not None:
                w = hit
                break
            seen = {w}
            queue = deque((w,))
            shorter = None
            while queue:
                u = queue.popleft()
                pair_at = next((i for i in range(len(u) - 1) if u[i] == u[i + 1]), None)
                if pair_at is not None:
                    shorter = u[:pair_at] + u[pair_at + 2:]
                    break
                for v in self._braid_neighbors(u):
                    if v not in seen:
                        seen.add(v)
                        queue.append(v)
            trail.append(seen)
            if shorter is not None:
                w = shorter
                continue
            w = min(seen)
            break
        for seen in trail:
            for u in seen:
                cache[u] = w
        cache[word] = w
        return w

    def encode(self, word: Iterable[Gen]) -> tuple[int, ...]:
        return tuple(self.mat.index(g) for g in word)

    def decode(self, word: tuple[int, ...]) -> Word:
        gens = self.mat.generators
        return tuple(gens[i] for i in word)

    def canon_fold(self, word: tuple[int, ...]) -> tuple[int, ...]:
        # canonicalize prefix by prefix so intermediate classes stay small
        out: tuple[int, ...] = ()
        for letter in word:
            out = self.canon(out + (letter,))
        return out


_engines: dict[CoxeterMatrix, _Engine] = {}


def _engine(mat: CoxeterMatrix) -> _Engine:
    eng = _engines.get(mat)
    if eng is None:
        eng = _Engine(mat)
        _engines[mat] = eng
    return eng


def _checked(mat: CoxeterMatrix, word: Iterable[Gen], cap: int) -> tuple[int, ...]:
    letters = tuple(word)
    if len(letters) > cap:
        raise CoxError("WORD_TOO_LONG", f"word of length {len(letters)} exceeds cap {cap}")
    return _engine(mat).encode(letters)


def reduce_word(mat: CoxeterMatrix, word: Iterable[Gen], cap: int = DEFAULT_WORD_CAP) -> CanonicalForm:
    """Canonical form of a word: shortlex-least reduced representative."""
    eng = _engine(mat)
    return CanonicalForm(eng.decode(eng.canon_fold(_checked(mat, word, cap))))


def equal(mat: CoxeterMatrix, u: Iterable[Gen], v: Iterable[Gen], cap: int = DEFAULT_WORD_CAP) -> bool:
    """Whether two words represent the same group element."""
    eng = _engine(mat)
    return eng.canon_fold(_checked(mat, u, cap)) == eng.canon_fold(_checked(mat, v, cap))


def longest_element(mat: CoxeterMatrix, subset: Iterable[Gen]) -> Word:
    """The longest element of a spherical visible subgroup, by greedy length ascent.

    The result is cross-checked against the positive-root count of the
    classified type (summed over components), and must be an involution.
    """
    members = mat.check_subset(subset)
    expected = 0
    for comp in components(mat, members):
        stype = classify_irreducible(mat, comp)
        if stype is None:
            raise CoxError("NOT_SPHERICAL",
                           f"{sorted(comp)} generates an infinite group; no longest element")
        expected += stype.positive_roots
    eng = _engine(mat)
    letters = [mat.index(g) for g in mat.sorted_gens(members)]
    w: tuple[int, ...] = ()
    grew = True
    while grew:
        grew = False
        for letter in letters:
            candidate = eng.canon(w + (letter,))
            if len(candidate) > len(w):
                w = candidate
                grew = True
                break
    if len(w) != expected:
        raise InternalInconsistency(
            f"greedy longest element has length {len(w)}, type predicts {expected}")
    if eng.canon_fold(w + w):
        raise InternalInconsistency("longest element is not an involution")
    return eng.decode(w)


def enumerate_elements(mat: CoxeterMatrix, subset: Iterable[Gen],
                       cap: int = DEFAULT_ENUMERATION_CAP) -> set[CanonicalForm]:
    """All elements of a spherical visible subgroup, as canonical forms."""
    members = mat.check_subset(subset)
    expected = spherical_order(mat, members)
    if expected > cap:
        raise CoxError("ENUMERATION_CAP", f"group order {expected} exceeds cap {cap}")
    eng = _engine(mat)
    letters = [mat.index(g) for g in mat.sorted_gens(members)]
    seen = {(): None}
    queue = deque(((),))
    while queue:
        w = queue.popleft()
        for letter in letters:
            nxt = eng.canon(w + (letter,))
            if nxt not in seen:
                if len(seen) >= cap:
                    raise CoxError("ENUMERATION_CAP", f"enumeration exceeded cap {cap}")
                seen[nxt] = None
                queue.append(nxt)
    if len(seen) != expected:
        raise InternalInconsistency(
            f"enumerated {len(seen)} elements, type order table predicts {expected}")
    return {CanonicalForm(eng.decode(w)) for w in seen}


def conjugation_permutation(mat: CoxeterMatrix, ell: Iterable[Gen],
                            subset: Iterable[Gen]) -> dict[Gen, Gen] | None:
    """The permutation s -> ell s ell^-1 of `subset`, or None if not a permutation.

    `ell` must be an involution (it is only ever the longest element of a
    spherical subgroup here), so conjugation is ell . s . ell.
    """
    members = mat.check_subset(subset)
    eng = _engine(mat)
    ell_idx = eng.canon_fold(eng.encode(tuple(ell)))
    sigma = {}
    for g in mat.sorted_gens(members):
        image = eng.canon_fold(ell_idx + (mat.index(g),) + ell_idx)
        if len(image) != 1:
            return None
        h = eng.decode(image)[0]
        if h not in members:
            return None
        sigma[g] = h
    return sigma


def _substitute(word: Word, mapping: Mapping[Gen, Word]) -> Word:
    out: list[Gen] = []
    for g in word:
        out.extend(mapping[g])
    return tuple(out)


def _relators(mat: CoxeterMatrix):
    for g in mat.generators:
        yield (g, g), (g, g)
    for s, t, value in mat.finite_edges():
        yield (s, t), (s, t) * value


def verify_isomorphism(mat_in: CoxeterMatrix, mat_out: CoxeterMatrix,
                       forward: Mapping[Gen, Word], backward: Mapping[Gen, Word],
                       cap: int | None = None) -> bool:
    """Certify a generator substitution pair as a group isomorphism.

    forward maps each generator of `mat_out` to a word over `mat_in`;
    backward maps each generator of `mat_in` to a word over `mat_out`.
    Checks, by exact word reduction:

      1. every defining relator of `mat_out` maps under forward to the
         identity of `mat_in`,
      2. symmetrically for backward into `mat_out`,
      3. backward then forward fixes every generator of `mat_in`,
      4. forward then backward fixes every generator of `mat_out`.

    Checks 1 and 2 make both substitutions homomorphisms; 3 and 4 make them
    mutually inverse.  (3 alone does not suffice: a collapse like sending
    both generators of A1 x A1 onto the generator of A1 passes 1-3.)
    """
    for g in mat_out.generators:
        if g not in forward:
            raise CoxError("MAP_NOT_TOTAL", f"forward map is missing generator {g!r}")
    for g in mat_in.generators:
        if g not in backward:
            raise CoxError("MAP_NOT_TOTAL", f"backward map is missing generator {g!r}")

    def untouched_pair(s, t, mapping, src, dst):
        # identity-mapped pair with the same label holds trivially; skip it
        if not (dst.has_generator(s) and dst.has_generator(t)):
            return False
        return mapping[s] == (s,) and mapping[t] == (t,) and src.m(s, t) == dst.m(s, t)

    def expand_checks():
        for (s, t), relator in _relators(mat_out):
            if not untouched_pair(s, t, forward, mat_out, mat_in):
                yield mat_in, _substitute(relator, forward), (), \
                    f"forward image of relator ({s} {t})^{mat_out.m(s, t)}"
        for (s, t), relator in _relators(mat_in):
            if not untouched_pair(s, t, backward, mat_in, mat_out):
                yield mat_out, _substitute(relator, backward), (), \
                    f"backward image of relator ({s} {t})^{mat_in.m(s, t)}"
        for g in mat_in.generators:
            word = _substitute(backward[g], forward)
            if word != (g,):
                yield mat_in, word, (g,), f"round trip of input generator {g}"
        for g in mat_out.generators:
            word = _substitute(forward[g], backward)
            if word != (g,):
                yield mat_out, word, (g,), f"round trip of output generator {g}"

    checks = list(expand_checks())
    if cap is None:
        cap = max([DEFAULT_WORD_CAP] + [len(w) for _, w, _, _ in checks])
    for mat, word, target, label in checks:
        if len(word) > cap:
            raise CoxError("WORD_TOO_LONG", f"{label} expands to length {len(word)} > cap {cap}")
        eng = _engine(mat)
        if eng.canon_fold(eng.encode(word)) != eng.encode(target):
            return False
    return True
