"""Shared builders and independent oracles for the test suite.

The oracles deliberately avoid the package's word engine: symmetric groups
as permutation tuples, dihedral groups as (rotation, reflection) pairs, and
hyperoctahedral groups as signed permutations.  Expected values frozen into
tests were computed with these.
"""

from __future__ import annotations

import random
from itertools import combinations

from coxrank import CoxeterMatrix, INFINITY, SphericalType, direct_product, template_matrix

LABEL_POOL = (2, 3, 4, 5, 6, INFINITY)


# -- named systems ------------------------------------------------------------

def a1(label="r"):
    return CoxeterMatrix([label])


def dihedral(k, a="x", b="y"):
    return CoxeterMatrix([a, b], {(a, b): k})


def chain(labels, orders):
    """Linear diagram with the given consecutive orders; other pairs commute."""
    edges = {}
    for i, value in enumerate(orders):
        edges[(labels[i], labels[i + 1])] = value
    for s, t in combinations(labels, 2):
        if frozenset((s, t)) not in {frozenset(k) for k in edges}:
            edges[(s, t)] = 2
    return CoxeterMatrix(labels, edges)


def c3(labels=("c1", "c2", "c3")):
    return template_matrix(SphericalType("C", 3), labels)


def b3(labels=("b1", "b2", "b3")):
    return template_matrix(SphericalType("B", 3), labels)


def c3_x_d3():
    return direct_product(c3(), dihedral(3, "d1", "d2"))


# -- independent group models --------------------------------------------------

def perm_compose(p, q):
    """(p then q) acting on positions: result[i] = q[p[i]]."""
    return tuple(q[i] for i in p)


def symmetric_group_oracle(n):
    """Word oracle for the rank-(n-1) linear all-3 diagram: maps words over
    generator indices 0..n-2 (adjacent transpositions) to permutations."""
    identity = tuple(range(n))

    def transposition(i):
        p = list(identity)
        p[i], p[i + 1] = p[i + 1], p[i]
        return tuple(p)

    gens = [transposition(i) for i in range(n - 1)]

    def evaluate(word):
        out = identity
        for letter in word:
            out = perm_compose(out, gens[letter])
        return out

    return evaluate


def dihedral_oracle(k):
    """Word oracle for D2(k): elements as affine maps z -> e*z + a on Z_k,
    letter 0 the reflection z -> -z, letter 1 the reflection z -> 1 - z."""

    def evaluate(word):
        a, e = 0, 1
        for letter in word:
            b = 0 if letter == 0 else 1
            a, e = (b - a) % k, -e
        return a, e

    return evaluate


def signed_perm_compose(p, q):
    return tuple(q[abs(v) - 1] if v > 0 else -q[abs(v) - 1] for v in p)


def hyperoctahedral_oracle(n):
    """Word oracle for C(n) with the 4 at the far end: letters 0..n-2 are the
    adjacent swaps, letter n-1 negates the last coordinate."""
    identity = tuple(range(1, n + 1))
    gens = []
    for i in range(n - 1):
        p = list(identity)
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(tuple(p))
    last = list(identity)
    last[-1] = -last[-1]
    gens.append(tuple(last))

    def evaluate(word):
        out = identity
        for letter in word:
            out = signed_perm_compose(out, gens[letter])
        return out

    return evaluate


# -- random instance generators -------------------------------------------------

def random_matrix(rng: random.Random, max_gens=6, labels=LABEL_POOL) -> CoxeterMatrix:
    n = rng.randint(2, max_gens)
    gens = [f"g{i}" for i in range(n)]
    edges = {}
    for s, t in combinations(gens, 2):
        value = rng.choice(labels)
        if value != INFINITY:
            edges[(s, t)] = value
    return CoxeterMatrix(gens, edges)


_FACTORIES = (
    lambda tag: a1(f"r{tag}"),
    lambda tag: dihedral(3, f"x{tag}", f"y{tag}"),
    lambda tag: dihedral(5, f"x{tag}", f"y{tag}"),
    lambda tag: dihedral(6, f"x{tag}", f"y{tag}"),
    lambda tag: dihedral(4, f"x{tag}", f"y{tag}"),
    lambda tag: template_matrix(SphericalType("A", 3), (f"p{tag}", f"q{tag}", f"s{tag}")),
    lambda tag: template_matrix(SphericalType("C", 3), (f"c{tag}", f"d{tag}", f"e{tag}")),
)


def planted_matrix(rng: random.Random, max_gens=6) -> CoxeterMatrix:
    """Direct products of small spherical factors, optionally loosened.

    Products guarantee eligible bases show up often; with probability ~1/2 a
    few cross labels are knocked out to infinity to exercise the twist and
    cycle machinery on non-complete diagrams.
    """
    mats = []
    total = 0
    for tag in range(6):
        factory = rng.choice(_FACTORIES)
        factor = factory(tag)
        if total + factor.rank() > max_gens:
            break
        mats.append(factor)
        total += factor.rank()
        if total >= max_gens - 1 and rng.random() < 0.6:
            break
    if not mats:
        mats = [dihedral(3, "x0", "y0")]
    mat = direct_product(*mats)
    if rng.random() < 0.5:
        edges = {(s, t): v for s, t, v in mat.finite_edges()}
        removable = [key for key, value in edges.items() if value == 2]
        rng.shuffle(removable)
        for key in removable[:rng.randint(0, 2)]:
            del edges[key]
        mat = CoxeterMatrix(mat.generators, edges)
    return mat


def corpus(seed: int, size: int, max_gens=6):
    """Deterministic mixed corpus: planted product-like instances and raw noise."""
    rng = random.Random(seed)
    out = []
    for i in range(size):
        if i % 3 == 0:
            out.append(random_matrix(rng, max_gens))
        else:
            out.append(planted_matrix(rng, max_gens))
    return out
