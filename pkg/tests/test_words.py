"""Word engine: reduction, equality, longest elements, enumeration, certificates.

Frozen expected values were computed with the independent group models in
conftest (permutations, affine dihedral maps, signed permutations), never
with the engine under test.
"""

import random

import pytest
from conftest import (a1, b3, c3, chain, dihedral, dihedral_oracle,
                      hyperoctahedral_oracle, random_matrix,
                      symmetric_group_oracle)
from hypothesis import given, settings, strategies as st

import coxrank as cx
from coxrank import SphericalType


def test_involution_squares_to_identity():
    form = cx.reduce_word(dihedral(3), ["x", "x"])
    assert form.word == () and form.length == 0


def test_reduce_xyxy_in_a2():
    # oracle: as permutations of 3 points, xyxy equals yx and nothing shorter
    ev = symmetric_group_oracle(3)
    assert ev([0, 1, 0, 1]) == ev([1, 0])
    assert cx.reduce_word(dihedral(3), ["x", "y", "x", "y"]).word == ("y", "x")


def test_defining_relator_reduces_to_identity():
    assert cx.reduce_word(dihedral(4), ["x", "y"] * 4).word == ()


def test_braid_equality_in_a2():
    assert cx.equal(dihedral(3), ["x", "y", "x"], ["y", "x", "y"])


def test_distinct_generators_in_free_product():
    mat = cx.free_product(a1("x"), a1("y"))
    assert not cx.equal(mat, ["x"], ["y"])


def test_b_generators_inside_c3():
    # with b1 = c1, b2 = c2, b3 = c3 c2 c3: b2 b3 = (c2 c3)^2
    mat = c3()
    assert cx.equal(mat, ["c2", "c3", "c2", "c3"], ["c2"] + ["c3", "c2", "c3"])


def test_word_cap():
    with pytest.raises(cx.CoxError) as err:
        cx.reduce_word(dihedral(3), ["x"] * 65)
    assert err.value.code == "WORD_TOO_LONG"
    assert cx.reduce_word(dihedral(3), ["x"] * 65, cap=100).word == ("x",)


def test_longest_elements():
    assert cx.longest_element(a1("x"), ["x"]) == ("x",)
    assert cx.longest_element(dihedral(3), ["x", "y"]) == ("x", "y", "x")
    assert len(cx.longest_element(c3(), ["c1", "c2", "c3"])) == 9
    assert len(cx.longest_element(b3(), ["b1", "b2", "b3"])) == 6


def test_longest_element_of_reducible_subset():
    mat = cx.direct_product(a1("r"), dihedral(3))
    assert len(cx.longest_element(mat, mat.generators)) == 4


def test_longest_element_requires_spherical():
    mat = cx.free_product(a1("a"), a1("b"))
    with pytest.raises(cx.CoxError) as err:
        cx.longest_element(mat, ["a", "b"])
    assert err.value.code == "NOT_SPHERICAL"


def test_longest_element_conjugation_permutes_subset():
    for mat, members in [(c3(), ["c1", "c2", "c3"]),
                         (b3(), ["b1", "b2", "b3"]),
                         (dihedral(5), ["x", "y"])]:
        w0 = cx.longest_element(mat, members)
        for g in members:
            image = cx.reduce_word(mat, w0 + (g,) + w0, cap=64).word
            assert len(image) == 1 and image[0] in members


def test_enumeration_orders():
    assert len(cx.enumerate_elements(dihedral(3), ["x", "y"])) == 6
    assert len(cx.enumerate_elements(dihedral(6), ["x", "y"])) == 12
    assert len(cx.enumerate_elements(b3(), ["b1", "b2", "b3"])) == 24
    assert len(cx.enumerate_elements(c3(), ["c1", "c2", "c3"])) == 48


def test_enumeration_matches_signed_permutation_model():
    mat = c3()
    ev = hyperoctahedral_oracle(3)
    words = {form.word for form in cx.enumerate_elements(mat, mat.generators)}
    images = {ev([mat.index(g) for g in word]) for word in words}
    assert len(images) == 48  # canonical forms hit every signed permutation once


def test_enumeration_cap():
    mat = cx.template_matrix(SphericalType("A", 5))
    with pytest.raises(cx.CoxError) as err:
        cx.enumerate_elements(mat, mat.generators, cap=100)
    assert err.value.code == "ENUMERATION_CAP"


def test_reduce_is_idempotent_and_concat_respecting():
    rng = random.Random(9)
    for _ in range(30):
        mat = random_matrix(rng, max_gens=4)
        gens = mat.generators
        u = [rng.choice(gens) for _ in range(rng.randint(0, 8))]
        v = [rng.choice(gens) for _ in range(rng.randint(0, 8))]
        w = [rng.choice(gens) for _ in range(rng.randint(0, 4))]
        ru = cx.reduce_word(mat, u)
        assert cx.reduce_word(mat, ru.word).word == ru.word
        if cx.equal(mat, u, v):
            assert cx.equal(mat, list(u) + w, list(v) + w)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from(["x", "y"]), max_size=10),
       st.sampled_from([3, 4, 5, 6]))
def test_dihedral_words_match_affine_model(letters, k):
    mat = dihedral(k)
    ev = dihedral_oracle(k)
    reduced = cx.reduce_word(mat, letters).word
    assert ev([mat.index(g) for g in letters]) == ev([mat.index(g) for g in reduced])
    assert len(reduced) <= k  # diameter of the dihedral group


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from(["s1", "s2", "s3"]), max_size=10),
       st.lists(st.sampled_from(["s1", "s2", "s3"]), max_size=10))
def test_a3_equality_matches_permutation_model(u, v):
    mat = chain(["s1", "s2", "s3"], [3, 3])
    ev = symmetric_group_oracle(4)
    idx = lambda word: [mat.index(g) for g in word]
    assert cx.equal(mat, u, v) == (ev(idx(u)) == ev(idx(v)))


def test_geometric_check_examples():
    mat = dihedral(5)
    assert cx.geometric_check(mat, ["x", "y", "x", "y", "x"], ["y", "x", "y", "x", "y"])
    assert not cx.geometric_check(mat, ["x"], [])


def test_geometric_check_agrees_with_equal():
    rng = random.Random(12)
    for _ in range(40):
        mat = random_matrix(rng, max_gens=4)
        gens = mat.generators
        u = [rng.choice(gens) for _ in range(rng.randint(0, 10))]
        v = [rng.choice(gens) for _ in range(rng.randint(0, 10))]
        assert cx.equal(mat, u, v) == cx.geometric_check(mat, u, v)


def test_verify_isomorphism_identity():
    mat = c3()
    identity = {g: (g,) for g in mat.generators}
    assert cx.verify_isomorphism(mat, mat, identity, identity)


def test_verify_isomorphism_blow_down_maps():
    # A1 x D2(3) -> D2(6): a = r x y x, backward r = (a x)^3, y = a x a
    mat_in = cx.direct_product(a1("r"), dihedral(3))
    mat_out = dihedral(6, "x", "a")
    forward = {"x": ("x",), "a": ("r", "x", "y", "x")}
    backward = {"x": ("x",), "y": ("a", "x", "a"),
                "r": ("a", "x", "a", "x", "a", "x")}
    assert cx.verify_isomorphism(mat_in, mat_out, forward, backward)


def test_verify_isomorphism_rejects_corruption():
    mat_in = cx.direct_product(a1("r"), dihedral(3))
    mat_out = dihedral(6, "x", "a")
    forward = {"x": ("x",), "a": ("r", "x", "y")}  # dropped the final letter
    backward = {"x": ("x",), "y": ("a", "x", "a"),
                "r": ("a", "x", "a", "x", "a", "x")}
    assert not cx.verify_isomorphism(mat_in, mat_out, forward, backward)


def test_verify_isomorphism_rejects_rank_collapse():
    # folding A1 x A1 onto A1 satisfies relator and one-sided round-trip
    # checks; the output-side round trip is what rejects it
    mat_in = a1("s")
    mat_out = cx.direct_product(a1("u"), a1("v"))
    forward = {"u": ("s",), "v": ("s",)}
    backward = {"s": ("u",)}
    assert not cx.verify_isomorphism(mat_in, mat_out, forward, backward)


def test_verify_isomorphism_requires_total_maps():
    mat = dihedral(3)
    with pytest.raises(cx.CoxError) as err:
        cx.verify_isomorphism(mat, mat, {"x": ("x",)}, {"x": ("x",), "y": ("y",)})
    assert err.value.code == "MAP_NOT_TOTAL"
