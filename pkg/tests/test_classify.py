"""Spherical type recognition, orders, aliases, and basic subsets."""

import random
from itertools import combinations

import pytest
from conftest import a1, b3, c3, c3_x_d3, chain, dihedral, random_matrix
from hypothesis import given, settings, strategies as st

import coxrank as cx
from coxrank import INFINITY, SphericalType


def test_classify_c3_chain():
    mat = chain(["a", "b", "c"], [3, 4])
    assert cx.classify_irreducible(mat, mat.generators) == SphericalType("C", 3)


def test_classify_single_edge_label_5():
    assert cx.classify_irreducible(dihedral(5), ["x", "y"]) == SphericalType("D2", 5)


def test_classify_b5_fork():
    gens = ["b1", "b2", "b3", "b4", "b5"]
    fork = {frozenset(p) for p in
            [("b1", "b2"), ("b2", "b3"), ("b3", "b4"), ("b3", "b5")]}
    edges = {(s, t): 3 if frozenset((s, t)) in fork else 2
             for s, t in combinations(gens, 2)}
    mat = cx.CoxeterMatrix(gens, edges)
    assert cx.classify_irreducible(mat, gens) == SphericalType("B", 5)


def test_linear_all_threes_is_a3():
    assert cx.classify_irreducible(b3(), ["b1", "b2", "b3"]) == SphericalType("A", 3)


def test_classify_every_template_round_trips():
    types = [SphericalType("A", n) for n in (1, 4, 5, 6)]
    types += [SphericalType("B", n) for n in (4, 5, 6, 7)]
    types += [SphericalType("C", n) for n in (3, 4, 5)]
    types += [SphericalType("D2", k) for k in (3, 4, 5, 6, 7, 12)]
    types += [SphericalType(f, r) for f, r in
              (("E6", 6), ("E7", 7), ("E8", 8), ("F4", 4), ("G3", 3), ("G4", 4))]
    for stype in types:
        mat = template_matrix = cx.template_matrix(stype)
        got = cx.classify_irreducible(mat, mat.generators)
        assert got == stype.canonical(), f"{stype} came back as {got}"


def test_affine_shapes_are_not_spherical():
    triangle = cx.CoxeterMatrix(["a", "b", "c"],
                                {("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 3})
    assert cx.classify_irreducible(triangle, triangle.generators) is None
    c_tilde = chain(["a", "b", "c"], [4, 4])
    assert cx.classify_irreducible(c_tilde, c_tilde.generators) is None
    infinite_edge = cx.free_product(a1("a"), a1("b"))
    assert cx.classify_irreducible(infinite_edge, ["a", "b"]) is None


def test_classify_rejects_reducible_sets():
    mat = c3_x_d3()
    with pytest.raises(cx.CoxError) as err:
        cx.classify_irreducible(mat, ["c1", "d1"])
    assert err.value.code == "NOT_IRREDUCIBLE"


def test_aliases():
    assert SphericalType("B", 3).alias_of == SphericalType("A", 3)
    assert SphericalType("D2", 3).alias_of == SphericalType("A", 2)
    assert SphericalType("D2", 4).alias_of == SphericalType("C", 2)
    assert SphericalType("D2", 5).alias_of is None
    assert SphericalType("B", 3).canonical() == SphericalType("A", 3)
    assert SphericalType("A", 2).canonical() == SphericalType("D2", 3)
    assert SphericalType("B", 3).equivalent(SphericalType("A", 3))


def test_eligibility_predicates_on_types():
    assert SphericalType("A", 3).is_blow_down_type()  # doubles as B(3)
    assert SphericalType("B", 5).is_blow_down_type()
    assert SphericalType("D2", 3).is_blow_down_type()
    assert SphericalType("D2", 5).is_blow_down_type()
    assert not SphericalType("B", 4).is_blow_down_type()
    assert not SphericalType("D2", 6).is_blow_down_type()
    assert not SphericalType("A", 4).is_blow_down_type()
    assert SphericalType("C", 3).is_blow_up_type()
    assert SphericalType("C", 5).is_blow_up_type()
    assert SphericalType("D2", 6).is_blow_up_type()
    assert SphericalType("D2", 10).is_blow_up_type()
    assert not SphericalType("D2", 4).is_blow_up_type()
    assert not SphericalType("D2", 8).is_blow_up_type()
    assert not SphericalType("C", 4).is_blow_up_type()


def test_group_orders():
    assert cx.group_order(SphericalType("D2", 3)) == 6
    assert cx.group_order(SphericalType("C", 3)) == 48
    assert cx.group_order(SphericalType("B", 3)) == 24
    assert cx.group_order(SphericalType("G3", 3)) == 120
    assert cx.group_order(SphericalType("A", 3)) == 24
    assert cx.group_order(SphericalType("E7", 7)) == 2903040


def test_order_doubling_relations():
    for q in range(1, 5):
        b_odd = SphericalType("B", 2 * q + 1) if q > 1 else SphericalType("A", 3)
        assert 2 * cx.group_order(b_odd) == cx.group_order(SphericalType("C", 2 * q + 1))
        assert 2 * cx.group_order(SphericalType("D2", 2 * q + 1)) == \
            cx.group_order(SphericalType("D2", 4 * q + 2))


def test_is_spherical():
    assert cx.is_spherical(c3(), [])
    assert not cx.is_spherical(cx.free_product(a1("a"), a1("b")), ["a", "b"])
    mat = c3_x_d3()
    assert cx.is_spherical(mat, mat.generators)


def test_bases_of_a1_x_d3_x_d6():
    mat = cx.direct_product(a1("r"), dihedral(3, "x1", "y1"), dihedral(6, "x2", "y2"))
    bases = cx.basic_subsets(mat)
    assert [(sorted(b.members), str(b.stype)) for b in bases] == \
        [(["x1", "y1"], "D2(3)"), (["x2", "y2"], "D2(6)")]


def test_bases_of_c3_x_d3():
    bases = cx.basic_subsets(c3_x_d3())
    assert [(sorted(b.members), str(b.stype)) for b in bases] == \
        [(["c1", "c2", "c3"], "C3"), (["d1", "d2"], "D2(3)")]


def test_a1_alone_has_no_bases():
    assert cx.basic_subsets(a1()) == []


def test_intersecting_bases_triangle():
    # pairwise finite edges, infinite-order triangle: three overlapping bases
    mat = cx.CoxeterMatrix(["x", "y", "z"],
                           {("x", "y"): 3, ("y", "z"): 3, ("x", "z"): 7})
    bases = cx.basic_subsets(mat)
    assert [(sorted(b.members), str(b.stype)) for b in bases] == \
        [(["x", "y"], "D2(3)"), (["x", "z"], "D2(7)"), (["y", "z"], "D2(3)")]


def test_no_base_contains_another():
    rng = random.Random(5)
    for _ in range(40):
        mat = random_matrix(rng)
        bases = cx.basic_subsets(mat)
        for one in bases:
            for other in bases:
                assert one is other or not one.members < other.members


def test_base_distinguished_elements():
    mat = c3_x_d3()
    c_base, d_base = cx.basic_subsets(mat)
    assert c_base.four_end == "c3"
    assert c_base.split_ends is None
    assert d_base.split_ends == ("d1", "d2")
    assert d_base.distinguished_pair == ("d1", "d2")

    fork = cx.template_matrix(SphericalType("B", 5), ["b1", "b2", "b3", "b4", "b5"])
    base = cx.basic_subsets(fork)[0]
    assert base.split_ends == ("b4", "b5")

    linear = b3()
    base = cx.basic_subsets(linear)[0]
    assert base.stype == SphericalType("A", 3)
    assert base.split_ends == ("b2", "b3")  # the two endpoints; b1 is central


def test_split_ends_are_the_two_leaves_near_the_branch():
    for n in (5, 7):
        mat = cx.template_matrix(SphericalType("B", n))
        base = cx.basic_subsets(mat)[0]
        x, y = base.split_ends
        assert mat.m(x, y) == 2
        common = [g for g in mat.generators
                  if mat.m(g, x) == 3 and mat.m(g, y) == 3]
        assert len(common) == 1


@settings(max_examples=40, deadline=None)
@given(st.permutations(["a", "b", "c", "d", "e"]))
def test_classification_is_relabeling_invariant(names):
    stype = SphericalType("B", 5)
    mat = cx.template_matrix(stype, names)
    assert cx.classify_irreducible(mat, names) == stype
    assert cx.find_isomorphism(mat, cx.template_matrix(stype)) is not None


def test_find_isomorphism_respects_labels():
    assert cx.find_isomorphism(dihedral(5), dihedral(5, "u", "v")) is not None
    assert cx.find_isomorphism(dihedral(5), dihedral(6)) is None
    assert cx.find_isomorphism(c3(), b3()) is None


def test_maximality_excludes_contained_subsets():
    mat = c3()
    members = {frozenset(b.members) for b in cx.basic_subsets(mat)}
    assert members == {frozenset(mat.generators)}
