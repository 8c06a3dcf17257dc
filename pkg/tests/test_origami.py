import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morigami.m_origami import build, make_K_n
from morigami.origami import (
    DIRECTIONS,
    GAMMA2_GENERATORS,
    Origami,
    act,
    cylinder_decomposition,
    format_sl2_word,
    genus,
    parse_origami,
    parse_sl2_word,
    punctures,
    sl2_orbit,
    translations,
    vertex_orbits,
)
from morigami.perm import Permutation, parse_cycles

from helpers import brute_centralizer, dessins, origamis, perms, stabilizer_fixed_points
from test_dessin import D, TREE

TORUS = Origami(Permutation.identity(1), Permutation.identity(1))
WORDS = st.lists(st.sampled_from(["S", "S^-1", "T", "T^-1", "-I"]), max_size=6).map(" ".join)


def O(a, b, n):
    return Origami(parse_cycles(a, n), parse_cycles(b, n))


def relabel(o, c):
    ci = c.inverse()
    return Origami(c * o.sA * ci, c * o.sB * ci)


def test_torus_invariants():
    assert genus(TORUS) == 1
    assert len(vertex_orbits(TORUS)) == 1 and punctures(TORUS) == 1
    assert len(translations(TORUS)) == 1
    assert cylinder_decomposition(TORUS).types() == [(1, 1)]


def test_rejects_intransitive_and_mismatched():
    with pytest.raises(ValueError, match="orbits"):
        O("(1 2)", "()", 3)
    with pytest.raises(ValueError):
        Origami(Permutation.identity(2), Permutation.identity(3))


def test_trio_genus_and_punctures():
    o = build(TREE)
    assert o.n == 28 and genus(o) == 6 and punctures(o) == 18


def test_K4_genus():
    assert genus(build(make_K_n(4))) == 13


def test_K2_translation_group_frozen():
    o = build(make_K_n(2))
    got = translations(o)
    # independent count: points fixed by the Schreier generators of the stabiliser of 1
    assert len(got) == len(stabilizer_fixed_points([o.sA, o.sB])) == 16
    for c in got:
        assert c * o.sA == o.sA * c and c * o.sB == o.sB * c


@settings(max_examples=40)
@given(origamis(max_d=6))
def test_translations_match_brute_force(o):
    assert sorted(translations(o)) == sorted(brute_centralizer([o.sA, o.sB]))


def test_full_symmetric_monodromy_has_no_translations():
    o = O("(1 2 3 4 5)", "(1 2)", 5)
    assert translations(o) == [Permutation.identity(5)]


def test_action_formulas():
    o = O("(1 2 3)", "(1 2)", 3)
    assert act("S", o) == Origami(o.sB.inverse(), o.sA)
    assert act("T", o) == Origami(o.sA, o.sA.inverse() * o.sB)
    assert act("-I", o) == Origami(o.sA.inverse(), o.sB.inverse())
    assert act("S^-1", act("S", o)) == o
    assert act("T T^-1", o) == o


def test_S_swaps_the_dessin_pair():
    b = TREE
    assert act("S", build(b)).is_isomorphic(build(D("(3 4)(5 6 7)", "(1 2 3)(4 5)", 7)))


@given(origamis())
def test_S_has_order_four_and_S_squared_is_minus_I(o):
    assert act("S S S S", o) == o
    assert act("S S", o).is_isomorphic(act("-I", o))


@settings(max_examples=50)
@given(origamis(max_d=6), WORDS, WORDS)
def test_action_is_a_left_action(o, g, h):
    assert act(g, act(h, o)).is_isomorphic(act(f"{g} {h}", o))


@given(origamis(), WORDS)
def test_genus_and_punctures_are_affine_invariants(o, g):
    image = act(g, o)
    assert genus(image) == genus(o) and punctures(image) == punctures(o)


@settings(max_examples=30)
@given(dessins(max_d=5))
def test_minus_I_fixes_every_m_origami(b):
    o = build(b)
    assert act("-I", o).is_isomorphic(o)


def test_sl2_word_parsing():
    assert parse_sl2_word("S T^-2 S^-1") == (("S", 1), ("T", -1), ("T", -1), ("S", -1))
    assert parse_sl2_word("") == ()
    assert format_sl2_word(parse_sl2_word("T^2 -I")) == "T^2 -I"
    assert parse_sl2_word(format_sl2_word(parse_sl2_word("S^-1 T^-3 S"))) == parse_sl2_word("S^-1 T^-3 S")
    with pytest.raises(ValueError):
        parse_sl2_word("S Q")


def test_trio_veech_group():
    rep = sl2_orbit(build(TREE))
    assert rep.index == 3
    assert rep.level2 == "<Gamma(2),S>"
    assert rep.cusp_count == 2
    assert rep.contains_minus_I


def test_torus_and_K_n_have_full_veech_group():
    for o in (TORUS, build(make_K_n(2)), build(make_K_n(3))):
        rep = sl2_orbit(o)
        assert rep.index == 1 and rep.level2 == "SL2(Z)" and rep.cusp_count == 1


def test_gamma2st_veech_group():
    rep = sl2_orbit(build(D("(1 3 4 5)(2 6)", "(2 1 4 5)(3 6)", 6)))
    assert rep.index == 2 and rep.level2 == "<Gamma(2),ST>"


def test_level2_missing_when_gamma2_does_not_fix():
    # a generic 3-square origami: T² moves it
    o = O("(1 2 3)", "(1 2)", 3)
    rep = sl2_orbit(o)
    assert any(not act(g, o).is_isomorphic(o) for g in GAMMA2_GENERATORS) == (rep.level2 is None)


@settings(max_examples=30)
@given(origamis(max_d=6))
def test_orbit_graph_relations(o):
    rep = sl2_orbit(o)
    assert all(rep.relation_checks().values())
    # edges are consistent with the action
    for i, x in enumerate(rep.orbit):
        assert act("S", x).is_isomorphic(rep.orbit[rep.s_edges[i]])
        assert act("T", x).is_isomorphic(rep.orbit[rep.t_edges[i]])
        assert act(rep.words[i], o).is_isomorphic(x)


@settings(max_examples=25)
@given(origamis(max_d=6), st.data())
def test_orbit_invariants_survive_relabeling(o, data):
    c = data.draw(perms(o.n))
    a, b = sl2_orbit(o), sl2_orbit(relabel(o, c))
    assert (a.index, a.cusp_count, a.contains_minus_I, a.level2) == (b.index, b.cusp_count, b.contains_minus_I, b.level2)


@settings(max_examples=25)
@given(origamis(max_d=6))
def test_schreier_generators_fix_the_origami(o):
    rep = sl2_orbit(o)
    for g in rep.schreier_generators():
        assert act(g, o).is_isomorphic(o), g


@given(origamis())
def test_vertical_is_horizontal_of_S_inverse_image(o):
    assert cylinder_decomposition(o, "vertical").types() == cylinder_decomposition(act("S^-1", o)).types()
    assert cylinder_decomposition(o, "diagonal").types() == cylinder_decomposition(act("S^-1 T^-1", o)).types()


@given(origamis())
def test_area_is_conserved_and_rows_are_glued(o):
    for direction in DIRECTIONS:
        dec = cylinder_decomposition(o, direction)
        assert dec.area == o.n
    h = cylinder_decomposition(o)
    squares = sorted(s for c in h.cylinders for row in c.rows for s in row)
    assert squares == list(range(1, o.n + 1))
    for c in h.cylinders:
        for row in c.rows:
            assert len(row) == c.width
            assert all(o.sA(row[k]) == row[(k + 1) % c.width] for k in range(c.width))
        for lower, upper in zip(c.rows, c.rows[1:]):
            assert [o.sB(s) for s in lower] == list(upper)


def test_named_cylinder_examples():
    assert cylinder_decomposition(build(TREE)).types() == [(2, 2), (2, 2), (4, 2), (6, 1), (6, 1)]
    assert cylinder_decomposition(build(D("()", "(1 2 3 4 5)", 5))).types() == [(10, 1), (10, 1)]
    assert cylinder_decomposition(build(D("(1 2)", "()", 2))).types() == [(2, 4)]
    with pytest.raises(ValueError):
        cylinder_decomposition(TORUS, "sideways")


def test_text_and_json_roundtrip():
    o = build(TREE)
    assert parse_origami(o.to_text()) == o
    assert parse_origami(json.dumps(o.to_json())) == o
    assert parse_origami("sA=(1 2); sB=(); d=2") == O("(1 2)", "()", 2)
