import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morigami.dessin import (
    MAX_ENUMERATION_DEGREE,
    Dessin,
    W_ELEMENTS,
    WeakSymmetry,
    brute_force_dessins,
    enumerate_dessins,
    genus,
    is_clean,
    is_exceptional,
    is_filthy,
    is_pre_clean,
    is_tree,
    is_unicellular,
    iter_dessins,
    parse_dessin,
    w_act,
    w_orbit,
    weak_automorphism_group,
)
from morigami.perm import Permutation, parse_cycles

from helpers import dessins, perms


def D(px, py, d):
    return Dessin(parse_cycles(px, d), parse_cycles(py, d))


TREE = D("(1 2 3)(4 5)", "(3 4)(5 6 7)", 7)
GAMMA2ST = D("(1 3 4 5)(2 6)", "(2 1 4 5)(3 6)", 6)
TORUS_COVER = D("()", "()", 1)


def test_rejects_non_transitive_pair_naming_orbits():
    with pytest.raises(ValueError, match=r"\{3\}"):
        D("(1 2)", "()", 3)


def test_rejects_degree_mismatch():
    with pytest.raises(ValueError):
        Dessin(Permutation.identity(2), Permutation.identity(3))


def test_pz_closes_the_product():
    assert (TREE.pz * TREE.py * TREE.px).is_identity()


def test_genus_examples():
    assert genus(TREE) == 0
    assert genus(TORUS_COVER) == 0
    assert genus(GAMMA2ST) == 1
    # K_3-like torus triangulation: three 3-cycles everywhere, degree 9
    assert genus(D("(1 4 7)(2 5 8)(3 6 9)", "(1 2 3)(4 5 6)(7 8 9)", 9)) == 1


def test_predicates_on_examples():
    assert is_tree(TREE) and is_unicellular(TREE) and is_filthy(TREE)
    assert not is_pre_clean(TREE) and not is_clean(TREE)
    assert is_filthy(GAMMA2ST) and not is_tree(GAMMA2ST)
    clean = D("(1 2 3)", "(1 2)(3 4)", 4)
    assert is_clean(clean) and is_pre_clean(clean) and not is_filthy(clean)
    assert is_pre_clean(TORUS_COVER) and not is_clean(TORUS_COVER)


@given(dessins())
def test_clean_implies_pre_clean_and_tree_implies_unicellular(b):
    if is_clean(b):
        assert is_pre_clean(b)
    if is_tree(b):
        assert is_unicellular(b)
    if is_pre_clean(b):
        assert not is_filthy(b)


def test_w_action_table():
    px, py, pz = TREE.px, TREE.py, TREE.pz
    expected = {"": (px, py), "s": (py, px), "t": (pz, py), "st": (py, pz), "ts": (pz, px), "tst": (px, pz)}
    for word, pair in expected.items():
        b = w_act(word, TREE)
        assert (b.px, b.py) == pair


def test_weak_symmetry_group_structure():
    s, t = WeakSymmetry("s"), WeakSymmetry("t")
    assert s * s == WeakSymmetry("")
    assert (s * t).order() == 3
    assert s * t * s == t * s * t == WeakSymmetry("tst")
    assert len(set(W_ELEMENTS)) == 6
    for w in W_ELEMENTS:
        assert w * w.inverse() == WeakSymmetry("")


@settings(max_examples=40)
@given(dessins(), st.sampled_from(W_ELEMENTS), st.sampled_from(W_ELEMENTS))
def test_w_action_is_a_left_action_up_to_isomorphism(b, w1, w2):
    assert w_act(w1, w_act(w2, b)).is_isomorphic(w_act(w1 * w2, b))


@given(dessins())
def test_w_orbit_size_divides_group_order(b):
    assert len(w_orbit(b)) * len(weak_automorphism_group(b)) == 6


def test_weak_automorphisms_of_examples():
    assert {str(w) for w in weak_automorphism_group(TREE)} == {"id", "s"}
    w = weak_automorphism_group(GAMMA2ST)
    assert {str(x) for x in w} == {"id", "st", "ts"}
    assert WeakSymmetry("st").order() == 3
    for sym, c in w.items():
        b = w_act(sym, GAMMA2ST)
        assert c * GAMMA2ST.px * c.inverse() == b.px and c * GAMMA2ST.py * c.inverse() == b.py


def test_exceptional_examples():
    assert is_exceptional(TORUS_COVER)[0]
    ok, cyc = is_exceptional(D("(1 2)", "()", 2))
    assert ok and cyc is not None
    assert not is_exceptional(TREE)[0]
    assert not is_exceptional(D("()", "(1 2 3 4 5)", 5))[0]


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_enumeration_matches_brute_force(d):
    fast = enumerate_dessins(d)
    slow = brute_force_dessins(d)
    assert len(fast) == len(slow)
    assert {b.key() for b in fast} == {b.key() for b in slow}


def test_enumeration_counts_match_published_sequence():
    # transitive permutation pairs up to simultaneous conjugacy (OEIS A057005)
    assert [len(enumerate_dessins(d)) for d in range(1, 8)] == [1, 3, 7, 26, 97, 624, 4163]


def test_enumeration_is_deterministic_and_canonical():
    a = [b.to_text() for b in enumerate_dessins(4)]
    assert a == [b.to_text() for b in enumerate_dessins(4)]
    for b in enumerate_dessins(4):
        assert b.canonical() == b


def test_enumeration_filter_and_ceiling():
    trees = list(iter_dessins(4, is_tree))
    assert trees and all(is_tree(b) for b in trees)
    with pytest.raises(ValueError):
        list(iter_dessins(MAX_ENUMERATION_DEGREE + 1))


def test_trio_pairwise_non_isomorphic():
    others = [D("(1 2 3)(4 5)", t, 7) for t in ("(2 7)(3 6 4)", "(1 7)(3 4 6)")]
    assert not TREE.is_isomorphic(others[0])
    assert not TREE.is_isomorphic(others[1])
    assert not others[0].is_isomorphic(others[1])


def test_text_and_json_roundtrip():
    assert parse_dessin(TREE.to_text()) == TREE
    assert parse_dessin(json.dumps(TREE.to_json())) == TREE
    assert parse_dessin("px=(); py=(); d=1") == TORUS_COVER


@pytest.mark.parametrize("bad", ["px=(1 2)", "px=(1 2); qy=(); d=2", "px=(1 2; py=(); d=2", "px=(); px=(); d=1"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_dessin(bad)
