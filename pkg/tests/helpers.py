"""Shared strategies and brute-force oracles for the test suite."""

from __future__ import annotations

from itertools import permutations

from hypothesis import assume
from hypothesis import strategies as st

from morigami.dessin import Dessin
from morigami.origami import Origami
from morigami.perm import Permutation, is_transitive


@st.composite
def perms(draw, d):
    return Permutation(draw(st.permutations(range(1, d + 1))))


@st.composite
def transitive_pairs(draw, min_d=1, max_d=6):
    d = draw(st.integers(min_d, max_d))
    a, b = draw(perms(d)), draw(perms(d))
    assume(is_transitive([a, b], d))
    return a, b


@st.composite
def dessins(draw, min_d=1, max_d=6):
    return Dessin(*draw(transitive_pairs(min_d, max_d)))


@st.composite
def origamis(draw, min_d=1, max_d=8):
    return Origami(*draw(transitive_pairs(min_d, max_d)))


def brute_conjugate(a1, b1, a2, b2) -> bool:
    """Search all of S_d for a simultaneous conjugator."""
    d = a1.degree
    for img in permutations(range(1, d + 1)):
        c = Permutation(img)
        ci = c.inverse()
        if c * a1 * ci == a2 and c * b1 * ci == b2:
            return True
    return False


def brute_centralizer(gens) -> list:
    d = gens[0].degree
    out = []
    for img in permutations(range(1, d + 1)):
        c = Permutation(img)
        if all(c * g == g * c for g in gens):
            out.append(c)
    return out


def label(i, j, d):
    return (i - 1) * d + j


def mutant_build(dessin: Dessin) -> Origami:
    """The construction with sheet 4's horizontal rule flipped from py⁻¹ to py."""
    d = dessin.d
    px, py = dessin.px, dessin.py
    sa, sb = [0] * (4 * d), [0] * (4 * d)
    for j in range(1, d + 1):
        sa[label(1, j, d) - 1] = label(2, j, d)
        sa[label(2, j, d) - 1] = label(1, py(j), d)
        sa[label(3, j, d) - 1] = label(4, j, d)
        sa[label(4, j, d) - 1] = label(3, py(j), d)
        sb[label(1, j, d) - 1] = label(3, j, d)
        sb[label(2, j, d) - 1] = label(4, j, d)
        sb[label(3, j, d) - 1] = label(1, px.inverse()(j), d)
        sb[label(4, j, d) - 1] = label(2, px(j), d)
    return Origami(Permutation(sa), Permutation(sb))


def stabilizer_fixed_points(gens) -> list:
    """Points fixed by the whole stabiliser of 1, via Schreier generators.

    For a transitive group this count is the order of the centralizer, which
    gives an oracle that never builds a conjugator.
    """
    d = gens[0].degree
    rep = {1: Permutation.identity(d)}  # rep[k] carries 1 to k
    queue = [1]
    while queue:
        k = queue.pop()
        for g in gens:
            j = g(k)
            if j not in rep:
                rep[j] = g * rep[k]
                queue.append(j)
    schreier = [rep[g(k)].inverse() * g * rep[k] for k in rep for g in gens]
    return [p for p in range(1, d + 1) if all(s(p) == p for s in schreier)]
