"""Monodromy of fibre products and composed coverings.

This is the formula-free route to M-Origamis: a dessin is pulled back along
the elliptic involution (fibre product) and then pushed through
multiplication by two on the torus (composition with a degree-4 covering),
with the subgroup words rewritten by Reidemeister-Schreier.

Nothing here may import :mod:`morigami.m_origami`; agreement between the two
routes is only meaningful while they stay independent.

Words in a free group are tuples of non-zero ints: ``k`` is the k-th
generator (1-based) and ``-k`` its inverse. A word is read like a product of
paths, right to left: ``(1, 2)`` means "first generator 2, then generator 1".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from .dessin import Dessin
from .perm import Permutation, is_transitive

__all__ = [
    "MonodromyRep",
    "TransversalData",
    "RewritingError",
    "free_reduce",
    "invert_word",
    "parse_word",
    "fibre_product_monodromy",
    "compose_monodromy",
    "sphere_monodromy",
    "pillowcase_pullback",
    "m_origami_via_covering",
    "H_PUSHFORWARD",
    "PILLOW_DOUBLE",
    "TORUS_DOUBLING",
    "WEIERSTRASS_LOOPS",
]


class RewritingError(ValueError):
    """A word could not be expressed in the supplied subgroup generators."""


def free_reduce(word: Sequence[int]) -> tuple:
    out: list = []
    for g in word:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def invert_word(word: Sequence[int]) -> tuple:
    return tuple(-g for g in reversed(word))


_TOKEN_RE = re.compile(r"\s*([A-Za-z])(?:\^\{?(-?\d+)\}?)?")


def parse_word(text: str, names: Sequence[str]) -> tuple:
    """Parse e.g. ``"B^-1 A^-1"`` or ``"yw"`` over single-letter ``names``.

    ``"1"`` or an empty string is the identity.
    """
    text = text.strip()
    if text in ("", "1"):
        return ()
    index = {n: i + 1 for i, n in enumerate(names)}
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.group(1) not in index:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        g = index[m.group(1)]
        e = int(m.group(2)) if m.group(2) else 1
        out.extend([g if e > 0 else -g] * abs(e))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return free_reduce(out)


def format_word(word: Sequence[int], names: Sequence[str]) -> str:
    if not word:
        return "1"
    return "".join(names[g - 1] if g > 0 else names[-g - 1] + "^-1" for g in word)


@dataclass(frozen=True)
class MonodromyRep:
    """A permutation representation of a free group of rank ``len(names)``."""

    names: tuple
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.names) != len(self.images):
            raise ValueError("one image per generator name is required")
        if len({p.degree for p in self.images}) > 1:
            raise ValueError("all images must share one degree")

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def degree(self) -> int:
        return self.images[0].degree

    def __getitem__(self, name: str) -> Permutation:
        return self.images[self.names.index(name)]

    def evaluate(self, word: Sequence[int]) -> Permutation:
        """Image of a word; the rightmost letter acts first."""
        result = Permutation.identity(self.degree)
        inverses: dict = {}
        for g in word:
            if g > 0:
                p = self.images[g - 1]
            else:
                if g not in inverses:
                    inverses[g] = self.images[-g - 1].inverse()
                p = inverses[g]
            result = result * p
        return result

    def word(self, text: str) -> tuple:
        return parse_word(text, self.names)

    def pullback(self, hom: Mapping[str, str | Sequence[int]], names: Sequence[str]) -> "MonodromyRep":
        """Precompose with a homomorphism given by generator images.

        ``hom[n]`` is a word over ``self.names`` (text or signed indices).
        """
        images = []
        for n in names:
            w = hom[n]
            if isinstance(w, str):
                w = self.word(w)
            images.append(self.evaluate(w))
        return MonodromyRep(tuple(names), tuple(images))

    def is_transitive(self) -> bool:
        return is_transitive(list(self.images), self.degree)


# -- fibre products ---------------------------------------------------------------


def fibre_product_monodromy(m_f: MonodromyRep, m_g: MonodromyRep) -> MonodromyRep:
    """Monodromy of ``A ×_X B`` over X: each loop acts by the pair
    ``(k, l) ↦ (m_f(k), m_g(l))``, flattened to ``(k-1)·d' + l``."""
    if m_f.names != m_g.names:
        raise ValueError(f"base generators differ: {m_f.names} vs {m_g.names}")
    d2 = m_g.degree
    images = []
    for pf, pg in zip(m_f.images, m_g.images):
        images.append(Permutation(
            [(pf(k) - 1) * d2 + pg(l) for k in range(1, m_f.degree + 1) for l in range(1, d2 + 1)]
        ))
    return MonodromyRep(m_f.names, tuple(images))


# -- composition of coverings -------------------------------------------------------


@dataclass(frozen=True)
class TransversalData:
    """Right coset representatives and subgroup generators for Stab(1).

    ``transversal[i-1]`` carries point i to point 1 under the base monodromy
    (the first one is the empty word). ``subgroup_words`` are the images of the
    subgroup's free generators, named ``subgroup_names``, as base words.
    """

    transversal: tuple
    subgroup_words: tuple
    subgroup_names: tuple

    @classmethod
    def from_text(cls, base_names, transversal, subgroup: Mapping[str, str]) -> "TransversalData":
        return cls(
            tuple(parse_word(t, base_names) for t in transversal),
            tuple(parse_word(w, base_names) for w in subgroup.values()),
            tuple(subgroup.keys()),
        )


class SchreierRewriter:
    """Rewrites elements of Stab(1) as words in the supplied subgroup generators.

    Schreier symbols ``(i, g)`` stand for ``γ_k·g·γ_i⁻¹`` with ``k = m(g)(i)``;
    the non-trivial ones freely generate the stabiliser. The supplied
    generators are written in those symbols and the basis change is undone by
    Nielsen moves, so any supplied free basis of the stabiliser is accepted.
    """

    def __init__(self, m_f: MonodromyRep, data: TransversalData):
        self.m_f = m_f
        self.data = data
        d = m_f.degree
        if len(data.transversal) != d:
            raise RewritingError(f"need {d} transversal words, got {len(data.transversal)}")
        if data.transversal[0]:
            raise RewritingError("the first transversal word must be empty")
        for i, gamma in enumerate(data.transversal, start=1):
            if m_f.evaluate(gamma)(i) != 1:
                raise RewritingError(f"transversal word {i} does not carry point {i} to 1")
        for name, u in zip(data.subgroup_names, data.subgroup_words):
            if m_f.evaluate(u)(1) != 1:
                raise RewritingError(f"subgroup generator {name} does not fix point 1")

        gammas = data.transversal
        self._symbols = {}  # (i, g) -> symbol index (1-based) for non-trivial ones
        self._symbol_words = []
        for i in range(1, d + 1):
            for g in range(1, m_f.rank + 1):
                k = m_f.images[g - 1](i)
                w = free_reduce(gammas[k - 1] + (g,) + invert_word(gammas[i - 1]))
                if w:
                    self._symbol_words.append(w)
                    self._symbols[(i, g)] = len(self._symbol_words)
        expected_rank = 1 + d * (m_f.rank - 1)
        if len(self._symbol_words) != expected_rank:
            raise RewritingError(
                f"transversal is not a Schreier transversal: {len(self._symbol_words)} non-trivial "
                f"Schreier generators, expected {expected_rank}"
            )
        if len(data.subgroup_words) != expected_rank:
            raise RewritingError(
                f"stabiliser has rank {expected_rank}, but {len(data.subgroup_words)} generators were given"
            )
        self._symbol_expr = self._invert_basis()

    def to_symbols(self, word: Sequence[int], start: int = 1) -> tuple:
        """Cocycle walk: rewrite ``word`` as Schreier symbols, starting at ``start``."""
        out = []
        point = start
        for g in reversed(word):  # rightmost letter acts first
            if g > 0:
                key = (point, g)
                point = self.m_f.images[g - 1](point)
                sym = self._symbols.get(key)
                if sym:
                    out.append(sym)
            else:
                prev = self.m_f.images[-g - 1].inverse()(point)
                sym = self._symbols.get((prev, -g))
                if sym:
                    out.append(-sym)
                point = prev
        # collected in acting order; the product reads right to left
        return free_reduce(tuple(reversed(out)))

    def _invert_basis(self) -> dict:
        basis = [self.to_symbols(u) for u in self.data.subgroup_words]
        exprs = [(k + 1,) for k in range(len(basis))]
        improved = True
        while improved:
            improved = False
            for i in range(len(basis)):
                for j in range(len(basis)):
                    if i == j:
                        continue
                    for sign in (1, -1):
                        v = basis[j] if sign == 1 else invert_word(basis[j])
                        e = exprs[j] if sign == 1 else invert_word(exprs[j])
                        for cand, cexpr in (
                            (free_reduce(basis[i] + v), free_reduce(exprs[i] + e)),
                            (free_reduce(v + basis[i]), free_reduce(e + exprs[i])),
                        ):
                            if len(cand) < len(basis[i]):
                                basis[i], exprs[i] = cand, cexpr
                                improved = True
        result = {}
        for b, e in zip(basis, exprs):
            if len(b) != 1:
                raise RewritingError("supplied subgroup generators are not a free basis of the stabiliser")
            sym = b[0]
            result[abs(sym)] = e if sym > 0 else invert_word(e)
        if len(result) != len(basis):
            raise RewritingError("supplied subgroup generators are not a free basis of the stabiliser")
        return result

    def rewrite(self, word: Sequence[int]) -> tuple:
        """Express an element of Stab(1) (a base word) in subgroup generators."""
        if self.m_f.evaluate(word)(1) != 1:
            raise RewritingError(f"word {word} does not lie in the stabiliser of 1")
        out = []
        for sym in self.to_symbols(word):
            e = self._symbol_expr[abs(sym)]
            out.extend(e if sym > 0 else invert_word(e))
        return free_reduce(out)

    def coset_word(self, i: int, word: Sequence[int]) -> tuple:
        """``γ_k·word·γ_i⁻¹`` with ``k = m(word)(i)``, freely reduced."""
        k = self.m_f.evaluate(word)(i)
        g = self.data.transversal
        return free_reduce(g[k - 1] + tuple(word) + invert_word(g[i - 1]))

    def c(self, i: int, word: Sequence[int]) -> tuple:
        """The rewritten cocycle ``c_i(word)`` over the subgroup generators."""
        return self.rewrite(self.coset_word(i, word))


def compose_monodromy(m_f: MonodromyRep, data: TransversalData, m_sub: MonodromyRep) -> MonodromyRep:
    """Monodromy of ``f∘g`` from ``m_f`` and the monodromy ``m_sub`` of g.

    Fibre points are pairs ``(i, j)`` flattened to ``(i-1)·deg(m_sub) + j``;
    ``γ`` sends ``(i, j)`` to ``(m_f(γ)(i), m_sub(c_i(γ))(j))``.
    """
    if tuple(m_sub.names) != tuple(data.subgroup_names):
        raise ValueError(f"m_sub generators {m_sub.names} do not match {data.subgroup_names}")
    rw = SchreierRewriter(m_f, data)
    d, d2 = m_f.degree, m_sub.degree
    images = []
    for g in range(1, m_f.rank + 1):
        img = [0] * (d * d2)
        pf = m_f.images[g - 1]
        for i in range(1, d + 1):
            k = pf(i)
            q = m_sub.evaluate(rw.c(i, (g,)))
            for j in range(1, d2 + 1):
                img[(i - 1) * d2 + j - 1] = (k - 1) * d2 + q(j)
        images.append(Permutation(img))
    return MonodromyRep(m_f.names, tuple(images))


# -- the pillowcase data ------------------------------------------------------------

SPHERE_NAMES = ("w", "x", "y")
TORUS4_NAMES = ("a", "b", "c", "d", "e")

# Push-forward of the elliptic involution on loops of the 4-punctured torus,
# as words in the free generators w, x, y of the 4-punctured sphere
# (the fourth loop is z = x⁻¹w⁻¹y⁻¹).
H_PUSHFORWARD = {
    "a": "y w",
    "b": "x^-1 w^-1",
    "c": "w^2",
    "d": "x w^-1",
    "e": "y^-1 w^-1",
}

# Simple loops around the Weierstrass points 0, 1, ∞, λ of the torus.
WEIERSTRASS_LOOPS = {
    "0": "d b^-1",
    "1": "a c^-1 e^-1",
    "inf": "b e d^-1 a^-1",
    "lambda": "c",
}


def sphere_monodromy(dessin: Dessin) -> MonodromyRep:
    """The dessin as a covering of the 4-punctured sphere, unramified over λ."""
    return MonodromyRep(SPHERE_NAMES, (Permutation.identity(dessin.d), dessin.px, dessin.py))


def pillowcase_pullback(dessin: Dessin) -> MonodromyRep:
    """Monodromy on a, b, c, d, e of the pullback of the dessin along the
    elliptic involution, computed as ``m_β ∘ h_*``."""
    return sphere_monodromy(dessin).pullback(H_PUSHFORWARD, TORUS4_NAMES)


def _pillow_double() -> tuple:
    swap = Permutation.from_cycles([(1, 2)], 2)
    m_h = MonodromyRep(SPHERE_NAMES, (swap, swap, swap))
    data = TransversalData.from_text(SPHERE_NAMES, ["1", "w^-1"], H_PUSHFORWARD)
    return m_h, data


def _torus_doubling() -> tuple:
    m2 = MonodromyRep(
        ("A", "B"),
        (Permutation.from_cycles([(1, 2), (3, 4)], 4), Permutation.from_cycles([(1, 3), (2, 4)], 4)),
    )
    data = TransversalData.from_text(
        ("A", "B"),
        ["1", "A^-1", "B^-1", "B^-1 A^-1"],
        {
            "a": "A^2",
            "b": "B^2",
            "c": "B^-1 A^-1 B A",
            "d": "A^-1 B A B",
            "e": "B^-1 A^2 B",
        },
    )
    return m2, data


# (m_h, data): the elliptic involution E* -> P* as a degree-2 covering
PILLOW_DOUBLE = _pillow_double()
# (m_[2], data): multiplication by two on the once-punctured torus
TORUS_DOUBLING = _torus_doubling()


def m_origami_via_covering(dessin: Dessin) -> MonodromyRep:
    """The M-Origami monodromy on A, B via fibre product and composition."""
    m2, data = TORUS_DOUBLING
    return compose_monodromy(m2, data, pillowcase_pullback(dessin))
