"""Dessins d'enfants as transitive permutation pairs.

A dessin of degree d is a pair ``(px, py)`` of permutations of the edges
{1..d}: ``px`` rotates edges around black vertices (monodromy around 0) and
``py`` around white vertices (monodromy around 1). The monodromy around
infinity is derived, ``pz = px⁻¹·py⁻¹``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import permutations as _all_perms
from typing import Callable, Iterator, Optional

from .perm import (
    Permutation,
    _key_for_root,
    canonical_key,
    cycle_type,
    cycles,
    format_cycles,
    key_to_perms,
    orbits,
    parse_cycles,
    simultaneous_conjugacy,
)

__all__ = [
    "Dessin",
    "WeakSymmetry",
    "W_ELEMENTS",
    "new_dessin",
    "genus",
    "is_pre_clean",
    "is_clean",
    "is_filthy",
    "is_unicellular",
    "is_tree",
    "w_act",
    "weak_automorphism_group",
    "is_exceptional",
    "enumerate_dessins",
    "iter_dessins",
    "parse_dessin",
    "MAX_ENUMERATION_DEGREE",
]

MAX_ENUMERATION_DEGREE = 9


@dataclass(frozen=True)
class Dessin:
    px: Permutation
    py: Permutation

    def __post_init__(self):
        if self.px.degree != self.py.degree:
            raise ValueError(f"degree mismatch: px has {self.px.degree}, py has {self.py.degree}")
        orbs = orbits([self.px, self.py], self.px.degree)
        if len(orbs) > 1:
            shown = " ".join("{" + ",".join(map(str, o)) + "}" for o in orbs)
            raise ValueError(f"pair is not transitive; orbits {shown}")

    @property
    def d(self) -> int:
        return self.px.degree

    @property
    def pz(self) -> Permutation:
        return self.px.inverse() * self.py.inverse()

    def key(self) -> tuple:
        """Isomorphism invariant (equal iff the dessins are isomorphic)."""
        return canonical_key([self.px, self.py])

    def canonical(self) -> "Dessin":
        return Dessin(*key_to_perms(self.key(), 2))

    def is_isomorphic(self, other: "Dessin") -> bool:
        if self.d != other.d:
            return False
        return simultaneous_conjugacy(self.px, self.py, other.px, other.py) is not None

    def to_text(self) -> str:
        return f"px={format_cycles(self.px)}; py={format_cycles(self.py)}; d={self.d}"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "px": [list(c) for c in cycles(self.px) if len(c) > 1],
            "py": [list(c) for c in cycles(self.py) if len(c) > 1],
        }

    def __str__(self):
        return self.to_text()


def new_dessin(px: Permutation, py: Permutation) -> Dessin:
    return Dessin(px, py)


# -- invariants and predicates -------------------------------------------------


def euler_defect(dessin: Dessin) -> int:
    """``#cycles(px) + #cycles(py) + #cycles(pz) - d``, which equals 2 - 2g."""
    return (
        len(cycles(dessin.px)) + len(cycles(dessin.py)) + len(cycles(dessin.pz)) - dessin.d
    )


def genus(dessin: Dessin) -> int:
    chi = euler_defect(dessin)
    if chi % 2 or chi > 2:
        raise AssertionError(f"impossible Euler characteristic {chi} for {dessin}")
    return (2 - chi) // 2


def is_pre_clean(dessin: Dessin) -> bool:
    return (dessin.py * dessin.py).is_identity()


def is_clean(dessin: Dessin) -> bool:
    return all(n == 2 for n in cycle_type(dessin.py))


def is_filthy(dessin: Dessin) -> bool:
    return not any((p * p).is_identity() for p in (dessin.px, dessin.py, dessin.pz))


def is_unicellular(dessin: Dessin) -> bool:
    return len(cycles(dessin.pz)) == 1


def is_tree(dessin: Dessin) -> bool:
    return is_unicellular(dessin) and genus(dessin) == 0


def is_exceptional(dessin: Dessin) -> tuple:
    """Return ``(True, cycle)`` if some cycle of ``py`` consists of points
    fixed by both ``px²`` and ``pz²``, else ``(False, None)``.

    These are the dessins whose M-Origamis escape the generic horizontal
    cylinder rules.
    """
    px2 = dessin.px * dessin.px
    pz2 = dessin.pz * dessin.pz
    for c in cycles(dessin.py):
        if all(px2(i) == i and pz2(i) == i for i in c):
            return True, c
    return False, None


# -- the weak symmetry group W = <s, t> ≅ S3 ----------------------------------

# W acts on {0, 1, ∞}: s = (z ↦ 1-z) swaps 0 and 1, t = (z ↦ 1/z) swaps 0 and ∞.
# Elements are stored as reduced words; products go through this 3-point model.
_POINTS = ("0", "1", "inf")
_GEN_ACTION = {"s": (1, 0, 2), "t": (2, 1, 0)}


def _word_action(word: str) -> tuple:
    act = (0, 1, 2)
    for letter in reversed(word):  # rightmost letter acts first
        g = _GEN_ACTION[letter]
        act = tuple(g[i] for i in act)
    return act


_REDUCED_WORDS = ("", "s", "t", "st", "ts", "tst")
_BY_ACTION = {_word_action(w): w for w in _REDUCED_WORDS}


@dataclass(frozen=True, order=True)
class WeakSymmetry:
    word: str = ""

    def __post_init__(self):
        if any(ch not in "st" for ch in self.word):
            raise ValueError(f"W words use only 's' and 't', got {self.word!r}")
        reduced = _BY_ACTION[_word_action(self.word)]
        object.__setattr__(self, "word", reduced)

    def __mul__(self, other: "WeakSymmetry") -> "WeakSymmetry":
        return WeakSymmetry(self.word + other.word)

    def inverse(self) -> "WeakSymmetry":
        return WeakSymmetry(self.word[::-1])

    def order(self) -> int:
        n, x = 1, self
        while x.word:
            x = x * self
            n += 1
        return n

    def __str__(self):
        return self.word or "id"


W_ELEMENTS = tuple(WeakSymmetry(w) for w in _REDUCED_WORDS)


def w_act(w: WeakSymmetry | str, dessin: Dessin) -> Dessin:
    """Postcompose the Belyi map with ``w``; left action up to isomorphism."""
    if isinstance(w, str):
        w = WeakSymmetry(w)
    px, py, pz = dessin.px, dessin.py, dessin.pz
    table = {
        "": (px, py),
        "s": (py, px),
        "t": (pz, py),
        "st": (py, pz),
        "ts": (pz, px),
        "tst": (px, pz),
    }
    return Dessin(*table[w.word])


def weak_automorphism_group(dessin: Dessin) -> dict:
    """The stabiliser W_β as ``{element: conjugator witnessing w·β ≅ β}``."""
    out = {}
    for w in W_ELEMENTS:
        image = w_act(w, dessin)
        c = simultaneous_conjugacy(dessin.px, dessin.py, image.px, image.py)
        if c is not None:
            out[w] = c
    return out


def w_orbit(dessin: Dessin) -> list:
    """Representatives of the W-orbit up to isomorphism, in W_ELEMENTS order."""
    seen = {}
    for w in W_ELEMENTS:
        image = w_act(w, dessin)
        seen.setdefault(image.key(), image)
    return list(seen.values())


# -- enumeration -----------------------------------------------------------------


def _pointed_actions(d: int) -> Iterator[tuple]:
    """Every transitive pair on {0..d-1} in breadth-first normal form.

    This is a coset-table backtrack (low-index subgroups of F2): the first
    undefined entry, scanned by point then in the order x, x⁻¹, y, y⁻¹, is set
    either to an existing point or to the next new one. Each pointed
    transitive action is produced exactly once, already labelled the way
    :func:`morigami.perm.canonical_key` labels from its base point.
    """
    UNDEF = -1
    # tables[0]=x, [1]=x⁻¹, [2]=y, [3]=y⁻¹; inverse of table t is t ^ 1
    tables = [[UNDEF] * d for _ in range(4)]
    n_points = [1]

    def first_undefined():
        for k in range(n_points[0]):
            for t in range(4):
                if tables[t][k] == UNDEF:
                    return k, t
        return None

    def rec():
        pos = first_undefined()
        if pos is None:
            if n_points[0] == d:
                yield tuple(tables[0]), tuple(tables[2])
            return
        k, t = pos
        tab, inv = tables[t], tables[t ^ 1]
        for q in range(n_points[0]):
            if inv[q] == UNDEF:
                tab[k] = q
                inv[q] = k
                yield from rec()
                tab[k] = UNDEF
                inv[q] = UNDEF
        if n_points[0] < d:
            q = n_points[0]
            n_points[0] += 1
            tab[k] = q
            inv[q] = k
            yield from rec()
            tab[k] = UNDEF
            inv[q] = UNDEF
            n_points[0] -= 1

    yield from rec()


def _is_least_rooted(x: tuple, y: tuple) -> bool:
    # root 0 of a breadth-first normal table relabels to itself
    gens = [x, y]
    invs = []
    for g in gens:
        inv = [0] * len(g)
        for k, i in enumerate(g):
            inv[i] = k
        invs.append(tuple(inv))
    own = x + y
    for r in range(1, len(x)):
        if _key_for_root(gens, invs, r) < own:
            return False
    return True


def iter_dessins(d: int, where: Optional[Callable[[Dessin], bool]] = None, *, max_degree: int = MAX_ENUMERATION_DEGREE) -> Iterator[Dessin]:
    """Yield one canonical dessin per isomorphism class of degree ``d``.

    ``where`` must be an isomorphism invariant; it is applied before the
    (expensive) minimality test, so selective predicates speed things up.
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    if d > max_degree:
        raise ValueError(f"degree {d} exceeds the enumeration ceiling {max_degree}")
    for x, y in _pointed_actions(d):
        if where is not None:
            candidate = Dessin(Permutation._raw(x), Permutation._raw(y))
            if not where(candidate):
                continue
        if _is_least_rooted(x, y):
            yield Dessin(Permutation._raw(x), Permutation._raw(y))


def enumerate_dessins(d: int, where: Optional[Callable[[Dessin], bool]] = None, *, max_degree: int = MAX_ENUMERATION_DEGREE) -> list:
    """All dessins of degree ``d`` up to isomorphism, sorted by canonical key."""
    return sorted(iter_dessins(d, where, max_degree=max_degree), key=Dessin.key)


def brute_force_dessins(d: int) -> list:
    """Slow reference enumeration over S_d × S_d.

    Duplicates are removed by sweeping out full conjugation orbits, so this
    shares no code with the canonical-form machinery.
    """
    perms = [tuple(p) for p in _all_perms(range(d))]
    pairs = set()
    for x in perms:
        for y in perms:
            if len(orbits([Permutation._raw(x), Permutation._raw(y)], d)) == 1:
                pairs.add((x, y))
    reps = []
    while pairs:
        x, y = min(pairs)
        reps.append(Dessin(Permutation._raw(x), Permutation._raw(y)))
        for c in perms:
            cinv = [0] * d
            for k, i in enumerate(c):
                cinv[i] = k
            pairs.discard((
                tuple(c[x[cinv[k]]] for k in range(d)),
                tuple(c[y[cinv[k]]] for k in range(d)),
            ))
    return reps


# -- text / JSON format ----------------------------------------------------------

_FIELD_RE = re.compile(r"^\s*(px|py|d|sA|sB)\s*=\s*(.*?)\s*$")


def _parse_fields(text: str, names: tuple) -> dict:
    fields = {}
    offset = 0
    for part in text.split(";"):
        if part.strip():
            m = _FIELD_RE.match(part)
            if not m or m.group(1) not in names + ("d",):
                raise ValueError(f"cannot parse {part.strip()!r} at position {offset}")
            if m.group(1) in fields:
                raise ValueError(f"duplicate field {m.group(1)!r} at position {offset}")
            fields[m.group(1)] = m.group(2)
        offset += len(part) + 1
    missing = [n for n in names if n not in fields]
    if missing:
        raise ValueError(f"missing field(s): {', '.join(missing)}")
    return fields


def parse_pair(text: str, names: tuple) -> tuple:
    """Parse ``name1=...; name2=...; d=N`` or the JSON object equivalent."""
    text = text.strip()
    if text.startswith("{"):
        obj = json.loads(text)
        d = obj.get("d", obj.get("n"))
        if d is None:
            raise ValueError("JSON input needs a 'd' (or 'n') field")
        return tuple(Permutation.from_cycles(obj[n], int(d)) for n in names)
    fields = _parse_fields(text, names)
    d = int(fields["d"]) if "d" in fields else None
    if d is None:
        d = max(
            max((int(t) for t in re.findall(r"\d+", fields[n])), default=1) for n in names
        )
    return tuple(parse_cycles(fields[n], d) for n in names)


def parse_dessin(text: str) -> Dessin:
    return Dessin(*parse_pair(text, ("px", "py")))
