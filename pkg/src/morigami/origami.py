"""Square-tiled surfaces: invariants, the SL2(Z)-action, Veech groups and cylinders.

An origami is a transitive pair ``(sA, sB)`` on the squares {1..n}: ``sA(k)``
is the right neighbour of square k and ``sB(k)`` its upper neighbour.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .dessin import parse_pair
from .perm import (
    Permutation,
    canonical_key,
    centralizer,
    cycles,
    format_cycles,
    key_to_perms,
    orbits,
)

__all__ = [
    "Origami",
    "Cylinder",
    "CylinderDecomposition",
    "VeechReport",
    "DIRECTIONS",
    "LEVEL2_NAMES",
    "genus",
    "vertex_permutation",
    "vertex_orbits",
    "punctures",
    "translations",
    "parse_sl2_word",
    "format_sl2_word",
    "LEVEL2_REPS",
    "GAMMA2_GENERATORS",
    "act",
    "sl2_orbit",
    "level2_stabilizer",
    "cylinder_decomposition",
    "parse_origami",
]


@dataclass(frozen=True)
class Origami:
    sA: Permutation
    sB: Permutation

    def __post_init__(self):
        if self.sA.degree != self.sB.degree:
            raise ValueError(f"degree mismatch: sA on {self.sA.degree}, sB on {self.sB.degree} squares")
        orb = orbits([self.sA, self.sB], self.sA.degree)
        if len(orb) > 1:
            raise ValueError(f"sA, sB do not act transitively; orbits: {orb}")

    @property
    def n(self) -> int:
        return self.sA.degree

    def key(self) -> tuple:
        return canonical_key([self.sA, self.sB])

    def canonical(self) -> "Origami":
        return Origami(*key_to_perms(self.key(), 2))

    def is_isomorphic(self, other: "Origami") -> bool:
        return self.n == other.n and self.key() == other.key()

    def to_text(self) -> str:
        return f"sA={format_cycles(self.sA)}; sB={format_cycles(self.sB)}; d={self.n}"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sA": [list(c) for c in cycles(self.sA) if len(c) > 1],
            "sB": [list(c) for c in cycles(self.sB) if len(c) > 1],
        }

    def __str__(self):
        return self.to_text()


def parse_origami(text: str) -> Origami:
    return Origami(*parse_pair(text, ("sA", "sB")))


# -- invariants ----------------------------------------------------------------


def vertex_permutation(o: Origami) -> Permutation:
    """``sA·sB·sA⁻¹·sB⁻¹``; its cycles are the vertices, each square standing
    for its lower-left corner."""
    return o.sA * o.sB * o.sA.inverse() * o.sB.inverse()


def vertex_orbits(o: Origami) -> list:
    return cycles(vertex_permutation(o))


def genus(o: Origami) -> int:
    v = len(vertex_orbits(o))
    assert (o.n - v) % 2 == 0, "vertex count parity violated"
    return 1 + (o.n - v) // 2


def punctures(o: Origami) -> int:
    return len(vertex_orbits(o))


def translations(o: Origami) -> list:
    """The translation group, as the centralizer of ``⟨sA, sB⟩``."""
    return centralizer([o.sA, o.sB])


# -- the SL2(Z) action ------------------------------------------------------------


def _act_S(o: Origami) -> Origami:
    return Origami(o.sB.inverse(), o.sA)


def _act_S_inv(o: Origami) -> Origami:
    return Origami(o.sB, o.sA.inverse())


def _act_T(o: Origami) -> Origami:
    return Origami(o.sA, o.sA.inverse() * o.sB)


def _act_T_inv(o: Origami) -> Origami:
    return Origami(o.sA, o.sA * o.sB)


def _act_neg(o: Origami) -> Origami:
    return Origami(o.sA.inverse(), o.sB.inverse())


_LETTER_ACTION = {
    ("S", 1): _act_S,
    ("S", -1): _act_S_inv,
    ("T", 1): _act_T,
    ("T", -1): _act_T_inv,
    ("-I", 1): _act_neg,
    ("-I", -1): _act_neg,
}

_SL2_TOKEN = re.compile(r"\s*(-I|S|T|I)(?:\^\{?(-?\d+)\}?)?")


def parse_sl2_word(word: str | Sequence) -> tuple:
    """Normalise a word in S, T, -I to a tuple of ``(letter, ±1)``.

    Accepts text such as ``"S T^-2 S^-1"`` (spaces or ``·``/``*`` optional)
    or a sequence of such tokens or of already parsed ``(letter, ±1)`` pairs.
    ``"I"`` and ``""`` are the identity.
    """
    if not isinstance(word, str):
        if all(isinstance(x, tuple) for x in word):
            bad = [x for x in word if x not in _LETTER_ACTION]
            if bad:
                raise ValueError(f"not an SL2(Z) letter: {bad[0]!r}")
            return tuple(word)
        word = " ".join(word)
    text = word.replace("·", " ").replace("*", " ").strip()
    out = []
    pos = 0
    while pos < len(text):
        m = _SL2_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse SL2(Z) word {word!r} at position {pos}")
        letter = m.group(1)
        e = int(m.group(2)) if m.group(2) else 1
        if letter != "I":
            out.extend([(letter, 1 if e > 0 else -1)] * abs(e))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tuple(out)


def format_sl2_word(word: Sequence) -> str:
    if not word:
        return "I"
    parts = []
    for letter, e in word:
        if parts and parts[-1][0] == letter:
            parts[-1][1] += e
        else:
            parts.append([letter, e])
    parts = [p for p in parts if p[1]]
    if not parts:
        return "I"
    return " ".join(l if e == 1 else f"{l}^{e}" for l, e in parts)


def act(word, o: Origami) -> Origami:
    """Left action: ``act("S T", o)`` applies T first, then S."""
    for letter in reversed(parse_sl2_word(word)):
        o = _LETTER_ACTION[letter](o)
    return o


# -- Veech groups ------------------------------------------------------------------

# Coset representatives of Γ(2), with their images in SL2(Z)/Γ(2) ≅ S3
# encoded as permutations of {0, 1, ∞}: S swaps 0 and 1, T swaps 0 and ∞.
LEVEL2_REPS = ("I", "S", "T", "S T", "T S", "T S T")

LEVEL2_NAMES = {
    frozenset({"I"}): "Gamma(2)",
    frozenset({"I", "S"}): "<Gamma(2),S>",
    frozenset({"I", "T"}): "<Gamma(2),T>",
    frozenset({"I", "T S T"}): "<Gamma(2),TST>",
    frozenset({"I", "S T", "T S"}): "<Gamma(2),ST>",
    frozenset(LEVEL2_REPS): "SL2(Z)",
}

GAMMA2_GENERATORS = ("T^2", "S T^-2 S^-1", "-I")


def level2_stabilizer(o: Origami) -> Optional[frozenset]:
    """The stabiliser of ``o`` among the six Γ(2) coset representatives,
    provided Γ(2) itself fixes ``o``; otherwise None."""
    key = o.key()
    if any(act(g, o).key() != key for g in GAMMA2_GENERATORS):
        return None
    return frozenset(r for r in LEVEL2_REPS if act(r, o).key() == key)


def _cycle_count(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    count = 0
    for i in range(len(perm)):
        if not seen[i]:
            count += 1
            while not seen[i]:
                seen[i] = True
                i = perm[i]
    return count


@dataclass
class VeechReport:
    """The SL2(Z)-orbit of an origami as a coset graph.

    ``orbit[0]`` is the canonical form of the input; ``words[i]`` is an
    SL2(Z) word carrying the input to ``orbit[i]``. Edge lists are 0-based:
    ``s_edges[i]`` is the index of ``act(S, orbit[i])``.
    """

    orbit: list
    s_edges: tuple
    t_edges: tuple
    neg_edges: tuple
    words: list
    parents: list = field(default_factory=list)
    level2: Optional[str] = None
    level2_stabilizer: Optional[frozenset] = None
    source: str = "orbit"

    @property
    def index(self) -> int:
        return len(self.orbit)

    @property
    def contains_minus_I(self) -> bool:
        return self.neg_edges[0] == 0

    @property
    def cusp_count(self) -> int:
        """Orbits of ⟨T, −I⟩ on the coset graph; the cycles of T when −I ∈ Γ."""
        if all(self.neg_edges[i] == i for i in range(self.index)):
            return _cycle_count(self.t_edges)
        parent = list(range(self.index))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for edges in (self.t_edges, self.neg_edges):
            for i, j in enumerate(edges):
                parent[find(i)] = find(j)
        return len({find(i) for i in range(self.index)})

    def relation_checks(self) -> dict:
        """Group relations every coset graph must satisfy."""
        n = self.index
        s, t = self.s_edges, self.t_edges

        def power(p, k):
            out = list(range(n))
            for _ in range(k):
                out = [p[i] for i in out]
            return out

        st = [s[t[i]] for i in range(n)]
        ident = list(range(n))
        return {
            "s_order_divides_4": power(s, 4) == ident,
            "st_order_divides_6": power(st, 6) == ident,
            "s_squared_is_minus_I": power(s, 2) == list(self.neg_edges),
        }

    def schreier_generators(self) -> list:
        """Words generating the Veech group: ``w_j⁻¹·g·w_i`` for each edge
        ``i → j`` labelled ``g`` outside the search tree."""
        gens = []
        for label, edges in (("S", self.s_edges), ("T", self.t_edges)):
            for i, j in enumerate(edges):
                if self.parents[j] == (i, label):
                    continue
                w_j_inv = tuple((l, -e) for l, e in reversed(self.words[j]))
                gens.append(format_sl2_word(w_j_inv + ((label, 1),) + self.words[i]))
        return gens

    def to_json(self, include_orbit: bool = False) -> dict:
        out = {
            "index": self.index,
            "s_edges": list(self.s_edges),
            "t_edges": list(self.t_edges),
            "contains_minus_I": self.contains_minus_I,
            "cusp_count": self.cusp_count,
            "level2": self.level2,
            "level2_stabilizer": sorted(self.level2_stabilizer, key=LEVEL2_REPS.index) if self.level2_stabilizer else None,
            "source": self.source,
        }
        if include_orbit:
            out["orbit"] = [o.to_json() for o in self.orbit]
            out["words"] = [format_sl2_word(w) for w in self.words]
        return out


def sl2_orbit(o: Origami) -> VeechReport:
    """Breadth-first search of the SL2(Z)-orbit over canonical forms."""
    start = o.canonical()
    keys = {start.key(): 0}
    orbit = [start]
    words = [()]
    parents = [None]
    s_edges: list = []
    t_edges: list = []
    neg_edges: list = []
    queue = deque([0])

    def index_of(x: Origami, parent: int, letter: str) -> int:
        k = x.key()
        if k not in keys:
            keys[k] = len(orbit)
            orbit.append(Origami(*key_to_perms(k, 2)))
            words.append(((letter, 1),) + words[parent])
            parents.append((parent, letter))
            queue.append(keys[k])
        return keys[k]

    while queue:
        i = queue.popleft()
        cur = orbit[i]
        for edges, letter, fn in ((s_edges, "S", _act_S), (t_edges, "T", _act_T)):
            j = index_of(fn(cur), i, letter)
            while len(edges) <= i:
                edges.append(None)
            edges[i] = j
    for cur in orbit:
        neg_edges.append(keys[_act_neg(cur).key()])
    stab = level2_stabilizer(start)
    return VeechReport(
        orbit=orbit,
        s_edges=tuple(s_edges),
        t_edges=tuple(t_edges),
        neg_edges=tuple(neg_edges),
        words=words,
        parents=parents,
        level2=LEVEL2_NAMES.get(stab) if stab is not None else None,
        level2_stabilizer=stab,
    )


# -- cylinders ----------------------------------------------------------------------

DIRECTIONS = {"horizontal": (1, 0), "vertical": (0, 1), "diagonal": (1, 1)}

# ``g`` with direction = g⁻¹·(1, 0); the horizontal decomposition of
# ``act(g⁻¹, o)`` is the decomposition of ``o`` in that direction.
_DIRECTION_PULLBACK = {"horizontal": "", "vertical": "S^-1", "diagonal": "S^-1 T^-1"}


@dataclass(frozen=True)
class Cylinder:
    width: int
    height: int
    rows: tuple = ()  # bottom to top; each row lists squares left to right

    def to_json(self) -> dict:
        return {"width": self.width, "height": self.height, "rows": [list(r) for r in self.rows]}


@dataclass(frozen=True)
class CylinderDecomposition:
    direction: str
    cylinders: tuple
    method: str = "geometric"

    @property
    def vector(self) -> tuple:
        return DIRECTIONS[self.direction]

    def types(self) -> list:
        """Sorted ``(width, height)`` multiset."""
        return sorted((c.width, c.height) for c in self.cylinders)

    @property
    def area(self) -> int:
        return sum(c.width * c.height for c in self.cylinders)

    def to_json(self) -> dict:
        return {
            "direction": self.direction,
            "vector": list(self.vector),
            "method": self.method,
            "types": [list(t) for t in self.types()],
            "cylinders": [c.to_json() for c in self.cylinders],
        }


def _horizontal_cylinders(o: Origami) -> tuple:
    vp = vertex_permutation(o)
    rows = []
    row_of = {}
    for cyc in cycles(o.sA):
        row_of.update({s: len(rows) for s in cyc})
        rows.append(cyc)
    up = {}
    for r, cyc in enumerate(rows):
        above = [o.sB(s) for s in cyc]
        # the row above continues the cylinder iff no corner on the shared line is singular
        if all(vp(s) == s for s in above):
            up[r] = row_of[above[0]]
    has_below = set(up.values())
    seen = set()
    out = []

    def walk(r):
        # rows come out aligned: each starts directly above the previous row's first square
        stack = []
        first = rows[r][0]
        while r not in seen:
            seen.add(r)
            row = rows[r]
            i = row.index(first)
            stack.append(row[i:] + row[:i])
            if r not in up:
                break
            r = up[r]
            first = o.sB(stack[-1][0])
        return stack

    for r in range(len(rows)):
        if r not in has_below and r not in seen:
            out.append(walk(r))
    for r in range(len(rows)):  # closed chains, e.g. the torus
        if r not in seen:
            out.append(walk(r))
    return tuple(Cylinder(len(rs[0]), len(rs), tuple(rs)) for rs in out)


def cylinder_decomposition(o: Origami, direction: str = "horizontal") -> CylinderDecomposition:
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {sorted(DIRECTIONS)}, got {direction!r}")
    cyls = _horizontal_cylinders(act(_DIRECTION_PULLBACK[direction], o))
    dec = CylinderDecomposition(direction, cyls)
    assert dec.area == o.n, "cylinder areas do not add up to the number of squares"
    return dec
