"""Permutations on {1..d} and conjugacy machinery for transitive tuples.

Points are 1-based at every interface; images are stored 0-based internally.
Composition is right-to-left: ``(p * q)(k) == p(q(k))``.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Iterable, Optional, Sequence

__all__ = [
    "Permutation",
    "compose",
    "inverse",
    "cycles",
    "cycle_type",
    "is_transitive",
    "orbits",
    "simultaneous_conjugacy",
    "canonical_form",
    "canonical_key",
    "centralizer",
    "parse_cycles",
]


class Permutation:
    """An immutable bijection of {1..d}.

    Construct from a sequence of 1-based images (``images[k-1]`` is the image
    of ``k``), or use :meth:`from_cycles`, :meth:`identity` or :func:`parse_cycles`.
    """

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int]):
        img = tuple(int(i) - 1 for i in images)
        d = len(img)
        if d == 0:
            raise ValueError("a permutation needs degree >= 1")
        if sorted(img) != list(range(d)):
            raise ValueError(f"images {tuple(images)} are not a bijection of 1..{d}")
        self._img = img
        self._hash = None

    @classmethod
    def _raw(cls, img: tuple) -> "Permutation":
        # trusted 0-based constructor, skips validation
        p = object.__new__(cls)
        p._img = img
        p._hash = None
        return p

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        if d < 1:
            raise ValueError("degree must be positive")
        return cls._raw(tuple(range(d)))

    @classmethod
    def from_cycles(cls, cycs: Iterable[Sequence[int]], d: Optional[int] = None) -> "Permutation":
        """Build from disjoint cycles; ``d`` defaults to the largest point."""
        cycs = [tuple(int(x) for x in c) for c in cycs]
        top = max((x for c in cycs for x in c), default=1)
        if d is None:
            d = top
        if top > d or any(x < 1 for c in cycs for x in c):
            raise ValueError(f"cycle entries must lie in 1..{d}")
        img = list(range(d))
        seen = set()
        for c in cycs:
            for x in c:
                if x in seen:
                    raise ValueError(f"point {x} appears in more than one cycle")
                seen.add(x)
            for a, b in zip(c, c[1:] + c[:1]):
                img[a - 1] = b - 1
        return cls._raw(tuple(img))

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        """1-based images, position ``k-1`` holding the image of ``k``."""
        return tuple(i + 1 for i in self._img)

    def __call__(self, k: int) -> int:
        return self._img[k - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, n: int) -> "Permutation":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Permutation.identity(self.degree)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "Permutation":
        return inverse(self)

    def cycles(self) -> list:
        return cycles(self)

    def cycle_type(self) -> tuple:
        return cycle_type(self)

    def is_identity(self) -> bool:
        return all(i == k for k, i in enumerate(self._img))

    def order(self) -> int:
        from math import lcm

        return lcm(*cycle_type(self))

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return (self.degree, self._img) < (other.degree, other._img)

    def __repr__(self):
        return f"Permutation({format_cycles(self)!r})"

    def __str__(self):
        return format_cycles(self)


def _check_same_degree(*perms: Permutation) -> int:
    d = perms[0].degree
    for p in perms[1:]:
        if p.degree != d:
            raise ValueError(f"degree mismatch: {d} vs {p.degree}")
    return d


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p∘q``, i.e. apply ``q`` first."""
    _check_same_degree(p, q)
    pi = p._img
    return Permutation._raw(tuple(pi[j] for j in q._img))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for k, i in enumerate(p._img):
        inv[i] = k
    return Permutation._raw(tuple(inv))


def cycles(p: Permutation) -> list:
    """Disjoint cycles as 1-based tuples, fixed points included, each starting
    at its smallest point, ordered by that point."""
    img = p._img
    seen = [False] * len(img)
    out = []
    for start in range(len(img)):
        if seen[start]:
            continue
        cyc = []
        k = start
        while not seen[k]:
            seen[k] = True
            cyc.append(k + 1)
            k = img[k]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Permutation) -> tuple:
    """Cycle lengths in decreasing order (fixed points count as 1)."""
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def orbits(perms: Sequence[Permutation], d: int) -> list:
    """Orbits of the group generated by ``perms`` on {1..d}, via union-find."""
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        if p.degree != d:
            raise ValueError(f"degree mismatch: expected {d}, got {p.degree}")
        for k, i in enumerate(p._img):
            rk, ri = find(k), find(i)
            if rk != ri:
                parent[rk] = ri
    groups: dict = {}
    for k in range(d):
        groups.setdefault(find(k), []).append(k + 1)
    return sorted(groups.values())


def is_transitive(perms: Sequence[Permutation], d: int) -> bool:
    return len(orbits(perms, d)) == 1


# -- conjugacy of transitive tuples ------------------------------------------


def _require_transitive(gens: Sequence[Permutation]) -> int:
    d = _check_same_degree(*gens)
    if not is_transitive(gens, d):
        raise ValueError("generators must act transitively")
    return d


def _extend_anchor(src: Sequence[tuple], dst: Sequence[tuple], target: int) -> Optional[list]:
    """Try to build c with c(0) = target and c·src[i]·c⁻¹ = dst[i].

    ``src``/``dst`` are 0-based image tuples of transitive tuples. The map is
    forced along the orbit of 0; returns it as a list, or None on conflict.
    """
    d = len(src[0])
    c = [-1] * d
    used = [False] * d
    c[0] = target
    used[target] = True
    queue = deque([0])
    while queue:
        k = queue.popleft()
        ck = c[k]
        for s, t in zip(src, dst):
            k2, ck2 = s[k], t[ck]
            if c[k2] == -1:
                if used[ck2]:
                    return None
                c[k2] = ck2
                used[ck2] = True
                queue.append(k2)
            elif c[k2] != ck2:
                return None
    return c


def simultaneous_conjugacy(a1: Permutation, b1: Permutation, a2: Permutation, b2: Permutation) -> Optional[Permutation]:
    """Return c with ``c·a1·c⁻¹ == a2`` and ``c·b1·c⁻¹ == b2``, or None.

    Both pairs must be transitive; the conjugator is then determined by the
    image of point 1, so at most d candidates are tried.
    """
    return conjugator([a1, b1], [a2, b2])


def conjugator(src: Sequence[Permutation], dst: Sequence[Permutation]) -> Optional[Permutation]:
    """Tuple version of :func:`simultaneous_conjugacy`."""
    if len(src) != len(dst):
        raise ValueError("tuples must have the same length")
    _require_transitive(src)
    _require_transitive(dst)
    d = _check_same_degree(*src, *dst)
    s = [p._img for p in src]
    t = [p._img for p in dst]
    if any(cycle_type(p) != cycle_type(q) for p, q in zip(src, dst)):
        return None
    for target in range(d):
        c = _extend_anchor(s, t, target)
        if c is not None:
            return Permutation._raw(tuple(c))
    return None


def _bfs_relabel(gens_img: Sequence[tuple], invs_img: Sequence[tuple], root: int) -> list:
    """Breadth-first labels starting at ``root``.

    Neighbours of a point are scanned in the order g1, g1⁻¹, g2, g2⁻¹, ...
    The enumerator in :mod:`morigami.dessin` relies on exactly this order.
    """
    d = len(gens_img[0])
    label = [-1] * d
    label[root] = 0
    order = [root]
    nxt = 1
    head = 0
    while head < len(order):
        k = order[head]
        head += 1
        for g, gi in zip(gens_img, invs_img):
            for q in (g[k], gi[k]):
                if label[q] == -1:
                    label[q] = nxt
                    nxt += 1
                    order.append(q)
    return label


def _key_for_root(gens_img, invs_img, root) -> tuple:
    label = _bfs_relabel(gens_img, invs_img, root)
    d = len(label)
    key = []
    for g in gens_img:
        new = [0] * d
        for k in range(d):
            new[label[k]] = label[g[k]]
        key.extend(new)
    return tuple(key)


def canonical_key(gens: Sequence[Permutation]) -> tuple:
    """Hashable conjugation invariant of a transitive tuple.

    Two transitive tuples have equal keys iff they are simultaneously
    conjugate. The key is the concatenated 0-based images of the
    lexicographically least breadth-first relabeling over all base points.
    """
    d = _require_transitive(gens)
    g_img = [p._img for p in gens]
    i_img = [inverse(p)._img for p in gens]
    return min(_key_for_root(g_img, i_img, r) for r in range(d))


def key_to_perms(key: tuple, count: int) -> tuple:
    d = len(key) // count
    return tuple(Permutation._raw(tuple(key[i * d:(i + 1) * d])) for i in range(count))


def canonical_form(a: Permutation, b: Permutation) -> tuple:
    """Canonical representative of the simultaneous-conjugacy class of (a, b)."""
    return key_to_perms(canonical_key([a, b]), 2)


def centralizer(perms: Sequence[Permutation]) -> list:
    """All permutations commuting with every element of a transitive set.

    The centralizer of a transitive group acts semiregularly, so each element
    is fixed by its image of point 1: at most d candidates.
    """
    d = _require_transitive(perms)
    s = [p._img for p in perms]
    out = []
    for target in range(d):
        c = _extend_anchor(s, s, target)
        if c is not None:
            out.append(Permutation._raw(tuple(c)))
    return out


# -- text format --------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, d: Optional[int] = None) -> Permutation:
    """Parse ``(1,2,3)(4,5) d=7``; commas or whitespace separate entries.

    ``()`` denotes the identity; a ``d=`` suffix or the ``d`` argument fixes
    the degree when trailing points are fixed.
    """
    text = text.strip()
    m = re.search(r"\bd\s*=\s*(\d+)\s*$", text)
    if m:
        d_text = int(m.group(1))
        if d is not None and d != d_text:
            raise ValueError(f"conflicting degrees {d} and {d_text}")
        d = d_text
        text = text[: m.start()].strip()
    pos = 0
    cycs = []
    for match in _CYCLE_RE.finditer(text):
        gap = text[pos:match.start()]
        if gap.strip():
            raise ValueError(f"unexpected {gap.strip()!r} at position {pos}")
        body = match.group(1).replace(",", " ").split()
        try:
            entries = [int(x) for x in body]
        except ValueError:
            raise ValueError(f"non-integer cycle entry at position {match.start()}") from None
        if entries:
            cycs.append(entries)
        pos = match.end()
    if text[pos:].strip():
        raise ValueError(f"unexpected {text[pos:].strip()!r} at position {pos}")
    if d is None and not cycs:
        d = 1
    return Permutation.from_cycles(cycs, d)


def format_cycles(p: Permutation, *, with_degree: bool = False) -> str:
    """Cycle notation omitting fixed points; ``()`` for the identity."""
    body = "".join("(" + ",".join(map(str, c)) + ")" for c in cycles(p) if len(c) > 1) or "()"
    if with_degree:
        return f"{body} d={p.degree}"
    return body
