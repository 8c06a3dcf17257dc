"""M-Origamis: the origami attached to a dessin, and its closed-form invariants.

Squares are labelled ``(i, j)`` with sheet ``i`` in 1..4 and edge ``j`` in
1..d, flattened to ``(i-1)·d + j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

from . import covering
from .dessin import (
    Dessin,
    W_ELEMENTS,
    WeakSymmetry,
    genus as dessin_genus,
    is_exceptional,
    is_filthy,
    is_tree,
    w_act,
)
from .origami import (
    LEVEL2_NAMES,
    Cylinder,
    CylinderDecomposition,
    DIRECTIONS,
    Origami,
    VeechReport,
    cylinder_decomposition,
    parse_sl2_word,
)
from .perm import Permutation, cycle_type

__all__ = [
    "build",
    "build_via_oracle",
    "square_label",
    "genus_closed_form",
    "genus_bounds",
    "punctures_closed_form",
    "veech_closed_form",
    "cylinders_closed_form",
    "direction_pair",
    "cylinder_count_formula",
    "cylinder_count_per_cycle",
    "make_K_n",
    "distinctness_check",
    "DistinctnessReport",
]

# phi: W -> SL2(Z)/Γ(2), s -> S, t -> T
PHI = {"": "I", "s": "S", "t": "T", "st": "S T", "ts": "T S", "tst": "T S T"}


def square_label(i: int, j: int, d: int) -> int:
    if not (1 <= i <= 4 and 1 <= j <= d):
        raise ValueError(f"label ({i},{j}) outside sheets 1..4, edges 1..{d}")
    return (i - 1) * d + j


def build(dessin: Dessin) -> Origami:
    px, py = dessin.px, dessin.py
    px_inv, py_inv = px.inverse(), py.inverse()
    d = dessin.d
    sa = [0] * (4 * d)
    sb = [0] * (4 * d)
    for j in range(1, d + 1):
        sa[j - 1] = square_label(2, j, d)
        sa[d + j - 1] = square_label(1, py(j), d)
        sa[2 * d + j - 1] = square_label(4, j, d)
        sa[3 * d + j - 1] = square_label(3, py_inv(j), d)
        sb[j - 1] = square_label(3, j, d)
        sb[d + j - 1] = square_label(4, j, d)
        sb[2 * d + j - 1] = square_label(1, px_inv(j), d)
        sb[3 * d + j - 1] = square_label(2, px(j), d)
    return Origami(Permutation(sa), Permutation(sb))


def build_via_oracle(dessin: Dessin) -> Origami:
    """Same surface, computed by fibre product and composition of coverings."""
    m = covering.m_origami_via_covering(dessin)
    return Origami(m["A"], m["B"])


# -- genus and punctures ---------------------------------------------------------


def _even_cycles(p: Permutation) -> int:
    return sum(1 for l in cycle_type(p) if l % 2 == 0)


def genus_bounds(dessin: Dessin) -> tuple:
    g, d = dessin_genus(dessin), dessin.d
    return g + ceil(d / 4), g + d


def genus_closed_form(dessin: Dessin) -> int:
    evens = sum(_even_cycles(p) for p in (dessin.px, dessin.py, dessin.pz))
    assert evens % 2 == 0, "even-cycle count must be even"
    g = dessin_genus(dessin) + dessin.d - evens // 2
    lo, hi = genus_bounds(dessin)
    assert lo <= g <= hi, f"genus {g} outside [{lo}, {hi}]"
    return g


def punctures_closed_form(dessin: Dessin) -> dict:
    """Punctures over each Weierstrass point and their total."""
    out = {}
    for point, p in (("0", dessin.px), ("1", dessin.py), ("inf", dessin.pz)):
        out[point] = len(cycle_type(p)) + _even_cycles(p)
    out["lambda"] = dessin.d
    out["total"] = sum(out.values())
    return out


# -- Veech group -------------------------------------------------------------------


def veech_closed_form(dessin: Dessin) -> VeechReport:
    """The SL2(Z)-orbit read off from the six table dessins.

    Node ``α`` is ``build(w_act(φ⁻¹(α), β))``; nodes are merged when the
    origamis are isomorphic, so the exact stabiliser is computed rather than
    assumed from the weak automorphism group.
    """
    keys = {}
    node_of = {}
    reps = []
    for w in W_ELEMENTS:
        o = build(w_act(w, dessin))
        k = o.key()
        if k not in keys:
            keys[k] = len(reps)
            reps.append((w, o.canonical()))
        node_of[w] = keys[k]
    s, t = WeakSymmetry("s"), WeakSymmetry("t")
    s_edges = tuple(node_of[s * w] for w, _ in reps)
    t_edges = tuple(node_of[t * w] for w, _ in reps)
    stab = frozenset(PHI[w.word] for w in W_ELEMENTS if node_of[w] == 0)
    return VeechReport(
        orbit=[o for _, o in reps],
        s_edges=s_edges,
        t_edges=t_edges,
        neg_edges=tuple(range(len(reps))),
        words=[parse_sl2_word(PHI[w.word]) for w, _ in reps],
        parents=[None] * len(reps),
        level2=LEVEL2_NAMES[stab],
        level2_stabilizer=stab,
        source="closed-form",
    )


# -- cylinders ----------------------------------------------------------------------


def direction_pair(dessin: Dessin, direction: str) -> Dessin:
    """The dessin whose horizontal rules give ``direction``."""
    if direction == "horizontal":
        return dessin
    if direction == "vertical":
        return Dessin(dessin.py, dessin.px)
    if direction == "diagonal":
        return Dessin(dessin.py, dessin.pz)
    raise ValueError(f"direction must be one of {sorted(DIRECTIONS)}, got {direction!r}")


def cylinders_closed_form(dessin: Dessin, direction: str = "horizontal") -> CylinderDecomposition:
    """Cylinder types from the cycles of the second permutation of the
    direction's pair; exceptional pairs fall back to the geometric algorithm
    (``method == "geometric-fallback"``)."""
    pair = direction_pair(dessin, direction)
    if is_exceptional(pair)[0]:
        geo = cylinder_decomposition(build(dessin), direction)
        return CylinderDecomposition(direction, geo.cylinders, "geometric-fallback")
    cyls = []
    for length in cycle_type(pair.py):
        if length == 1:
            cyls.append(Cylinder(2, 2))
        elif length == 2:
            cyls.append(Cylinder(4, 2))
        else:
            cyls.extend([Cylinder(2 * length, 1), Cylinder(2 * length, 1)])
    return CylinderDecomposition(direction, tuple(cyls), "closed-form")


def cylinder_count_formula(dessin: Dessin) -> int:
    """``2·#cycles(py) − #fixed points of py²``, taken literally.

    A 2-cycle of py contributes 2 − 2 = 0 here, although the per-cycle rule
    gives it one (4,2) cylinder; see :func:`cylinder_count_per_cycle`.
    """
    fixed_sq = sum(1 for j in range(1, dessin.d + 1) if dessin.py(dessin.py(j)) == j)
    return 2 * len(cycle_type(dessin.py)) - fixed_sq


def cylinder_count_per_cycle(dessin: Dessin) -> int:
    """Horizontal cylinder count implied by the per-cycle rule: one for each
    cycle of length at most 2, two for each longer cycle."""
    return sum(1 if l <= 2 else 2 for l in cycle_type(dessin.py))


# -- examples and distinctness -------------------------------------------------------


def make_K_n(n: int) -> Dessin:
    """``px: (k,l) ↦ (k+1,l)``, ``py: (k,l) ↦ (k,l+1)`` on (Z/n)², with
    ``(k,l)`` numbered ``k·n + l + 1``."""
    if n < 2:
        raise ValueError(f"K_n needs n >= 2, got {n}")
    px = [((k + 1) % n) * n + l + 1 for k in range(n) for l in range(n)]
    py = [k * n + (l + 1) % n + 1 for k in range(n) for l in range(n)]
    return Dessin(Permutation(px), Permutation(py))


@dataclass(frozen=True)
class DistinctnessReport:
    unique_cycle_structure: bool
    tree_or_filthy: bool
    dessins_isomorphic: bool
    origamis_isomorphic: bool

    @property
    def hypothesis_applies(self) -> bool:
        return (self.unique_cycle_structure or self.tree_or_filthy) and not self.dessins_isomorphic

    @property
    def holds(self) -> bool:
        """False only for a counterexample: hypothesis met, origamis isomorphic."""
        return not (self.hypothesis_applies and self.origamis_isomorphic)


def _has_unique_square_structure(dessin: Dessin) -> bool:
    ident = Permutation.identity(dessin.d)
    types = [cycle_type(p * p) for p in (dessin.px, dessin.py, dessin.pz)] + [cycle_type(ident)]
    return any(types.count(t) == 1 for t in types)


def distinctness_check(b1: Dessin, b2: Dessin) -> DistinctnessReport:
    if b1.d != b2.d:
        raise ValueError(f"degrees differ: {b1.d} vs {b2.d}")
    return DistinctnessReport(
        unique_cycle_structure=_has_unique_square_structure(b1),
        tree_or_filthy=(is_tree(b1) or is_filthy(b1)) and (is_tree(b2) or is_filthy(b2)),
        dessins_isomorphic=b1.is_isomorphic(b2),
        origamis_isomorphic=build(b1).is_isomorphic(build(b2)),
    )
