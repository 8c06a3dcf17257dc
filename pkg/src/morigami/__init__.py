"""Origamis built from dessins d'enfants, with their Veech groups and cylinders."""

from .catalog import builtin
from .dessin import (
    Dessin,
    WeakSymmetry,
    enumerate_dessins,
    is_clean,
    is_exceptional,
    is_filthy,
    is_pre_clean,
    is_tree,
    is_unicellular,
    iter_dessins,
    parse_dessin,
    w_act,
    weak_automorphism_group,
)
from .dessin import genus as dessin_genus
from .m_origami import (
    build,
    build_via_oracle,
    cylinders_closed_form,
    distinctness_check,
    genus_closed_form,
    make_K_n,
    punctures_closed_form,
    veech_closed_form,
)
from .origami import (
    Origami,
    act,
    cylinder_decomposition,
    genus,
    parse_origami,
    punctures,
    sl2_orbit,
    translations,
)
from .perm import Permutation, canonical_form, parse_cycles, simultaneous_conjugacy
from .report import analyze

__version__ = "0.1.0"

__all__ = [
    "Permutation",
    "parse_cycles",
    "canonical_form",
    "simultaneous_conjugacy",
    "Dessin",
    "WeakSymmetry",
    "parse_dessin",
    "dessin_genus",
    "is_clean",
    "is_pre_clean",
    "is_filthy",
    "is_unicellular",
    "is_tree",
    "is_exceptional",
    "w_act",
    "weak_automorphism_group",
    "iter_dessins",
    "enumerate_dessins",
    "Origami",
    "parse_origami",
    "genus",
    "punctures",
    "translations",
    "act",
    "sl2_orbit",
    "cylinder_decomposition",
    "build",
    "build_via_oracle",
    "genus_closed_form",
    "punctures_closed_form",
    "veech_closed_form",
    "cylinders_closed_form",
    "make_K_n",
    "distinctness_check",
    "analyze",
    "builtin",
]
