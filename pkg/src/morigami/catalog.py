"""Bundled example dessins."""

from __future__ import annotations

import re

from .dessin import Dessin, parse_dessin
from .m_origami import make_K_n

__all__ = ["BUILTIN_NAMES", "builtin", "builtin_names"]

# The Galois orbit of degree-7 trees (shared px) and a genus-1 dessin with
# weak automorphism group of order 3.
_FIXED = {
    "tree7a": "px=(1,2,3)(4,5); py=(3,4)(5,6,7); d=7",
    "tree7b": "px=(1,2,3)(4,5); py=(2,7)(3,6,4); d=7",
    "tree7c": "px=(1,2,3)(4,5); py=(1,7)(3,4,6); d=7",
    "gamma2st": "px=(1,3,4,5)(2,6); py=(2,1,4,5)(3,6); d=6",
}

BUILTIN_NAMES = tuple(_FIXED) + ("K<n>",)

_K_RE = re.compile(r"^K_?(\d+)$")


def builtin_names() -> list:
    return list(BUILTIN_NAMES)


def builtin(name: str) -> Dessin:
    if name in _FIXED:
        return parse_dessin(_FIXED[name])
    m = _K_RE.match(name)
    if m:
        return make_K_n(int(m.group(1)))
    raise KeyError(f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}")
