"""ASCII and SVG square-tiling diagrams.

Horizontal cylinders are drawn one below another, top row first. Edges that
are glued but not drawn next to each other carry matching integer labels.
The SVG stores every square's neighbours in ``data-*`` attributes, so
:func:`origami_from_svg` recovers the gluing exactly.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .origami import Origami, cylinder_decomposition
from .perm import Permutation

__all__ = ["Layout", "layout", "render_ascii", "render_svg", "origami_from_svg"]


@dataclass(frozen=True)
class Layout:
    """Square positions plus the labels of non-adjacent glued edges.

    ``blocks`` lists each cylinder's rows top to bottom. ``side_labels[s]``
    labels the right edge of s (and the left edge of its right neighbour);
    ``top_labels[s]`` the top edge of s (and the bottom of its upper one).
    """

    blocks: tuple
    side_labels: dict
    top_labels: dict


def layout(o: Origami) -> Layout:
    dec = cylinder_decomposition(o, "horizontal")
    blocks = tuple(tuple(reversed(c.rows)) for c in dec.cylinders)
    side, top = {}, {}
    for block in blocks:
        for row in block:
            side[row[-1]] = len(side) + 1  # the row closes up on itself
    # only a cylinder's top row has its upper neighbours drawn elsewhere
    for s in (s for block in blocks for s in block[0]):
        top[s] = len(side) + len(top) + 1
    return Layout(blocks, side, top)


def _bottom_labels(o: Origami, lay: Layout) -> dict:
    return {o.sB(s): lab for s, lab in lay.top_labels.items()}


_CELL = 6  # characters per square, border included


def render_ascii(o: Origami) -> str:
    lay = layout(o)
    bottom = _bottom_labels(o, lay)
    out = []
    for block in lay.blocks:
        pad = max(len(str(lay.side_labels[row[-1]])) for row in block)
        for r, row in enumerate(block):
            line = " " * pad + "+"
            for s in row:
                lab = str(lay.top_labels[s]) if r == 0 else ""
                line += lab.center(_CELL - 1, "-") + "+"
            out.append(line)
            lab = str(lay.side_labels[row[-1]])
            out.append(lab.rjust(pad) + "|" + "|".join(str(s).center(_CELL - 1) for s in row) + "|" + lab)
        line = " " * pad + "+"
        for s in block[-1]:
            line += str(bottom.get(s, "")).center(_CELL - 1, "-") + "+"
        out.append(line)
        out.append("")
    return "\n".join(out).rstrip() + "\n"


_UNIT = 40
_MARGIN = 24


def render_svg(o: Origami) -> str:
    lay = layout(o)
    bottom = _bottom_labels(o, lay)
    cols = max(len(b[0]) for b in lay.blocks)
    rows = sum(len(b) for b in lay.blocks) + len(lay.blocks) - 1
    w = cols * _UNIT + 2 * _MARGIN
    h = rows * _UNIT + 2 * _MARGIN
    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": str(w),
            "height": str(h),
            "viewBox": f"0 0 {w} {h}",
            "data-squares": str(o.n),
        },
    )
    font = {"font-family": "sans-serif", "text-anchor": "middle", "dominant-baseline": "central"}
    y = _MARGIN
    for block in lay.blocks:
        for r, row in enumerate(block):
            for c, s in enumerate(row):
                x = _MARGIN + c * _UNIT
                g = ET.SubElement(svg, "g", {"class": "square"})
                ET.SubElement(g, "rect", {
                    "x": str(x), "y": str(y), "width": str(_UNIT), "height": str(_UNIT),
                    "fill": "white", "stroke": "black", "stroke-width": "1",
                    "data-square": str(s), "data-right": str(o.sA(s)), "data-up": str(o.sB(s)),
                })
                t = ET.SubElement(g, "text", {"x": str(x + _UNIT / 2), "y": str(y + _UNIT / 2), "font-size": "12", **font})
                t.text = str(s)
                small = {"font-size": "9", "fill": "#555", **font}
                if r == 0:
                    ET.SubElement(svg, "text", {"x": str(x + _UNIT / 2), "y": str(y - 6), **small}).text = str(lay.top_labels[s])
                if r == len(block) - 1:
                    ET.SubElement(svg, "text", {"x": str(x + _UNIT / 2), "y": str(y + _UNIT + 7), **small}).text = str(bottom[s])
            lab = str(lay.side_labels[row[-1]])
            mid = str(y + _UNIT / 2)
            ET.SubElement(svg, "text", {"x": str(_MARGIN - 7), "y": mid, **small}).text = lab
            ET.SubElement(svg, "text", {"x": str(_MARGIN + len(row) * _UNIT + 7), "y": mid, **small}).text = lab
            y += _UNIT
        y += _UNIT
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"


def origami_from_svg(text: str) -> Origami:
    root = ET.fromstring(text.split("?>", 1)[-1] if text.lstrip().startswith("<?xml") else text)
    right, up = {}, {}
    for el in root.iter():
        if el.get("data-square"):
            s = int(el.get("data-square"))
            right[s] = int(el.get("data-right"))
            up[s] = int(el.get("data-up"))
    n = len(right)
    if sorted(right) != list(range(1, n + 1)):
        raise ValueError("SVG does not describe squares 1..n")
    return Origami(Permutation([right[s] for s in range(1, n + 1)]), Permutation([up[s] for s in range(1, n + 1)]))
