"""Analysis reports and the verification sweep behind the command line."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import origami as ori
from .dessin import (
    Dessin,
    W_ELEMENTS,
    genus as dessin_genus,
    is_clean,
    is_exceptional,
    is_filthy,
    is_pre_clean,
    is_tree,
    is_unicellular,
    iter_dessins,
    w_act,
    w_orbit,
    weak_automorphism_group,
)
from .m_origami import (
    PHI,
    build,
    build_via_oracle,
    cylinder_count_formula,
    cylinders_closed_form,
    genus_bounds,
    genus_closed_form,
    punctures_closed_form,
    veech_closed_form,
)

__all__ = [
    "SCHEMA",
    "AnalysisReport",
    "ReportInconsistency",
    "analyze",
    "orbit_listing",
    "PropertyResult",
    "verify_sweep",
    "PROPERTIES",
]

SCHEMA = "morigami-report/1"


class ReportInconsistency(AssertionError):
    """Closed-form and geometric computations disagree."""


@dataclass
class AnalysisReport:
    dessin: Dessin
    dessin_genus: int
    predicates: dict
    weak_automorphisms: list
    origami: ori.Origami
    genus: int
    punctures: dict
    veech: ori.VeechReport
    cylinders: dict

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "dessin": {**self.dessin.to_json(), "text": self.dessin.to_text()},
            "dessin_genus": self.dessin_genus,
            "predicates": self.predicates,
            "weak_automorphisms": self.weak_automorphisms,
            "m_origami": {
                "degree": self.origami.n,
                "genus": self.genus,
                "punctures": self.punctures,
                "origami": self.origami.to_json(),
            },
            "veech": self.veech.to_json(),
            "cylinders": {d: c.to_json() for d, c in self.cylinders.items()},
        }

    def table_row(self) -> dict:
        return {
            "d": self.dessin.d,
            "px": str(self.dessin.px),
            "py": str(self.dessin.py),
            "g": self.dessin_genus,
            "G": self.genus,
            "punct": self.punctures["total"],
            "veech": self.veech.level2 or "-",
            "index": self.veech.index,
            "cusps": self.veech.cusp_count,
        }

    def to_table(self) -> str:
        lines = [
            f"dessin          {self.dessin.to_text()}",
            f"dessin genus    {self.dessin_genus}",
            "predicates      " + ", ".join(k for k, v in self.predicates.items() if v) or "none",
            f"W_beta          {{{', '.join(self.weak_automorphisms)}}}",
            f"M-Origami       {self.origami.n} squares, genus {self.genus}",
            "punctures       "
            + " + ".join(f"{self.punctures[k]} ({k})" for k in ("0", "1", "inf", "lambda"))
            + f" = {self.punctures['total']}",
            f"Veech group     {self.veech.level2 or '?'}, index {self.veech.index}, "
            f"{self.veech.cusp_count} cusp(s), -I {'in' if self.veech.contains_minus_I else 'not in'} group",
        ]
        for d, c in self.cylinders.items():
            types = ", ".join(f"({w},{h})" for w, h in c.types())
            lines.append(f"{d:<15} {types}  [{c.method}]")
        return "\n".join(lines)


def _check(cond: bool, msg: str):
    if not cond:
        raise ReportInconsistency(msg)


def analyze(dessin: Dessin) -> AnalysisReport:
    o = build(dessin)
    g = genus_closed_form(dessin)
    _check(g == ori.genus(o), f"genus: closed form {g}, geometric {ori.genus(o)}")
    punct = punctures_closed_form(dessin)
    _check(punct["total"] == ori.punctures(o), f"punctures: closed form {punct['total']}, geometric {ori.punctures(o)}")
    veech = ori.sl2_orbit(o)
    closed = veech_closed_form(dessin)
    _check(
        (veech.index, veech.level2) == (closed.index, closed.level2),
        f"Veech group: orbit {veech.level2}/{veech.index}, closed form {closed.level2}/{closed.index}",
    )
    cyls = {}
    for direction in ori.DIRECTIONS:
        c = cylinders_closed_form(dessin, direction)
        geo = ori.cylinder_decomposition(o, direction)
        _check(c.area == o.n, f"{direction} cylinders cover {c.area} of {o.n} squares")
        _check(c.types() == geo.types(), f"{direction} cylinders: closed form {c.types()}, geometric {geo.types()}")
        cyls[direction] = c
    exc = is_exceptional(dessin)[0]
    return AnalysisReport(
        dessin=dessin,
        dessin_genus=dessin_genus(dessin),
        predicates={
            "clean": is_clean(dessin),
            "pre_clean": is_pre_clean(dessin),
            "filthy": is_filthy(dessin),
            "unicellular": is_unicellular(dessin),
            "tree": is_tree(dessin),
            "exceptional": exc,
        },
        weak_automorphisms=[str(w) for w in sorted(weak_automorphism_group(dessin))],
        origami=o,
        genus=g,
        punctures=punct,
        veech=veech,
        cylinders=cyls,
    )


def orbit_listing(dessin: Dessin) -> dict:
    """The six table dessins next to the SL2(Z)-orbit they produce."""
    o = build(dessin)
    classes: dict = {}
    reps = []
    for w in W_ELEMENTS:
        coset = PHI[w.word]
        table = w_act(w, dessin)
        key = build(table).key()
        _check(key == ori.act(coset, o).key(), f"construction is not equivariant at {coset}")
        cls = classes.setdefault(key, len(classes))
        reps.append({"coset": coset, "w": str(w), "dessin": table.to_text(), "class": cls})
    groups = defaultdict(list)
    for r in reps:
        groups[r["class"]].append(r["coset"])
    veech = ori.sl2_orbit(o)
    return {
        "dessin": dessin.to_text(),
        "w_orbit_size": len(w_orbit(dessin)),
        "sl2_orbit_size": veech.index,
        "level2": veech.level2,
        "representatives": reps,
        "groups": [groups[k] for k in sorted(groups)],
    }


# -- verification sweep ---------------------------------------------------------------


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: int = 0
    counterexample: Optional[str] = None
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, witness: Dessin, detail: str = ""):
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = witness.to_text()
                self.detail = detail or None

    def to_json(self) -> dict:
        return {
            "property": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "counterexample": self.counterexample,
            "detail": self.detail,
        }


PROPERTIES = (
    "oracle_equivalence",
    "genus_closed_form",
    "punctures_closed_form",
    "gamma2_fixes",
    "w_equivariance",
    "veech_closed_form",
    "orbit_relations",
    "orbit_size",
    "cylinder_agreement",
    "area_conservation",
    "cylinder_count_formula",
    "genus_bounds",
    "distinctness",
)


def _check_dessin(D: Dessin, o: ori.Origami, res: dict):
    res["oracle_equivalence"].record(o.is_isomorphic(build_via_oracle(D)), D)
    g = genus_closed_form(D)
    res["genus_closed_form"].record(g == ori.genus(o), D, f"closed {g}, geometric {ori.genus(o)}")
    p = punctures_closed_form(D)["total"]
    res["punctures_closed_form"].record(p == ori.punctures(o), D, f"closed {p}, geometric {ori.punctures(o)}")
    key = o.key()
    bad = [w for w in ori.GAMMA2_GENERATORS if ori.act(w, o).key() != key]
    res["gamma2_fixes"].record(not bad, D, f"not fixed by {bad}")
    bad = [str(w) for w in W_ELEMENTS if build(w_act(w, D)).key() != ori.act(PHI[w.word], o).key()]
    res["w_equivariance"].record(not bad, D, f"fails for {bad}")
    orbit = ori.sl2_orbit(o)
    closed = veech_closed_form(D)
    res["veech_closed_form"].record(
        (orbit.index, orbit.level2) == (closed.index, closed.level2), D,
        f"orbit {orbit.level2}/{orbit.index}, closed {closed.level2}/{closed.index}",
    )
    rel = orbit.relation_checks()
    res["orbit_relations"].record(all(rel.values()) and orbit.contains_minus_I, D, str(rel))
    n_w = len(w_orbit(D))
    exact = is_filthy(D) or is_tree(D)
    res["orbit_size"].record(orbit.index == n_w if exact else orbit.index <= n_w, D, f"SL2 orbit {orbit.index}, W orbit {n_w}")
    for direction in ori.DIRECTIONS:
        c = cylinders_closed_form(D, direction)
        geo = ori.cylinder_decomposition(o, direction)
        res["cylinder_agreement"].record(c.types() == geo.types(), D, f"{direction}: closed {c.types()}, geometric {geo.types()}")
        res["area_conservation"].record(c.area == o.n == geo.area, D, f"{direction}: area {c.area}")
    if not is_exceptional(D)[0]:
        n_cyl = len(ori.cylinder_decomposition(o, "horizontal").cylinders)
        res["cylinder_count_formula"].record(
            cylinder_count_formula(D) == n_cyl, D, f"formula {cylinder_count_formula(D)}, actual {n_cyl}"
        )
    lo, hi = genus_bounds(D)
    res["genus_bounds"].record(lo <= g <= hi, D, f"{g} not in [{lo}, {hi}]")


def verify_sweep(
    max_degree: int = 5,
    build_fn: Callable[[Dessin], ori.Origami] = build,
    progress: Optional[Callable[[int, int], None]] = None,
) -> dict:
    """Run every cross-check on all dessins up to ``max_degree``.

    ``build_fn`` replaces the construction under test (the oracle, the closed
    forms and the table dessins' reference builds stay fixed), which lets a
    deliberately broken construction be fed through the harness.
    Returns ``{"dessins": count, "results": [PropertyResult, ...]}``.
    """
    res = {name: PropertyResult(name) for name in PROPERTIES}
    total = 0
    for d in range(1, max_degree + 1):
        by_key = defaultdict(list)
        count = 0
        for D in iter_dessins(d):
            o = build_fn(D)
            _check_dessin(D, o, res)
            if is_filthy(D) or is_tree(D):
                by_key[o.key()].append(D)
            count += 1
        for group in by_key.values():
            for D in group[1:]:
                res["distinctness"].record(False, D, f"same origami as {group[0].to_text()}")
            res["distinctness"].record(True, group[0])
        total += count
        if progress:
            progress(d, count)
    return {"dessins": total, "results": [res[n] for n in PROPERTIES]}
