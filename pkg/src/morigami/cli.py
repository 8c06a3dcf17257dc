"""Command-line interface: ``morigami <command> ...``.

Exit codes: 0 success, 1 invalid input, 2 a verified property failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Optional

from .catalog import BUILTIN_NAMES, builtin
from .dessin import (
    MAX_ENUMERATION_DEGREE,
    Dessin,
    genus as dessin_genus,
    is_clean,
    is_exceptional,
    is_filthy,
    is_pre_clean,
    is_tree,
    is_unicellular,
    iter_dessins,
    parse_dessin,
)
from .m_origami import build, genus_bounds, genus_closed_form
from .origami import Origami, parse_origami
from .render import render_ascii, render_svg
from .report import ReportInconsistency, analyze, orbit_listing, verify_sweep

EXIT_OK, EXIT_INVALID, EXIT_PROPERTY = 0, 1, 2


class InputError(ValueError):
    pass


def _read_text(args) -> str:
    if getattr(args, "builtin", None):
        return builtin(args.builtin).to_text()
    if args.input in (None, "-"):
        return sys.stdin.read()
    with open(args.input, encoding="utf-8") as fh:
        return fh.read()


def _first_record(text: str) -> str:
    text = text.strip()
    if not text:
        raise InputError("empty input")
    if text.startswith("{"):
        return text
    lines = [l for l in text.splitlines() if l.strip() and not l.lstrip().startswith("#")]
    return " ".join(lines)


def read_dessin(args) -> Dessin:
    return parse_dessin(_first_record(_read_text(args)))


def read_surface(args) -> Origami:
    """A dessin (built into its M-Origami) or an origami given by sA, sB."""
    text = _first_record(_read_text(args))
    if "sA" in text:
        return parse_origami(text)
    return build(parse_dessin(text))


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=False)


def _print_table(rows: list):
    if not rows:
        print("(no results)")
        return
    cols = list(rows[0])
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    print("  ".join(c.ljust(widths[c]) for c in cols))
    for r in rows:
        print("  ".join(str(r[c]).ljust(widths[c]) for c in cols))


# -- enumeration filters ----------------------------------------------------------

_BOOL_FILTERS = {
    "filthy": is_filthy,
    "tree": is_tree,
    "clean": is_clean,
    "pre_clean": is_pre_clean,
    "unicellular": is_unicellular,
    "exceptional": lambda D: is_exceptional(D)[0],
}
_INT_FILTERS = {"genus", "m_genus", "degree", "index", "cusps"}
_VEECH_ALIASES = {
    "gamma(2)": "Gamma(2)",
    "s": "<Gamma(2),S>",
    "t": "<Gamma(2),T>",
    "tst": "<Gamma(2),TST>",
    "st": "<Gamma(2),ST>",
    "sl2(z)": "SL2(Z)",
}


def _normalise_veech(value: str) -> str:
    v = value.strip().lower().replace(" ", "")
    if v.startswith("<gamma(2),") and v.endswith(">"):
        v = v[len("<gamma(2),"):-1]
    if v not in _VEECH_ALIASES:
        raise InputError(f"unknown Veech group {value!r}; use one of {sorted(set(_VEECH_ALIASES.values()))}")
    return _VEECH_ALIASES[v]


def parse_filters(items: list) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise InputError(f"filter {item!r} is not of the form key=value")
        k, v = (s.strip() for s in item.split("=", 1))
        k = k.replace("-", "_")
        if k in _BOOL_FILTERS:
            if v.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise InputError(f"filter {k} expects true/false, got {v!r}")
            out[k] = v.lower() in ("true", "1", "yes")
        elif k in _INT_FILTERS:
            try:
                out[k] = int(v)
            except ValueError:
                raise InputError(f"filter {k} expects an integer, got {v!r}") from None
        elif k == "veech":
            out[k] = _normalise_veech(v)
        else:
            known = sorted(_BOOL_FILTERS) + sorted(_INT_FILTERS) + ["veech"]
            raise InputError(f"unknown filter {k!r}; known: {', '.join(known)}")
    return out


def _cheap_predicate(filters: dict) -> Callable[[Dessin], bool]:
    def pred(D: Dessin) -> bool:
        for k, f in _BOOL_FILTERS.items():
            if k in filters and f(D) != filters[k]:
                return False
        if "genus" in filters and dessin_genus(D) != filters["genus"]:
            return False
        if "m_genus" in filters:
            if genus_bounds(D)[0] > filters["m_genus"] or genus_closed_form(D) != filters["m_genus"]:
                return False
        return True

    return pred


def degree_range(max_degree: Optional[int], filters: dict) -> range:
    """Degrees to search; an M-Origami genus filter G caps the degree at 4G."""
    cap = None
    if "m_genus" in filters:
        cap = 4 * filters["m_genus"]
    if max_degree is None and cap is None:
        raise InputError("--max-degree is required unless an m_genus filter bounds the search")
    top = min(x for x in (max_degree, cap) if x is not None)
    if top > MAX_ENUMERATION_DEGREE:
        raise InputError(f"degree {top} exceeds the enumeration ceiling {MAX_ENUMERATION_DEGREE}")
    if "degree" in filters:
        d = filters["degree"]
        return range(d, d + 1) if 1 <= d <= top else range(0)
    return range(1, top + 1)


def enumerate_reports(max_degree: Optional[int], filters: dict):
    pred = _cheap_predicate(filters)
    for d in degree_range(max_degree, filters):
        for D in iter_dessins(d, pred):
            rep = analyze(D)
            if "veech" in filters and rep.veech.level2 != filters["veech"]:
                continue
            if "index" in filters and rep.veech.index != filters["index"]:
                continue
            if "cusps" in filters and rep.veech.cusp_count != filters["cusps"]:
                continue
            yield rep


# -- commands ------------------------------------------------------------------------


def cmd_analyze(args, ctx) -> int:
    rep = analyze(read_dessin(args))
    print(rep.to_table() if args.format == "table" else _dump(rep.to_json()))
    return EXIT_OK


def cmd_enumerate(args, ctx) -> int:
    filters = parse_filters(args.filter)
    reports = enumerate_reports(args.max_degree, filters)
    if args.format == "table":
        _print_table([r.table_row() for r in reports])
    else:
        for r in reports:
            print(_dump(r.to_json()))
    return EXIT_OK


def cmd_orbit(args, ctx) -> int:
    listing = orbit_listing(read_dessin(args))
    if args.format == "table":
        print(f"dessin {listing['dessin']}")
        print(f"SL2(Z)-orbit size {listing['sl2_orbit_size']}, W-orbit size {listing['w_orbit_size']}, "
              f"Veech group {listing['level2']}")
        _print_table(listing["representatives"])
        print("groups: " + "  ".join("{" + ", ".join(g) + "}" for g in listing["groups"]))
    else:
        print(_dump(listing))
    return EXIT_OK


def cmd_verify(args, ctx) -> int:
    def progress(d, count):
        if args.verbose:
            print(f"degree {d}: {count} dessins", file=sys.stderr)

    summary = verify_sweep(args.max_degree, build_fn=ctx.get("build_fn") or build, progress=progress)
    results = summary["results"]
    if args.format == "table":
        print(f"{summary['dessins']} dessins checked (degree <= {args.max_degree})")
        _print_table([
            {"property": r.name, "status": "pass" if r.passed else "FAIL", "checked": r.checked,
             "failures": r.failures, "witness": r.counterexample or ""}
            for r in results
        ])
    else:
        print(_dump({"max_degree": args.max_degree, "dessins": summary["dessins"],
                     "passed": all(r.passed for r in results)}))
        for r in results:
            print(_dump(r.to_json()))
    return EXIT_OK if all(r.passed for r in results) else EXIT_PROPERTY


def cmd_render(args, ctx) -> int:
    o = read_surface(args)
    out = render_svg(o) if args.format == "svg" else render_ascii(o)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_builtin(args, ctx) -> int:
    if args.list or not args.name:
        for n in BUILTIN_NAMES:
            print(n)
        return EXIT_OK
    D = builtin(args.name)
    print(_dump(D.to_json()) if args.format == "json" else D.to_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="morigami", description="M-Origamis from dessins d'enfants.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(sp):
        sp.add_argument("input", nargs="?", help="file with the dessin (default: stdin)")
        sp.add_argument("--builtin", metavar="NAME", help=f"bundled example: {', '.join(BUILTIN_NAMES)}")

    def with_format(sp, choices=("json", "table"), default="json"):
        sp.add_argument("--format", choices=choices, default=default)

    sp = sub.add_parser("analyze", help="full report for one dessin")
    with_input(sp)
    with_format(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("enumerate", help="catalogue dessins with their M-Origamis")
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("--filter", action="append", metavar="KEY=VALUE",
                    help="genus, m_genus, degree, index, cusps, veech, filthy, tree, clean, pre_clean, "
                         "unicellular, exceptional")
    with_format(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("orbit", help="W-orbit of a dessin next to the SL2(Z)-orbit of its M-Origami")
    with_input(sp)
    with_format(sp)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("verify", help="run every cross-check over all small dessins")
    sp.add_argument("--max-degree", type=int, default=5)
    sp.add_argument("-v", "--verbose", action="store_true")
    with_format(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("render", help="draw the square tiling")
    with_input(sp)
    with_format(sp, ("ascii", "svg"), "ascii")
    sp.add_argument("-o", "--output", help="write to a file instead of stdout")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("builtin", help="print a bundled example")
    sp.add_argument("name", nargs="?")
    sp.add_argument("--list", action="store_true")
    with_format(sp, ("text", "json"), "text")
    sp.set_defaults(func=cmd_builtin)
    return p


def main(argv: Optional[list] = None, *, build_fn: Optional[Callable] = None) -> int:
    """Entry point; ``build_fn`` swaps the construction checked by ``verify``."""
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, {"build_fn": build_fn})
    except ReportInconsistency as exc:
        print(f"morigami: inconsistent results: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except (InputError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"morigami: {msg}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
