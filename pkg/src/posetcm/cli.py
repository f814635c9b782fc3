"""Command-line interface.

Exit codes: 0 success, 1 when ``--assert`` is given and a checked property
fails, 2 for malformed input or arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any, Sequence

from . import catalog
from .cm import (
    CmVerdict,
    edgewise_cm_connectivity,
    is_cm,
    is_edgewise_k_cm,
    is_gorenstein_star,
    is_k_cm,
)
from .complex import order_complex
from .exceptions import BadParams, NotPure, PosetError, SearchBudgetExceeded, UnknownFamily
from .homology import FieldSpec, reduced_betti
from .io import dumps, fingerprint, loads, to_dot
from .poset import Poset, proper_part
from .search import QUESTIONS, search_counterexamples
from .shelling import DEFAULT_BUDGET, is_edgewise_strongly_shellable, is_shellable


class UsageError(Exception):
    pass


@dataclass
class AnalysisReport:
    fingerprint: str
    field: str
    results: list[dict[str, Any]] = dc_field(default_factory=list)

    def add(self, verdict: CmVerdict, seconds: float) -> None:
        row = verdict.as_dict()
        row["wall_time"] = round(seconds, 6)
        self.results.append(row)

    def as_dict(self, timings: bool = False) -> dict[str, Any]:
        rows = []
        for r in self.results:
            r = dict(r)
            if not timings:
                r.pop("wall_time", None)
            rows.append(r)
        return {"fingerprint": self.fingerprint, "field": self.field, "results": rows}

    def text(self) -> str:
        lines = [f"poset {self.fingerprint}  field {self.field}"]
        for r in self.results:
            status = "holds" if r["holds"] else "fails"
            line = f"{r['property']}: {status}  ({r['wall_time']:.3f}s)"
            if r["witness"] is not None:
                line += "  witness=" + json.dumps(r["witness"], ensure_ascii=False)
            lines.append(line)
        return "\n".join(lines)


# -- helpers -------------------------------------------------------------------


def _read_input(path: str | None) -> tuple[Poset, str]:
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None
    return loads(text)


def _load(args) -> Poset:
    P, _ = _read_input(args.file)
    if getattr(args, "proper", False):
        P = proper_part(P)
    return P


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_props(text: str) -> list[tuple[str, Any]]:
    props = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, _, value = item.partition("=")
        if key == "cm" and not value:
            props.append(("cm", None))
        elif key.endswith("cm") and key[:-2].isdigit() and not value:
            props.append(("kcm", int(key[:-2])))
        elif key == "kcm" and value.isdigit():
            props.append(("kcm", int(value)))
        elif key == "gorenstein" and not value:
            props.append(("gorenstein", None))
        elif key == "edgewise" and (value.isdigit() or value == "strong"):
            props.append(("edgewise", value if value == "strong" else int(value)))
        else:
            raise UsageError(f"unknown property {item!r}")
    if not props:
        raise UsageError("no properties requested")
    return props


def _run_prop(P: Poset, prop: str, arg: Any, field: FieldSpec, route: str) -> CmVerdict:
    if prop == "cm":
        return is_cm(P, field, route)
    if prop == "kcm":
        return is_k_cm(P, arg, field, route)
    if prop == "gorenstein":
        return is_gorenstein_star(P, field)
    return is_edgewise_k_cm(P, arg, field, route)


# -- subcommands ---------------------------------------------------------------


def cmd_gen(args) -> int:
    try:
        P = catalog.generate(args.family, args.params)
    except (UnknownFamily, BadParams) as exc:
        raise UsageError(str(exc)) from None
    name = args.family + ("(" + ",".join(map(str, args.params)) + ")" if args.params else "")
    if args.proper:
        P = proper_part(P)
        name = f"proper({name})"
    _write(dumps(P, name), args.output)
    return 0


def cmd_check(args) -> int:
    P = _load(args)
    field = _field(args.field)
    report = AnalysisReport(fingerprint(P), str(field))
    for prop, arg in _parse_props(args.props):
        start = time.perf_counter()
        verdict = _run_prop(P, prop, arg, field, args.route)
        report.add(verdict, time.perf_counter() - start)
    if args.json:
        print(json.dumps(report.as_dict(args.timings), indent=2, ensure_ascii=False))
    else:
        print(report.text())
    if args.assert_ and not all(r["holds"] for r in report.results):
        return 1
    return 0


def cmd_connectivity(args) -> int:
    P = _load(args)
    field = _field(args.field)
    k = edgewise_cm_connectivity(P, field)
    if args.json:
        print(json.dumps({"fingerprint": fingerprint(P), "field": str(field), "connectivity": k}))
    else:
        print(k)
    return 0


def cmd_homology(args) -> int:
    P = _load(args)
    field = _field(args.field)
    if args.open_interval:
        lo, hi = (P.index(x) for x in args.open_interval)
        if not P.lt(lo, hi):
            raise UsageError(f"{args.open_interval[0]} is not below {args.open_interval[1]}")
        cx = order_complex(P, P.strict_up(lo) & P.strict_down(hi))
    else:
        cx = order_complex(P)
    betti = reduced_betti(cx, field)
    if args.json:
        print(json.dumps({"field": str(field), "dim": cx.dim, "betti": betti.as_dict()}))
    else:
        print(f"dim {cx.dim}  field {field}")
        print("reduced betti: " + " ".join(f"{d}:{b}" for d, b in betti.as_dict().items()))
    return 0


def cmd_shelling(args) -> int:
    P = _load(args)
    try:
        if args.edgewise:
            verdict = is_edgewise_strongly_shellable(P, args.budget)
            out = verdict.as_dict()
        else:
            ok, order = is_shellable(order_complex(P), args.budget)
            out = {"property": "shellable", "holds": ok, "order": order}
    except NotPure as exc:
        raise UsageError(str(exc)) from None
    except SearchBudgetExceeded as exc:
        out = {"property": "shellable", "holds": None, "inconclusive": str(exc)}
    if args.json:
        print(json.dumps(out, ensure_ascii=False))
    else:
        status = {True: "holds", False: "fails", None: "inconclusive"}[out["holds"]]
        print(f"{out['property']}: {status}")
        for key in ("order", "witness", "inconclusive"):
            if out.get(key):
                print(f"{key}: {json.dumps(out[key], ensure_ascii=False)}")
    if args.assert_ and not out["holds"]:
        return 1
    return 0


def cmd_export_dot(args) -> int:
    P, name = _read_input(args.file)
    _write(to_dot(P, name), args.output)
    return 0


def cmd_search(args) -> int:
    if args.question == "mobius_nowhere_zero" and args.max_elements > 12:
        raise UsageError("--max-elements is capped at 12 for random posets")
    outcome = search_counterexamples(
        args.question,
        trials=args.trials,
        max_elements=args.max_elements,
        seed=args.seed,
        out_dir=args.out,
        field=_field(args.field),
        p=args.p,
        lattices=args.lattice,
        jobs=args.jobs,
        argv=args.argv,
    )
    print(outcome.manifest["summary"])
    if args.out:
        print(f"manifest: {Path(args.out) / 'manifest.json'}")
    return 0


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="posetcm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def input_args(p, proper=True):
        p.add_argument("file", nargs="?", default="-", help="poset document (default: stdin)")
        if proper:
            p.add_argument("--proper", action="store_true", help="use the proper part of the input")

    p = sub.add_parser("gen", help="write a catalog poset")
    p.add_argument("family", choices=sorted(catalog.FAMILIES))
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--proper", action="store_true", help="write the proper part")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="decide CM-family properties")
    input_args(p)
    p.add_argument("--props", default="cm", help="e.g. cm,2cm,kcm=3,gorenstein,edgewise=strong")
    p.add_argument("--field", default="q", help="q, 2 or a prime")
    p.add_argument("--route", choices=["link", "interval", "both"], default="link")
    p.add_argument("--assert", dest="assert_", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true", help="include wall times in --json output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("connectivity", help="edgewise CM connectivity")
    input_args(p)
    p.add_argument("--field", default="q")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_connectivity)

    p = sub.add_parser("homology", help="reduced Betti numbers of the order complex")
    input_args(p)
    p.add_argument("--open-interval", nargs=2, metavar=("A", "B"))
    p.add_argument("--field", default="q")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("shelling", help="shellability of the order complex")
    input_args(p)
    p.add_argument("--edgewise", action="store_true", help="edgewise strong shellability")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--assert", dest="assert_", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_shelling)

    p = sub.add_parser("export-dot", help="Graphviz drawing of the Hasse diagram")
    input_args(p, proper=False)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("search", help="counterexample sweeps for open questions")
    p.add_argument("question", choices=QUESTIONS)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-elements", type=int, default=8)
    p.add_argument("--p", type=float, default=0.5, help="cover inclusion probability")
    p.add_argument("--lattice", action="append", help="catalog lattice, e.g. partition:4")
    p.add_argument("--field", default="q")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="findings directory")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    args.argv = argv
    try:
        return args.func(args)
    except (UsageError, PosetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
