"""Command-line entry point: catalog generation, single-operation queries,
the numeric loop evaluation, and the verification-suite runner.

Exit codes: 0 all pass, 1 any suite failed, 2 input error.  Reports are
deterministic given the seed; the millis field records wall time and is the
only non-reproducible byte in a report.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, asdict
from fractions import Fraction
from typing import Any, Sequence

from . import affine, catalog, coxeter, garside, helly
from .poset import (AMBIGUOUS, CapExceeded, PosetError, analyze, bound,
                    find_bowtie, poset_from_json, poset_to_json)
from .suites import SUITES, loop_length_value


@dataclass
class Report:
    suite: str
    theorem: str
    status: str
    witness: Any
    seed: int
    millis: int


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in value]
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=repr)
        return items
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return repr(value)


def run_suite(names: Sequence[str], seed: int, cap: int | None) -> list[Report]:
    reports = []
    for name in names:
        tag, fn, default_cap = SUITES[name]
        start = time.monotonic()
        try:
            result = fn(seed, cap if cap is not None else default_cap)
        except CapExceeded as exc:
            result = {"status": "skipped", "witness": {"reason": str(exc)}}
        millis = int((time.monotonic() - start) * 1000)
        reports.append(Report(suite=name, theorem=tag, status=result["status"],
                              witness=_jsonable(result["witness"]),
                              seed=seed, millis=millis))
    reports.sort(key=lambda r: r.suite)
    return reports


def _emit(doc: Any, args) -> None:
    if args.format == "json":
        text = json.dumps(doc, sort_keys=True, indent=2)
    else:
        text = _render_text(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _render_text(doc: Any, indent: str = "") -> str:
    if isinstance(doc, dict):
        lines = []
        for k in doc:
            v = doc[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}{k}:")
                lines.append(_render_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {v}")
        return "\n".join(lines)
    if isinstance(doc, list):
        return "\n".join(_render_text(v, indent + "- ") if isinstance(v, (dict, list))
                         else f"{indent}- {v}" for v in doc)
    return f"{indent}{doc}"


def _load_poset(args):
    if args.poset_file:
        with open(args.poset_file) as fh:
            return poset_from_json(fh.read())
    return catalog.generate(catalog.parse_spec(args.spec))


def _cmd_analyze(args) -> int:
    p = _load_poset(args)
    profile = analyze(p)
    doc = {
        "elements": len(p),
        "bounded_below": None if profile.bounded_below is None
        else p.label(profile.bounded_below),
        "bounded_above": None if profile.bounded_above is None
        else p.label(profile.bounded_above),
        "graded": profile.graded,
        "rank": profile.rank,
        "meet_semilattice": profile.meet_semilattice,
        "lattice": profile.lattice,
        "flag": profile.flag,
    }
    if profile.bounded_below is not None and profile.bounded_above is not None \
            and profile.graded:
        w = find_bowtie(p)
        doc["bowtie"] = None if w is None else [p.label(w.a), p.label(w.b),
                                                p.label(w.c), p.label(w.d)]
    _emit(doc, args)
    return 0


def _cmd_generate(args) -> int:
    p = catalog.generate(catalog.parse_spec(args.spec))
    text = poset_to_json(p)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _cmd_garside(args) -> int:
    ctx = garside.build_braid_garside(args.strands)
    word = garside.parse_word(args.word)
    nf = garside.normal_form(ctx, word)
    doc = {"strands": args.strands, "word": args.word,
           "normal_form": garside.format_normal_form(ctx, nf),
           "inf": nf.inf, "canonical_length": nf.canonical_length()}
    if args.leq is not None:
        other = garside.normal_form(ctx, garside.parse_word(args.leq))
        doc["prefix_leq"] = garside.prefix_leq(ctx, nf, other)
        doc["other"] = garside.format_normal_form(ctx, other)
    _emit(doc, args)
    return 0


def _cmd_affine(args) -> int:
    base = catalog.generate(catalog.parse_spec(args.base))
    ctx = affine.AffineContext(base, args.denom)
    x = affine.point_from_json(ctx, args.x)
    y = affine.point_from_json(ctx, args.y)
    doc = {
        "base": args.base,
        "denom": args.denom,
        "x": json.loads(affine.point_to_json(ctx, x)),
        "y": json.loads(affine.point_to_json(ctx, y)),
        "leq_xy": affine.leq(ctx, x, y),
        "leq_yx": affine.leq(ctx, y, x),
        "distance": str(affine.distance(ctx, x, y)),
        "join": json.loads(affine.point_to_json(ctx, affine.join(ctx, x, y))),
        "meet": json.loads(affine.point_to_json(ctx, affine.meet(ctx, x, y))),
    }
    _emit(doc, args)
    return 0


def _cmd_helly(args) -> int:
    with open(args.graph) as fh:
        g = helly.graph_from_json(fh.read())
    doc: dict[str, Any] = {"vertices": len(g)}
    if args.balls:
        family = [helly.BallSpec(str(c), int(r))
                  for c, r in json.loads(args.balls)]
        res = helly.helly_check(g, family)
        doc["helly"] = _jsonable(res)
        doc["helly_pass"] = isinstance(res, helly.HellyPass)
    res2 = helly.clique_helly_check(g)
    doc["clique_helly_pass"] = isinstance(res2, helly.HellyPass)
    _emit(doc, args)
    return 0


def _cmd_coxeter(args) -> int:
    pt = coxeter.point_from_json(args.point)
    doc: dict[str, Any] = {"point": json.loads(args.point),
                           "type": coxeter.type_value(pt),
                           "building_type": coxeter.building_type(pt)}
    if args.op == "reduce":
        moves, reduced = coxeter.reduce_to_fundamental(pt)
        doc["witness"] = list(moves)
        doc["reduced"] = list(reduced.coords)
    elif args.op == "compare":
        other = coxeter.point_from_json(args.other)
        doc["compare"] = coxeter.compare(pt, other)
    elif args.op == "local":
        lp = coxeter.local_poset(pt)
        profile = analyze(lp)
        doc["local_elements"] = len(lp)
        doc["local_lattice"] = profile.lattice
        doc["local_graded"] = profile.graded
        doc["local_flag"] = profile.flag
    _emit(doc, args)
    return 0


def _cmd_numeric(args) -> int:
    _emit(_jsonable(loop_length_value()), args)
    return 0


def _cmd_suite(args) -> int:
    names = args.names
    if names == ["all"]:
        names = sorted(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        print(f"unknown suite(s): {', '.join(unknown)}", file=sys.stderr)
        print(f"available: {', '.join(sorted(SUITES))} (or 'all')", file=sys.stderr)
        return 2
    reports = run_suite(names, args.seed, args.cap)
    doc = [asdict(r) for r in reports]
    _emit(doc, args)
    return 0 if all(r.status == "pass" for r in reports) else 1


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="hellylat",
        description="lattice / Helly-graph verification workbench")
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--cap", type=int, default=None)
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--out", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="profile a poset")
    p_an.add_argument("spec", nargs="?", default=None,
                      help="catalog spec, e.g. boolean:n=3 or JSON")
    p_an.add_argument("--poset", dest="poset_file", default=None,
                      help="poset JSON file instead of a catalog spec")
    p_an.set_defaults(fn=_cmd_analyze)

    p_gen = sub.add_parser("generate", help="emit a catalog poset as JSON")
    p_gen.add_argument("spec")
    p_gen.set_defaults(fn=_cmd_generate)

    p_gar = sub.add_parser("garside", help="braid normal forms")
    p_gar.add_argument("--strands", type=int, default=3)
    p_gar.add_argument("--word", required=True, help='e.g. "s1,s2,-s1"')
    p_gar.add_argument("--leq", default=None,
                       help="second word; reports prefix order")
    p_gar.set_defaults(fn=_cmd_garside)

    p_aff = sub.add_parser("affine", help="affine-version queries")
    p_aff.add_argument("--base", required=True, help="catalog spec of the base")
    p_aff.add_argument("--denom", type=int, default=1)
    p_aff.add_argument("--x", required=True, help='point JSON {"u":[...],"jumps":{...}}')
    p_aff.add_argument("--y", required=True)
    p_aff.set_defaults(fn=_cmd_affine)

    p_hel = sub.add_parser("helly", help="graph Helly checks")
    p_hel.add_argument("--graph", required=True, help="graph JSON file")
    p_hel.add_argument("--balls", default=None,
                       help='JSON list of [center, radius] pairs')
    p_hel.set_defaults(fn=_cmd_helly)

    p_cox = sub.add_parser("coxeter", help="thin-complex queries")
    p_cox.add_argument("op", choices=("reduce", "compare", "local"))
    p_cox.add_argument("--point", required=True,
                       help='JSON {"family":"C","coords":[1,3]}')
    p_cox.add_argument("--other", default=None)
    p_cox.set_defaults(fn=_cmd_coxeter)

    p_num = sub.add_parser("numeric", help="the loop-length evaluation")
    p_num.set_defaults(fn=_cmd_numeric)

    p_sui = sub.add_parser("suite", help="run verification suites")
    p_sui.add_argument("names", nargs="+",
                       help=f"suite names or 'all'; known: {', '.join(sorted(SUITES))}")
    p_sui.set_defaults(fn=_cmd_suite)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (PosetError, garside.GarsideError, affine.AffineError,
            coxeter.CoxeterError, helly.GraphError, FileNotFoundError,
            json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
