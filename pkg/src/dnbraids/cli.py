"""Command-line interface.  Exit codes: 0 success, 1 verification failure, 2 usage or capacity error."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .absolute import absolute_length, classify_cover, nc_cover_relations, nc_enumerate, require_standard
from .bridge import lifts_check, rewrite_B_to_D
from .coxeter import CoxeterType, SignedPermutation, coxeter_length, format_cycles, parse_element
from .diagrams import beta_x, build_diagram, vertical_diagram
from .dual import DualContext, dual_relation_check, simple_word
from .errors import CapacityError, DnBraidsError, InvariantViolation, UsageError
from .garside import format_word, normal_form, parse_word
from .mikado import is_mikado_search, mik_d_correspondence
from .render import render_svg
from .verify import CHECKS, REPORT_SCHEMA, RunConfig, emit, verify


def _ctype(args) -> CoxeterType:
    return CoxeterType(args.family, args.rank)


def _element(args, text: str) -> SignedPermutation:
    return parse_element(_ctype(args), text)


def _coxeter(args) -> SignedPermutation:
    if not args.coxeter:
        raise UsageError("--coxeter is required")
    c = _element(args, args.coxeter)
    require_standard(c)
    return c


def _out(args, payload: dict, text: str) -> int:
    print(json.dumps(payload, indent=2) if args.json else text)
    return 0


def _elem_json(u: SignedPermutation) -> dict:
    return {"window": list(u.window), "cycles": format_cycles(u)}


# ---------------------------------------------------------------- subcommands


def cmd_wb_eval(args) -> int:
    word = parse_word(_ctype(args), args.word)
    u = word.image()
    nf = normal_form(word)
    payload = {
        "word": format_word(word),
        "image": _elem_json(u),
        "length": coxeter_length(u),
        "inf": nf.inf,
        "sup": nf.sup,
    }
    text = f"{format_word(word)} -> {format_cycles(u)} window {list(u.window)} (length {coxeter_length(u)})"
    return _out(args, payload, text)


def cmd_nc_list(args) -> int:
    c = _coxeter(args)
    parts = nc_enumerate(c)
    payload = {"coxeter": _elem_json(c), "count": len(parts), "elements": [
        {**_elem_json(p.element), "abs_length": p.abs_length} for p in parts
    ]}
    text = "\n".join(f"{p.abs_length}  {format_cycles(p.element)}" for p in parts) + f"\n{len(parts)} elements"
    return _out(args, payload, text)


def cmd_nc_hasse(args) -> int:
    c = _coxeter(args)
    covers = nc_cover_relations(c)
    rows = []
    for cov in covers:
        fam = classify_cover(cov).value if c.ctype.family == "D" else None
        rows.append({
            "lower": format_cycles(cov.lower.element),
            "upper": format_cycles(cov.upper.element),
            "reflection": format_cycles(cov.reflection),
            "family": fam,
        })
    text = "\n".join(f"{r['lower']} < {r['upper']}  by {r['reflection']}" + (f"  [{r['family']}]" if r["family"] else "") for r in rows)
    return _out(args, {"coxeter": _elem_json(c), "covers": rows}, text + f"\n{len(rows)} covers")


def cmd_nf(args) -> int:
    nf = normal_form(parse_word(_ctype(args), args.word))
    payload = nf.to_json()
    factors = " | ".join(format_cycles(f) for f in nf.factors) or "-"
    return _out(args, payload, f"inf {nf.inf}  sup {nf.sup}  factors {factors}")


def cmd_dual_simple(args) -> int:
    c = _coxeter(args)
    x = _element(args, args.element)
    sdb = simple_word(DualContext.create(c), x)
    payload = {"coxeter": _elem_json(c), "element": _elem_json(x), "abs_length": absolute_length(x), "word": format_word(sdb.word)}
    return _out(args, payload, format_word(sdb.word) or "(empty word)")


def cmd_dual_relations(args) -> int:
    c = _coxeter(args)
    report = dual_relation_check(DualContext.create(c))
    payload = {"coxeter": _elem_json(c), "checked": report.checked,
               "failures": [[format_cycles(t), format_cycles(u)] for t, u in report.failures]}
    _out(args, payload, f"{'PASS' if report.ok else 'FAIL'} dual relations ({report.checked} instances)")
    return 0 if report.ok else 1


def cmd_bridge_rewrite(args) -> int:
    word = parse_word(CoxeterType("B", args.rank), args.word)
    d = rewrite_B_to_D(word)
    return _out(args, {"input": format_word(word), "output": format_word(d)}, format_word(d) or "(empty word)")


def cmd_bridge_lifts(args) -> int:
    report = lifts_check(args.rank)
    _out(args, {"instances": report.instances, "failures": report.failures},
         f"{'PASS' if report.ok else 'FAIL'} lifts D_{args.rank} ({report.instances} instances)")
    return 0 if report.ok else 1


def cmd_mikado_check(args) -> int:
    word = parse_word(_ctype(args), args.word)
    w = is_mikado_search(word)
    if w is None:
        payload = {"mikado": False}
        text = "not a Mikado braid"
    else:
        payload = {"mikado": True, "x": _elem_json(w.x), "y": _elem_json(w.y)}
        text = f"Mikado: lift({format_cycles(w.x)})^-1 lift({format_cycles(w.y)})"
    return _out(args, payload, text)


def cmd_mikado_corr(args) -> int:
    result = mik_d_correspondence(args.rank)
    _out(args, result, f"{'PASS' if result['equal'] else 'FAIL'} rank {args.rank}: "
         f"{result['from_b']} braids from B, {result['from_d']} from D")
    return 0 if result["equal"] else 1


def cmd_render(args) -> int:
    c = _coxeter(args)
    x = _element(args, args.element)
    if args.what == "nc":
        target = build_diagram(x, c)
    elif args.what == "vertical":
        target = vertical_diagram(x, c, route=args.route)
    else:
        target = beta_x(x, c, route=args.route).crossings
    path = render_svg(target, args.out)
    return _out(args, {"path": str(path)}, f"wrote {path}")


def cmd_verify(args) -> int:
    if args.schema:
        print(json.dumps(REPORT_SCHEMA, indent=2))
        return 0
    if not args.name:
        raise UsageError("a check name is required")
    cfg = RunConfig(
        check=args.name,
        family=args.family,
        rank=args.rank,
        coxeter=args.coxeter,
        element=args.element,
        seed=args.seed,
        workers=args.workers,
        samples=args.samples,
        output=args.out,
        inject_failure=args.inject_failure,
    )
    report = verify(cfg)
    data = emit(report, "json" if args.json else "text")
    if cfg.output:
        Path(cfg.output).write_bytes(emit(report, "json"))
    sys.stdout.write(data.decode())
    return report.exit_code


# ---------------------------------------------------------------- parser


def _group_args(p: argparse.ArgumentParser, family: str = "D", rank: bool = True) -> None:
    p.add_argument("--family", choices=("A", "B", "D"), default=family)
    if rank:
        p.add_argument("--rank", type=int, required=True)
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dnbraids", description="Dual braids, Mikado braids and noncrossing diagrams in type D.", allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    wb = sub.add_parser("wb", help="braid words").add_subparsers(dest="action", required=True)
    p = wb.add_parser("eval", help="image in W and Garside bounds of a word")
    _group_args(p)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_wb_eval)

    nc = sub.add_parser("nc", help="noncrossing partitions").add_subparsers(dest="action", required=True)
    for name, func in (("list", cmd_nc_list), ("hasse", cmd_nc_hasse)):
        p = nc.add_parser(name)
        _group_args(p)
        p.add_argument("--coxeter", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("nf", help="Garside normal form of a word")
    _group_args(p)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_nf)

    dual = sub.add_parser("dual", help="dual braid monoid").add_subparsers(dest="action", required=True)
    p = dual.add_parser("simple")
    _group_args(p)
    p.add_argument("--coxeter", required=True)
    p.add_argument("--element", required=True)
    p.set_defaults(func=cmd_dual_simple)
    p = dual.add_parser("relations")
    _group_args(p)
    p.add_argument("--coxeter", required=True)
    p.set_defaults(func=cmd_dual_relations)

    bridge = sub.add_parser("bridge", help="type B to type D").add_subparsers(dest="action", required=True)
    p = bridge.add_parser("rewrite")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--word", required=True, help="type B word, e.g. 's0 s1 s0 s2'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bridge_rewrite)
    p = bridge.add_parser("verify-lifts")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bridge_lifts)

    mik = sub.add_parser("mikado", help="Mikado braids").add_subparsers(dest="action", required=True)
    p = mik.add_parser("check")
    _group_args(p)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_mikado_check)
    p = mik.add_parser("correspondence")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mikado_corr)

    render = sub.add_parser("render", help="SVG drawings").add_subparsers(dest="what", required=True)
    for name in ("nc", "braid", "vertical"):
        p = render.add_parser(name)
        _group_args(p)
        p.add_argument("--coxeter", required=True)
        p.add_argument("--element", required=True)
        p.add_argument("--out", required=True)
        p.add_argument("--route", choices=("auto", "east", "west"), default="auto")
        p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("name", nargs="?", choices=CHECKS)
    _group_args(p, rank=False)
    p.add_argument("--rank", type=int, default=3)
    p.add_argument("--coxeter")
    p.add_argument("--element")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1, help="process count (also DNBRAIDS_WORKERS)")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--out", help="also write the JSON report here")
    p.add_argument("--inject-failure", type=int, metavar="INDEX", help="mark one instance as failed (for testing the harness)")
    p.add_argument("--schema", action="store_true", help="print the JSON schema of reports")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.func(args)
    except (UsageError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 1
    except DnBraidsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
