"""Command-line front end: ``ivolsets <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .exact_sets import (
    ExhaustedSet,
    SumExpr,
    expr_k_smallest,
    expr_min_positive,
    format_rational,
    format_witness,
    iterated_derived,
    parse_rational,
)
from .kodaira import FiberClass, coefficient_set, lct
from .surfaces import (
    e00_volume,
    enumerate_configs,
    enumerate_constellations,
    ivol_sm_expr,
    pg_volume_expr,
    ruled_volume_expr,
)
from . import theorems

fmt = format_rational


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def _positive_int(text: str) -> int:
    n = _nonneg_int(text)
    if n == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def resolve_preset(name: str):
    """Return ``("exprs", [SumExpr...])``, ``("vlc", (chi, g))`` or ``("e00", None)``."""
    parts = name.split(":")
    try:
        if name == "ivol-sm":
            return "exprs", [ivol_sm_expr()]
        if name == "e00":
            return "e00", None
        if parts[0] == "ivol-sm-pg" and len(parts) == 2:
            return "exprs", [pg_volume_expr(int(parts[1]))]
        if parts[0] == "v0-k" and len(parts) == 2:
            return "exprs", [ruled_volume_expr(int(parts[1]))]
        if parts[0] == "vlc" and len(parts) == 3:
            chi, g = int(parts[1]), int(parts[2])
            if chi < 1 or g < 0:
                raise UsageError("vlc presets need chi >= 1 and g >= 0")
            return "vlc", (chi, g)
    except ValueError:
        pass
    raise UsageError(f"unknown preset {name!r}")


def _load_exprs(args):
    if args.expr:
        raw = json.loads(Path(args.expr).read_text())
        items = raw if isinstance(raw, list) else [raw]
        return "exprs", [SumExpr.from_json(x) for x in items]
    return resolve_preset(args.preset)


def _exprs_for(kind, payload):
    if kind == "vlc":
        return theorems.vlc_union(*payload)
    if kind == "e00":
        raise UsageError("the e00 preset is a finite list; use enum with --max below 1/2 or min")
    return payload


def _emit(args, human_lines, doc) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(human_lines) + "\n")


def cmd_coeffset(args) -> int:
    try:
        f = FiberClass.parse(args.fiber)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    gen = coefficient_set(f)
    elems = gen.k_smallest(args.limit, Fraction(-1))
    doc = {
        "class": str(f),
        "lct": fmt(lct(f)),
        "elements": [fmt(x) for x in elems],
        "generator": gen.to_json(),
    }
    _emit(args, [fmt(x) for x in elems], doc)
    return 0


def cmd_enum(args) -> int:
    kind, payload = _load_exprs(args)
    if kind == "e00":
        if args.max is None:
            raise UsageError("enum --preset e00 needs --max below 1/2")
        try:
            values = [v for v in sorted({e00_volume(t) for t in enumerate_constellations(args.max)})]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        values = values[: args.count]
    else:
        exprs = _exprs_for(kind, payload)
        if args.max is not None:
            exprs = [e.with_upper(args.max) for e in exprs]
        try:
            values = expr_k_smallest(exprs, args.count, partial=args.max is not None)
        except ExhaustedSet as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    doc = {"elements": [fmt(x) for x in values]}
    _emit(args, [fmt(x) for x in values], doc)
    return 0


def cmd_min(args) -> int:
    kind, payload = _load_exprs(args)
    if kind == "e00":
        consts = enumerate_constellations(Fraction(1, 6))
        best = min(consts, key=lambda t: (e00_volume(t), t.orders()))
        value = e00_volume(best)
        doc = {"value": fmt(value), "witness": {"constellation": str(best), "orders": list(best.orders())}}
        _emit(args, [fmt(value), f"witness: {best} orders {list(best.orders())}"], doc)
        return 0
    if kind == "vlc":
        configs = theorems.vlc_configs(*payload)
        mins = theorems.parallel_map(theorems._config_min, configs)
        best = None
        for c, got in zip(configs, mins):
            if got is not None and (best is None or got[0] < best[1]):
                best = (c, got[0], got[1])
        if best is None:
            print("error: the window contains no element", file=sys.stderr)
            return 1
        c, value, witness = best
        wit = theorems._witness_dict(c, witness)
        coeffs = " ".join(f"{k}={'+'.join(v)}" for k, v in wit["coefficients"].items() if v)
        doc = {"value": fmt(value), "witness": wit}
        _emit(args, [fmt(value), f"witness: {c}  {coeffs}".rstrip()], doc)
        return 0
    exprs = _exprs_for(kind, payload)
    try:
        value, cert = expr_min_positive(exprs)
    except ExhaustedSet as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    picks = [" + ".join(p) for p in format_witness(cert.witness) if p]
    offset = fmt(exprs[cert.expr_index].offset)
    doc = {"value": fmt(value), "certificate": cert.to_json()}
    _emit(args, [fmt(value), f"witness: {offset} + " + " + ".join(picks) if picks else f"witness: {offset}"], doc)
    return 0


def cmd_derived(args) -> int:
    kind, payload = _load_exprs(args)
    exprs = iterated_derived(_exprs_for(kind, payload), args.order)
    if args.max is not None:
        exprs = [e.with_upper(args.max) for e in exprs]
    values = expr_k_smallest(exprs, args.count, partial=True) if exprs else []
    doc = {"order": args.order, "expressions": [e.to_json() for e in exprs], "elements": [fmt(x) for x in values]}
    _emit(args, [fmt(x) for x in values], doc)
    return 0


def cmd_configs(args) -> int:
    try:
        configs = enumerate_configs(args.chi, args.g)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = {"count": len(configs), "configs": [str(c) for c in configs]}
    _emit(args, [str(c) for c in configs] + [f"count: {len(configs)}"], doc)
    return 0


def cmd_verify(args) -> int:
    if args.check and args.check not in theorems.CHECKS:
        raise UsageError(f"unknown check {args.check!r}; choose from {', '.join(theorems.CHECKS)}")
    names = [args.check] if args.check else list(theorems.CHECKS)
    results = theorems.run_all(names)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for r in results:
            (out / f"{r.name}.json").write_text(r.dumps())
    if args.json:
        sys.stdout.write(json.dumps([r.to_json() for r in results], indent=2) + "\n")
    else:
        for r in results:
            computed = r.computed if isinstance(r.computed, str) else json.dumps(r.computed)
            if len(computed) > 100:
                computed = computed[:97] + "..."
            print(f"{r.name}: {r.status.upper()} computed={computed}")
            for d in r.discrepancies:
                print(f"  note: {d}")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ivolsets", description="Exact Iitaka volume set computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffset", help="list a fiber's coefficient set")
    p.add_argument("fiber")
    p.add_argument("--limit", type=_positive_int, default=15)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_coeffset)

    def source(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--preset")
        group.add_argument("--expr", help="JSON file with a SumExpr or a list of them")

    p = sub.add_parser("enum", help="k smallest elements")
    source(p)
    p.add_argument("--count", type=_positive_int, default=10)
    p.add_argument("--max", type=_rational)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("min", help="minimum with certificate")
    source(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_min)

    p = sub.add_parser("derived", help="iterated derived set")
    source(p)
    p.add_argument("--order", type=_nonneg_int, default=1)
    p.add_argument("--max", type=_rational)
    p.add_argument("--count", type=_positive_int, default=20)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_derived)

    p = sub.add_parser("configs", help="fiber configurations with Euler sum 12*chi")
    p.add_argument("--chi", type=_positive_int, required=True)
    p.add_argument("--g", type=_nonneg_int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_configs)

    p = sub.add_parser("verify", help="run verification checks")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true")
    group.add_argument("--check")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
