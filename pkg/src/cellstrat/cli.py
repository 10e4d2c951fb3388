"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 a size cap was exceeded.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .config import Caps, caps_from_env, parse_caps
from .decompose import decompose_restriction, decompose_Uv
from .diagrams import AlgebraElement, enumerate_basis, format_diagram, multiply, parse_diagram
from .errors import CellstratError, NotYoungError, ParseError, SizeLimitError
from .oracle import corrupt_nus, verify_decomposition, verify_full_restriction
from .partial import ALGEBRA_NAMES, classes, parse_partial
from .perm import Composition
from .report import emit_report
from .stratification import idempotent, stratification_report, verify_module_law

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_delta(text: str):
    if text == "symbolic":
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"--delta expects 'symbolic' or p/q, got {text!r}") from exc


def _caps(args) -> Caps:
    caps = caps_from_env()
    if args.caps:
        caps = parse_caps(args.caps, caps)
    return caps.replace(
        basis=args.cap_basis, coset=args.cap_coset, group=args.cap_group, oracle_columns=args.cap_oracle
    )


def _add_caps(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("caps")
    g.add_argument("--caps", help="comma list key=value, applied over CELLSTRAT_CAPS")
    g.add_argument("--cap-basis", type=int)
    g.add_argument("--cap-coset", type=int)
    g.add_argument("--cap-group", type=int)
    g.add_argument("--cap-oracle", type=int, help="maximum oracle matrix columns")


def _add_format(p: argparse.ArgumentParser, default: str) -> None:
    p.add_argument("--format", choices=("json", "text"), default=default)
    p.add_argument("--json", dest="format", action="store_const", const="json")
    p.add_argument("--text", dest="format", action="store_const", const="text")


def _add_instance(p: argparse.ArgumentParser, need_v: bool) -> None:
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True, help="composition of l, e.g. 7,2")
    if need_v:
        p.add_argument("--v", required=True, help="partial diagram, e.g. L{1}L{2}U{3,4}")
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cellstrat", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"cellstrat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("multiply", help="product of two diagrams or JSON elements")
    p.add_argument("--r", type=int)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--delta", default="symbolic")
    _add_format(p, "text")

    p = sub.add_parser("basis", help="list the diagram basis")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--algebra", choices=ALGEBRA_NAMES, default="partition")
    _add_format(p, "text")
    _add_caps(p)

    p = sub.add_parser("idempotent", help="the layer idempotent e_l")
    p.add_argument("--algebra", choices=ALGEBRA_NAMES, default="partition")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--delta", default="symbolic")
    _add_format(p, "text")

    p = sub.add_parser("verify-stratification", help="check idempotent laws and the layer assumptions")
    p.add_argument("--algebra", choices=ALGEBRA_NAMES, default="partition")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", default="symbolic")
    p.add_argument("--module-law", action="store_true", help="also sweep the Brauer module law on arc diagrams")
    _add_format(p, "text")
    _add_caps(p)

    p = sub.add_parser("partial-classes", help="classes of V_n^l with representatives")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    _add_format(p, "text")
    _add_caps(p)

    p = sub.add_parser("decompose", help="decompose U_v (x) M^lambda")
    _add_instance(p, need_v=True)
    _add_format(p, "json")
    _add_caps(p)

    p = sub.add_parser("decompose-all", help="decompose the whole layer restriction")
    _add_instance(p, need_v=False)
    _add_format(p, "json")
    _add_caps(p)

    p = sub.add_parser("oracle-check", help="compare a decomposition with the quotient-module oracle")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--v", help="partial diagram; without it the whole layer restriction is checked")
    p.add_argument("--negative-control", action="store_true", help="corrupt the claim and expect rejection")
    p.add_argument("--jobs", type=int, default=1)
    _add_format(p, "text")
    _add_caps(p)

    p = sub.add_parser("report", help="re-render (or re-check) a saved decomposition report")
    p.add_argument("--input", required=True, help="JSON report file, or - for stdin")
    p.add_argument("--check", action="store_true", help="fail unless recomputation reproduces the file")
    _add_format(p, "text")
    _add_caps(p)
    return parser


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _element(text: str, r: int | None) -> AlgebraElement:
    text = text.strip()
    if text.startswith("["):
        raise ParseError("expected a diagram or a JSON object")
    if text.startswith("{\""):
        return AlgebraElement.from_json(text)
    return AlgebraElement.from_diagram(parse_diagram(text, r))


def cmd_multiply(args) -> int:
    x, y = _element(args.x, args.r), _element(args.y, args.r)
    z = multiply(x, y, parse_delta(args.delta))
    _out(json.dumps(z.to_json_obj(), ensure_ascii=False) if args.format == "json" else str(z))
    return EXIT_OK


def cmd_basis(args) -> int:
    caps = _caps(args)
    basis = enumerate_basis(args.r, brauer_only=args.algebra == "brauer", cap=caps.basis)
    if args.format == "json":
        _out(json.dumps({"r": args.r, "algebra": args.algebra, "count": len(basis), "diagrams": [format_diagram(d) for d in basis]}))
    else:
        _out("\n".join(format_diagram(d) for d in basis))
    return EXIT_OK


def cmd_idempotent(args) -> int:
    e = idempotent(args.algebra, args.r, args.l, parse_delta(args.delta))
    _out(json.dumps(e.to_json_obj(), ensure_ascii=False) if args.format == "json" else str(e))
    return EXIT_OK


def cmd_verify_stratification(args) -> int:
    caps = _caps(args)
    report = stratification_report(args.algebra, args.r, parse_delta(args.delta), caps.basis)
    checks = list(report.checks)
    if args.module_law:
        if args.algebra != "brauer":
            raise UsageError("--module-law applies to the Brauer algebra only")
        checks.append(verify_module_law(args.r, caps.module_law_r))
        report.checks = checks
    if args.format == "json":
        _out(json.dumps(report.as_json_obj(), ensure_ascii=False, indent=2))
    else:
        lines = [f"{report.algebra} r={report.r} delta={report.delta}"]
        for d in report.dims:
            lines.append(f"  n={d.n} l={d.l}: dim V_n={d.dim_Vn} dim V_n^l={d.dim_Vnl} layer={d.dim_layer}")
        for c in checks:
            where = ",".join(f"{k}={c.details[k]}" for k in ("n", "l") if k in c.details)
            lines.append(f"  {'PASS' if c.passed else 'FAIL'} {c.name}{' ' + where if where else ''}: {c.reason}")
        _out("\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_partial_classes(args) -> int:
    caps = _caps(args)
    found = classes(args.r, args.n, args.l, cap=caps.basis)
    if args.format == "json":
        obj = [{"signature": s.as_json_obj(), "representative": str(v), "size": k} for s, v, k in found]
        _out(json.dumps(obj))
    else:
        _out("\n".join(f"{v}\t{k}\t{s}" for s, v, k in found) if found else "[]")
    return EXIT_OK


def _composition(text: str) -> Composition:
    try:
        return Composition.parse(text)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def cmd_decompose(args) -> int:
    caps = _caps(args)
    v = parse_partial(args.v, args.r)
    d = decompose_Uv(args.r, args.n, args.l, v, _composition(args.lam), caps, args.jobs)
    _out(emit_report(d, args.format, caps))
    return EXIT_OK


def cmd_decompose_all(args) -> int:
    caps = _caps(args)
    d = decompose_restriction(args.r, args.n, args.l, _composition(args.lam), caps, args.jobs)
    _out(emit_report(d, args.format, caps))
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    caps = _caps(args)
    lam = _composition(args.lam)
    if args.v is None:
        if args.negative_control:
            raise UsageError("--negative-control needs --v")
        result = verify_full_restriction(args.r, args.n, args.l, lam, caps.oracle_columns, caps.full_restriction_r)
        ok = result.passed
    else:
        claim = decompose_Uv(args.r, args.n, args.l, parse_partial(args.v, args.r), lam, caps, args.jobs)
        if args.negative_control:
            bad = _Claim(claim, corrupt_nus(claim.nus))
            result = verify_decomposition(bad, caps.oracle_columns)
            ok = not result.passed
        else:
            result = verify_decomposition(claim, caps.oracle_columns)
            ok = result.passed
    if args.format == "json":
        obj = result.as_json_obj()
        obj["negative_control"] = bool(args.negative_control)
        obj["ok"] = ok
        _out(json.dumps(obj, indent=2))
    else:
        label = "negative control " if args.negative_control else ""
        verdict = ("rejected as expected" if ok else "NOT rejected") if args.negative_control else ("PASS" if ok else "FAIL")
        _out(f"{label}{verdict}: oracle dimension {result.dimension}, claimed {result.claimed_dimension}\n{result.diff_report()}")
    return EXIT_OK if ok else EXIT_FAIL


class _Claim:
    def __init__(self, claim, nus):
        self.r, self.n, self.l, self.v, self.lam = claim.r, claim.n, claim.l, claim.v, claim.lam
        self.nus = nus


def cmd_report(args) -> int:
    caps = _caps(args)
    text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    try:
        obj = json.loads(text)
        inst = obj["instance"]
        lam = Composition(tuple(inst["lambda"]))
        if obj["kind"] == "Uv":
            d = decompose_Uv(inst["r"], inst["n"], inst["l"], parse_partial(inst["v"], inst["r"]), lam, caps)
        elif obj["kind"] == "restriction":
            d = decompose_restriction(inst["r"], inst["n"], inst["l"], lam, caps)
        else:
            raise KeyError("kind")
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise ParseError(f"not a cellstrat decomposition report: {exc}") from exc
    if args.check:
        fresh = json.loads(emit_report(d, "json", caps))
        keys = [k for k in obj if k != "provenance"]
        mismatched = [k for k in keys if obj.get(k) != fresh.get(k)]
        if mismatched:
            print(f"report differs from recomputation in: {', '.join(mismatched)}", file=sys.stderr)
            return EXIT_FAIL
    _out(emit_report(d, args.format, caps))
    return EXIT_OK


COMMANDS = {
    "multiply": cmd_multiply,
    "basis": cmd_basis,
    "idempotent": cmd_idempotent,
    "verify-stratification": cmd_verify_stratification,
    "partial-classes": cmd_partial_classes,
    "decompose": cmd_decompose,
    "decompose-all": cmd_decompose_all,
    "oracle-check": cmd_oracle_check,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except SizeLimitError as exc:
        print(f"cellstrat: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NotYoungError as exc:
        print(f"cellstrat: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, CellstratError, ValueError, OSError) as exc:
        print(f"cellstrat: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
