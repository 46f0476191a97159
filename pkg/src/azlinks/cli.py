"""Command line: ``azlinks <subcommand> ...``.

Exit codes: 0 when the computation finished and every verdict matched the
expected one, 1 on a mathematical mismatch, 2 on bad usage or bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import curvediv, hyperjac, linkgroup, surfacecurve
from .exactfield import parse_scalar, parse_field_element
from .polyring import PolySyntaxError, UnresolvedCoordinates, parse_unipoly
from .surfacecurve import CaseReport

__all__ = ["CaseReport", "run_case", "run_all", "main"]

EXPECTED_EXTENDS = {"W512": False, "L632": False, "L622": False}
CASE_ORDER = ("W512", "L632", "L622")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def run_case(tag: str, timings: bool = False) -> CaseReport:
    start = time.perf_counter()
    report = surfacecurve.extendability_verdict(linkgroup.get_case(tag))
    if timings:
        report.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    return report


def run_all(timings: bool = False) -> list[CaseReport]:
    return [run_case(tag, timings) for tag in CASE_ORDER]


def report_ok(report: CaseReport) -> bool:
    return report.extends == EXPECTED_EXTENDS[report.case]


def format_report(r: CaseReport) -> str:
    case = linkgroup.get_case(r.case)
    lines = [f"== {case.tag}: link {case.name}, Schubert form {case.schubert[0]}/{case.schubert[1]}"]
    lines.append("curve C = {f = beta = 0}:")
    lines += [f"  {c}" for c in r.components]
    lines.append(f"orders along C: ord(alpha) = {r.orders['alpha']}, ord(beta) = {r.orders['beta']}")
    lines.append(f"tame symbol class: {r.tame_symbol}")
    cert = r.certificate
    kind = cert["kind"]
    lines.append(f"certificate ({kind}):")
    if kind == "squarefree":
        lines.append(f"  on {cert['line']}: {cert['statement']}")
        for item in cert["all_lines"]:
            verdict = "square" if item["square"] else "not a square"
            lines.append(f"  {item['line']}: orders {tuple(item['orders'])}, class {item['class']} ({verdict})")
    elif kind == "elliptic-deduction":
        lines.append(f"  curve {cert['curve']}, genus {cert['genus']}")
        for name, rel in cert["relations"].items():
            lines.append(f"  {name} = {rel}")
        lines += [f"  {step}" for step in cert["trace"]]
    elif kind == "jacobian":
        lines.append(f"  model {cert['model']} (genus {cert['genus']}), V = {cert['V']}")
        lines.append(f"  half of div(alpha) on the cover: {cert['divisor']}")
        lines += [f"  {fib}" for fib in cert["fibers"]]
        lines.append(f"  D1 = [{cert['D1']}], D2 = [{cert['D2']}]")
        lines.append(f"  compose -> [{cert['compose']}]*")
        lines += [f"  adjust {step}" for step in cert["adjust_steps"]]
        lines.append(f"  result [{cert['triple']}] vs identity [{cert['identity']}]")
    lines.append(f"extends: {str(r.extends).lower()}")
    if r.elapsed_ms is not None:
        lines.append(f"elapsed: {r.elapsed_ms} ms")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def cmd_case(args) -> int:
    r = run_case(args.tag, args.timings)
    _emit(args, r.as_dict(), format_report(r))
    return EXIT_OK if report_ok(r) else EXIT_MISMATCH


def cmd_all(args) -> int:
    reports = run_all(args.timings)
    _emit(args, [r.as_dict() for r in reports], "\n\n".join(format_report(r) for r in reports))
    return EXIT_OK if all(report_ok(r) for r in reports) else EXIT_MISMATCH


def cmd_word(args) -> int:
    try:
        w = linkgroup.schubert_word(args.alpha, args.beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, {"alpha": args.alpha, "beta": args.beta, "word": str(w)}, str(w))
    return EXIT_OK


def cmd_validate(args) -> int:
    tags = CASE_ORDER if args.case.lower() == "all" else (args.case,)
    reports = [
        linkgroup.sample_validate(t, args.samples, tol=args.tol, seed=args.seed, backend=args.backend)
        for t in tags
    ]
    text = "\n".join(
        f"{r.case}: {r.samples} samples, {r.roots_checked} roots, max residual {r.max_residual:.3e} "
        f"(tol {r.tol:g}) {'ok' if r.ok else 'FAIL'}"
        for r in reports
    )
    _emit(args, [r.as_dict() for r in reports], text)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH


def cmd_genus(args) -> int:
    try:
        g = curvediv.plane_genus(args.plane)
    except curvediv.UnsupportedSingularity as exc:
        _emit(args, {"genus": None, "error": "unsupported singularity", "detail": str(exc)}, "unsupported singularity")
        return EXIT_OK
    except UnresolvedCoordinates as exc:
        _emit(args, {"genus": None, "error": "unresolved coordinates", "detail": str(exc)}, f"unresolved coordinates: {exc}")
        return EXIT_OK
    _emit(args, {"genus": g}, str(g))
    return EXIT_OK


def cmd_divisor(args) -> int:
    curve = curvediv.CURVES[args.curve]()
    c = parse_field_element(args.line)
    D = curvediv.section_divisor(curve, c, curvediv.declared_polar(args.curve))
    payload = {
        "curve": str(curve),
        "function": f"x - ({c})",
        "divisor": str(D),
        "degree": D.degree,
    }
    _emit(args, payload, f"div(x - ({c})) = {D}")
    return EXIT_OK


def cmd_jac(args) -> int:
    curve = hyperjac.RealHyperellipticCurve(parse_unipoly(args.f))
    op = args.op
    if op == "precompute":
        _emit(args, {"f": str(curve.f), "genus": curve.g, "V": str(curve.V)}, f"V = {curve.V}")
        return EXIT_OK
    if op == "adjust":
        if not args.star:
            raise UsageError("jac adjust needs --star")
        s = hyperjac.parse_triple(args.star, starred=True)
        problem = hyperjac.validate_mumford(curve, s.u, s.v, s.n, starred=True)
        if problem:
            raise UsageError(f"{s}: {problem}")
        trace: list = []
        out = hyperjac.adjust(curve, s, trace)
        payload = {"result": out.serialize(), "steps": [f"{k}: {t}" for k, t in trace]}
        _emit(args, payload, str(out))
        return EXIT_OK
    if not (args.a and args.b):
        raise UsageError(f"jac {op} needs --a and --b")
    a, b = hyperjac.parse_triple(args.a), hyperjac.parse_triple(args.b)
    if op == "compose":
        s = hyperjac.compose(curve, a, b)
        _emit(args, {"result": s.serialize(), "starred": True}, str(s))
    else:
        out = hyperjac.jac_add(curve, a, b)
        ident = hyperjac.identity_triple(curve)
        payload = {"result": out.serialize(), "is_identity": out == ident}
        _emit(args, payload, str(out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return float(parse_scalar(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--timings", action="store_true", help="fill elapsed_ms in case reports")

    p = argparse.ArgumentParser(prog="azlinks", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("case", parents=[common], help="run one case pipeline")
    s.add_argument("tag", type=str.upper, choices=CASE_ORDER)
    s.set_defaults(func=cmd_case)

    s = sub.add_parser("all", parents=[common], help="run all three cases")
    s.set_defaults(func=cmd_all)

    s = sub.add_parser("word", parents=[common], help="relator word for a Schubert form")
    s.add_argument("--alpha", type=int, required=True)
    s.add_argument("--beta", type=int, required=True)
    s.set_defaults(func=cmd_word)

    s = sub.add_parser("validate", parents=[common], help="sample the canonical polynomials")
    s.add_argument("--case", default="all", type=str.upper, choices=CASE_ORDER + ("ALL",))
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--tol", type=_float, default=1e-8)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--backend", choices=("numba", "numpy"), default=None)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("genus", parents=[common], help="geometric genus of a plane curve")
    s.add_argument("--plane", required=True, help="affine equation in x and y")
    s.set_defaults(func=cmd_genus)

    s = sub.add_parser("divisor", parents=[common], help="divisor of x - c on a case curve")
    s.add_argument("--curve", choices=sorted(curvediv.CURVES), required=True)
    s.add_argument("--line", required=True, help="the constant c, e.g. -2 or sqrt(5)/2")
    s.set_defaults(func=cmd_divisor)

    s = sub.add_parser("jac", parents=[common], help="Jacobian arithmetic on y^2 = f(x)")
    s.add_argument("op", choices=("precompute", "compose", "add", "adjust"))
    s.add_argument("--f", required=True)
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--star")
    s.set_defaults(func=cmd_jac)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", 1) < 1:
        parser.error("--samples must be positive")
    try:
        return args.func(args)
    except (UsageError, PolySyntaxError, hyperjac.MumfordError) as exc:
        print(f"azlinks: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except hyperjac.AdjustScopeError as exc:
        print(f"azlinks: out of scope: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (surfacecurve.VerificationError, surfacecurve.IndeterminateOrder, ArithmeticError) as exc:
        print(f"azlinks: verification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, KeyError) as exc:
        print(f"azlinks: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
