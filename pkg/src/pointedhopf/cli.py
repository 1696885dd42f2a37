"""Command-line front end.

Exit codes: 0 success, 1 a verification or classification check failed
(the report is still written), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import analysis as an
from . import classify as cl
from .exactfield import FieldError, FieldSpec
from .families import FAMILY_NAMES, FamilyError, FamilyId, build
from .hopfcore import (
    AntipodeError,
    HopfAlgebra,
    HopfError,
    SchemaError,
    compute_antipode,
    dual,
    dumps,
    loads,
    verify_axioms,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, message: str, output: str = ""):
        super().__init__(message)
        self.output = output


def parse_field(text: str) -> FieldSpec:
    """``7``, ``2^2`` or a JSON object such as ``{"char": 2, "degree": 2}``."""
    text = text.strip()
    try:
        if text.startswith("{"):
            return FieldSpec.from_json(json.loads(text))
        if "^" in text:
            q, m = text.split("^", 1)
            return FieldSpec(int(q), int(m))
        return FieldSpec(int(text))
    except (ValueError, FieldError) as exc:
        raise UsageError(f"bad --field {text!r}: {exc}") from None


def parse_omega(field: FieldSpec, text: str):
    try:
        obj = json.loads(text)
        return field.decode(field.scalar_from_json(obj))
    except (ValueError, FieldError, TypeError) as exc:
        raise UsageError(f"bad --omega {text!r}: {exc}") from None


def family_from_args(name: str, args) -> FamilyId:
    if args.p is None:
        raise UsageError(f"family {name!r} needs --p")
    field = parse_field(args.field) if args.field else None
    omega = None
    if args.omega is not None:
        if field is None:
            field = FamilyId(name, args.p).field
        omega = parse_omega(field, args.omega)
    try:
        return FamilyId(name, args.p, field, omega)
    except FamilyError as exc:
        raise UsageError(str(exc)) from None


def load_source(source: str, args) -> HopfAlgebra:
    """A family name (built with --p/--field/--omega) or a JSON file."""
    if source.lower() in FAMILY_NAMES:
        return build(family_from_args(source.lower(), args))
    path = Path(source)
    if not path.is_file():
        raise UsageError(f"{source!r} is neither a family name ({', '.join(FAMILY_NAMES)}) nor a file")
    try:
        return loads(path.read_text())
    except (SchemaError, HopfError, FieldError) as exc:
        raise UsageError(f"{source}: {exc}") from None


def _require_verified(H: HopfAlgebra) -> HopfAlgebra:
    """Fill in a missing antipode, then insist on every axiom."""
    if H.antipode is None:
        try:
            H = H.with_antipode(compute_antipode(H))
        except AntipodeError as exc:
            raise CheckFailed(f"no antipode: {exc}") from None
    report = verify_axioms(H)
    if not report.ok:
        bad = report.failures()[0]
        raise CheckFailed(
            f"axiom check failed: {bad.name} counterexample {bad.counterexample}",
            _render_verify(report, "markdown"),
        )
    return H


def _dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _render_verify(report, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(report.to_json())
    lines = ["| axiom | pass | counterexample |", "|---|---|---|"]
    for r in report.results:
        ce = "-" if r.counterexample is None else str(tuple(r.counterexample))
        if r.note:
            ce = f"{ce} ({r.note})"
        lines.append(f"| {r.name} | {str(r.passed).lower()} | {ce} |")
    return "\n".join(lines) + "\n"


def _render_analysis(res: dict, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(res)
    gl = res["grouplikes"]
    lines = [
        f"Analysis of a {res['dim']}-dimensional algebra over {res['field_name']}",
        "",
        "| invariant | value |",
        "|---|---|",
        f"| grouplikes | {gl['count']} ({gl['status']}) |",
        f"| grouplike exponent | {gl['exponent']} |",
        f"| commutative | {str(res['flags']['commutative']).lower()} |",
        f"| cocommutative | {str(res['flags']['cocommutative']).lower()} |",
        f"| antipode order | {res['antipode_order']} |",
        f"| dim P_(1,1) | {res['dim_P11']} |",
        f"| filtration dims | {res['filtration_dims']} |",
        f"| Taft-Wilson identity | {str(res['taft_wilson']['pass']).lower()} |",
    ]
    if "frobenius_profile" in res:
        fp = res["frobenius_profile"]
        lines.append(f"| p-power image / kernel | {fp['image_dim']} / {fp['kernel_dim']} |")
    if "p_map" in res:
        pm = res["p_map"]
        lines.append(f"| p-map on P_(1,1): rank, nilpotent | {pm['rank']}, {str(pm['nilpotent']).lower()} |")
    lines += ["", "| g | h | dim P_(g,h) | quotient by H_0 |", "|---|---|---|---|"]
    for s in res["skew_primitives"]:
        if s["quotient_dim"] or s["g"] == s["h"] == 0:
            lines.append(f"| {s['g']} | {s['h']} | {s['dim']} | {s['quotient_dim']} |")
    if res["characters"]:
        lines += ["", "| pair | kind | values by grouplike index |", "|---|---|---|"]
        for c in res["characters"]:
            vals = ", ".join(f"{k}:{v}" for k, v in sorted(c["values"].items(), key=lambda kv: int(kv[0])))
            lines.append(f"| {tuple(c['pair'])} | {c['kind']} | {vals} |")
    return "\n".join(lines) + "\n"


def _render_verdict(verdict: cl.TypeVerdict, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(verdict.to_json())
    fp = verdict.fingerprint.to_json()
    lines = [f"matched: {verdict.label}", "", "| field | value |", "|---|---|"]
    for k in sorted(fp):
        lines.append(f"| {k} | {json.dumps(fp[k])} |")
    lines += ["", f"calibration: {len(verdict.calibration)} pairwise-distinct types", cl.RELIANCE_NOTE]
    return "\n".join(lines) + "\n"


# -- subcommands ------------------------------------------------------------------------

def cmd_build(args) -> int:
    H = build(family_from_args(args.family.lower(), args))
    _write(dumps(H) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    H = load_source(args.source, args)
    report = verify_axioms(H)
    _write(_render_verify(report, args.format), args.output)
    if not report.ok:
        bad = report.failures()[0]
        print(f"verify: {bad.name} failed, counterexample {bad.counterexample}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_analyze(args) -> int:
    H = _require_verified(load_source(args.source, args))
    try:
        res = an.analyze(H, args.cap)
    except an.GrouplikeCapError as exc:
        raise UsageError(str(exc)) from None
    except an.FiltrationError as exc:
        raise CheckFailed(str(exc)) from None
    _write(_render_analysis(res, args.format), args.output)
    return EXIT_OK if res["taft_wilson"]["pass"] else EXIT_CHECK_FAILED


def cmd_classify(args) -> int:
    H = _require_verified(load_source(args.source, args))
    try:
        verdict = cl.classify(H, args.p, args.cap)
    except cl.CalibrationError as exc:
        raise CheckFailed(str(exc)) from None
    except cl.ClassifyError as exc:
        raise UsageError(str(exc)) from None
    _write(_render_verdict(verdict, args.format), args.output)
    return EXIT_OK


def cmd_report(args) -> int:
    if args.p is None:
        raise UsageError("report needs --p")
    try:
        text = cl.report_table(args.p, args.char, args.format)
    except cl.CalibrationError as exc:
        raise CheckFailed(str(exc)) from None
    except (cl.ClassifyError, FamilyError, FieldError) as exc:
        raise UsageError(str(exc)) from None
    _write(text, args.output)
    return EXIT_OK


def cmd_dual(args) -> int:
    H = _require_verified(load_source(args.source, args))
    _write(dumps(dual(H)) + "\n", args.output)
    return EXIT_OK


def _add_family_opts(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=int, help="the prime p (dimension p^2)")
    sp.add_argument("--field", help="field: 7, 2^2 or a JSON object")
    sp.add_argument("--omega", help="Taft parameter: an integer, or a JSON coefficient list")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pointedhopf", description="Exact workbench for pointed Hopf algebras of dimension p^2")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build", help="write the structure constants of a family as JSON")
    sp.add_argument("family", choices=FAMILY_NAMES, type=str.lower)
    _add_family_opts(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_build)

    for name, func, helptext in (
        ("verify", cmd_verify, "check every Hopf axiom"),
        ("analyze", cmd_analyze, "grouplikes, skew-primitives, filtration and characters"),
        ("classify", cmd_classify, "match against the classified types"),
        ("dual", cmd_dual, "write the dual algebra as JSON"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("source", help="a JSON file or a family name")
        _add_family_opts(sp)
        sp.add_argument("-o", "--output")
        if name != "dual":
            sp.add_argument("--format", choices=("markdown", "json"), default="markdown")
        if name in ("analyze", "classify"):
            sp.add_argument("--cap", type=int, help="grouplike brute-force cap (default HOPF_BRUTEFORCE_CAP or 1e8)")
        sp.set_defaults(func=func)

    sp = sub.add_parser("report", help="fingerprint table of all classified types")
    sp.add_argument("--p", type=int)
    sp.add_argument("--char", default="equal-p", help="equal-p, or taft:Q for characteristic Q != p")
    sp.add_argument("--format", choices=("markdown", "json"), default="markdown")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_report)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CheckFailed as exc:
        if exc.output:
            sys.stdout.write(exc.output)
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
