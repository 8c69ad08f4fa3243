"""Command-line interface.

Subcommands: invariants, convert, enumerate, cf, slope, count,
homology, verify.  Exit codes: 0 success, 2 parse/validation error,
3 certificate failure.  Results go to stdout, diagnostics to stderr;
all output is deterministic for fixed inputs and flags.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import diagramio, exact, fronts, surgery, topology
from .errors import ContactSurgeryError, NonNegativeCoefficient
from .exact import INF, format_rational, parse_rational

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CERTIFICATE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contactsurgery",
        description="Convert rational contact surgery diagrams to (+1)/(-1) form "
        "with machine-checkable certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="classical invariants of each component")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")

    for name in ("convert", "enumerate"):
        p = sub.add_parser(
            name,
            help="convert a diagram to (+1)/(-1) form"
            if name == "convert"
            else "emit one converted diagram per admissible rotation tuple",
        )
        p.add_argument("path")
        p.add_argument(
            "--policy",
            default=None,
            help="all-negative (default), all-positive, or tuple=r1,r2,...",
        )
        p.add_argument("--json", action="store_true")
        p.add_argument("--out", metavar="DIR", default=None)
        if name == "convert":
            p.add_argument("--enumerate", action="store_true", dest="enumerate_all")

    for name, help_text in (
        ("cf", "negative continued fraction expansion of r < 0"),
        ("slope", "boundary slope of the chain for r < 0"),
        ("count", "number of tight realizations of the chain for r < 0"),
    ):
        # '+' as prefix char so negative rationals parse as positionals
        p = sub.add_parser(name, help=help_text, prefix_chars="+")
        p.add_argument("r", help="rational like -7/5")

    p = sub.add_parser("homology", help="first homology of the surgered manifold")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="re-derive all certificate clauses of a converted file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "invariants": _cmd_invariants,
        "convert": _cmd_convert,
        "enumerate": _cmd_convert,
        "cf": _cmd_cf,
        "slope": _cmd_slope,
        "count": _cmd_count,
        "homology": _cmd_homology,
        "verify": _cmd_verify,
    }[args.command]
    try:
        return handler(args)
    except ContactSurgeryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def entry():
    sys.exit(main())


def _negative_rational(text):
    r = parse_rational(text)
    if r is INF or r >= 0:
        raise NonNegativeCoefficient(f"expected a finite rational < 0, got {text}")
    return r


def _cmd_cf(args) -> int:
    entries = exact.neg_cf_expand(_negative_rational(args.r))
    print("[" + ",".join(str(a) for a in entries) + "]")
    return EXIT_OK


def _cmd_slope(args) -> int:
    chain = exact.negative_chain(_negative_rational(args.r))
    print(format_rational(exact.boundary_slope(chain)))
    return EXIT_OK


def _cmd_count(args) -> int:
    chain = exact.negative_chain(_negative_rational(args.r))
    print(exact.tight_count(chain))
    return EXIT_OK


def _cmd_invariants(args) -> int:
    diagram, _ = diagramio.load_diagram(args.path)
    rows = []
    for comp in diagram.components:
        if isinstance(comp.knot, surgery.KnotData):
            rows.append(
                {
                    "id": comp.id,
                    "coefficient": format_rational(comp.coefficient),
                    "tb": comp.knot.tb,
                    "rot": comp.knot.rot,
                    "writhe": None,
                    "cusps": None,
                    "type": comp.knot.kind,
                }
            )
        else:
            front = comp.knot
            rows.append(
                {
                    "id": comp.id,
                    "coefficient": format_rational(comp.coefficient),
                    "tb": fronts.thurston_bennequin(front, 0),
                    "rot": fronts.rotation(front, 0),
                    "writhe": fronts.writhe(front, 0),
                    "cusps": fronts.cusp_count(front, 0),
                    "type": "front",
                }
            )
    if args.json:
        print(diagramio.dumps_canonical({"components": rows}), end="")
    else:
        print(f"{'id':<8}{'coeff':>8}{'tb':>6}{'rot':>6}{'writhe':>8}{'cusps':>7}  type")
        for row in rows:
            writhe = "-" if row["writhe"] is None else row["writhe"]
            cusps = "-" if row["cusps"] is None else row["cusps"]
            print(
                f"{row['id']:<8}{row['coefficient']:>8}{row['tb']:>6}{row['rot']:>6}"
                f"{writhe:>8}{cusps:>7}  {row['type']}"
            )
    return EXIT_OK


def _cmd_homology(args) -> int:
    diagram, _ = diagramio.load_diagram(args.path)
    group = topology.first_homology(diagram)
    if args.json:
        print(
            diagramio.dumps_canonical(
                {
                    "invariant_factors": list(group.invariant_factors),
                    "rank": group.rank,
                    "order": group.order(),
                }
            ),
            end="",
        )
    else:
        order = group.order()
        print(f"H1 = {group}" + ("" if order is None else f"  (order {order})"))
    return EXIT_OK


def _print_chain_table(pmdiag: surgery.PmOneDiagram):
    for conv in pmdiag.conversions:
        steps = ", ".join(
            f"({'+' if i.coefficient > 0 else ''}{i.coefficient} tb={i.tb_local} rot={i.rot_choice})"
            for i in conv.instructions
        )
        coeff = "-" if conv.coefficient is None else format_rational(conv.coefficient)
        print(f"{conv.parent} [{coeff}]: {steps}")
    if pmdiag.dropped:
        print(f"dropped (infinite coefficient): {', '.join(pmdiag.dropped)}")


def _emit_converted(pmdiag, report, args, index=None):
    obj = diagramio.converted_to_obj(pmdiag)
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        name = "converted.json" if index is None else f"converted_{index:04d}.json"
        (out / name).write_text(diagramio.dumps_canonical(obj), encoding="utf-8")
        return
    if args.json:
        payload = {"diagram": obj, "report": diagramio.report_to_obj(report)}
        print(diagramio.dumps_canonical(payload), end="")
    else:
        if index is not None:
            print(f"--- conversion {index} ---")
        _print_chain_table(pmdiag)


def _cmd_convert(args) -> int:
    diagram, options = diagramio.load_diagram(args.path)
    policy = args.policy if args.policy is not None else options.get("policy", "all-negative")
    enumerate_all = args.command == "enumerate" or getattr(args, "enumerate_all", False)
    failed = False
    if enumerate_all:
        count = 0
        for index, pmdiag in enumerate(surgery.enumerate_conversions(diagram)):
            report = surgery.verify(pmdiag)
            failed = failed or not report.passed
            _emit_converted(pmdiag, report, args, index=index)
            count += 1
        if not args.json and args.out is None:
            print(f"total: {count} conversion(s)")
    else:
        pmdiag = surgery.convert(diagram, policy=policy)
        report = surgery.verify(pmdiag)
        failed = not report.passed
        _emit_converted(pmdiag, report, args)
        if not args.json and args.out is None:
            _print_report(report, verbose=False)
    if failed:
        print("certificate verification failed", file=sys.stderr)
        return EXIT_CERTIFICATE
    return EXIT_OK


def _print_report(report: surgery.VerificationReport, verbose=True):
    if verbose:
        print(f"{'parent':<10}{'clause':<34}{'status':<8}detail")
        for chain in report.chains:
            for clause in chain.clauses:
                status = "pass" if clause.passed else "FAIL"
                if clause.assumed:
                    status = "assumed"
                print(f"{chain.parent:<10}{clause.name:<34}{status:<8}{clause.detail}")
    print(f"overall: {'PASS' if report.passed else 'FAIL'}")


def _cmd_verify(args) -> int:
    pmdiag = diagramio.load_converted(args.path)
    report = surgery.verify(pmdiag)
    if args.json:
        print(diagramio.dumps_canonical(diagramio.report_to_obj(report)), end="")
    else:
        _print_report(report)
    return EXIT_OK if report.passed else EXIT_CERTIFICATE


if __name__ == "__main__":
    entry()
