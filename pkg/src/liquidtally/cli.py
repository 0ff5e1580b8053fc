"""Command line interface.

Usage::

    liquidtally solve GRAPH [--format json|csv] [--attributions all|none|ID,...]
    liquidtally explain GRAPH --voter ID
    liquidtally whatif GRAPH --node ID
    liquidtally check GRAPH

Common flags: ``--tol``, ``--method direct|neumann|auto``, ``--decay BETA``,
``--exact``, ``--dot PATH``, ``--input-format json|edgelist``.

Exit status is 0 on success, 1 for parse/validation problems and 2 when the
solver fails. Results go to stdout, diagnostics to stderr.
"""

import argparse
import sys

from .attribution import attribution_for_voter, hypothetical_tally
from .errors import (
    DelegationError,
    NoConvergenceError,
    SingularSystemError,
    TooLargeError,
)
from .extensions import DecayConfig, apply_decay
from .formats import parse_input, to_dot
from .graph import validate
from .pipeline import (
    attribution_dict,
    format_number,
    run_pipeline,
    tally_report,
    to_csv,
    to_json,
)
from .preprocess import preprocess
from .solver import Method, SolverConfig

SOLVER_ERRORS = (NoConvergenceError, SingularSystemError, TooLargeError)


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="delegation graph (JSON or edge list)")
    common.add_argument("--input-format", choices=["json", "edgelist"], default=None)
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--method", choices=["direct", "neumann", "auto"], default="auto")
    common.add_argument("--decay", type=float, default=1.0, metavar="BETA")
    common.add_argument("--exact", action="store_true", help="rational arithmetic (small graphs)")
    common.add_argument("--dot", metavar="PATH", help="write the simplified graph as DOT")

    p = argparse.ArgumentParser(prog="liquidtally", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("solve", parents=[common], help="tally all voters")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.add_argument("--attributions", default="none", help="all, none, or comma-separated voter ids")
    s.add_argument("--debug-s", action="store_true", help="include raw S for every node")
    e = sub.add_parser("explain", parents=[common], help="attribution of one voter's tally")
    e.add_argument("--voter", required=True)
    w = sub.add_parser("whatif", parents=[common], help="tally of a node if it voted itself")
    w.add_argument("--node", required=True)
    sub.add_parser("check", parents=[common], help="validate only")
    return p


def _load(args):
    try:
        with open(args.file, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise DelegationError(f"cannot read {args.file}: {exc}", code="IO_ERROR") from None
    fmt = args.input_format
    if fmt is None and args.file.endswith(".json"):
        fmt = "json"
    return parse_input(data, fmt)


def _config(args):
    method = Method.EXACT if args.exact else Method(args.method)
    return SolverConfig(method=method, tol=args.tol)


def _check(args, out):
    graph = _load(args)
    report = validate(graph)
    out.write(
        to_json(
            {
                "valid": report.ok,
                "errors": [{"code": i.code, "element": str(i.element)} for i in report.errors],
                "warnings": [{"code": i.code, "element": str(i.element)} for i in report.warnings],
                "nodes": len(graph),
                "delegations": len(graph.edges),
            }
        )
    )
    return 0 if report.ok else 1


def _dispatch(args, out):
    if args.command == "check":
        return _check(args, out)
    graph = _load(args)
    beta = DecayConfig(args.decay)
    config = _config(args)

    if args.dot:
        sg = preprocess(apply_decay(graph, beta))
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(sg.graph))

    if args.command == "solve":
        run = run_pipeline(graph, config, beta)
        att = args.attributions
        if att not in ("all", "none"):
            att = [v for v in att.split(",") if v]
        report = tally_report(run, attributions=att, debug_s=args.debug_s)
        out.write(to_csv(report) if args.format == "csv" else to_json(report))
    elif args.command == "explain":
        sg = preprocess(apply_decay(graph, beta))
        out.write(to_json(attribution_dict(attribution_for_voter(sg, args.voter))))
    elif args.command == "whatif":
        votes = hypothetical_tally(apply_decay(graph, beta), args.node, config)
        out.write(to_json({"node": args.node, "hypothetical_votes": format_number(votes)}))
    return 0


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = _parser().parse_args(argv)
    try:
        return _dispatch(args, out)
    except SOLVER_ERRORS as exc:
        err.write(f"error [{exc.code}]: {exc}\n")
        return 2
    except (DelegationError, ValueError) as exc:
        err.write(f"error [{getattr(exc, 'code', 'INVALID_ARGUMENT')}]: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
