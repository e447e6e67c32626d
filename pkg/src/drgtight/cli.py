"""Command-line front end.  Every subcommand parses flags, calls one library
entry point and prints JSON on stdout.

Exit status: 0 success, 1 checks failed or the input was rejected by the
library, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import catalog, graphs, search, tightness
from .core import IntersectionArray
from .errors import DRGError, InvalidArray, ParamOutOfRange
from .scalar import parse_number, to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _numbers(text: str):
    try:
        parsed = [parse_number(t) for t in text.replace(";", ",").split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse numbers in {text!r}: {exc}") from None
    return [v for v, _ in parsed], all(e for _, e in parsed)


def _array(text: str) -> IntersectionArray:
    try:
        return IntersectionArray.parse(text)
    except InvalidArray:
        raise
    except (ValueError, TypeError) as exc:
        raise UsageError(f"cannot parse intersection array {text!r}: {exc}") from None


# ----- subcommands ------------------------------------------------------------------


def cmd_analyze(args) -> int:
    report = tightness.analyze(_array(args.array))
    _emit(report.to_json())
    return EXIT_OK


def cmd_parametrize(args) -> int:
    sigma, exact_s = _numbers(args.sigma)
    try:
        eps, exact_e = parse_number(args.epsilon)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse epsilon {args.epsilon!r}: {exc}") from None
    p = tightness.parametrize(sigma, eps)
    out = {
        "array": str(p.array) if p.integral else None,
        "b": [to_json(v) for v in p.array.b],
        "c": [to_json(v) for v in p.array.c],
        "integral": p.integral,
        "consistent": p.consistent,
        "h": to_json(p.h),
        "g": to_json(p.g),
        "theta1": to_json(p.theta1),
        "thetad": to_json(p.thetad),
        "exact": exact_s and exact_e,
    }
    ok = p.integral and p.consistent
    if args.rho:
        rho, exact_r = _numbers(args.rho)
        two = tightness.two_eigenvalue_parametrize(sigma, rho)
        out["two_eigenvalue"] = {"b": [to_json(v) for v in two.b], "c": [to_json(v) for v in two.c]}
        agree = str(two) == str(p.array)
        out["agree"] = agree
        out["exact"] = out["exact"] and exact_r
        ok = ok and agree
    _emit(out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_graph(args) -> int:
    if bool(args.construct) == bool(args.edge_file):
        raise UsageError("give exactly one of --construct or --edge-file")
    g = graphs.construct(args.construct) if args.construct else graphs.load_graph(args.edge_file)
    if args.export:
        graphs.export_graph(g, args.export)
    report = graphs.combinatorial_report(
        g, strict=args.strict, force=args.force, homogeneous=args.homogeneous,
        formulas=args.formulas, sample=args.sample, seed=args.seed,
    )
    report["source"] = args.construct or args.edge_file
    _emit(report)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_catalog(args) -> int:
    if args.json:
        catalog.export_json(args.json)
    entries = catalog.list_entries(constructible_only=args.constructible)
    if not args.validate:
        _emit(catalog.to_json_list(entries))
        return EXIT_OK
    results = [catalog.validate_entry(e) for e in entries]
    _emit({"ok": all(r.ok for r in results), "entries": [r.to_json() for r in results]})
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def cmd_search(args) -> int:
    cfg = search.SearchConfig(
        d=args.d,
        max_k=args.max_k,
        require_antipodal=args.antipodal,
        require_feasible=args.feasible,
        tolerance=args.tolerance,
        prune=not args.no_prune,
        cap=args.cap,
        workers=args.workers,
    )
    result = search.run_search(cfg)
    sys.stdout.write(result.to_ndjson())
    logging.getLogger(__name__).info("%d candidates, %d hits", result.candidates, len(result.hits))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="drgtight", description="Tightness of distance-regular graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="progress and diagnostics on stderr")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    a = sub.add_parser("analyze", help="array-level tightness report")
    a.add_argument("--array", required=True, help='intersection array "b0,b1,...;c1,c2,..."')
    a.set_defaults(func=cmd_analyze)

    pr = sub.add_parser("parametrize", help="rebuild an array from a cosine sequence and epsilon")
    pr.add_argument("--sigma", required=True, help='comma-separated cosines, e.g. "1,1/2,0,-1/2,-1"')
    pr.add_argument("--epsilon", required=True)
    pr.add_argument("--rho", help="cosines of the other extremal eigenvalue, to cross-check")
    pr.set_defaults(func=cmd_parametrize)

    v = sub.add_parser("verify-graph", help="combinatorial checks on a concrete graph")
    v.add_argument("--construct", help='family spec, e.g. "johnson:8,4", "halved_cube:8", "icosahedron"')
    v.add_argument("--edge-file", help='edge list: "n m" then one "u v" per line')
    v.add_argument("--homogeneous", action="store_true")
    v.add_argument("--formulas", action="store_true")
    v.add_argument("--export", help="write the graph as an edge list")
    v.add_argument("--strict", action="store_true", help="also check every p^h_ij")
    v.add_argument("--force", action="store_true", help=f"allow more than {graphs.MAX_VERTICES} vertices")
    v.add_argument("--sample", type=int, help="check a random sample of this many edges")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify_graph)

    c = sub.add_parser("catalog", help="the embedded table of examples")
    c.add_argument("--validate", action="store_true")
    c.add_argument("--json", help="export the catalog to this file")
    c.add_argument("--constructible", action="store_true", help="only entries with a graph constructor")
    c.set_defaults(func=cmd_catalog)

    s = sub.add_parser("search", help="enumerate tight arrays")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--max-k", type=int, required=True)
    s.add_argument("--antipodal", action="store_true")
    s.add_argument("--feasible", action="store_true", help="also require a feasible theta_d sequence")
    s.add_argument("--tolerance", choices=("exact", "numeric"), default="exact")
    s.add_argument("--no-prune", action="store_true", help="exhaustive box, no monotonicity pruning")
    s.add_argument("--cap", type=int, default=search.DEFAULT_CAP)
    s.add_argument("--workers", type=int, help="worker processes (default: DRGT_THREADS or 1)")
    s.set_defaults(func=cmd_search)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
        return args.func(args)
    except (UsageError, ParamOutOfRange) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DRGError as exc:
        # rejected by the library: report as JSON, explain on stderr
        _emit({"error": type(exc).__name__, "message": str(exc)})
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
