"""Command-line entry point: ``derangement-lab construct | analyze | verify``.

Exit status: 0 success, 1 a verification or analysis check failed,
2 usage, parse or cap error.
"""

import argparse
import logging
import sys

from . import constructions as C
from .errors import DerangementLabError
from .formats import (density_summary_csv, dumps, graph_to_bitmap, graph_to_dot, group_to_dict,
                      line_table_csv, read_group_file)
from .perm import DEFAULT_MAX_ORDER
from .solver import DEFAULT_SOLVER_CAP, DEFAULT_STRICT_CAP, analyze
from .verify import verify_fourell, verify_main, verify_twop

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

KINDS = ["gq", "mq", "agl2", "fourell", "example6", "cyclic", "dihedral", "symmetric",
         "alternating", "wreath"]


class UsageError(Exception):
    pass


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for {args.kind or args.theorem}")
    return value


def build_kind(args):
    kind = args.kind
    mo = args.max_order
    if kind == "gq":
        g = C.build_gq(_need(args, "q"), max_order=mo)
    elif kind == "mq":
        g = C.build_mq(_need(args, "q"), max_order=mo)
    elif kind == "agl2":
        g = C.build_agl2(_need(args, "q"), max_order=mo)
    elif kind == "fourell":
        g = C.build_fourell(_need(args, "ell"), max_order=mo)[0]
    elif kind == "example6":
        g = C.build_example6()
    elif kind == "cyclic":
        g = C.build_cyclic_regular(_need(args, "n"))
    elif kind == "dihedral":
        g = C.build_dihedral(_need(args, "n"))
    elif kind == "symmetric":
        g = C.build_symmetric(_need(args, "n"))
    elif kind == "alternating":
        g = C.build_alternating(_need(args, "n"))
    else:
        g = C.build_wreath_cyclic(_need(args, "p"))
    if args.on_pairs:
        g = C.build_on_pairs(g)
    return g


def _emit(text, out):
    if out:
        mode = "wb" if isinstance(text, bytes) else "w"
        with open(out, mode) as fh:
            fh.write(text)
    elif isinstance(text, bytes):
        sys.stdout.buffer.write(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args):
    g = build_kind(args)
    if args.format == "csv":
        if args.kind not in ("gq", "mq", "agl2"):
            raise UsageError("csv export is the line table, available for gq, mq and agl2")
        _emit(line_table_csv(C.line_table(args.q)), args.out)
    elif args.format == "json":
        _emit(dumps(group_to_dict(g, include_elements=args.elements)), args.out)
    else:
        raise UsageError(f"construct does not write {args.format}")
    return EXIT_OK


def cmd_analyze(args):
    g = read_group_file(args.group, max_order=args.max_order)
    if args.format in ("dot", "bitmap"):
        from .dgraph import build_graph, complete_multipartite_decomposition
        graph = build_graph(g, max_vertices=args.max_vertices)
        if args.format == "bitmap":
            _emit(graph_to_bitmap(graph), args.out)
        else:
            decomp = complete_multipartite_decomposition(graph)
            _emit(graph_to_dot(graph, decomp.parts if decomp else None), args.out)
        return EXIT_OK
    report = analyze(g, max_vertices=args.max_vertices, solver_cap=args.solver_cap,
                     strict_cap=args.strict_cap)
    if args.format == "csv":
        _emit(density_summary_csv([report]), args.out)
    else:
        _emit(dumps(report.to_dict()), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args):
    if args.theorem == "main":
        result = verify_main(_need(args, "q"), max_vertices=args.max_vertices)
    elif args.theorem == "fourell":
        result = verify_fourell(_need(args, "ell"), max_vertices=args.max_vertices)
    else:
        g = read_group_file(_need(args, "group"), max_order=args.max_order)
        result = verify_twop(g, _need(args, "p"), solver_cap=args.solver_cap)
    _emit(dumps(result.to_dict()), args.out)
    if not result.passed:
        print("verification failed: " + ", ".join(result.failures), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def make_parser():
    parser = argparse.ArgumentParser(
        prog="derangement-lab",
        description="Construct transitive groups and analyse their derangement graphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
        p.add_argument("--max-vertices", type=int, default=20000)
        p.add_argument("--solver-cap", type=int, default=DEFAULT_SOLVER_CAP)
        p.add_argument("--strict-cap", type=int, default=DEFAULT_STRICT_CAP)

    p = sub.add_parser("construct", help="write a group file")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--q", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--on-pairs", action="store_true", help="act on unordered pairs of points")
    p.add_argument("--elements", action="store_true", help="include the full element list")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    common(p)
    p.set_defaults(func=cmd_construct, theorem=None)

    p = sub.add_parser("analyze", help="report the invariants of a group file")
    p.add_argument("group")
    p.add_argument("--format", choices=["json", "csv", "dot", "bitmap"], default="json")
    common(p)
    p.set_defaults(func=cmd_analyze, kind=None, theorem=None)

    p = sub.add_parser("verify", help="check one of the main results at a chosen size")
    p.add_argument("theorem", choices=["main", "fourell", "twop"])
    p.add_argument("--q", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--group")
    common(p)
    p.set_defaults(func=cmd_verify, kind=None)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ValueError, DerangementLabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
