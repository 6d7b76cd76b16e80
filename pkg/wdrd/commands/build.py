"""Construction verbs: ``construct`` and ``sporadic``."""
import logging
from pathlib import Path

from wdrd.commands import FAILED, PASS
from wdrd.digraph import Digraph, to_document
from wdrd.families import FamilySpec, build_family, verify_family
from wdrd.sporadic import build_sporadic_18
from wdrd.utils.render import emit

logger = logging.getLogger(__name__)


def register(subparsers):
    construct = subparsers.add_parser("construct", help="Build a family member")
    construct.add_argument("--family", required=True, help="Family tag I..VIII (case-insensitive)")
    construct.add_argument("--g", type=int, help="Parameter g of family VI")
    construct.add_argument("--n", type=int, help="Parameter n of families VII and VIII")
    construct.add_argument("--out", type=Path, help="Write the digraph document here instead of stdout")
    construct.add_argument("--verify", action="store_true", help="Run every family check and print the report")
    construct.set_defaults(handler=run_construct)

    sporadic = subparsers.add_parser("sporadic", help="Emit the 18-vertex non-Cayley digraph")
    sporadic.add_argument("--rederive", action="store_true", help="Search from scratch and compare with the cache")
    sporadic.add_argument("--out", type=Path, help="Write the digraph document here instead of stdout")
    sporadic.set_defaults(handler=run_sporadic)


def _write_digraph(d: Digraph, args):
    # --out always holds the JSON document
    if args.out is not None:
        emit(to_document(d), "digraph.j2", out=args.out)
        logger.info(f"Wrote {args.out}")
    else:
        emit(to_document(d), "digraph.j2", args.human)


def run_construct(args) -> int:
    """Write the digraph document; with ``--verify`` print the family report instead of stdout output."""
    spec = FamilySpec(args.family, g=args.g, n=args.n)
    d = build_family(spec)
    logger.info(f"Built {spec.display}: {d.n} vertices, {d.arc_count} arcs")

    if not args.verify:
        _write_digraph(d, args)
        return PASS

    if args.out is not None:
        _write_digraph(d, args)
    report = verify_family(spec)
    emit(report, "family.j2", args.human)
    if not report.passed:
        logger.error(f"{spec.display} failed verification")
    return PASS if report.passed else FAILED


def run_sporadic(args) -> int:
    _write_digraph(build_sporadic_18(rederive=args.rederive), args)
    return PASS
