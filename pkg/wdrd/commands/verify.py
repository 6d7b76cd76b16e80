"""Verification verbs: ``check``, ``scheme`` and ``table1``."""
import logging
from pathlib import Path

from wdrd.commands import FAILED, PASS, read_digraph
from wdrd.digraph import arc_types, girth, is_strongly_connected, two_way_profile
from wdrd.errors import ConnectivityError, InvalidParameterError, InvalidStateError
from wdrd.families import GIRTH_NOTE, FamilySpec, verify_table1
from wdrd.models import CheckDocument
from wdrd.scheme import check_wdrd, intersection_tensor, relation_partition, scheme_document, verify_scheme_identities
from wdrd.utils.render import emit

logger = logging.getLogger(__name__)


def register(subparsers):
    check = subparsers.add_parser("check", help="Decide whether a digraph is weakly distance-regular")
    check.add_argument("digraph", type=Path, help="Digraph JSON document")
    check.add_argument("--fast-root", type=int, metavar="V",
                       help="Compare only pairs (V, y); valid for vertex-transitive digraphs")
    check.set_defaults(handler=run_check)

    scheme = subparsers.add_parser("scheme", help="Intersection numbers and identity checks")
    scheme.add_argument("digraph", type=Path, help="Digraph JSON document")
    scheme.set_defaults(handler=run_scheme)

    table1 = subparsers.add_parser("table1", help="Compare closed-form distances with BFS")
    table1.add_argument("--family", required=True, type=str.upper, choices=["VI", "VII", "VIII"])
    table1.add_argument("--g", type=int, help="Parameter g of family VI")
    table1.add_argument("--n", type=int, help="Parameter n of families VII and VIII")
    table1.set_defaults(handler=run_table1)


def run_check(args) -> int:
    d = read_digraph(args.digraph)
    if args.fast_root is not None and not 0 <= args.fast_root < d.n:
        raise InvalidParameterError(f"--fast-root {args.fast_root} is not a vertex of a {d.n}-vertex digraph")

    if not is_strongly_connected(d):
        doc = CheckDocument(vertices=d.n, strongly_connected=False, notes=["not strongly connected"])
        emit(doc, "check.j2", args.human)
        return FAILED

    profile = two_way_profile(d)
    notes = []
    doc_girth = None
    if d.arc_count:
        doc_girth = girth(d, profile)
        if doc_girth <= 2:
            notes.append(f"girth {doc_girth}: {GIRTH_NOTE}")
    else:
        notes.append("no circuits")
    types = sorted(tuple(t) for t in arc_types(d, profile))
    if len(types) > 1:
        notes.append(f"{len(types)} arc types")

    report = check_wdrd(d, profile, relation_partition(profile), root=args.fast_root)
    doc = CheckDocument(
        vertices=d.n,
        strongly_connected=True,
        girth=doc_girth,
        arc_types=types,
        notes=notes,
        report=report,
    )
    emit(doc, "check.j2", args.human)
    return PASS if report.is_wdrd else FAILED


def run_scheme(args) -> int:
    d = read_digraph(args.digraph)
    try:
        profile = two_way_profile(d)
        scheme = intersection_tensor(d, profile, relation_partition(profile))
    except (ConnectivityError, InvalidStateError) as exc:
        logger.error(f"{args.digraph}: {exc}")
        return FAILED

    identities = verify_scheme_identities(scheme)
    emit(scheme_document(scheme, identities), "scheme.j2", args.human)
    return PASS if identities.passed else FAILED


def run_table1(args) -> int:
    report = verify_table1(FamilySpec(args.family, g=args.g, n=args.n))
    emit(report, "table1.j2", args.human)
    return PASS if report.passed else FAILED
