"""Search verbs: ``enumerate``, ``classify`` and ``iso``."""
import logging
from pathlib import Path
from typing import List

from wdrd.classify import classify_order, classify_orders, load_catalog
from wdrd.commands import FAILED, PASS, read_digraph
from wdrd.config import parse_workers
from wdrd.errors import InvalidParameterError
from wdrd.isomorphism import canonical_certificate
from wdrd.models import IsoDocument
from wdrd.utils.render import emit

logger = logging.getLogger(__name__)


def _as_int(token: str, text: str) -> int:
    if not token.strip().isdigit():
        raise InvalidParameterError(f"Invalid order list {text!r}")
    return int(token)


def parse_orders(text: str) -> List[int]:
    """Parse ``7..16``, ``7,8,13`` or a mix such as ``4..9,12``.

    Raises:
        InvalidParameterError: If a part is not a positive integer or an increasing range
    """
    orders = set()
    for part in text.split(","):
        if ".." in part:
            lo, _, hi = part.partition("..")
            lo, hi = _as_int(lo, text), _as_int(hi, text)
            if lo > hi:
                raise InvalidParameterError(f"Empty order range {part.strip()!r}")
            orders.update(range(lo, hi + 1))
        else:
            orders.add(_as_int(part, text))
    if 0 in orders:
        raise InvalidParameterError(f"Orders must be positive: {text!r}")
    return sorted(orders)


def register(subparsers):
    enum = subparsers.add_parser("enumerate", help="Qualifying Cayley digraphs of one order")
    enum.add_argument("--order", type=int, required=True)
    enum.add_argument("--catalog", type=Path, help="Catalog directory (default: WDRD_CATALOG_DIR or the shipped one)")
    enum.add_argument("--workers", type=parse_workers, help="Worker processes, or 'auto'")
    enum.set_defaults(handler=run_enumerate)

    classify = subparsers.add_parser("classify", help="Classification census over several orders")
    classify.add_argument("--orders", type=parse_orders, required=True, help="e.g. 7..16 or 7,8,13")
    classify.add_argument("--catalog", type=Path, help="Catalog directory (default: WDRD_CATALOG_DIR or the shipped one)")
    classify.add_argument("--workers", type=parse_workers, help="Worker processes, or 'auto'")
    classify.set_defaults(handler=run_classify)

    iso = subparsers.add_parser("iso", help="Decide whether two digraphs are isomorphic")
    iso.add_argument("first", type=Path)
    iso.add_argument("second", type=Path)
    iso.set_defaults(handler=run_iso)


def run_enumerate(args) -> int:
    catalog = load_catalog(args.catalog)
    report = classify_order(catalog, args.order, args.workers)
    emit([report], "classification.j2", args.human)
    return PASS if report.passed else FAILED


def run_classify(args) -> int:
    catalog = load_catalog(args.catalog)
    reports = classify_orders(catalog, args.orders, args.workers)
    if not reports:
        raise InvalidParameterError(f"None of the orders {args.orders} is in the catalog")
    emit(reports, "classification.j2", args.human)
    failed = [r.order for r in reports if not r.passed]
    if failed:
        logger.error(f"Classification disagrees at orders {failed}")
        return FAILED
    return PASS


def run_iso(args) -> int:
    first, second = read_digraph(args.first), read_digraph(args.second)
    c1, c2 = canonical_certificate(first), canonical_certificate(second)
    doc = IsoDocument(isomorphic=c1 == c2, certificates=(c1.digest, c2.digest))
    emit(doc, "iso.j2", args.human)
    return PASS if doc.isomorphic else FAILED
