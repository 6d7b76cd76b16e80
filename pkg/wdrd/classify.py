"""Cayley enumeration over group catalogs and the per-order classification census."""
import logging
import tomllib
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from wdrd.config import settings
from wdrd.digraph import (
    Digraph,
    arc_types,
    cayley_digraph,
    distance_matrix,
    is_strongly_connected,
    to_document,
    two_way_profile,
)
from wdrd.errors import FormatError, IncompleteCatalogError, InvalidParameterError
from wdrd.families import FamilySpec, build_family, theorem_instances
from wdrd.groups import ConnectionSet, FiniteGroup, generates, group_from_recipe, load_group_table
from wdrd.isomorphism import IsoCertificate, canonical_certificate
from wdrd.models import ClassEntry, ClassificationReport
from wdrd.scheme import check_wdrd, relation_partition

logger = logging.getLogger(__name__)

VALENCY = 3
SCOPE_NOTE = (
    "Exhaustive check at this order only; families VI to VIII are infinite, "
    "so agreement here does not verify the classification at other orders."
)


@dataclass
class GroupCatalog:
    """Groups keyed by order, with an explicit completeness flag per order."""

    groups: Dict[int, List[FiniteGroup]] = field(default_factory=dict)
    complete: Set[int] = field(default_factory=set)

    def add(self, group: FiniteGroup):
        self.groups.setdefault(group.order, []).append(group)

    def at(self, order: int) -> List[FiniteGroup]:
        return list(self.groups.get(order, []))

    def is_complete(self, order: int) -> bool:
        return order in self.complete

    @property
    def orders(self) -> List[int]:
        return sorted(self.groups)


def load_catalog(catalog_dir: Optional[Path] = None) -> GroupCatalog:
    """Load ``catalog.toml`` and the group-table files it names.

    Args:
        catalog_dir: Directory holding the manifest (defaults to ``settings.catalog_dir``)

    Returns:
        The catalog

    Raises:
        FormatError: If the manifest or a referenced table is malformed
    """
    directory = Path(catalog_dir or settings.catalog_dir)
    manifest = directory / "catalog.toml"
    try:
        data = tomllib.loads(manifest.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise FormatError(f"No catalog manifest at {manifest}")
    except tomllib.TOMLDecodeError as exc:
        raise FormatError(f"Invalid catalog manifest {manifest}: {exc}")

    catalog = GroupCatalog(complete=set(data.get("orders", {}).get("complete", [])))
    for entry in data.get("group", []):
        if "table" in entry:
            group = load_group_table((directory / entry["table"]).read_text(encoding="utf-8"))
            if "name" in entry:
                group = FiniteGroup(entry["name"], group.table, group.identity, group.inverses,
                                    group.labels, group.automorphisms)
        else:
            group = group_from_recipe(entry)
        if group.order != entry.get("order", group.order):
            raise FormatError(f"Catalog entry {group.name} has order {group.order}, manifest says {entry['order']}")
        catalog.add(group)

    for order in sorted(catalog.complete):
        if not catalog.at(order):
            raise FormatError(f"Order {order} is marked complete but has no groups")
    logger.info(f"Loaded catalog from {directory}: {sum(len(v) for v in catalog.groups.values())} groups, "
                f"complete orders {sorted(catalog.complete)}")
    return catalog


@dataclass(frozen=True)
class CayleyHit:
    group: str
    connection_set: Tuple[int, ...]
    digraph: Digraph


@dataclass
class GroupScan:
    group: str
    examined: int = 0
    hits: List[CayleyHit] = field(default_factory=list)


def one_arc_type(d: Digraph, profile) -> bool:
    """True iff every arc has the same type (1, r)."""
    return len(arc_types(d, profile)) == 1


def _orbit_minimal(group: FiniteGroup, s: Tuple[int, ...]) -> bool:
    """Whether s is lexicographically least in its orbit under the listed automorphisms."""
    seen = {s}
    frontier = [s]
    while frontier:
        nxt = []
        for t in frontier:
            for perm in group.automorphisms:
                image = tuple(sorted(perm[x] for x in t))
                if image < s:
                    return False
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return True


def scan_group(group: FiniteGroup, fast: Optional[bool] = None) -> GroupScan:
    """Test every 3-element connection set of one group.

    Args:
        group: The group
        fast: Compare only pairs (identity, y) in the WDRD check
            (defaults to ``settings.fast_cayley_check``)

    Returns:
        The number of connection sets examined and the qualifying digraphs
    """
    fast = settings.fast_cayley_check if fast is None else fast
    scan = GroupScan(group.name)
    others = [x for x in range(group.order) if x != group.identity]
    inverses = group.inverses.tolist()

    for s in combinations(others, VALENCY):
        scan.examined += 1
        if any(inverses[x] in s for x in s):
            continue
        if group.automorphisms and not _orbit_minimal(group, s):
            continue
        cs = ConnectionSet(s)
        if not generates(group, cs):
            continue
        d = cayley_digraph(group, cs)
        if not is_strongly_connected(d):
            continue
        profile = two_way_profile(d)
        if not one_arc_type(d, profile):
            continue
        report = check_wdrd(d, profile, relation_partition(profile), root=group.identity if fast else None)
        if report.is_wdrd and report.is_commutative:
            scan.hits.append(CayleyHit(group.name, s, d))

    logger.info(f"{group.name}: {scan.examined} connection sets, {len(scan.hits)} qualifying")
    return scan


def _scans(catalog: GroupCatalog, order: int, workers: Optional[int]) -> List[GroupScan]:
    groups = catalog.at(order)
    if not groups:
        raise InvalidParameterError(f"Catalog has no groups of order {order}")
    workers = workers or settings.workers
    if workers > 1 and len(groups) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(groups))) as pool:
            return list(pool.map(scan_group, groups))
    return [scan_group(g) for g in groups]


def enumerate_cayley(catalog: GroupCatalog, order: int, workers: Optional[int] = None) -> Iterator[CayleyHit]:
    """Yield every qualifying valency-3 Cayley digraph of the given order.

    Connection sets avoid the identity, are disjoint from their inverses,
    and generate the group; the digraph must have one arc type and be a
    commutative WDRD. Results come group by group in catalog order.
    """
    for scan in _scans(catalog, order, workers):
        yield from scan.hits


def classify_order(catalog: GroupCatalog, order: int, workers: Optional[int] = None) -> ClassificationReport:
    """Census of one order: dedupe qualifying digraphs and match them to the families.

    Args:
        catalog: Group catalog
        order: Vertex count
        workers: Worker processes (defaults to ``settings.workers``)

    Returns:
        The report, classes sorted by certificate digest
    """
    scans = _scans(catalog, order, workers)
    classes: Dict[str, Tuple[IsoCertificate, CayleyHit]] = {}
    for scan in scans:
        for hit in scan.hits:
            cert = canonical_certificate(hit.digraph)
            classes.setdefault(cert.digest, (cert, hit))

    instances = theorem_instances(order)
    instance_certs: List[Tuple[FamilySpec, IsoCertificate]] = [
        (spec, canonical_certificate(build_family(spec))) for spec in instances
    ]

    entries = []
    for digest in sorted(classes):
        cert, hit = classes[digest]
        matched = [spec.display for spec, c in instance_certs if c == cert]
        entries.append(ClassEntry(
            certificate=digest,
            group=hit.group,
            connection_set=list(hit.connection_set),
            tag=matched[0] if matched else "UNMATCHED",
            matched_tags=matched,
            digraph=to_document(hit.digraph),
        ))

    found = {c for c, _ in classes.values()}
    missing = [spec.display for spec, c in instance_certs if spec.is_cayley and c not in found]

    report = ClassificationReport(
        order=order,
        complete_catalog=catalog.is_complete(order),
        groups=[g.name for g in catalog.at(order)],
        candidates_examined=sum(s.examined for s in scans),
        qualifying_classes=entries,
        expected_members=[spec.display for spec in instances],
        missing_members=missing,
        note=SCOPE_NOTE,
    )
    if report.unmatched:
        logger.warning(f"Order {order}: {len(report.unmatched)} unmatched classes")
    logger.info(f"Order {order}: {len(entries)} classes, missing {missing or 'none'}")
    return report


def classify_orders(catalog: GroupCatalog, orders: Iterable[int], workers: Optional[int] = None) -> List[ClassificationReport]:
    """Classify each requested order present in the catalog, in ascending order."""
    wanted = sorted(set(orders))
    skipped = [o for o in wanted if not catalog.at(o)]
    if skipped:
        logger.info(f"Skipping orders without catalog groups: {skipped}")
    return [classify_order(catalog, o, workers) for o in wanted if catalog.at(o)]


def _identity_row(group: FiniteGroup, s: Tuple[int, ...]) -> Tuple:
    """Sorted two-way pairs from the identity of Cay(group, s); -1 marks an unreachable element."""
    n = group.order
    dist = [-1] * n
    dist[group.identity] = 0
    frontier = [group.identity]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for x in frontier:
            for y in group.table[x, list(s)].tolist():
                if dist[y] < 0:
                    dist[y] = level
                    nxt.append(y)
        frontier = nxt
    inv = group.inverses.tolist()
    # d(y, e) = d(e, y^-1) by left translation
    return tuple(sorted((dist[y], dist[inv[y]]) for y in range(n)))


def is_cayley_over(d: Digraph, catalog: GroupCatalog, order: Optional[int] = None) -> bool:
    """Whether d is isomorphic to a Cayley digraph over some catalog group of its order.

    Digraphs that are not strongly connected are handled too: their Cayley
    realisations use connection sets that generate a proper subgroup.

    Raises:
        IncompleteCatalogError: If the catalog does not claim completeness at this order
    """
    order = d.n if order is None else order
    if not catalog.is_complete(order):
        raise IncompleteCatalogError(f"Catalog is not marked complete at order {order}")
    if d.n != order:
        return False
    degrees = set(d.out_degrees())
    if len(degrees) != 1 or set(d.in_degrees()) != degrees:
        return False
    valency = degrees.pop()

    dist = distance_matrix(d)
    rows = {tuple(sorted(zip(dist[x].tolist(), dist[:, x].tolist()))) for x in range(d.n)}
    if len(rows) != 1:
        return False
    target_row = rows.pop()
    target = canonical_certificate(d)

    for group in catalog.at(order):
        others = [x for x in range(group.order) if x != group.identity]
        tried = 0
        for s in combinations(others, valency):
            if _identity_row(group, s) != target_row:
                continue
            tried += 1
            if canonical_certificate(cayley_digraph(group, ConnectionSet(s))) == target:
                logger.info(f"Realised as Cay({group.name}, {list(s)})")
                return True
        if settings.debug:
            logger.info(f"[DEBUG] {group.name}: {tried} connection sets matched the distance profile")
    return False


def class_counts(report: ClassificationReport) -> Counter:
    """How many classes carry each tag."""
    return Counter(entry.tag for entry in report.qualifying_classes)
