"""The sporadic 18-vertex digraph: constrained search, cache and re-verification."""
import logging
from collections import Counter
from itertools import accumulate, combinations
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set, Tuple

from wdrd.config import settings
from wdrd.digraph import Digraph, dump_digraph, is_strongly_connected, load_digraph, two_way_profile
from wdrd.errors import CacheCorruptError, FormatError, SearchExhaustedError
from wdrd.scheme import check_wdrd, intersection_tensor, relation_partition
from wdrd.utils.file_utils import verify_checksum, write_with_checksum

logger = logging.getLogger(__name__)

ORDER = 18
VALENCY = 3
LABELS = ((0, 0), (1, 3), (2, 2), (2, 4), (3, 1), (3, 3), (4, 2))
VALENCIES = {(0, 0): 1, (1, 3): 3, (2, 2): 6, (2, 4): 1, (3, 1): 3, (3, 3): 3, (4, 2): 1}
GIRTH = 4


def _distance_counts() -> Tuple[int, ...]:
    """Number of vertices at each forward distance 0..4 implied by the valencies."""
    counts = [0] * 5
    for (forward, _), k in VALENCIES.items():
        counts[forward] += k
    return tuple(counts)


# Forward and backward distance distributions coincide: 1, 3, 7, 6, 1
SHELLS = _distance_counts()
CUMULATIVE = tuple(accumulate(SHELLS))


def sporadic_problems(d: Digraph) -> List[str]:
    """List every way d differs from the sporadic parameter set; empty means it matches."""
    problems = []
    if d.n != ORDER:
        return [f"expected {ORDER} vertices, got {d.n}"]
    if set(d.out_degrees()) != {VALENCY} or set(d.in_degrees()) != {VALENCY}:
        problems.append("not 3-regular")
    if not is_strongly_connected(d):
        return problems + ["not strongly connected"]

    profile = two_way_profile(d)
    partition = relation_partition(profile)
    labels = tuple(tuple(lab) for lab in partition.labels)
    if labels != LABELS:
        return problems + [f"relation labels {labels}"]

    report = check_wdrd(d, profile, partition)
    if not report.is_wdrd:
        return problems + [f"not weakly distance-regular: {report.witness}"]
    if not report.is_commutative:
        problems.append("scheme is not commutative")

    scheme = intersection_tensor(d, profile, partition)
    for label, k in VALENCIES.items():
        if scheme.k(label) != k:
            problems.append(f"k{label} = {scheme.k(label)}, expected {k}")
    return problems


class _Search:
    """Backtracking over out-neighbour sets in breadth-first label order.

    Vertex 0 gets {1, 2, 3}; each processed vertex picks three out-neighbours
    among the labelled vertices plus fresh labels taken in increasing order,
    trying the choices with the most fresh labels first.

    Partial assignments are pruned with consequences of the parameters that
    hold in both directions:

    * no two vertices share two out-neighbours (or two in-neighbours);
    * the out-neighbours of x all point to one vertex x*, which sees no
      out-neighbour of x, and every other 2-step endpoint of x shares exactly
      one out-neighbour with x;
    * two vertices with a common out-neighbour are 2-step endpoints of each
      other, and x -> a forces x* -> a*;
    * distance balls never outgrow 1, 4, 11, 17 and closed balls match the
      shells exactly.
    """

    def __init__(self, node_limit: int):
        self.node_limit = node_limit
        self.nodes = 0
        self.out: List[Optional[Tuple[int, ...]]] = [None] * ORDER
        self.ins: List[List[int]] = [[] for _ in range(ORDER)]

    def run(self) -> Digraph:
        self._place(0, (1, 2, 3))
        try:
            if self._extend(1, 4):
                return Digraph(ORDER, tuple(self.out))
        finally:
            logger.info(f"Sporadic search visited {self.nodes:,} nodes")
        raise SearchExhaustedError(
            f"No 18-vertex digraph with the sporadic parameters after {self.nodes:,} nodes"
        )

    def _place(self, u: int, nbrs: Tuple[int, ...]):
        self.out[u] = nbrs
        for v in nbrs:
            self.ins[v].append(u)

    def _remove(self, u: int):
        for v in self.out[u]:
            self.ins[v].pop()
        self.out[u] = None

    def _extend(self, u: int, next_label: int) -> bool:
        if u == ORDER:
            return next_label == ORDER and self._accept()
        if u >= next_label:
            return False  # the labelled part is closed but smaller than 18

        behind = self._ball(u, reverse=True, limit=2)
        siblings = {v for w in self.ins[u] for v in self.out[w]}
        existing = [
            v for v in range(next_label)
            if v != u and len(self.ins[v]) < VALENCY and v not in behind and v not in siblings
        ]
        fresh_room = min(VALENCY, ORDER - next_label)
        for fresh in range(fresh_room, -1, -1):
            for old in combinations(existing, VALENCY - fresh):
                nbrs = old + tuple(range(next_label, next_label + fresh))
                self.nodes += 1
                if self.nodes > self.node_limit:
                    raise SearchExhaustedError(f"Node limit {self.node_limit:,} reached")
                self._place(u, nbrs)
                if self._consistent() and self._extend(u + 1, next_label + fresh):
                    return True
                self._remove(u)
        return False

    def _full(self, v: int, reverse: bool) -> bool:
        return len(self.ins[v]) == VALENCY if reverse else self.out[v] is not None

    def _step(self, v: int, reverse: bool) -> Sequence[int]:
        return self.ins[v] if reverse else (self.out[v] or ())

    def _ball(self, source: int, reverse: bool, limit: int) -> Dict[int, int]:
        """Distances within ``limit`` along the arcs placed so far."""
        dist = {source: 0}
        frontier = [source]
        for level in range(1, limit + 1):
            nxt = []
            for x in frontier:
                for y in self._step(x, reverse):
                    if y not in dist:
                        dist[y] = level
                        nxt.append(y)
            frontier = nxt
        return dist

    def _determined(self, x: int, depth: int, reverse: bool) -> Optional[Dict[int, int]]:
        """The distance ball of radius ``depth`` around x, if no later arc can change it."""
        dist = {x: 0}
        frontier = [x]
        for level in range(1, depth + 1):
            nxt = []
            for v in frontier:
                if not self._full(v, reverse):
                    return None
                for y in self._step(v, reverse):
                    if y not in dist:
                        dist[y] = level
                        nxt.append(y)
            frontier = nxt
        return dist

    def _stars(self, reverse: bool) -> Optional[List[int]]:
        """The common 2-step endpoint of each vertex (-1 while unknown), or None on a conflict."""
        star = [-1] * ORDER
        for x in range(ORDER):
            if not self._full(x, reverse):
                continue
            sets = [set(self._step(a, reverse)) for a in self._step(x, reverse) if self._full(a, reverse)]
            for first, second in combinations(sets, 2):
                common = first & second
                if len(common) != 1:
                    return None
                (z,) = common
                if star[x] not in (-1, z):
                    return None
                star[x] = z
        return star

    def _sharing(self) -> Optional[Tuple[Set[Tuple[int, int]], Set[Tuple[int, int]]]]:
        """Pairs with a common out-neighbour and pairs with a common in-neighbour."""
        by_out: Set[Tuple[int, int]] = set()
        by_in: Set[Tuple[int, int]] = set()
        for z in range(ORDER):
            for pair in combinations(sorted(self.ins[z]), 2):
                if pair in by_out:
                    return None
                by_out.add(pair)
            for pair in combinations(self.out[z] or (), 2):
                if pair in by_in:
                    return None
                by_in.add(pair)
        return by_out, by_in

    def _consistent(self) -> bool:
        sharing = self._sharing()
        if sharing is None:
            return False
        for reverse in (False, True):
            star = self._stars(reverse)
            if star is None:
                return False
            shared = sharing[1] if reverse else sharing[0]
            for x in range(ORDER):
                if not self._balls_fit(x, reverse):
                    return False
                if star[x] != -1 and not self._star_fits(x, star, shared, reverse):
                    return False
        return True

    def _balls_fit(self, x: int, reverse: bool) -> bool:
        counts = Counter(self._ball(x, reverse, 3).values())
        total = 0
        for radius in range(4):
            total += counts[radius]
            if total > CUMULATIVE[radius]:
                return False
        for depth in (3, 2):
            ball = self._determined(x, depth, reverse)
            if ball is None:
                continue
            shells = Counter(ball.values())
            return all(shells[j] == SHELLS[j] for j in range(depth + 1))
        return True

    def _star_fits(self, x: int, star: List[int], shared: Set[Tuple[int, int]], reverse: bool) -> bool:
        s = star[x]
        if s == x:
            return False
        nx = self._step(x, reverse)
        back = not reverse
        # arcs at the star all come from neighbours of x
        if any(v not in nx for v in self._step(s, back)):
            return False
        if self._full(s, back) and any(v not in self._step(s, back) for v in nx):
            return False

        ends = {y for a in nx for y in self._step(a, reverse)}
        for y in ends:
            if self._full(y, reverse):
                common = sum(1 for v in self._step(y, reverse) if v in nx)
                if common != (0 if y == s else 1):
                    return False
        if all(self._full(a, reverse) for a in nx):
            for y in range(ORDER):
                if y != x and (min(x, y), max(x, y)) in shared and (y not in ends or y == s):
                    return False

        # the star map carries arcs to arcs
        for a in nx:
            sa = star[a]
            if sa == -1:
                continue
            if self._full(s, reverse) and sa not in self._step(s, reverse):
                return False
            if self._full(sa, back) and s not in self._step(sa, back):
                return False
        return True

    def _accept(self) -> bool:
        d = Digraph(ORDER, tuple(self.out))
        problems = sporadic_problems(d)
        if problems and settings.debug:
            logger.info(f"[DEBUG] Rejected complete candidate: {problems[0]}")
        return not problems


def search_sporadic_18(node_limit: Optional[int] = None) -> Digraph:
    """Reconstruct the sporadic digraph from its parameters by backtracking.

    Args:
        node_limit: Out-set assignments to try before giving up
            (defaults to ``settings.search_node_limit``)

    Returns:
        The first digraph in search order with the sporadic parameters

    Raises:
        SearchExhaustedError: If the search space or the node budget runs out
    """
    limit = node_limit or settings.search_node_limit
    logger.info(f"Searching for the sporadic 18-vertex digraph (node limit {limit:,})")
    return _Search(limit).run()


def load_sporadic_cache(path: Path) -> Digraph:
    """Load and fully re-verify a cached sporadic digraph.

    Raises:
        CacheCorruptError: If the checksum sidecar is missing or disagrees,
            the file does not parse or the digraph lacks the sporadic parameters
    """
    checksum = verify_checksum(path)
    if checksum is None:
        raise CacheCorruptError(f"Missing checksum sidecar for {path}")
    if not checksum:
        raise CacheCorruptError(f"Checksum mismatch for {path}")
    try:
        d = load_digraph(path.read_text(encoding="utf-8"))
    except FormatError as exc:
        raise CacheCorruptError(f"Unreadable sporadic cache {path}: {exc}")
    problems = sporadic_problems(d)
    if problems:
        raise CacheCorruptError(f"Sporadic cache {path} failed re-verification: {'; '.join(problems)}")
    return d


def build_sporadic_18(rederive: bool = False, cache_path: Optional[Path] = None) -> Digraph:
    """Return the sporadic 18-vertex digraph.

    Args:
        rederive: Run the search even when a cache exists, and require its
            serialization to match the cache byte for byte
        cache_path: Cache file (defaults to ``settings.sporadic_cache``)

    Returns:
        The verified digraph
    """
    path = Path(cache_path or settings.sporadic_cache)

    if not rederive and path.exists():
        return load_sporadic_cache(path)

    found = search_sporadic_18()
    if path.exists():
        load_sporadic_cache(path)
        if dump_digraph(found) != path.read_text(encoding="utf-8"):
            raise CacheCorruptError(f"Re-derived digraph differs from the cache at {path}")
        logger.info("Re-derived digraph matches the cache byte for byte")
    else:
        write_with_checksum(path, dump_digraph(found))
        logger.info(f"Wrote sporadic cache to {path}")
    return found
