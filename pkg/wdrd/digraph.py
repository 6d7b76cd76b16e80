"""Simple digraphs, directed distances and two-way distance profiles."""
import logging
from collections import deque
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from wdrd.config import settings
from wdrd.errors import ConnectivityError, FormatError, InvalidParameterError, LoopError, NoCircuitError
from wdrd.groups import ConnectionSet, FiniteGroup
from wdrd.models import DigraphDocument
from wdrd.utils.file_utils import canonical_json

logger = logging.getLogger(__name__)


class TwoWayPair(NamedTuple):
    """The two-way distance (d(x, y), d(y, x))."""

    forward: int
    backward: int

    def reversed(self) -> "TwoWayPair":
        return TwoWayPair(self.backward, self.forward)


@dataclass(frozen=True)
class Digraph:
    """A finite simple digraph given by sorted out-neighbour lists."""

    n: int
    out_neighbors: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError(f"A digraph needs at least one vertex, got n={self.n}")
        if len(self.out_neighbors) != self.n:
            raise InvalidParameterError(f"Expected {self.n} neighbour lists, got {len(self.out_neighbors)}")
        for v, nbrs in enumerate(self.out_neighbors):
            if list(nbrs) != sorted(set(nbrs)):
                raise InvalidParameterError(f"Neighbours of {v} must be sorted without duplicates")
            if v in nbrs:
                raise LoopError(f"Loop at vertex {v}")
            if nbrs and not (0 <= nbrs[0] and nbrs[-1] < self.n):
                raise InvalidParameterError(f"Neighbour of {v} outside 0..{self.n - 1}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]]) -> "Digraph":
        """Build a digraph from an arc list; duplicate arcs are rejected."""
        nbrs: List[List[int]] = [[] for _ in range(n)]
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"Arc ({u}, {v}) has a vertex outside 0..{n - 1}")
            nbrs[u].append(int(v))
        for u, lst in enumerate(nbrs):
            if len(lst) != len(set(lst)):
                raise InvalidParameterError(f"Duplicate arc out of vertex {u}")
        return cls(n, tuple(tuple(sorted(lst)) for lst in nbrs))

    def arcs(self) -> List[Tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.out_neighbors) for v in nbrs]

    @property
    def arc_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.out_neighbors)

    def out_degrees(self) -> List[int]:
        return [len(nbrs) for nbrs in self.out_neighbors]

    def in_degrees(self) -> List[int]:
        counts = [0] * self.n
        for nbrs in self.out_neighbors:
            for v in nbrs:
                counts[v] += 1
        return counts

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, nbrs in enumerate(self.out_neighbors):
            a[u, list(nbrs)] = 1
        return a


@dataclass(frozen=True, eq=False)
class TwoWayProfile:
    """All two-way distances of a strongly connected digraph.

    ``dist[x, y]`` is d(x, y); the pair at (x, y) is (dist[x, y], dist[y, x]).
    """

    n: int
    dist: np.ndarray

    def __post_init__(self):
        self.dist.flags.writeable = False

    def pair(self, x: int, y: int) -> TwoWayPair:
        return TwoWayPair(int(self.dist[x, y]), int(self.dist[y, x]))

    @property
    def pairs(self) -> List[List[TwoWayPair]]:
        return [[self.pair(x, y) for y in range(self.n)] for x in range(self.n)]

    def row(self, x: int) -> List[TwoWayPair]:
        return [self.pair(x, y) for y in range(self.n)]


def directed_cycle(n: int) -> Digraph:
    """The directed n-cycle 0 -> 1 -> ... -> n-1 -> 0."""
    if n < 2:
        raise InvalidParameterError(f"A directed cycle needs at least 2 vertices, got {n}")
    return Digraph(n, tuple(((v + 1) % n,) for v in range(n)))


def cayley_digraph(g: FiniteGroup, s: ConnectionSet) -> Digraph:
    """Build Cay(g, s) with arcs x -> x*sigma for sigma in s.

    Args:
        g: The group
        s: Connection set

    Returns:
        The Cayley digraph on the group elements

    Raises:
        LoopError: If s contains the identity
    """
    gens = list(s)
    if any(not 0 <= x < g.order for x in gens):
        raise InvalidParameterError(f"Connection set {gens} has elements outside 0..{g.order - 1}")
    if g.identity in s:
        raise LoopError(f"Connection set contains the identity {g.identity}")
    nbrs = tuple(tuple(sorted(int(y) for y in g.table[x, gens])) for x in range(g.order))
    return Digraph(g.order, nbrs)


def reverse(d: Digraph) -> Digraph:
    return Digraph.from_arcs(d.n, [(v, u) for u, v in d.arcs()])


def relabel(d: Digraph, perm: Sequence[int]) -> Digraph:
    """Return the copy of d in which vertex v is renamed perm[v]."""
    return Digraph.from_arcs(d.n, [(perm[u], perm[v]) for u, v in d.arcs()])


def _bfs(out_neighbors: Sequence[Sequence[int]], source: int, n: int) -> List[int]:
    dist = [-1] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in out_neighbors[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def distance_matrix(d: Digraph) -> np.ndarray:
    """Directed distances from every vertex; -1 marks an unreachable vertex."""
    return np.array([_bfs(d.out_neighbors, x, d.n) for x in range(d.n)], dtype=np.int64)


def is_strongly_connected(d: Digraph) -> bool:
    """Check that every ordered pair of vertices is joined by a path."""
    if min(_bfs(d.out_neighbors, 0, d.n)) < 0:
        return False
    return min(_bfs(reverse(d).out_neighbors, 0, d.n)) >= 0


def two_way_profile(d: Digraph) -> TwoWayProfile:
    """Compute the two-way distance of every ordered pair.

    Args:
        d: A strongly connected digraph

    Returns:
        The profile; the backward distances are the BFS distances on the
        reversed digraph, which equal the transposed forward distances

    Raises:
        ConnectivityError: With the first unreachable ordered pair
    """
    dist = distance_matrix(d)
    missing = np.argwhere(dist < 0)
    if len(missing):
        x, y = (int(v) for v in missing[0])
        raise ConnectivityError(f"Vertex {y} is unreachable from vertex {x}", (x, y))
    if settings.debug:
        logger.info(f"[DEBUG] Two-way profile on {d.n} vertices, diameter {int(dist.max())}")
    return TwoWayProfile(d.n, dist)


def girth(d: Digraph, profile: Optional[TwoWayProfile] = None) -> int:
    """Length of a shortest circuit, as the minimum of 1 + d(v, u) over arcs (u, v)."""
    arcs = d.arcs()
    if not arcs:
        raise NoCircuitError("Digraph has no arcs")
    profile = profile or two_way_profile(d)
    return min(1 + int(profile.dist[v, u]) for u, v in arcs)


def arc_types(d: Digraph, profile: TwoWayProfile) -> FrozenSet[TwoWayPair]:
    """The set of arc types (1, d(v, u)) over all arcs (u, v)."""
    return frozenset(TwoWayPair(1, int(profile.dist[v, u])) for u, v in d.arcs())


def to_document(d: Digraph) -> DigraphDocument:
    return DigraphDocument(n=d.n, arcs=d.arcs())


def from_document(doc: DigraphDocument) -> Digraph:
    try:
        return Digraph.from_arcs(doc.n, doc.arcs)
    except (InvalidParameterError, LoopError) as exc:
        raise FormatError(f"Invalid digraph document: {exc}")


def load_digraph(text: str) -> Digraph:
    """Parse a digraph JSON document.

    Raises:
        FormatError: If the document is not valid JSON or describes no simple digraph
    """
    try:
        doc = DigraphDocument.model_validate_json(text)
    except ValidationError as exc:
        raise FormatError(f"Invalid digraph document: {exc.errors()[0]['msg']}")
    return from_document(doc)


def dump_digraph(d: Digraph) -> str:
    """Serialize d with arcs sorted lexicographically."""
    return canonical_json(to_document(d).model_dump(mode="json"))
