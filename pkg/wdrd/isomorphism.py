"""Digraph isomorphism by colour refinement and individualisation.

Colours start from the two-way distance matrix (with -1 for unreachable
vertices) and are refined by the multiset of (relation, colour) pairs in each
row. New colours are ranks of sorted signatures, so they depend only on the
isomorphism class of the coloured digraph.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from wdrd.config import settings
from wdrd.digraph import Digraph, distance_matrix
from wdrd.utils.file_utils import calculate_sha256_from_bytes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IsoCertificate:
    """Canonical byte form of a digraph; equal exactly for isomorphic digraphs."""

    canonical_form: bytes

    @property
    def digest(self) -> str:
        return calculate_sha256_from_bytes(self.canonical_form)


def relation_matrix(d: Digraph) -> np.ndarray:
    """Integer code of (d(x, y), d(y, x)) for every ordered pair; -1 distances included."""
    dist = distance_matrix(d)
    base = d.n + 2
    return (dist + 1) * base + (dist.T + 1)


def refine_colors(rel: np.ndarray, colors: Sequence[int]) -> List[int]:
    """Refine a colouring until the number of colours stops growing.

    Args:
        rel: n x n relation codes
        colors: Initial colour per vertex

    Returns:
        The stable colouring, colours numbered 0..k-1 by signature rank
    """
    n = rel.shape[0]
    rows = rel.tolist()
    current = list(colors)
    count = len(set(current))
    while True:
        signatures = [
            (current[v], tuple(sorted(zip(rows[v], current)))) for v in range(n)
        ]
        ranks = {sig: rank for rank, sig in enumerate(sorted(set(signatures)))}
        refined = [ranks[sig] for sig in signatures]
        new_count = len(ranks)
        if new_count == count:
            return refined
        current, count = refined, new_count


def _individualize(colors: List[int], w: int) -> List[int]:
    keyed = [(c, 0 if v == w else 1) if c == colors[w] else (c, 0) for v, c in enumerate(colors)]
    ranks = {key: rank for rank, key in enumerate(sorted(set(keyed)))}
    return [ranks[key] for key in keyed]


def _target_cell(colors: List[int]) -> Optional[List[int]]:
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    candidates = [(len(vs), c) for c, vs in cells.items() if len(vs) > 1]
    if not candidates:
        return None
    _, color = min(candidates)
    return cells[color]


def _swap_is_automorphism(adj: np.ndarray, u: int, w: int) -> bool:
    perm = np.arange(adj.shape[0])
    perm[u], perm[w] = w, u
    return bool(np.array_equal(adj[perm][:, perm], adj))


class _Canonizer:
    def __init__(self, d: Digraph):
        self.d = d
        self.rel = relation_matrix(d)
        self.adj = d.adjacency()
        self.arcs = d.arcs()
        self.best: Optional[Tuple[Tuple[int, int], ...]] = None
        self.leaves = 0

    def run(self) -> Tuple[Tuple[int, int], ...]:
        self._visit(refine_colors(self.rel, [0] * self.d.n))
        return self.best

    def _visit(self, colors: List[int]):
        cell = _target_cell(colors)
        if cell is None:
            self.leaves += 1
            encoding = tuple(sorted((colors[u], colors[v]) for u, v in self.arcs))
            if self.best is None or encoding < self.best:
                self.best = encoding
            return

        expanded: List[int] = []
        for w in cell:
            if any(_swap_is_automorphism(self.adj, u, w) for u in expanded):
                continue
            expanded.append(w)
            self._visit(refine_colors(self.rel, _individualize(colors, w)))


def canonical_certificate(d: Digraph) -> IsoCertificate:
    """Lexicographically least relabelled arc list over all refinement leaves.

    Args:
        d: Any digraph

    Returns:
        The certificate; the byte form is n followed by the sorted arcs,
        each number as a big-endian 32-bit integer
    """
    canon = _Canonizer(d)
    encoding = canon.run()
    if settings.debug:
        logger.info(f"[DEBUG] Certificate of a {d.n}-vertex digraph from {canon.leaves} leaves")
    parts = [d.n.to_bytes(4, "big")]
    parts += [u.to_bytes(4, "big") + v.to_bytes(4, "big") for u, v in encoding]
    return IsoCertificate(b"".join(parts))


def _invariants(d: Digraph, rel: np.ndarray) -> Tuple:
    rows = sorted(tuple(sorted(row)) for row in rel.tolist())
    return d.n, d.arc_count, tuple(sorted(d.out_degrees())), tuple(sorted(d.in_degrees())), tuple(rows)


def are_isomorphic(d1: Digraph, d2: Digraph) -> bool:
    """Decide whether a vertex bijection maps the arcs of d1 exactly onto those of d2."""
    if d1.n != d2.n or d1.arc_count != d2.arc_count:
        return False
    if _invariants(d1, relation_matrix(d1)) != _invariants(d2, relation_matrix(d2)):
        return False
    return canonical_certificate(d1) == canonical_certificate(d2)
