"""Two-way distance relation partition, WDRD check and intersection numbers."""
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Set, Tuple

import numpy as np

from wdrd.config import settings
from wdrd.digraph import Digraph, TwoWayPair, TwoWayProfile
from wdrd.errors import InvalidParameterError, InvalidStateError
from wdrd.models import IdentityCheck, IdentityReport, SchemeDocument, WdrdReport, WdrdWitness

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RelationPartition:
    """Ordered pairs grouped by two-way distance.

    ``labels`` is sorted lexicographically, so ``labels[0]`` is (0, 0);
    ``rel_index[x, y]`` is the position of the pair at (x, y) in ``labels``.
    """

    labels: Tuple[TwoWayPair, ...]
    rel_index: np.ndarray

    def __post_init__(self):
        self.rel_index.flags.writeable = False

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, pair) -> int:
        try:
            return self.labels.index(TwoWayPair(*pair))
        except ValueError:
            raise InvalidParameterError(f"{tuple(pair)} is not a relation label")

    @property
    def reverse_index(self) -> np.ndarray:
        return np.array([self.labels.index(lab.reversed()) for lab in self.labels], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class SchemeData:
    """Valencies and the tensor ``tensor[h, i, j]`` = p^h_{i,j}, indexed like the labels."""

    partition: RelationPartition
    valencies: np.ndarray
    tensor: np.ndarray

    def __post_init__(self):
        self.valencies.flags.writeable = False
        self.tensor.flags.writeable = False

    @property
    def labels(self) -> Tuple[TwoWayPair, ...]:
        return self.partition.labels

    @property
    def reverse_index(self) -> np.ndarray:
        return self.partition.reverse_index

    def label_index(self, pair) -> int:
        return self.partition.index(pair)

    def k(self, pair) -> int:
        return int(self.valencies[self.label_index(pair)])

    def p(self, h, i, j) -> int:
        return int(self.tensor[self.label_index(h), self.label_index(i), self.label_index(j)])


def relation_partition(profile: TwoWayProfile) -> RelationPartition:
    """Label every ordered pair by its two-way distance.

    Args:
        profile: Two-way profile of a strongly connected digraph

    Returns:
        The partition with lexicographically sorted labels
    """
    dist = profile.dist
    base = int(dist.max()) + 1
    codes = dist * base + dist.T
    uniq, inverse = np.unique(codes, return_inverse=True)
    labels = tuple(TwoWayPair(int(c) // base, int(c) % base) for c in uniq)
    partition = RelationPartition(labels, inverse.reshape(dist.shape).astype(np.int64))
    missing = [lab for lab in labels if lab.reversed() not in labels]
    if missing:
        raise InvalidStateError(f"Relation {tuple(missing[0])} has no reverse relation")
    return partition


def _counts_from(rel: np.ndarray, x: int, r: int) -> np.ndarray:
    """counts[y, i*r + j] = |{z : rel(x, z) = i, rel(z, y) = j}|."""
    n = rel.shape[0]
    code = rel[x][:, None] * r + rel  # code[z, y]
    flat = code + (np.arange(n) * r * r)[None, :]
    return np.bincount(flat.ravel(), minlength=n * r * r).reshape(n, r * r)


def _scan(partition: RelationPartition, sources: Iterable[int]):
    """Compare count vectors of all pairs (x, y) with x in ``sources``.

    Returns:
        (witness or None, representative vectors, representative pairs, pairs compared)
    """
    rel = partition.rel_index
    n = rel.shape[0]
    r = partition.size
    reps = np.zeros((r, r * r), dtype=np.int64)
    rep_pair: List[Optional[Tuple[int, int]]] = [None] * r
    filled = np.zeros(r, dtype=bool)
    checked = 0

    for x in sources:
        x = int(x)
        counts = _counts_from(rel, x, r)
        row = rel[x]
        new_labels, first_pos = np.unique(row, return_index=True)
        for h, y in zip(new_labels.tolist(), first_pos.tolist()):
            if not filled[h]:
                filled[h] = True
                reps[h] = counts[y]
                rep_pair[h] = (x, y)
        diff = (counts != reps[row]).any(axis=1)
        checked += n
        if diff.any():
            y = int(np.argmax(diff))
            h = int(row[y])
            k = int(np.argmax(counts[y] != reps[h]))
            i, j = divmod(k, r)
            witness = WdrdWitness(
                label=tuple(partition.labels[h]),
                first=rep_pair[h],
                second=(x, y),
                relations=(tuple(partition.labels[i]), tuple(partition.labels[j])),
                counts=(int(reps[h, k]), int(counts[y, k])),
            )
            return witness, reps, rep_pair, checked

    return None, reps, rep_pair, checked


def _sources(partition: RelationPartition, root: Optional[int]):
    n = partition.rel_index.shape[0]
    if root is None:
        return range(n)
    if len(np.unique(partition.rel_index[root])) != partition.size:
        logger.warning(f"Vertex {root} does not see every relation; running the full check")
        return range(n)
    return [root]


def _thinness(values: np.ndarray) -> str:
    top = int(values.max()) if values.size else 0
    if top <= 1:
        return "thin"
    if top == 2:
        return "quasi-thin"
    return "neither"


def check_wdrd(
    d: Digraph,
    profile: TwoWayProfile,
    partition: RelationPartition,
    root: Optional[int] = None,
) -> WdrdReport:
    """Decide whether the intersection counts depend only on the two-way distance.

    Args:
        d: The digraph
        profile: Its two-way profile
        partition: Its relation partition
        root: When given, only pairs (root, y) are compared; valid for
            vertex-transitive digraphs such as Cayley digraphs

    Returns:
        The report; a failure carries the first counterexample in row-major pair order
    """
    if d.n != profile.n or partition.rel_index.shape != (d.n, d.n):
        raise InvalidParameterError("Digraph, profile and partition sizes differ")

    r = partition.size
    sources = _sources(partition, root)

    witness, reps, _, checked = _scan(partition, sources)
    labels = [tuple(lab) for lab in partition.labels]

    if witness is not None:
        if settings.debug:
            logger.info(f"[DEBUG] Not a WDRD: {witness.first} and {witness.second} share label {witness.label}")
        return WdrdReport(is_wdrd=False, witness=witness, pairs_checked=checked, labels=labels)

    tensor = reps.reshape(r, r, r)
    primary = _thinness(tensor[1:])
    including = _thinness(tensor)
    return WdrdReport(
        is_wdrd=True,
        is_commutative=bool(np.array_equal(tensor, tensor.transpose(0, 2, 1))),
        thinness=primary,
        thinness_all=including,
        conventions_agree=primary == including,
        pairs_checked=checked,
        labels=labels,
    )


def intersection_tensor(
    d: Digraph,
    profile: TwoWayProfile,
    partition: RelationPartition,
    root: Optional[int] = None,
) -> SchemeData:
    """Read valencies and intersection numbers off representative pairs.

    Raises:
        InvalidStateError: If the digraph is not weakly distance-regular
    """
    sources = _sources(partition, root)
    witness, reps, _, _ = _scan(partition, sources)
    if witness is not None:
        raise InvalidStateError(
            f"No intersection tensor: pairs {witness.first} and {witness.second} disagree"
        )
    r = partition.size
    valencies = np.bincount(partition.rel_index[0], minlength=r).astype(np.int64)
    return SchemeData(partition, valencies, reps.reshape(r, r, r).copy())


def relation_product(scheme: SchemeData, e: Iterable[int], f: Iterable[int]) -> Set[int]:
    """The relations h with a nonzero sum of p^h_{i,j} over i in e, j in f."""
    e, f = sorted(set(e)), sorted(set(f))
    if not e or not f:
        return set()
    block = scheme.tensor[:, e, :][:, :, f]
    return {int(h) for h in np.flatnonzero(block.sum(axis=(1, 2)))}


def _result(name: str, detail: str, bad: np.ndarray, checked: int) -> IdentityCheck:
    """Build a check result from a boolean violation array."""
    where = np.argwhere(bad)
    witness = [int(v) for v in where[0]] if len(where) else None
    return IdentityCheck(
        name=name,
        passed=witness is None,
        tuples_checked=checked,
        witness=witness,
        detail=detail,
    )


def verify_scheme_identities(scheme: SchemeData) -> IdentityReport:
    """Check the six standard identities of a commutative WDRD scheme.

    Indices follow ``tensor[f, d, e]`` = p^f_{d,e}; witnesses are index tuples
    into the labels in the order named by each check's detail.
    """
    P = scheme.tensor
    k = scheme.valencies
    rev = scheme.reverse_index
    r = len(k)
    checks = []

    lhs = np.outer(k, k)
    rhs = np.einsum("fde,f->de", P, k)
    checks.append(_result("i", "k_d k_e = sum_f p^f_{d,e} k_f; witness (d, e)", lhs != rhs, r * r))

    a = P * k[:, None, None]
    b = P.transpose(1, 0, 2)[:, :, rev] * k[None, :, None]
    c = P.transpose(2, 1, 0)[:, rev, :] * k[None, None, :]
    checks.append(_result(
        "ii", "p^f_{d,e} k_f = p^d_{f,e*} k_d = p^e_{d*,f} k_e; witness (f, d, e)",
        (a != b) | (a != c), r ** 3,
    ))

    sizes = (P > 0).sum(axis=0)
    checks.append(_result("iii", "|G_d G_e| <= gcd(k_d, k_e); witness (d, e)", sizes > np.gcd.outer(k, k), r * r))

    checks.append(_result("iv", "sum_e p^f_{d,e} = k_d; witness (f, d)", P.sum(axis=2) != k[None, :], r * r))

    bad_v = np.zeros((r, r, r, r), dtype=bool)
    for d in range(r):
        # left[e, g, h] = sum_f p^f_{d,e} p^h_{g,f}; right[e, g, h] = sum_l p^l_{g,d} p^h_{l,e}
        left = np.tensordot(P[:, d, :], P, axes=([0], [2])).transpose(0, 2, 1)
        right = np.tensordot(P[:, :, d], P, axes=([0], [1])).transpose(2, 0, 1)
        bad_v[d] = left != right
    checks.append(_result(
        "v", "sum_f p^f_{d,e} p^h_{g,f} = sum_l p^l_{g,d} p^h_{l,e}; witness (d, e, g, h)", bad_v, r ** 4,
    ))

    lcm = np.lcm.outer(k, k)
    checks.append(_result(
        "vi", "lcm(k_d, k_e) divides p^f_{d,e} k_f; witness (f, d, e)", (a % lcm[None, :, :]) != 0, r ** 3,
    ))

    report = IdentityReport(checks=checks)
    for check in checks:
        if not check.passed:
            logger.warning(f"Identity ({check.name}) fails at {check.witness}")
    return report


def scheme_document(scheme: SchemeData, identities: IdentityReport) -> SchemeDocument:
    return SchemeDocument(
        labels=[tuple(lab) for lab in scheme.labels],
        valencies=scheme.valencies.tolist(),
        tensor=scheme.tensor.tolist(),
        identities=identities,
    )
