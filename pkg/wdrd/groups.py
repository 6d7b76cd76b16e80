"""Finite groups as explicit multiplication tables."""
import logging
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from wdrd.config import settings
from wdrd.errors import FormatError, InvalidParameterError, NotAGroupError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group on the elements ``0..order-1``.

    ``table[a, b]`` is the index of the product ``a*b``. Instances are
    immutable; the arrays are marked read-only on construction.
    """

    name: str
    table: np.ndarray
    identity: int
    inverses: np.ndarray
    labels: Optional[Tuple[str, ...]] = None
    automorphisms: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        self.table.flags.writeable = False
        self.inverses.flags.writeable = False

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def label(self, x: int) -> str:
        if self.labels is None:
            return str(x)
        return self.labels[x]

    def __repr__(self) -> str:
        return f"FiniteGroup(name={self.name!r}, order={self.order})"


@dataclass(frozen=True)
class ConnectionSet:
    """A set of group elements, stored sorted."""

    elements: Tuple[int, ...]

    def __init__(self, elements: Iterable[int]):
        object.__setattr__(self, "elements", tuple(sorted({int(x) for x in elements})))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements


def _finish(name: str, table: np.ndarray, labels: Optional[Sequence[str]] = None) -> FiniteGroup:
    """Wrap a table already known to be a group."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    n = table.shape[0]
    identity = int(np.flatnonzero((table == np.arange(n)).all(axis=1))[0])
    inverses = np.argmax(table == identity, axis=1).astype(np.int64)
    return FiniteGroup(
        name=name,
        table=table,
        identity=identity,
        inverses=inverses,
        labels=tuple(labels) if labels is not None else None,
    )


def make_cyclic(n: int) -> FiniteGroup:
    """Build Z_n with element i standing for the residue i.

    Args:
        n: Group order

    Returns:
        The cyclic group of order n
    """
    if n < 1:
        raise InvalidParameterError(f"Cyclic group order must be positive, got {n}")
    idx = np.arange(n)
    return _finish(f"Z{n}", np.add.outer(idx, idx) % n)


def make_direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Build g x h with the pair (a, b) stored at index a*|h| + b.

    Args:
        g: Left factor
        h: Right factor

    Returns:
        The direct product with the componentwise product
    """
    ng, nh = g.order, h.order
    table = g.table[:, None, :, None] * nh + h.table[None, :, None, :]
    labels = None
    if g.labels is not None or h.labels is not None:
        labels = [f"({g.label(a)},{h.label(b)})" for a in range(ng) for b in range(nh)]
    return _finish(f"{g.name}x{h.name}", table.reshape(ng * nh, ng * nh), labels)


def make_abelian(moduli: Sequence[int]) -> FiniteGroup:
    """Build Z_{m1} x ... x Z_{mk} by repeated direct products."""
    if not moduli:
        raise InvalidParameterError("At least one modulus is required")
    return reduce(make_direct_product, [make_cyclic(int(m)) for m in moduli])


# Units 1, i, j, k; unit product -> (sign, unit)
_QUATERNION_UNITS = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def make_quaternion() -> FiniteGroup:
    """Build Q8 with the fixed element order 1, -1, i, -i, j, -j, k, -k.

    Element 2*u + t is the unit u (0=1, 1=i, 2=j, 3=k) with sign (-1)**t.
    """
    table = np.zeros((8, 8), dtype=np.int64)
    for x in range(8):
        for y in range(8):
            sign, unit = _QUATERNION_UNITS[(x // 2, y // 2)]
            if (x % 2) ^ (y % 2):
                sign = -sign
            table[x, y] = 2 * unit + (0 if sign > 0 else 1)
    return _finish("Q8", table, ["1", "-1", "i", "-i", "j", "-j", "k", "-k"])


def make_dihedral(n: int) -> FiniteGroup:
    """Build D_n of order 2n; r^i s^j is stored at index i + n*j.

    (r^i s^j)(r^k s^l) = r^(i + (-1)^j k) s^(j + l).
    """
    if n < 1:
        raise InvalidParameterError(f"Dihedral parameter must be positive, got {n}")
    idx = np.arange(2 * n)
    i, j = idx % n, idx // n
    sign = np.where(j == 0, 1, -1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % n
    flip = (j[:, None] + j[None, :]) % 2
    return _finish(f"D{n}", rot + n * flip)


def product(g: FiniteGroup, a: int, b: int) -> int:
    return int(g.table[a, b])


def element_order(g: FiniteGroup, x: int) -> int:
    order, y = 1, x
    while y != g.identity:
        y = int(g.table[y, x])
        order += 1
    return order


def is_abelian(g: FiniteGroup) -> bool:
    return bool(np.array_equal(g.table, g.table.T))


def generates(g: FiniteGroup, s: ConnectionSet) -> bool:
    """Check whether s generates g.

    Args:
        g: The group
        s: Candidate generators

    Returns:
        True iff the closure of s under the product is all of g
    """
    seen = np.zeros(g.order, dtype=bool)
    seen[g.identity] = True
    frontier = [g.identity]
    gens = list(s)
    while frontier:
        nxt = []
        for x in frontier:
            for y in g.table[x, gens]:
                if not seen[y]:
                    seen[y] = True
                    nxt.append(int(y))
        frontier = nxt
    return bool(seen.all())


def validate_table(table: np.ndarray) -> Tuple[int, np.ndarray]:
    """Verify the group axioms on a square table.

    Args:
        table: order x order integer array

    Returns:
        The identity index and the inverse table

    Raises:
        NotAGroupError: With the violating triple when an axiom fails
    """
    n = table.shape[0]
    expected = np.arange(n)

    for x in range(n):
        row = table[x]
        if not np.array_equal(np.sort(row), expected):
            y1, y2 = _repeat(row)
            raise NotAGroupError(f"Row {x} is not a permutation: {x}*{y1} = {x}*{y2}", (x, y1, y2))
        col = table[:, x]
        if not np.array_equal(np.sort(col), expected):
            y1, y2 = _repeat(col)
            raise NotAGroupError(f"Column {x} is not a permutation: {y1}*{x} = {y2}*{x}", (y1, y2, x))

    ids = np.flatnonzero((table == expected).all(axis=1) & (table.T == expected).all(axis=1))
    if len(ids) == 0:
        raise NotAGroupError("Table has no two-sided identity")
    identity = int(ids[0])

    inverses = np.argmax(table == identity, axis=1).astype(np.int64)
    bad = np.flatnonzero(table[inverses, expected] != identity)
    if len(bad):
        x = int(bad[0])
        raise NotAGroupError(f"Element {x} has no two-sided inverse", (x, int(inverses[x]), x))

    left = table[table]  # left[a, b, c] = (a*b)*c
    right = table[expected[:, None, None], table[None, :, :]]  # right[a, b, c] = a*(b*c)
    mismatch = np.argwhere(left != right)
    if len(mismatch):
        a, b, c = (int(v) for v in mismatch[0])
        raise NotAGroupError(f"Associativity fails for ({a}, {b}, {c})", (a, b, c))

    return identity, inverses


def _repeat(line: np.ndarray) -> Tuple[int, int]:
    """Return the first two positions holding the same value (or an out-of-range one twice)."""
    first = {}
    for pos, value in enumerate(line.tolist()):
        if value in first:
            return first[value], pos
        first[value] = pos
    # Permutation of the wrong values; report the offending position twice
    pos = next(p for p, v in enumerate(line.tolist()) if not 0 <= v < len(line))
    return pos, pos


def _check_automorphism(table: np.ndarray, perm: Sequence[int]) -> bool:
    p = np.asarray(perm, dtype=np.int64)
    n = table.shape[0]
    if p.shape != (n,) or not np.array_equal(np.sort(p), np.arange(n)):
        return False
    return bool(np.array_equal(p[table], table[p[:, None], p[None, :]]))


def load_group_table(text: str) -> FiniteGroup:
    """Parse and validate a group-table document.

    The document is an ``order=<n>`` header, optional ``name=<text>`` and
    ``aut=<permutation>`` lines, then n rows of n integers. Blank lines and
    lines starting with ``#`` are ignored.

    Args:
        text: Document contents

    Returns:
        The validated group

    Raises:
        FormatError: If the document does not parse
        NotAGroupError: If the table violates a group axiom
    """
    order = None
    name = None
    auts = []
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" in line:
            key, _, value = (part.strip() for part in line.partition("="))
            key = key.lower()
            if key == "order":
                if not value.isdigit():
                    raise FormatError(f"Line {lineno}: invalid order {value!r}")
                order = int(value)
            elif key == "name":
                name = value
            elif key == "aut":
                auts.append(_parse_ints(value, lineno))
            else:
                raise FormatError(f"Line {lineno}: unknown header {key!r}")
            continue
        rows.append(_parse_ints(line, lineno))

    if order is None:
        raise FormatError("Missing 'order=<n>' header")
    if order < 1:
        raise FormatError(f"Order must be positive, got {order}")
    if order > settings.max_group_order:
        raise FormatError(f"Order {order} exceeds the validation bound {settings.max_group_order}")
    if len(rows) != order or any(len(r) != order for r in rows):
        raise FormatError(f"Expected {order} rows of {order} integers")

    table = np.array(rows, dtype=np.int64)
    if table.min() < 0 or table.max() >= order:
        raise FormatError(f"Table entries must lie in 0..{order - 1}")

    identity, inverses = validate_table(table)
    for pos, perm in enumerate(auts):
        if not _check_automorphism(table, perm):
            raise FormatError(f"aut line {pos + 1} is not an automorphism of the table")

    if settings.debug:
        logger.info(f"[DEBUG] Loaded group table {name!r} of order {order} with {len(auts)} automorphisms")

    return FiniteGroup(
        name=name or f"G{order}",
        table=table,
        identity=identity,
        inverses=inverses,
        automorphisms=tuple(tuple(p) for p in auts),
    )


def _parse_ints(text: str, lineno: int) -> list:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise FormatError(f"Line {lineno}: expected integers, got {text!r}")


def dump_group_table(g: FiniteGroup) -> str:
    """Write g in the group-table document format."""
    lines = [f"order={g.order}", f"name={g.name}"]
    lines += ["aut=" + " ".join(map(str, p)) for p in g.automorphisms]
    lines += [" ".join(map(str, row)) for row in g.table.tolist()]
    return "\n".join(lines) + "\n"


_BUILDERS = {
    "cyclic": lambda r: make_cyclic(int(r["n"])),
    "abelian": lambda r: make_abelian(r["moduli"]),
    "quaternion": lambda r: make_quaternion(),
    "dihedral": lambda r: make_dihedral(int(r["n"])),
}


def group_from_recipe(recipe: Mapping) -> FiniteGroup:
    """Build a built-in group from a catalog recipe such as ``{"builder": "dihedral", "n": 4}``.

    Args:
        recipe: Mapping with a ``builder`` key plus builder arguments; an
            optional ``name`` overrides the generated one

    Returns:
        The built group
    """
    builder = recipe.get("builder")
    if builder not in _BUILDERS:
        raise FormatError(f"Unknown group builder {builder!r}")
    try:
        g = _BUILDERS[builder](recipe)
    except KeyError as exc:
        raise FormatError(f"Builder {builder!r} is missing argument {exc.args[0]!r}")
    if "name" in recipe:
        g = FiniteGroup(str(recipe["name"]), g.table, g.identity, g.inverses, g.labels, g.automorphisms)
    return g
