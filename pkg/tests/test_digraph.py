"""Tests for digraphs, distances and the digraph document format."""
import json

import numpy as np
import pytest

from wdrd.digraph import (
    Digraph,
    TwoWayPair,
    arc_types,
    cayley_digraph,
    directed_cycle,
    distance_matrix,
    dump_digraph,
    girth,
    is_strongly_connected,
    load_digraph,
    relabel,
    reverse,
    two_way_profile,
)
from wdrd.errors import ConnectivityError, FormatError, InvalidParameterError, LoopError, NoCircuitError
from wdrd.groups import ConnectionSet, generates, make_cyclic


def test_cayley_digraph_neighbours(family_i):
    """Test that Cay(Z7, {1, 2, 4}) sends x to x+1, x+2, x+4."""
    assert family_i.out_neighbors[0] == (1, 2, 4)
    assert family_i.out_neighbors[6] == (0, 1, 3)
    assert family_i.in_degrees() == [3] * 7


def test_cayley_digraph_rejects_identity():
    """Test that a connection set containing the identity gives a loop error."""
    with pytest.raises(LoopError):
        cayley_digraph(make_cyclic(5), ConnectionSet([0, 1]))


def test_from_arcs_rejects_duplicates():
    """Test that repeated arcs are rejected."""
    with pytest.raises(InvalidParameterError):
        Digraph.from_arcs(3, [(0, 1), (0, 1)])


def test_from_arcs_rejects_loops():
    """Test that loops are rejected."""
    with pytest.raises(LoopError):
        Digraph.from_arcs(2, [(1, 1)])


def test_two_way_distance_on_cycle():
    """Test two-way distances on the directed 5-cycle."""
    profile = two_way_profile(directed_cycle(5))
    assert profile.pair(0, 2) == TwoWayPair(2, 3)
    assert profile.pair(0, 0) == (0, 0)
    assert profile.pair(3, 1) == profile.pair(1, 3).reversed()


def test_profile_reports_unreachable_pair(path_digraph):
    """Test that a digraph that is not strongly connected yields the first unreachable pair."""
    assert not is_strongly_connected(path_digraph)
    with pytest.raises(ConnectivityError) as exc_info:
        two_way_profile(path_digraph)
    assert exc_info.value.witness == (1, 0)


def test_distance_matrix_marks_unreachable(path_digraph):
    """Test that unreachable vertices get distance -1."""
    dist = distance_matrix(path_digraph)
    assert dist[0].tolist() == [0, 1, 2]
    assert dist[2].tolist() == [-1, -1, 0]


def test_backward_distances_match_reverse(family_i):
    """Test that d(y, x) equals the distance from x to y in the reversed digraph."""
    assert np.array_equal(distance_matrix(reverse(family_i)), distance_matrix(family_i).T)


def test_girth():
    """Test girth on a cycle, a 2-cycle and family I."""
    assert girth(directed_cycle(5)) == 5
    assert girth(directed_cycle(2)) == 2
    assert girth(cayley_digraph(make_cyclic(7), ConnectionSet([1, 2, 4]))) == 3


def test_girth_without_arcs():
    """Test that a digraph without arcs has no girth."""
    with pytest.raises(NoCircuitError):
        girth(Digraph(1, ((),)))


def test_arc_types(family_i):
    """Test that every arc of family I returns in two steps."""
    assert arc_types(family_i, two_way_profile(family_i)) == {TwoWayPair(1, 2)}


def test_relabel_renames_arcs(family_i):
    """Test that relabelling sends each arc to the renamed arc."""
    perm = [3, 0, 6, 1, 5, 2, 4]
    d = relabel(family_i, perm)
    assert d.arc_count == family_i.arc_count
    assert (perm[0], perm[1]) in d.arcs()


def test_reverse_twice(family_i):
    """Test that reversing twice gives the original digraph."""
    assert reverse(reverse(family_i)) == family_i


def test_dump_sorts_arcs():
    """Test that documents list arcs in lexicographic order."""
    d = Digraph.from_arcs(3, [(2, 0), (1, 2), (0, 1)])
    assert json.loads(dump_digraph(d)) == {"arcs": [[0, 1], [1, 2], [2, 0]], "n": 3}


def test_document_reloads(family_i):
    """Test that a written document reads back to the same digraph."""
    assert load_digraph(dump_digraph(family_i)) == family_i


@pytest.mark.parametrize("text", [
    "not json",
    '{"n": 2, "arcs": [[0, 1]], "extra": 1}',
    '{"n": 2, "arcs": [[0, 2]]}',
    '{"n": 2, "arcs": [[1, 1]]}',
    '{"n": 2, "arcs": [[0, 1], [0, 1]]}',
    '{"n": 0, "arcs": []}',
])
def test_load_digraph_rejects(text):
    """Test that malformed documents raise a format error."""
    with pytest.raises(FormatError):
        load_digraph(text)


def _random_generating_set(rng, catalog):
    """A random generating 3-element connection set in a random catalog group of order 6..16."""
    while True:
        groups = catalog.at(int(rng.integers(6, 17)))
        if not groups:
            continue
        g = groups[int(rng.integers(len(groups)))]
        others = [x for x in range(g.order) if x != g.identity]
        s = ConnectionSet(int(x) for x in rng.choice(others, 3, replace=False))
        if generates(g, s):
            return g, s


@pytest.mark.parametrize("d", [
    directed_cycle(6),
    cayley_digraph(make_cyclic(7), ConnectionSet([1, 2, 4])),
    cayley_digraph(make_cyclic(12), ConnectionSet([1, 5, 6])),
    Digraph.from_arcs(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 1)]),
])
def test_distance_axioms(d):
    """Test that distances vanish only on the diagonal and satisfy the triangle inequality."""
    dist = distance_matrix(d)
    assert (np.diag(dist) == 0).all()
    assert (dist[~np.eye(d.n, dtype=bool)] > 0).all()
    assert (dist[:, None, :] <= dist[:, :, None] + dist[None, :, :]).all()
    profile = two_way_profile(d)
    for x in range(d.n):
        for y in range(d.n):
            assert profile.pair(y, x) == profile.pair(x, y).reversed()


def test_girth_two_iff_inverse_pair(catalog):
    """Test that Cay(G, S) has girth 2 exactly when S meets its inverse set."""
    rng = np.random.default_rng(7)
    for _ in range(60):
        g, s = _random_generating_set(rng, catalog)
        symmetric_part = {x for x in s if int(g.inverses[x]) in s}
        assert (girth(cayley_digraph(g, s)) > 2) == (not symmetric_part), (g.name, s.elements)
