"""Tests for colour refinement, canonical certificates and isomorphism."""
import numpy as np
import pytest

from wdrd.digraph import Digraph, cayley_digraph, directed_cycle, relabel, reverse
from wdrd.families import FamilySpec, build_family
from wdrd.groups import ConnectionSet, make_cyclic, make_direct_product
from wdrd.isomorphism import are_isomorphic, canonical_certificate, refine_colors, relation_matrix

SEED = 20240607


def _random_digraph(rng, n, p):
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return Digraph.from_arcs(n, arcs)


def _random_relabel(rng, d):
    return relabel(d, rng.permutation(d.n).tolist())


def _brute_isomorphic(d1, d2):
    """Exhaustive vertex-by-vertex search for an adjacency-preserving bijection."""
    n = d1.n
    if n != d2.n or d1.arc_count != d2.arc_count:
        return False
    a1, a2 = set(d1.arcs()), set(d2.arcs())
    deg1 = list(zip(d1.out_degrees(), d1.in_degrees()))
    deg2 = list(zip(d2.out_degrees(), d2.in_degrees()))
    image = [-1] * n
    used = [False] * n

    def extend(u):
        if u == n:
            return True
        for v in range(n):
            if used[v] or deg1[u] != deg2[v]:
                continue
            if any(
                ((w, u) in a1) != ((image[w], v) in a2) or ((u, w) in a1) != ((v, image[w]) in a2)
                for w in range(u)
            ):
                continue
            image[u], used[v] = v, True
            if extend(u + 1):
                return True
            used[v] = False
        return False

    return extend(0)


def test_refinement_on_vertex_transitive_digraph():
    """Test that refinement keeps a directed cycle in one colour class."""
    d = directed_cycle(6)
    assert refine_colors(relation_matrix(d), [0] * 6) == [0] * 6


def test_refinement_separates_path_vertices():
    """Test that refinement tells apart the ends and middle of a directed path."""
    d = Digraph.from_arcs(3, [(0, 1), (1, 2)])
    colors = refine_colors(relation_matrix(d), [0, 0, 0])
    assert len(set(colors)) == 3


@pytest.mark.parametrize("spec", [
    FamilySpec("I"), FamilySpec("II"), FamilySpec("VI", g=4), FamilySpec("VIII", n=2), FamilySpec("IV"),
])
def test_certificate_invariant_under_relabelling(spec):
    """Test that relabelled copies share the certificate."""
    rng = np.random.default_rng(SEED)
    d = build_family(spec)
    cert = canonical_certificate(d)
    for _ in range(3):
        assert canonical_certificate(_random_relabel(rng, d)) == cert


def test_certificate_digest_is_hex():
    """Test the printable form of a certificate."""
    digest = canonical_certificate(directed_cycle(4)).digest
    assert len(digest) == 64


def test_vi_three_and_vii_three_are_isomorphic():
    """Test that the two 9-vertex family members coincide."""
    assert are_isomorphic(build_family(FamilySpec("VI", g=3)), build_family(FamilySpec("VII", n=3)))


def test_order_12_members_differ():
    """Test that VI(g=4) and VIII(n=2) are different digraphs."""
    assert not are_isomorphic(build_family(FamilySpec("VI", g=4)), build_family(FamilySpec("VIII", n=2)))


def test_family_i_is_isomorphic_to_its_reverse():
    """Test that reversing Cay(Z7, {1, 2, 4}) gives an isomorphic digraph."""
    d = build_family(FamilySpec("I"))
    assert are_isomorphic(d, reverse(d))


def test_cycle_and_path_differ():
    """Test that a directed cycle and a directed path on 4 vertices differ."""
    path = Digraph.from_arcs(4, [(0, 1), (1, 2), (2, 3)])
    assert not are_isomorphic(directed_cycle(4), path)


def test_agrees_with_brute_force():
    """Test certificate equality against exhaustive search on 200 random pairs with up to 10 vertices."""
    rng = np.random.default_rng(SEED)
    for _ in range(200):
        n = int(rng.integers(2, 11))
        d1 = _random_digraph(rng, n, 0.4)
        d2 = _random_relabel(rng, d1) if rng.random() < 0.5 else _random_digraph(rng, n, 0.4)
        expected = _brute_isomorphic(d1, d2)
        assert (canonical_certificate(d1) == canonical_certificate(d2)) == expected
        assert are_isomorphic(d1, d2) == expected


def test_brute_force_oracle_sanity():
    """Test the exhaustive oracle on a relabelled cycle and on a cycle against a path."""
    rng = np.random.default_rng(SEED)
    cycle = directed_cycle(5)
    assert _brute_isomorphic(cycle, _random_relabel(rng, cycle))
    assert not _brute_isomorphic(cycle, Digraph.from_arcs(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 2)]))


def _random_three_out(rng, n):
    arcs = []
    for u in range(n):
        others = [w for w in range(n) if w != u]
        arcs += [(u, int(v)) for v in rng.choice(others, 3, replace=False)]
    return Digraph.from_arcs(n, arcs)


def test_agrees_with_networkx():
    """Test certificates against networkx on random 3-out digraphs with up to 10 vertices."""
    nx = pytest.importorskip("networkx")
    rng = np.random.default_rng(SEED + 1)
    for _ in range(30):
        n = int(rng.integers(6, 11))
        d1 = _random_three_out(rng, n)
        d2 = _random_relabel(rng, d1) if rng.random() < 0.5 else _random_three_out(rng, n)
        g1, g2 = nx.DiGraph(), nx.DiGraph()
        g1.add_nodes_from(range(n))
        g2.add_nodes_from(range(n))
        g1.add_edges_from(d1.arcs())
        g2.add_edges_from(d2.arcs())
        assert are_isomorphic(d1, d2) == nx.is_isomorphic(g1, g2)


def test_direct_product_swap():
    """Test that swapping the factors of Z2 x Z6 gives an isomorphic Cayley digraph."""
    left = make_direct_product(make_cyclic(2), make_cyclic(6))
    right = make_direct_product(make_cyclic(6), make_cyclic(2))
    pairs = [(0, 1), (1, 1), (1, 4)]
    d1 = cayley_digraph(left, ConnectionSet(a * 6 + b for a, b in pairs))
    d2 = cayley_digraph(right, ConnectionSet(b * 2 + a for a, b in pairs))
    assert canonical_certificate(d1) == canonical_certificate(d2)
    # the swap (a, b) -> (b, a) is an explicit isomorphism
    swap = [(x % 6) * 2 + x // 6 for x in range(12)]
    assert relabel(d1, swap) == d2
