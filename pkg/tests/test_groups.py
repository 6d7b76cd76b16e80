"""Tests for finite groups, group-table parsing and the catalog builders."""
from itertools import combinations

import numpy as np
import pytest

from wdrd.config import settings
from wdrd.digraph import cayley_digraph, is_strongly_connected
from wdrd.errors import FormatError, InvalidParameterError, NotAGroupError
from wdrd.groups import (
    ConnectionSet,
    dump_group_table,
    element_order,
    generates,
    group_from_recipe,
    is_abelian,
    load_group_table,
    make_abelian,
    make_cyclic,
    make_dihedral,
    make_quaternion,
    product,
    validate_table,
)

D4_TABLE = (settings.catalog_dir / "d4.txt").read_text()

# Number of isomorphism types for each order the catalog claims to be complete
GROUP_COUNTS = {
    4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
    13: 1, 14: 2, 15: 1, 16: 14, 18: 5, 21: 2, 27: 5,
}

# Latin square with identity 0 that is not associative
NON_ASSOCIATIVE = np.array([
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
])


def _invariants(g):
    """Isomorphism invariants strong enough to separate the catalog groups."""
    n = g.order
    orders = sorted(element_order(g, x) for x in range(n))
    squares = len({int(g.table[x, x]) for x in range(n)})
    center = [x for x in range(n) if np.array_equal(g.table[x], g.table[:, x])]
    return is_abelian(g), tuple(orders), squares, tuple(sorted(element_order(g, x) for x in center))


def test_cyclic_product():
    """Test that Z7 multiplies by addition mod 7."""
    g = make_cyclic(7)
    assert product(g, 3, 5) == 1
    assert g.identity == 0
    assert g.inverses.tolist() == [0, 6, 5, 4, 3, 2, 1]


def test_cyclic_invalid_order():
    """Test that a cyclic group of order 0 is rejected."""
    with pytest.raises(InvalidParameterError):
        make_cyclic(0)


def test_group_tables_are_read_only():
    """Test that group tables cannot be modified after construction."""
    g = make_cyclic(5)
    with pytest.raises(ValueError):
        g.table[0, 0] = 3


def test_direct_product_layout():
    """Test that (a, b) is stored at a*|h| + b and multiplies componentwise."""
    g = make_abelian([3, 3])
    assert g.order == 9
    # (1, 2) * (2, 2) = (0, 1)
    assert product(g, 1 * 3 + 2, 2 * 3 + 2) == 0 * 3 + 1


def test_quaternion_products():
    """Test the quaternion relations i*j = k, j*i = -k and i*i = -1."""
    q = make_quaternion()
    i, j, k = 2, 4, 6
    assert q.label(product(q, i, j)) == "k"
    assert q.label(product(q, j, i)) == "-k"
    assert q.label(product(q, i, i)) == "-1"
    assert product(q, i, j) == k
    assert not is_abelian(q)


def _table(name):
    return load_group_table((settings.catalog_dir / name).read_text())


def test_dihedral_table_file():
    """Test the dihedral relations in the D4 table file."""
    g = load_group_table(D4_TABLE)
    r, s = 1, 4
    assert g.name == "D4"
    assert element_order(g, r) == 4
    assert element_order(g, s) == 2
    assert product(g, product(g, s, r), s) == g.inverses[r]
    assert len(g.automorphisms) == 2


def test_dihedral_tables_match_builder(catalog):
    """Test that every dihedral table in the catalog agrees with the dihedral builder."""
    groups = [g for order in catalog.orders for g in catalog.at(order)]
    dihedral = [g for g in groups if g.name[0] == "D" and g.name[1:].isdigit()]
    assert [g.name for g in dihedral] == ["D3", "D4", "D5", "D6", "D7", "D8", "D9"]
    for g in dihedral:
        assert np.array_equal(g.table, make_dihedral(g.order // 2).table)


def test_quaternion_table_file_matches_builder():
    """Test that the shipped Q8 table uses the builder's element order."""
    g = _table("q8.txt")
    assert g.name == "Q8"
    assert np.array_equal(g.table, make_quaternion().table)


def test_generalized_quaternion_table_file():
    """Test that the generalized quaternion group has a unique involution."""
    q16 = _table("q16.txt")
    involutions = [x for x in range(16) if element_order(q16, x) == 2]
    assert len(involutions) == 1


def test_heisenberg_table_exponent():
    """Test that the Heisenberg group mod 3 has exponent 3 and is not abelian."""
    g = _table("heis3.txt")
    assert g.order == 27
    assert {element_order(g, x) for x in range(27)} == {1, 3}
    assert not is_abelian(g)


def test_order_18_nonabelian_tables(catalog):
    """Test that the nonabelian groups of order 18 come from table files with automorphisms."""
    nonabelian = [g for g in catalog.at(18) if not is_abelian(g)]
    assert sorted(g.name for g in nonabelian) == ["(Z3xZ3):Z2", "D9", "Z3xD3"]
    involutions = {g.name: sum(1 for x in range(18) if element_order(g, x) == 2) for g in nonabelian}
    assert involutions == {"(Z3xZ3):Z2": 9, "D9": 9, "Z3xD3": 3}
    assert all(g.automorphisms for g in nonabelian)


def test_nonabelian_catalog_groups_carry_automorphisms(catalog):
    """Test that every nonabelian catalog group ships with aut lines."""
    for order in catalog.orders:
        for g in catalog.at(order):
            if not is_abelian(g):
                assert g.automorphisms, g.name


def test_generates():
    """Test generation in Z12."""
    g = make_cyclic(12)
    assert generates(g, ConnectionSet([4, 6, 3]))
    assert not generates(g, ConnectionSet([4, 8, 6]))


def test_validate_table_reports_repeat():
    """Test that a repeated row entry is reported with its triple."""
    with pytest.raises(NotAGroupError) as exc_info:
        validate_table(np.array([[0, 1], [1, 1]]))
    assert exc_info.value.triple == (1, 0, 1)


def test_validate_table_non_associative():
    """Test that a loop which is not a group fails associativity with a real witness."""
    with pytest.raises(NotAGroupError) as exc_info:
        validate_table(NON_ASSOCIATIVE)
    a, b, c = exc_info.value.triple
    t = NON_ASSOCIATIVE
    assert t[t[a, b], c] != t[a, t[b, c]]
    assert "Associativity" in str(exc_info.value)


def test_load_group_table_missing_order():
    """Test that a table without a header is rejected."""
    with pytest.raises(FormatError):
        load_group_table("0 1\n1 0\n")


def test_load_group_table_unknown_header():
    """Test that unknown headers are rejected."""
    with pytest.raises(FormatError):
        load_group_table("order=2\ncolour=red\n0 1\n1 0\n")


def test_load_group_table_non_integer():
    """Test that non-integer entries are rejected."""
    with pytest.raises(FormatError):
        load_group_table("order=2\n0 1\n1 x\n")


def test_load_group_table_order_bound():
    """Test that orders above the validation bound are rejected."""
    with pytest.raises(FormatError):
        load_group_table(f"order={settings.max_group_order + 1}\n")


def test_load_group_table_bad_automorphism():
    """Test that an aut line which is not an automorphism is rejected."""
    text = D4_TABLE.replace("name=D4", "name=D4\naut=0 2 1 3 4 5 6 7")
    with pytest.raises(FormatError):
        load_group_table(text)


def test_load_group_table_not_a_group():
    """Test that axiom failures surface as NotAGroupError."""
    rows = "\n".join(" ".join(map(str, row)) for row in NON_ASSOCIATIVE.tolist())
    with pytest.raises(NotAGroupError):
        load_group_table(f"order=5\n{rows}\n")


def test_dump_group_table_reloads():
    """Test that a dumped table loads back to the same group."""
    q = make_quaternion()
    g = load_group_table(dump_group_table(q))
    assert g.name == "Q8"
    assert np.array_equal(g.table, q.table)


def test_group_from_recipe():
    """Test abelian catalog recipes and name overrides."""
    g = group_from_recipe({"builder": "abelian", "name": "Z2xZ4", "moduli": [2, 4]})
    assert g.name == "Z2xZ4"
    assert g.order == 8
    assert is_abelian(g)


def test_group_from_recipe_errors():
    """Test that unknown builders and missing arguments are format errors."""
    with pytest.raises(FormatError):
        group_from_recipe({"builder": "metacyclic", "n": 4})
    with pytest.raises(FormatError):
        group_from_recipe({"builder": "cyclic"})


def test_catalog_groups_satisfy_axioms(catalog):
    """Test that every catalog group passes the full axiom check."""
    for order in catalog.orders:
        for g in catalog.at(order):
            identity, inverses = validate_table(np.asarray(g.table))
            assert identity == g.identity
            assert np.array_equal(inverses, g.inverses)


def test_catalog_complete_orders(catalog):
    """Test that each complete order lists pairwise non-isomorphic groups of the right number."""
    assert sorted(catalog.complete) == sorted(GROUP_COUNTS)
    for order, count in GROUP_COUNTS.items():
        groups = catalog.at(order)
        assert len(groups) == count, order
        for g, h in combinations(groups, 2):
            assert _invariants(g) != _invariants(h), (g.name, h.name)


def test_generating_sets_give_strongly_connected_digraphs(catalog):
    """Test that Cay(G, S) is strongly connected exactly when S generates G."""
    rng = np.random.default_rng(11)
    for _ in range(80):
        order = int(rng.choice(catalog.orders))
        groups = catalog.at(order)
        g = groups[int(rng.integers(len(groups)))]
        others = [x for x in range(g.order) if x != g.identity]
        s = ConnectionSet(int(x) for x in rng.choice(others, min(3, len(others)), replace=False))
        assert generates(g, s) == is_strongly_connected(cayley_digraph(g, s)), (g.name, s.elements)
