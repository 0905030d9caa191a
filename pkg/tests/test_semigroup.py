import itertools
import re

import pytest

import oracles
from oie import (V_ABS, CapacityExceeded, InvalidInput, cayley_table, element,
                 emit_full_csa_diagram, emit_svg, enumerate_elements, semigroup_op,
                 table_violations)
from oie.semigroup import product_edges


def test_operation_rules():
    assert semigroup_op(element(1), element(2)) == element(1, 2)
    assert semigroup_op(element(1), element(1)) == V_ABS
    assert semigroup_op(V_ABS, element(3)) == V_ABS
    assert semigroup_op(element(2, 3), V_ABS) == V_ABS


def test_element_names():
    assert V_ABS.name == "v_abs"
    assert element(1, 2).name == "v12"
    assert element(3, 11).name == "v3_11"
    with pytest.raises(InvalidInput):
        element(0)


class TestEnumeration:
    def test_small(self):
        assert enumerate_elements(1) == (V_ABS, element(1))
        assert enumerate_elements(2) == (V_ABS, element(1), element(2), element(1, 2))

    def test_three(self):
        order = enumerate_elements(3)
        assert len(order) == 8 and order[-1] == element(1, 2, 3)
        assert len(set(order)) == 8

    def test_bounds(self):
        with pytest.raises(InvalidInput):
            enumerate_elements(0)
        with pytest.raises(CapacityExceeded):
            enumerate_elements(13)


class TestTable:
    def test_n1_all_absorbing(self):
        t = cayley_table(1)
        assert t.cells.shape == (2, 2) and not t.cells.any()

    def test_n2(self):
        t = cayley_table(2)
        assert t.cell(t.index(element(1)), t.index(element(2))) == element(1, 2)
        assert all(t.cell(i, i) == V_ABS for i in range(4))

    def test_n3_matches_disjointness(self):
        t = cayley_table(3)
        for i, a in enumerate(t.order):
            for j, b in enumerate(t.order):
                assert t.cell(i, j).atoms == oracles.cayley_product(a.atoms, b.atoms)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_structural_laws(self, n):
        t = cayley_table(n)
        assert t.size == 2 ** n
        assert table_violations(t) == []

    @pytest.mark.parametrize("n", range(1, 5))
    def test_associative(self, n):
        c = cayley_table(n).cells
        size = c.shape[0]
        for i, j, k in itertools.product(range(size), repeat=3):
            assert c[c[i, j], k] == c[i, c[j, k]]

    def test_violations_detect_damage(self):
        t = cayley_table(2)
        cells = t.cells.copy()
        cells[1, 2] = 0
        broken = type(t)(t.order, cells)
        assert "table is not symmetric" in table_violations(broken)


class TestDiagram:
    def edges(self, dot):
        return re.findall(r"^\s+(\w+) -- (\w+)", dot, re.M)

    def nodes(self, dot):
        return re.findall(r"^\s+(\w+) \[pos=", dot, re.M)

    def test_n2(self):
        dot = emit_full_csa_diagram(cayley_table(2))
        assert len(self.nodes(dot)) == 4
        assert self.edges(dot) == [("v1", "v2")]

    def test_n1(self):
        dot = emit_full_csa_diagram(cayley_table(1))
        assert len(self.nodes(dot)) == 2 and self.edges(dot) == []

    def test_n5_edge_count(self):
        t = cayley_table(5)
        dot = emit_full_csa_diagram(t)
        assert len(self.nodes(dot)) == 32
        assert len(self.edges(dot)) == oracles.disjoint_nonempty_pairs(5) == len(product_edges(t))

    def test_deterministic_and_layouts(self):
        t = cayley_table(3)
        assert emit_full_csa_diagram(t) == emit_full_csa_diagram(cayley_table(3))
        assert emit_full_csa_diagram(t, "grid") != emit_full_csa_diagram(t)
        with pytest.raises(InvalidInput):
            emit_full_csa_diagram(t, "spiral")

    def test_svg(self):
        svg = emit_svg(cayley_table(2))
        assert svg.startswith("<svg") and svg.count("<circle") == 4 and svg.count("<line") == 1
