"""
命名定律库测试
"""
import pytest

from monolat.algebra.generators import all_fle_algebras, all_lattices, resolve_modal_battery
from monolat.algebra.laws import LAWS, check_variety, describe, law
from monolat.algebra.modal import enumerate_modal_expansions, full_functional
from monolat.core.exceptions import AlgebraError

M_AXIOM_LAWS = [name for name in LAWS if name[:2] in ("L1", "L2", "L3", "L4", "L5", "L6")]


def _by_name(results):
    return {r.name: r for r in results}


class TestLibrary:
    def test_every_law_parses(self):
        for name in LAWS:
            premises, conclusion = law(name)
            assert conclusion.kind in ("modal", None)
            assert all(p.kind == "modal" for p in premises)

    def test_unknown_law(self):
        with pytest.raises(AlgebraError):
            law("no_such_law")

    def test_describe_quasi_equation(self):
        assert describe("L5_box").startswith("p0 <= p1 ⟹")


class TestVarieties:
    def test_l3_example(self, l3_box):
        results = _by_name(check_variety(l3_box, ["L1_box", "dia_square", "square_increasing", "mv_join"]))
        assert results["L1_box"].passed
        assert not results["dia_square"].passed
        assert results["dia_square"].witness == {"p0": 1}
        assert results["dia_square"].values == [2, 0]
        assert not results["square_increasing"].passed
        assert results["mv_join"].passed

    def test_m_axioms_hold_on_every_expansion(self):
        for A in all_fle_algebras(3):
            for M in enumerate_modal_expansions(A):
                failed = [r.name for r in check_variety(M, M_AXIOM_LAWS) if not r.passed]
                assert failed == [], (M.name, failed)

    def test_lattice_expansions_without_residuation(self):
        names = [n for n in M_AXIOM_LAWS if not n.startswith("L6")]
        for M in resolve_modal_battery("lattices:4"):
            assert all(r.passed for r in check_variety(M, names)), M.name

    def test_constant_domain_on_functional_chain(self, l3):
        results = _by_name(check_variety(full_functional(l3, 2), ["constant_domain", "prelinearity", "integrality"]))
        assert all(r.passed for r in results.values())

    def test_constant_domain_needs_distributivity(self, m2):
        assert check_variety(full_functional(m2, 2), ["constant_domain"])[0].passed
        five = [A for A in all_lattices(5) if A.size == 5]
        failing = [A.name for A in five if not check_variety(full_functional(A, 2), ["constant_domain"])[0].passed]
        assert len(failing) == 2
