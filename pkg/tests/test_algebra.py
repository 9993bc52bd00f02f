"""
有限代数、生成器与模态扩张测试
"""
import numpy as np
import pytest

from monolat.algebra.finite import FiniteAlgebra, check_fle, check_lattice, is_fle
from monolat.algebra.generators import (
    all_fle_algebras, all_lattices, chain, resolve_battery, resolve_modal_battery,
)
from monolat.algebra.modal import (
    ModalExpansion, adjoint_modalities, box_image, check_m_axioms, correspondence_roundtrip,
    enumerate_modal_expansions, enumerate_raw_modal_expansions, full_functional, is_relatively_complete,
)
from monolat.core.exceptions import AlgebraError, BudgetExceeded
from monolat.schemas.models import FLeVariant


# ============================================================================
# 运算表代数
# ============================================================================

class TestFiniteAlgebra:
    def test_order_and_bounds(self, m2):
        assert m2.bottom == 0
        assert m2.top == 3
        assert not m2.leq[1, 2] and not m2.leq[2, 1]

    def test_table_shape_validated(self):
        with pytest.raises(AlgebraError):
            FiniteAlgebra(2, {"and": [[0, 0], [0, 1]], "or": [[0, 1]]})

    def test_missing_lattice_operation(self):
        with pytest.raises(AlgebraError):
            FiniteAlgebra(2, {"and": [[0, 0], [0, 1]]})

    def test_subalgebra(self, l3):
        assert l3.is_closed([0, 2])
        assert not l3.is_closed([1])
        sub = l3.restrict([0, 2])
        assert sub.size == 2
        assert sub.labels == ["0", "1"]
        assert check_fle(sub).passed

    def test_restrict_rejects_open_subset(self, l3):
        with pytest.raises(AlgebraError):
            l3.restrict([0, 1])

    def test_canonical_key_is_isomorphism_invariant(self, l3):
        assert l3.permuted([2, 0, 1]).canonical_key() == l3.canonical_key()

    def test_spec_roundtrip(self, l3):
        again = FiniteAlgebra.from_spec(l3.to_spec())
        assert again.canonical_key() == l3.canonical_key()
        assert again.labels == l3.labels


class TestChecks:
    def test_lattice_passes(self, m2):
        report = check_lattice(m2)
        assert report.passed
        assert [0, 3] in report.order

    def test_lattice_failure_has_witness(self):
        bad = FiniteAlgebra(2, {"and": [[0, 0], [0, 1]], "or": [[0, 0], [1, 1]]})
        report = check_lattice(bad)
        assert not report.passed
        assert report.failures[0].law == "x ∨ y ≈ y ∨ x"
        assert report.failures[0].witness == [0, 1]

    def test_lukasiewicz_variants(self, l3):
        assert check_fle(l3).passed
        assert check_fle(l3, FLeVariant.W).passed
        report = check_fle(l3, FLeVariant.C)
        assert not report.passed
        assert report.failures[0].law == "x ≤ x · x"
        assert report.failures[0].witness == [1]

    def test_boolean_is_everything(self, boolean):
        for variant in FLeVariant:
            assert is_fle(boolean, variant)

    def test_fle_needs_signature(self, c3):
        assert not is_fle(c3)
        with pytest.raises(AlgebraError):
            check_fle(c3)


# ============================================================================
# 生成器
# ============================================================================

class TestGenerators:
    def test_lattice_counts(self):
        assert [a.size for a in all_lattices(4)] == [1, 2, 3, 4, 4]

    def test_fle_counts(self):
        assert len(all_fle_algebras(3)) == 12
        assert len(all_fle_algebras(3, FLeVariant.W)) == 4
        assert len(all_fle_algebras(3, FLeVariant.C)) == 9

    def test_enumerated_algebras_pass_checks(self):
        for A in all_fle_algebras(3):
            assert check_fle(A).passed

    def test_pairwise_non_isomorphic(self):
        keys = [A.canonical_key() for A in all_fle_algebras(3)]
        assert len(set(keys)) == len(keys)

    def test_battery_specs(self):
        assert [A.name for A in resolve_battery("chains:3")] == ["C1", "C2", "C3"]
        assert [A.name for A in resolve_battery("lukasiewicz:4")] == ["Ł2", "Ł3", "Ł4"]
        assert resolve_battery("l3")[0].name == "Ł3"

    @pytest.mark.parametrize("spec", ["bogus", "fle", "chains:x", "chains:0"])
    def test_bad_battery(self, spec):
        with pytest.raises(AlgebraError):
            resolve_battery(spec)

    def test_modal_battery(self):
        assert len(resolve_modal_battery("l3-example")) == 1
        assert len(resolve_modal_battery("l3")) == 2


# ============================================================================
# 模态扩张
# ============================================================================

class TestMAxioms:
    def test_l3_example(self, l3_box):
        report = check_m_axioms(l3_box)
        assert report.passed
        assert report.derived_consistent
        names = {r.name for r in report.results}
        assert {"L1_box", "L3_dia", "L6_box", "star_□[prod]", "star_◇[f]"} <= names

    def test_box_image(self, l3_box):
        image = box_image(l3_box)
        assert image.elements == [0, 2]
        assert image.passed

    def test_violation_reported(self, c3):
        M = ModalExpansion(c3, box=[0, 0, 0], diamond=[2, 2, 2])
        report = check_m_axioms(M)
        assert not report.primitive_passed
        failed = {r.name for r in report.results if not r.passed}
        assert "L3_box" in failed
        assert report.derived_consistent
        assert not box_image(M).passed

    def test_table_length_validated(self, c3):
        with pytest.raises(AlgebraError):
            ModalExpansion(c3, box=[0, 0], diamond=[0, 2, 2])


class TestCorrespondence:
    def test_chain_expansions(self, c3):
        expansions = enumerate_modal_expansions(c3)
        assert [box_image(M).elements for M in expansions] == [[0, 1, 2], [0, 2]]

    def test_two_enumerations_agree(self):
        for A in all_lattices(4):
            via_subalgebras = sorted(M.table_key() for M in enumerate_modal_expansions(A))
            raw = [M.table_key() for M in enumerate_raw_modal_expansions(A)]
            assert via_subalgebras == raw, A.name

    def test_roundtrip_both_directions(self):
        for A in all_lattices(4) + all_fle_algebras(3):
            for M in enumerate_modal_expansions(A):
                assert check_m_axioms(M).passed
                assert correspondence_roundtrip(M)
                assert correspondence_roundtrip((A, box_image(M).elements))

    def test_not_relatively_complete(self, c3):
        assert not is_relatively_complete(c3, [1])
        with pytest.raises(AlgebraError):
            adjoint_modalities(c3, [1])

    def test_enumeration_budget(self):
        with pytest.raises(BudgetExceeded):
            enumerate_modal_expansions(chain(5), max_size=4)


class TestFullFunctional:
    def test_encoding(self, c3):
        M = full_functional(c3, 2)
        assert M.size == 9
        assert M.tuples.shape == (9, 2)
        a = M.encode([1, 2])
        assert a == 5
        assert int(M.box[a]) == M.encode([1, 1])
        assert int(M.diamond[a]) == M.encode([2, 2])

    def test_pointwise_operations(self, l3):
        M = full_functional(l3, 2)
        a, b = M.encode([1, 2]), M.encode([1, 1])
        assert int(M.base.op("prod")[a, b]) == M.encode([0, 1])
        assert M.base.const("e") == M.encode([2, 2])

    def test_m_axioms_hold(self):
        for A in all_lattices(4):
            for worlds in (1, 2, 3):
                assert check_m_axioms(full_functional(A, worlds)).passed, (A.name, worlds)

    def test_fle_factor(self, l3):
        M = full_functional(l3, 2)
        assert check_fle(M.base).passed
        report = check_m_axioms(M)
        assert report.passed
        assert "L6_dia" in {r.name for r in report.results}

    def test_size_budget(self, c3):
        with pytest.raises(BudgetExceeded):
            full_functional(c3, 8)

    def test_rejects_non_lattice(self):
        bad = FiniteAlgebra(2, {"and": [[0, 0], [0, 1]], "or": [[0, 0], [1, 1]]})
        with pytest.raises(AlgebraError):
            full_functional(bad, 2)

    def test_tuples_match_lexicographic_order(self, c3):
        M = full_functional(c3, 2)
        assert np.array_equal(M.tuples[3], [1, 0])
