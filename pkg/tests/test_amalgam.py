"""
V-形态、超融合与函数嵌入测试
"""
import pytest

from monolat.algebra.amalgam import VFormation, is_superamalgam, search_functional_embedding, verify_embedding
from monolat.algebra.finite import FiniteAlgebra
from monolat.algebra.generators import all_lattices, chain, lukasiewicz
from monolat.algebra.modal import ModalExpansion, enumerate_modal_expansions, full_functional
from monolat.core.exceptions import AlgebraError
from monolat.schemas.models import EmbeddingStatus


class TestSuperamalgam:
    def test_diamond_passes(self, m2):
        V = VFormation.from_inclusions(m2, [0, 3], [0, 1, 3], [0, 2, 3])
        report = is_superamalgam(V)
        assert report.passed
        assert report.homomorphisms and report.injective and report.commutes

    def test_missing_interpolant(self, m2):
        V = VFormation.from_inclusions(m2, [0], [0, 1, 3], [0, 2, 3])
        report = is_superamalgam(V)
        assert not report.passed
        assert report.commutes
        assert not report.interpolation
        assert report.failures[0].law.startswith("超融合插值")

    def test_non_injective_map(self, m2):
        A = m2.restrict([0, 3])
        B = m2.restrict([0, 1, 3])
        V = VFormation(A, B, B, m2, [0, 2], [0, 2], [0, 1, 3], [0, 0, 3])
        report = is_superamalgam(V)
        assert not report.injective
        assert not report.passed

    def test_chain_without_interpolant(self):
        """链上 1 ≤ 2，但 A = {0, 3} 中没有介于两者之间的元素"""
        C = chain(4)
        report = is_superamalgam(VFormation.from_inclusions(C, [0, 3], [0, 1, 3], [0, 2, 3]))
        assert report.homomorphisms and report.commutes
        assert not report.interpolation
        assert report.failures[0].witness == [1, 1]

    def test_a_must_be_inside_b(self, m2):
        with pytest.raises(AlgebraError):
            VFormation.from_inclusions(m2, [0, 1, 3], [0, 1, 3], [0, 2, 3])

    def test_map_length_validated(self, m2):
        A = m2.restrict([0, 3])
        with pytest.raises(AlgebraError):
            VFormation(A, m2, m2, m2, [0], [0, 3], list(range(4)), list(range(4)))


class TestFunctionalEmbedding:
    def test_small_m_lattices_embed(self):
        bases = all_lattices(4)
        for A in all_lattices(3):
            for M in enumerate_modal_expansions(A):
                result = search_functional_embedding(M, bases, 3)
                assert result.status == EmbeddingStatus.FOUND, M.name
                T = full_functional(next(b for b in bases if b.name == result.base), result.worlds)
                assert verify_embedding(M, T, result.images, ["and", "or"])

    def test_l3_example_full_signature(self, l3_box):
        result = search_functional_embedding(l3_box, [lukasiewicz(3)], 2)
        assert result.status == EmbeddingStatus.NOT_FOUND

    def test_l3_example_lattice_reduct(self, l3_box):
        result = search_functional_embedding(l3_box, [lukasiewicz(3)], 2, operations=["and", "or"])
        assert result.status == EmbeddingStatus.FOUND
        T = full_functional(lukasiewicz(3), result.worlds)
        assert verify_embedding(l3_box, T, result.images, ["and", "or"])
        assert len(result.mapping) == 3

    def test_node_budget(self, l3_box):
        result = search_functional_embedding(l3_box, [lukasiewicz(3)], 2, node_budget=1)
        assert result.status == EmbeddingStatus.BUDGET_EXCEEDED

    def test_unknown_operation(self, l3_box):
        with pytest.raises(AlgebraError):
            search_functional_embedding(l3_box, [lukasiewicz(3)], 2, operations=["meet"])


class TestPartialSignature:
    """只保持部分运算时，嵌入不必保序"""

    MEET = [[0, 0], [0, 1]]
    JOIN = [[0, 1], [1, 1]]

    @pytest.fixture
    def boolean_imp(self):
        base = FiniteAlgebra(2, {"and": self.MEET, "or": self.JOIN, "imp": [[1, 1], [0, 1]]}, name="B2")
        return ModalExpansion(base, box=[0, 1], diamond=[0, 1])

    @pytest.fixture
    def swapped_imp(self):
        """同一个格，→ 经 0 ↔ 1 共轭"""
        return FiniteAlgebra(2, {"and": self.MEET, "or": self.JOIN, "imp": [[0, 1], [0, 0]]}, name="B2σ")

    def test_order_reversing_embedding_found(self, boolean_imp, swapped_imp):
        result = search_functional_embedding(boolean_imp, [swapped_imp], 1, operations=["imp"])
        assert result.status == EmbeddingStatus.FOUND
        T = full_functional(swapped_imp, 1)
        assert verify_embedding(boolean_imp, T, result.images, ["imp"])
        assert not verify_embedding(boolean_imp, T, result.images, ["and"])

    def test_lattice_operations_still_need_order(self, boolean_imp, swapped_imp):
        result = search_functional_embedding(boolean_imp, [swapped_imp], 1, operations=["and", "or", "imp"])
        assert result.status == EmbeddingStatus.NOT_FOUND
