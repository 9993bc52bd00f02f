"""
模态求值、A-结构与两者对应的测试
"""
import numpy as np
import pytest

from monolat.algebra.generators import all_fle_algebras, boolean2, lukasiewicz
from monolat.algebra.modal import full_functional
from monolat.algebra.semantics import (
    Assignment, Structure, eval_fo, eval_fo_vector, eval_modal, eval_modal_batch,
    evaluation_to_structure, holds_in_structure, structure_to_evaluation,
)
from monolat.core.exceptions import AlgebraError, FormulaError
from monolat.syntax.formulas import Equation, X, Atom, circle, star, xi
from monolat.syntax.parser import parse_fo, parse_modal
from monolat.syntax.random_formulas import random_fo, random_modal


class TestModalEvaluation:
    def test_l3_example(self, l3_box):
        v = Assignment({0: 1})
        assert eval_modal(l3_box, v, parse_modal("dia p0 * dia p0")) == 2
        assert eval_modal(l3_box, v, parse_modal("dia (p0 * p0)")) == 0
        assert eval_modal(l3_box, v, parse_modal("box p0")) == 0

    def test_default_is_unit(self, l3_box):
        assert eval_modal(l3_box, Assignment(), parse_modal("p3")) == 2

    def test_plain_algebra_has_no_modality(self, l3):
        assert eval_modal(l3, Assignment({0: 1}), parse_modal("p0 -> p0")) == 2
        with pytest.raises(AlgebraError):
            eval_modal(l3, Assignment({0: 1}), parse_modal("box p0"))

    def test_out_of_range_value(self, l3_box):
        with pytest.raises(AlgebraError):
            eval_modal(l3_box, Assignment({0: 7}), parse_modal("p0"))

    def test_batch_matches_scalar(self, l3_box, rng):
        columns = {0: np.array([0, 1, 2, 2]), 1: np.array([1, 1, 0, 2])}
        for _ in range(100):
            alpha = random_modal(rng, 4)
            batch = eval_modal_batch(l3_box, alpha, columns, 4)
            for i in range(4):
                v = Assignment({0: int(columns[0][i]), 1: int(columns[1][i])})
                assert batch[i] == eval_modal(l3_box, v, alpha)


class TestStructures:
    def test_quantifiers_are_meet_and_join(self, l3):
        S = Structure(l3, 3, {0: [0, 1, 2]})
        assert eval_fo_vector(S, parse_fo("A x P0(x)")).tolist() == [0, 0, 0]
        assert eval_fo_vector(S, parse_fo("E x P0(x)")).tolist() == [2, 2, 2]
        assert eval_fo(S, 1, parse_fo("P0(x) * E x P0(x)")) == 1

    def test_holds_in_structure(self, boolean):
        S = Structure(boolean, 2, {0: [0, 1]})
        assert not holds_in_structure(S, Equation(parse_fo("A x P0(x)"), parse_fo("P0(x)")))
        assert holds_in_structure(S, Equation(parse_fo("A x P0(x) /\\ P0(x)"), parse_fo("A x P0(x)")))

    def test_rejects_free_indexed_variable(self, boolean):
        S = Structure(boolean, 1, {0: [1]})
        with pytest.raises(FormulaError):
            eval_fo(S, 0, Atom(0, xi(0)))

    def test_uninterpreted_predicate(self, boolean):
        S = Structure(boolean, 1, {0: [1]})
        with pytest.raises(FormulaError):
            eval_fo(S, 0, Atom(1, X))

    def test_interpretation_validated(self, boolean):
        with pytest.raises(AlgebraError):
            Structure(boolean, 2, {0: [0, 1, 1]})
        with pytest.raises(AlgebraError):
            Structure(boolean, 2, {0: [0, 2]})

    def test_world_out_of_range(self, boolean):
        S = Structure(boolean, 2, {0: [0, 1]})
        with pytest.raises(AlgebraError):
            eval_fo(S, 2, parse_fo("P0(x)"))


# ============================================================================
# 结构 ↔ 全函数代数上的赋值
# ============================================================================

class TestTransfer:
    @pytest.fixture
    def bases(self):
        return [boolean2(), lukasiewicz(3)] + all_fle_algebras(3)

    def test_structure_value_equals_translation_value(self, bases, rng):
        """⟦φ⟧^S 作为函数元组恰好是 v_S(φ∗) 在 A^S 中的值"""
        pairs = 0
        for base in bases:
            for size in (1, 2, 3):
                M = full_functional(base, size)
                for _ in range(12):
                    S = Structure(base, size, {p: [rng.randrange(base.size) for _ in range(size)] for p in (0, 1)})
                    phi = random_fo(rng, rng.randint(0, 5))
                    _, v = structure_to_evaluation(S)
                    assert M.encode(eval_fo_vector(S, phi)) == eval_modal(M, v, star(phi))
                    pairs += 1
        assert pairs >= 100

    def test_modal_value_equals_structure_value(self, l3, rng):
        M = full_functional(l3, 2)
        for _ in range(100):
            v = Assignment({0: rng.randrange(M.size), 1: rng.randrange(M.size)})
            alpha = random_modal(rng, 4)
            S = evaluation_to_structure(M, v, (0, 1))
            assert M.encode(eval_fo_vector(S, circle(alpha))) == eval_modal(M, v, alpha)

    def test_conversion_roundtrip(self, l3):
        S = Structure(l3, 2, {0: [1, 2], 1: [0, 0]})
        M, v = structure_to_evaluation(S)
        assert v.to_dict() == {"p0": M.encode([1, 2]), "p1": 0}
        assert evaluation_to_structure(M, v) == S

    def test_needs_functional_form(self, l3_box):
        with pytest.raises(AlgebraError):
            evaluation_to_structure(l3_box, Assignment({0: 1}))
