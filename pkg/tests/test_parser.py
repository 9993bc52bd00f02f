"""
解析器测试
"""
import pytest

from monolat.core.exceptions import ParseError
from monolat.syntax.formulas import E, X, Atom, Equation, PropVar, box, dia, exists, forall, imp, meet, prod2, xi
from monolat.syntax.parser import (
    parse, parse_equation, parse_fo, parse_modal, parse_sequent_parts, parse_theory, parse_variable,
)


class TestFormulas:
    def test_modal_ascii_and_unicode_agree(self):
        assert parse_modal("box (p0 * p1)") == parse_modal("□(p0 · p1)")
        assert parse_modal("dia p0 -> p1") == imp(dia(PropVar(0)), PropVar(1))

    def test_first_order(self):
        phi = parse_fo("A x (P0(x) -> E x P1(x))")
        assert phi == forall(imp(Atom(0, X), exists(Atom(1, X))))

    def test_precedence(self):
        # · 高于 ∧ 高于 ∨ 高于 →
        phi = parse_modal("p0 * p1 /\\ p2 \\/ p0 -> p1")
        expected = imp(
            parse_modal("((p0 * p1) /\\ p2) \\/ p0"),
            PropVar(1),
        )
        assert phi == expected

    def test_implication_right_associative(self):
        assert parse_modal("p0 -> p1 -> p0") == imp(PropVar(0), imp(PropVar(1), PropVar(0)))

    def test_constants(self):
        assert parse("e * f") == prod2(E, parse("f"))

    def test_auto_syntax_locks(self):
        assert parse("box p0") == box(PropVar(0))
        with pytest.raises(ParseError):
            parse("box P0(x)")

    def test_free_variable_atom(self):
        assert parse_fo("P2(x7)") == Atom(2, xi(7))
        assert parse_variable("x") == X
        assert parse_variable("x3") == xi(3)


class TestErrors:
    def test_error_carries_position(self):
        with pytest.raises(ParseError) as info:
            parse_modal("p0 * ) p1")
        assert info.value.position == 5

    def test_unknown_word(self):
        with pytest.raises(ParseError):
            parse_modal("p0 and p1")

    def test_quantifier_over_indexed_variable(self):
        with pytest.raises(ParseError):
            parse_fo("A x1 P0(x1)")

    def test_indexed_variable_in_scope(self):
        with pytest.raises(ParseError):
            parse_fo("A x (P0(x) * P1(x2))")

    def test_modal_token_in_fo(self):
        with pytest.raises(ParseError):
            parse_fo("box P0(x)")

    def test_trailing_tokens(self):
        with pytest.raises(ParseError):
            parse_modal("p0 p1")


class TestEquations:
    def test_equation(self):
        eq = parse_equation("box p0 = p0")
        assert eq == Equation(box(PropVar(0)), PropVar(0))
        assert parse_equation("box p0 ≈ p0") == eq

    def test_inequation_is_meet_equation(self):
        eq = parse_equation("p0 <= p1")
        assert eq == Equation(meet(PropVar(0), PropVar(1)), PropVar(0))
        assert parse_equation("p0 ≤ p1") == eq

    def test_missing_relation(self):
        with pytest.raises(ParseError):
            parse_equation("p0 * p1")

    def test_theory_lines_and_comments(self):
        theory = parse_theory("# 注释\nbox p0 <= p0\n\np0 = p0; dia p0 = dia p0\n")
        assert len(theory) == 3


class TestSequents:
    def test_parts(self):
        gamma, delta = parse_sequent_parts("P1(x), P0(x) |- P0(x) * P1(x)")
        assert gamma == [Atom(1, X), Atom(0, X)]
        assert delta == prod2(Atom(0, X), Atom(1, X))

    def test_empty_sides(self):
        assert parse_sequent_parts("|- e") == ([], E)
        assert parse_sequent_parts("P0(x) ⊢") == ([Atom(0, X)], None)
        assert parse_sequent_parts("P0(x) ⇒ P0(x)")[1] == Atom(0, X)

    def test_double_arrow_rejected(self):
        with pytest.raises(ParseError):
            parse_sequent_parts("P0(x) => P0(x)")

    def test_multiple_succedents_rejected(self):
        with pytest.raises(ParseError):
            parse_sequent_parts("|- P0(x), P1(x)")
