"""
公式、翻译与打印测试
"""
import pytest

from monolat.core.exceptions import FormulaError
from monolat.syntax.formulas import (
    E, X, Atom, Equation, PropVar, box, circle, dia, forall, exists, free_vars,
    imp, in_fm1, instantiate, is_sentence, meet, prod2, render, star, substitute, xi,
)
from monolat.syntax.parser import parse_fo, parse_modal
from monolat.syntax.random_formulas import random_fo, random_modal

P0 = Atom(0, X)
P1 = Atom(1, X)


class TestConstruction:
    def test_quantifier_scope_rejects_indexed_variable(self):
        with pytest.raises(FormulaError):
            forall(prod2(P0, Atom(1, xi(1))))

    def test_free_variables(self):
        phi = prod2(forall(P0), Atom(1, xi(2)))
        assert free_vars(phi) == {xi(2)}
        assert not is_sentence(phi)
        assert is_sentence(forall(P0))

    def test_fm1_membership(self):
        assert in_fm1(prod2(P0, exists(P1)))
        assert not in_fm1(Atom(0, xi(0)))

    def test_nodes_are_hashable_values(self):
        assert {forall(P0), forall(Atom(0, X))} == {forall(P0)}


class TestSubstitution:
    def test_instantiate(self):
        phi = forall(imp(P0, P1))
        assert instantiate(phi, xi(3)) == imp(Atom(0, xi(3)), Atom(1, xi(3)))

    def test_bound_occurrence_untouched(self):
        phi = prod2(forall(P0), P0)
        assert substitute(phi, X, xi(0)) == prod2(forall(P0), Atom(0, xi(0)))


class TestTranslation:
    def test_star_of_universal(self):
        assert star(forall(P0)) == box(PropVar(0))

    def test_circle_of_diamond(self):
        assert circle(dia(meet(PropVar(0), E))) == exists(meet(P0, E))

    def test_star_rejects_free_indexed_variable(self):
        with pytest.raises(FormulaError):
            star(Atom(0, xi(1)))

    def test_equation_translation(self):
        eq = Equation(forall(P0), P0)
        assert eq.star() == Equation(box(PropVar(0)), PropVar(0))
        assert eq.star().circle() == eq

    def test_mixed_equation_rejected(self):
        with pytest.raises(FormulaError):
            Equation(P0, PropVar(0))

    def test_fo_roundtrip_random(self, rng):
        for _ in range(1000):
            phi = random_fo(rng, rng.randint(0, 8))
            assert circle(star(phi)) == phi

    def test_modal_roundtrip_random(self, rng):
        for _ in range(1000):
            alpha = random_modal(rng, rng.randint(0, 8))
            assert star(circle(alpha)) == alpha


class TestRender:
    def test_implication_is_right_associative(self):
        phi = imp(P0, imp(P1, P0))
        assert render(phi) == "P0(x) → P1(x) → P0(x)"
        assert render(imp(imp(P0, P1), P0)) == "(P0(x) → P1(x)) → P0(x)"

    def test_prefix_operators_bind_tightly(self):
        assert render(prod2(box(PropVar(0)), PropVar(1))) == "□p0 · p1"
        assert render(box(prod2(PropVar(0), PropVar(1)))) == "□(p0 · p1)"

    def test_ascii(self):
        phi = forall(meet(P0, P1))
        assert render(phi, ascii_only=True) == "A x (P0(x) /\\ P1(x))"

    def test_render_parse_roundtrip(self, rng):
        for _ in range(300):
            phi = random_fo(rng, 5, variables=(X, xi(0)))
            assert parse_fo(render(phi)) == phi
            assert parse_fo(render(phi, ascii_only=True)) == phi
            alpha = random_modal(rng, 5)
            assert parse_modal(render(alpha, ascii_only=True)) == alpha
