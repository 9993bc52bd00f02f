"""
相继式与推导树测试
"""
import pytest

from monolat.core.exceptions import DerivationError, FormulaError
from monolat.proof.derivation import (
    Derivation, Rule, calculus_of, check_derivation, derivation_from_dict, derive, md,
    random_derivation, rename_derivation, to_dict, to_text,
)
from monolat.proof.sequent import Sequent, admissible_partitions, product_of, sum_of
from monolat.schemas.models import Calculus, TermPolicy
from monolat.syntax.formulas import E, F, X, Atom, PropVar, exists, forall, prod2, xi
from monolat.syntax.parser import parse_fo

P0 = Atom(0, X)
ALL_P0 = forall(P0)
EX_P0 = exists(P0)


@pytest.fixture
def instance_proof():
    """∀xP0(x) ⇒ P0(x1)"""
    leaf = derive(Rule.ID, principal=Atom(0, xi(1)))
    return derive(Rule.ALL_L, [leaf], principal=ALL_P0, term=xi(1))


@pytest.fixture
def bound_term_proof():
    """∀xP0(x) ⇒ ∃xP0(x)，两次都以约束变元 x 为项"""
    leaf = derive(Rule.ID, principal=P0)
    right = derive(Rule.EX_R, [leaf], principal=EX_P0, term=X)
    return derive(Rule.ALL_L, [right], principal=ALL_P0, term=X)


# ============================================================================
# 相继式
# ============================================================================

class TestSequent:
    def test_antecedent_is_canonical(self):
        a = Sequent.parse("P1(x), P0(x) |- P0(x)")
        b = Sequent.parse("P0(x), P1(x) |- P0(x)")
        assert a == b
        assert a.antecedent == (P0, Atom(1, X))

    def test_render(self):
        s = Sequent.parse("P0(x1), A x P1(x) |- P0(x1)")
        assert s.render(ascii_only=True) == "A x P1(x), P0(x1) |- P0(x1)"
        assert Sequent.parse("|- e").render() == "⇒ e"

    def test_free_and_measure(self):
        s = Sequent.parse("P0(x1), A x P1(x) |- P0(x1)")
        assert s.free == {xi(1)}
        assert s.measure == 4

    def test_rejects_modal_formula(self):
        with pytest.raises(FormulaError):
            Sequent.of([PropVar(0)])

    def test_product_and_sum(self):
        a, b, c = (Atom(i, X) for i in range(3))
        assert product_of([]) == E
        assert product_of([a, b, c]) == prod2(prod2(a, b), c)
        assert sum_of(None) == F
        assert sum_of(a) == a

    def test_admissible_partitions(self):
        s = Sequent.parse("P0(x0), P1(x1) |- P1(x1)")
        assert admissible_partitions(s) == [(), (0,)]

    def test_duplicate_formulas_partition_once(self):
        s = Sequent.parse("A x P0(x), A x P0(x) |- e")
        assert admissible_partitions(s) == [(), (0,), (0, 1)]


# ============================================================================
# 推导的构造与检查
# ============================================================================

class TestDerive:
    def test_conclusion_computed(self, instance_proof):
        assert instance_proof.conclusion == Sequent.parse("A x P0(x) |- P0(x1)")
        assert md(instance_proof) == 1
        assert instance_proof.node_count == 2
        assert check_derivation(instance_proof).ok

    def test_product_rule(self):
        left = derive(Rule.ID, principal=P0)
        right = derive(Rule.ID, principal=Atom(1, X))
        d = derive(Rule.PROD_R, [left, right])
        assert d.conclusion == Sequent.parse("P0(x), P1(x) |- P0(x) * P1(x)")
        assert md(d) == 0

    def test_eigenvariable_condition(self):
        leaf = derive(Rule.ID, principal=Atom(0, xi(0)))
        with pytest.raises(DerivationError):
            derive(Rule.ALL_R, [leaf], eigenvariable=xi(0))

    def test_universal_right(self):
        leaf = derive(Rule.ID, principal=Atom(0, xi(0)))
        d = derive(Rule.ALL_R, [derive(Rule.ALL_L, [leaf], principal=ALL_P0, term=xi(0))], eigenvariable=xi(0))
        assert d.conclusion == Sequent.parse("A x P0(x) |- A x P0(x)")
        assert md(d) == 2

    def test_missing_data(self):
        with pytest.raises(DerivationError):
            derive(Rule.ALL_L, [derive(Rule.ID, principal=P0)], principal=ALL_P0)

    def test_weakening_needs_flew(self):
        d = derive(Rule.W, [derive(Rule.ID, principal=P0)], weaken=[Atom(1, X)])
        assert calculus_of(d) == Calculus.FLEW
        assert check_derivation(d, Calculus.FLEW).ok
        check = check_derivation(d, Calculus.FLE)
        assert not check.ok
        assert check.rule == "w"
        assert check.path == []

    def test_contraction(self):
        p = derive(Rule.ID, principal=P0)
        doubled = derive(Rule.PROD_R, [p, p])
        d = derive(Rule.C, [doubled], contract=[P0])
        assert d.conclusion == Sequent.parse("P0(x) |- P0(x) * P0(x)")
        assert calculus_of(d) == Calculus.FLEC
        assert not check_derivation(d, Calculus.FLEW).ok


class TestCheck:
    def test_reports_path_of_bad_node(self, instance_proof):
        leaf = instance_proof.premises[0]
        bad_leaf = Derivation(leaf.conclusion, Rule.E_R)
        bad = Derivation(instance_proof.conclusion, Rule.ALL_L, (bad_leaf,), ALL_P0, xi(1))
        check = check_derivation(bad)
        assert not check.ok
        assert check.path == [0]
        assert check.rule == "=>e"
        assert check_derivation(Derivation(instance_proof.conclusion, Rule.ALL_L, (leaf,), ALL_P0, xi(1))).ok

    def test_wrong_premise_count(self):
        d = Derivation(Sequent.parse("P0(x) |- P0(x)"), Rule.ID, (derive(Rule.ID, principal=P0),), P0)
        assert not check_derivation(d).ok

    def test_term_policy(self, bound_term_proof):
        assert check_derivation(bound_term_proof, policy=TermPolicy.ANY_OCCURRENCE).ok
        check = check_derivation(bound_term_proof, policy=TermPolicy.FREE_ONLY)
        assert not check.ok
        assert check.path == []
        assert check.rule == "A=>"

    def test_random_derivations_are_correct(self, rng):
        for calculus in Calculus:
            for _ in range(100):
                d = random_derivation(calculus, rng, 4)
                assert check_derivation(d, calculus).ok, to_text(d, ascii_only=True)


# ============================================================================
# 重命名与序列化
# ============================================================================

class TestRename:
    def test_rename_free_variable(self, instance_proof):
        d = rename_derivation(instance_proof, [(xi(1), xi(2))])
        assert d.conclusion == Sequent.parse("A x P0(x) |- P0(x2)")
        assert d.term == xi(2)

    def test_swap_through_fresh_variable(self):
        left = derive(Rule.ID, principal=Atom(0, xi(0)))
        right = derive(Rule.ID, principal=Atom(1, xi(1)))
        d = derive(Rule.PROD_R, [left, right])
        swapped = rename_derivation(d, [(xi(0), xi(2)), (xi(1), xi(0)), (xi(2), xi(1))])
        assert swapped.conclusion == Sequent.parse("P0(x1), P1(x0) |- P0(x1) * P1(x0)")

    def test_target_must_be_fresh(self):
        left = derive(Rule.ID, principal=Atom(0, xi(0)))
        right = derive(Rule.ID, principal=Atom(1, xi(1)))
        d = derive(Rule.PROD_R, [left, right])
        with pytest.raises(DerivationError):
            rename_derivation(d, [(xi(0), xi(1))])


class TestSerialization:
    def test_dict_roundtrip(self, instance_proof, bound_term_proof):
        for d in (instance_proof, bound_term_proof):
            assert derivation_from_dict(to_dict(d)) == d

    def test_dict_shape(self, instance_proof):
        data = to_dict(instance_proof)
        assert data["rule"] == "A=>"
        assert data["term"] == "x1"
        assert data["conclusion"] == {"antecedent": ["A x P0(x)"], "succedent": "P0(x1)"}

    def test_bad_dict(self):
        with pytest.raises(DerivationError):
            derivation_from_dict({"rule": "id"})
        with pytest.raises(DerivationError):
            derivation_from_dict({"rule": "nope", "conclusion": {"antecedent": [], "succedent": "e"}})

    def test_text(self, instance_proof):
        lines = to_text(instance_proof).splitlines()
        assert lines[0] == "[∀⇒] ∀x P0(x) ⇒ P0(x1)  {t=x1}"
        assert lines[1] == "  [id] P0(x1) ⇒ P0(x1)"
        assert to_text(instance_proof, ascii_only=True).startswith("[A=>] A x P0(x) |- P0(x1)")

    def test_parsed_formulas_match(self):
        assert parse_fo("A x P0(x)") == ALL_P0
