"""
有界语义后承测试
"""
import pytest

from monolat.algebra.consequence import (
    equational_consequence, find_counterexample, fo_consequence, fo_consequence_via_modal,
)
from monolat.algebra.generators import all_lattices, lukasiewicz, resolve_modal_battery
from monolat.core.exceptions import FormulaError
from monolat.schemas.models import ConsequenceStatus
from monolat.syntax.formulas import Equation
from monolat.syntax.parser import parse_equation, parse_theory
from monolat.syntax.random_formulas import random_fo


class TestEquational:
    def test_l3_countermodel(self, l3_box):
        goal = parse_equation("dia p0 * dia p0 = dia (p0 * p0)", "modal")
        verdict = equational_consequence([l3_box], (), goal)
        assert verdict.status == ConsequenceStatus.FAILS
        cm = verdict.countermodel
        assert cm.assignment == {"p0": 1}
        assert (cm.lhs_value, cm.rhs_value) == (2, 0)
        assert (cm.lhs_label, cm.rhs_label) == ("1", "0")

    def test_holds_on_battery(self):
        battery = resolve_modal_battery("lattices:3")
        verdict = equational_consequence(battery, (), parse_equation("box p0 <= p0", "modal"))
        assert verdict.status == ConsequenceStatus.HOLDS
        assert verdict.bounds["algebras"] == len(battery)
        assert verdict.checked > 0

    def test_premises_restrict_assignments(self):
        battery = resolve_modal_battery("fle:3")
        theory = parse_theory("p0 = e", "modal")
        verdict = equational_consequence(battery, theory, parse_equation("box p0 = e", "modal"))
        assert verdict.status == ConsequenceStatus.HOLDS

    def test_quasi_equation_fails_without_premise(self, l3_box):
        verdict = equational_consequence([l3_box], (), parse_equation("box p0 = e", "modal"))
        assert verdict.status == ConsequenceStatus.FAILS
        assert verdict.countermodel.assignment == {"p0": 0}

    def test_budget_exhausted(self, l3_box):
        goal = parse_equation("box p0 <= p0", "modal")
        verdict = equational_consequence([l3_box], (), goal, max_assignments=1)
        assert verdict.status == ConsequenceStatus.EXHAUSTED

    def test_parallel_matches_serial(self):
        battery = resolve_modal_battery("fle:3")
        goal = parse_equation("p0 <= p0 * p0", "modal")
        serial = equational_consequence(battery, (), goal, jobs=1)
        parallel = equational_consequence(battery, (), goal, jobs=4)
        assert serial.countermodel == parallel.countermodel

    def test_rejects_first_order_goal(self, l3_box):
        with pytest.raises(FormulaError):
            equational_consequence([l3_box], (), parse_equation("A x P0(x) = P0(x)"))

    def test_find_counterexample(self, l3):
        cm = find_counterexample(l3, parse_equation("p0 * p0 = p0", "modal"))
        assert cm.assignment == {"p0": 1}
        assert find_counterexample(l3, parse_equation("p0 /\\ p0 = p0", "modal")) is None


# ============================================================================
# 一阶后承
# ============================================================================

class TestFirstOrder:
    def test_boolean_countermodel(self, boolean):
        goal = parse_equation("A x P0(x) = P0(x)", "fo")
        verdict = fo_consequence([boolean], 2, (), goal)
        assert verdict.status == ConsequenceStatus.FAILS
        cm = verdict.countermodel
        assert cm.interpretation == {"P0": [0, 1]}
        assert cm.domain_size == 2
        assert cm.world == 1
        assert (cm.lhs_value, cm.rhs_value) == (0, 1)

    def test_single_world_cannot_refute(self, boolean):
        goal = parse_equation("A x P0(x) = P0(x)", "fo")
        assert fo_consequence([boolean], 1, (), goal).status == ConsequenceStatus.HOLDS

    def test_routes_agree_on_countermodel(self, boolean):
        goal = parse_equation("A x P0(x) = P0(x)", "fo")
        direct = fo_consequence([boolean], 2, (), goal)
        via = fo_consequence_via_modal([boolean], 2, (), goal)
        assert via.status == direct.status
        assert via.countermodel == direct.countermodel

    def test_routes_agree_on_random_equations(self, rng):
        bases = [lukasiewicz(2), lukasiewicz(3)]
        for _ in range(30):
            goal = Equation(random_fo(rng, 3), random_fo(rng, 3))
            direct = fo_consequence(bases, 2, (), goal)
            via = fo_consequence_via_modal(bases, 2, (), goal)
            assert direct.status == via.status
            assert direct.countermodel == via.countermodel

    def test_theory(self, l3):
        theory = parse_theory("P0(x) = A x P0(x)", "fo")
        goal = parse_equation("E x P0(x) = P0(x)", "fo")
        assert fo_consequence([l3], 3, theory, goal).status == ConsequenceStatus.HOLDS
        assert fo_consequence([l3], 3, (), goal).status == ConsequenceStatus.FAILS

    def test_lattice_bases(self):
        goal = parse_equation("A x P0(x) <= P0(x)", "fo")
        assert fo_consequence(all_lattices(3), 2, (), goal).status == ConsequenceStatus.HOLDS

    def test_structure_budget(self, l3):
        goal = parse_equation("A x P0(x) <= P0(x)", "fo")
        verdict = fo_consequence([l3], 3, (), goal, max_structures=10)
        assert verdict.status == ConsequenceStatus.EXHAUSTED

    def test_rejects_free_indexed_variable(self, boolean):
        with pytest.raises(FormulaError):
            fo_consequence([boolean], 2, (), parse_equation("P0(x1) = P0(x1)", "fo"))
