"""
插值式提取测试
"""
import pytest

from monolat.core.exceptions import InterpolationError
from monolat.proof.derivation import Rule, check_derivation, derive, md, random_derivation
from monolat.proof.interpolation import interpolate, interpolate_all
from monolat.proof.search import prove
from monolat.proof.sequent import Sequent, admissible_partitions
from monolat.schemas.models import Calculus, SearchConfig
from monolat.syntax.formulas import E, X, Atom, forall, is_sentence, prod2, xi

ALL_P0 = forall(Atom(0, X))


@pytest.fixture
def instance_proof():
    leaf = derive(Rule.ID, principal=Atom(0, xi(1)))
    return derive(Rule.ALL_L, [leaf], principal=ALL_P0, term=xi(1))


def _assert_valid(d, result, calculus):
    assert is_sentence(result.chi)
    assert result.d1.conclusion == Sequent(result.gamma, result.chi)
    assert result.d2.conclusion == Sequent(result.pi + (result.chi,), d.conclusion.succedent)
    assert check_derivation(result.d1, calculus).ok
    assert check_derivation(result.d2, calculus).ok
    assert result.md1 <= result.md and result.md2 <= result.md


class TestExamples:
    def test_universal_instance(self, instance_proof):
        result = interpolate(instance_proof, (0,))
        assert result.chi == prod2(E, ALL_P0)
        assert result.chi.render(ascii_only=True) == "e * A x P0(x)"
        assert result.md == 1
        _assert_valid(instance_proof, result, Calculus.FLE)

    def test_empty_gamma(self, instance_proof):
        result = interpolate(instance_proof, ())
        assert result.chi == E
        assert result.gamma == ()
        _assert_valid(instance_proof, result, Calculus.FLE)

    def test_searched_proofs(self):
        for text, calculus in [
            ("P0(x), P1(x) |- P0(x) * P1(x)", Calculus.FLE),
            ("A x (P0(x) -> P1(x)), A x P0(x) |- A x P1(x)", Calculus.FLE),
            ("P0(x), P1(x) |- P0(x)", Calculus.FLEW),
            ("P0(x) |- P0(x) * P0(x)", Calculus.FLEC),
        ]:
            d = prove(Sequent.parse(text), SearchConfig(calculus=calculus)).derivation
            results = list(interpolate_all(d, calculus))
            assert [g for g, _ in results] == admissible_partitions(d.conclusion)
            for _, result in results:
                _assert_valid(d, result, calculus)


class TestPartitionErrors:
    def test_shared_free_variable(self):
        d = derive(Rule.ID, principal=Atom(0, xi(1)))
        with pytest.raises(InterpolationError):
            interpolate(d, (0,))

    def test_bad_indices(self, instance_proof):
        with pytest.raises(InterpolationError):
            interpolate(instance_proof, (1,))
        with pytest.raises(InterpolationError):
            interpolate(instance_proof, (0, 0))

    def test_calculus_too_weak(self):
        d = derive(Rule.W, [derive(Rule.ID, principal=Atom(0, X))], weaken=[Atom(1, X)])
        with pytest.raises(InterpolationError):
            interpolate(d, (), Calculus.FLE)


# ============================================================================
# 随机推导语料
# ============================================================================

class TestRandomCorpus:
    @pytest.mark.parametrize("calculus", list(Calculus))
    def test_every_admissible_partition(self, calculus, rng):
        count = 0
        for _ in range(70):
            d = random_derivation(calculus, rng, 4)
            for gamma in admissible_partitions(d.conclusion)[:16]:
                _assert_valid(d, interpolate(d, gamma, calculus), calculus)
            count += 1
        assert count == 70

    def test_md_never_grows(self, rng):
        for _ in range(50):
            d = random_derivation(Calculus.FLE, rng, 5)
            for _, result in interpolate_all(d, Calculus.FLE):
                assert max(result.md1, result.md2) <= md(d)
