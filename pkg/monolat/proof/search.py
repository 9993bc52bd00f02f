"""
反向证明搜索

从结论出发逐条尝试规则：公理、右规则、各前件公式的左规则，
FLew 最后尝试 (w)，FLec 在预算内尝试 (c)。
FLe/FLew 中每一步前提的总规模严格下降，搜索必然终止，否定答案是完全的；
FLec 的否定答案一律为 BOUND_EXHAUSTED。
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from monolat.core.exceptions import DerivationError
from monolat.proof.derivation import Derivation, Rule, check_derivation
from monolat.proof.sequent import Sequent, remove_one, splits, submultisets
from monolat.schemas.models import Calculus, SearchConfig, SearchStatus, TermPolicy
from monolat.syntax.formulas import (
    E, F, X, Binary, Formula, Op, Quant, Variable, has_quantifier, instantiate, xi,
)
from monolat.utils.logger import logger

# (规则, 前提相继式列表, 主公式, 项, 本征变元)
Candidate = Tuple[Rule, List[Sequent], Optional[Formula], Optional[Variable], Optional[Variable]]


@dataclass
class SearchOutcome:
    """搜索结果：DERIVABLE 附带推导"""
    status: SearchStatus
    derivation: Optional[Derivation] = None
    nodes: int = 0
    message: str = ""

    @property
    def derivable(self) -> bool:
        return self.status == SearchStatus.DERIVABLE


def fresh_variable(sequent: Sequent) -> Variable:
    """结论中不自由出现的下标最小的 x_i"""
    used = sequent.free
    i = 0
    while xi(i) in used:
        i += 1
    return xi(i)


def instantiation_terms(sequent: Sequent, policy: TermPolicy) -> List[Variable]:
    """(∀⇒)/(⇒∃) 中项 t 的候选，按 x, x0, x1, … 排列"""
    terms = set(sequent.free)
    if policy == TermPolicy.ANY_OCCURRENCE and any(has_quantifier(phi) for phi in sequent.formulas):
        terms.add(X)
    return sorted(terms, key=lambda v: -1 if v.index is None else v.index)


class ProofSearch:
    """带记忆的深度优先反向搜索"""

    def __init__(self, config: Optional[SearchConfig] = None):
        self.config = config or SearchConfig()
        self.calculus = Calculus(self.config.calculus)
        self.policy = TermPolicy(self.config.policy)
        self.memo: Dict[Tuple[Sequent, int], Optional[Derivation]] = {}
        self.nodes = 0

    def run(self, sequent: Sequent) -> SearchOutcome:
        budget = self.config.contraction_budget if self.calculus == Calculus.FLEC else 0
        derivation, exhausted = self.search(sequent, budget, 0)
        if derivation is not None:
            check = check_derivation(derivation, self.calculus, self.policy)
            if not check.ok:
                raise DerivationError(f"搜索得到的推导未通过检查: 路径 {check.path}, {check.reason}")
            return SearchOutcome(SearchStatus.DERIVABLE, derivation, self.nodes, "可推导")
        if self.calculus == Calculus.FLEC:
            return SearchOutcome(
                SearchStatus.BOUND_EXHAUSTED, None, self.nodes,
                f"收缩预算 {self.config.contraction_budget} 内未找到推导",
            )
        if exhausted:
            return SearchOutcome(
                SearchStatus.BOUND_EXHAUSTED, None, self.nodes,
                f"深度上限 {self.config.depth_cap} 内未找到推导",
            )
        return SearchOutcome(SearchStatus.NOT_DERIVABLE, None, self.nodes, "搜索空间已穷尽，不可推导")

    def search(self, s: Sequent, budget: int, depth: int) -> Tuple[Optional[Derivation], bool]:
        """返回 (推导或 None, 是否因界限截断)"""
        key = (s, budget)
        if key in self.memo:
            return self.memo[key], False
        self.nodes += 1
        if depth >= self.config.depth_cap:
            return None, True
        exhausted = False
        for rule, premises, principal, term, eigen in self.candidates(s, budget):
            for p in premises:
                if rule != Rule.C and p.measure >= s.measure:
                    raise DerivationError(f"{rule.symbol} 的前提 {p} 规模未下降")
            found: List[Derivation] = []
            for p in premises:
                sub, cut = self.search(p, budget - 1 if rule == Rule.C else budget, depth + 1)
                exhausted = exhausted or cut
                if sub is None:
                    break
                found.append(sub)
            else:
                d = Derivation(s, rule, tuple(found), principal, term, eigen)
                self.memo[key] = d
                return d, False
        if not exhausted:
            self.memo[key] = None
        return None, exhausted

    def candidates(self, s: Sequent, budget: int) -> Iterator[Candidate]:
        gamma, delta = s.antecedent, s.succedent
        # 公理
        if len(gamma) == 1 and delta == gamma[0]:
            yield Rule.ID, [], delta, None, None
        if gamma == (F,) and delta is None:
            yield Rule.F_L, [], None, None, None
        if not gamma and delta == E:
            yield Rule.E_R, [], None, None, None

        if delta is not None:
            yield from self.right_rules(s)
        seen = set()
        for theta in gamma:
            if theta in seen:
                continue
            seen.add(theta)
            yield from self.left_rules(s, theta)

        if self.calculus == Calculus.FLEW:
            for sub in submultisets(gamma):
                for succ in ((delta, None) if delta is not None else (None,)):
                    premise = Sequent(sub, succ)
                    if premise != s:
                        yield Rule.W, [premise], None, None, None
        if self.calculus == Calculus.FLEC and budget > 0:
            for theta in sorted(set(gamma), key=lambda phi: phi.sort_key):
                yield Rule.C, [Sequent(gamma + (theta,), delta)], None, None, None

    def right_rules(self, s: Sequent) -> Iterator[Candidate]:
        gamma, phi = s.antecedent, s.succedent
        if phi == F:
            yield Rule.F_R, [Sequent(gamma, None)], phi, None, None
        if isinstance(phi, Binary):
            a, b = phi.left, phi.right
            if phi.op == Op.IMP:
                yield Rule.IMP_R, [Sequent(gamma + (a,), b)], phi, None, None
            elif phi.op == Op.PROD:
                for g1, g2 in splits(gamma):
                    yield Rule.PROD_R, [Sequent(g1, a), Sequent(g2, b)], phi, None, None
            elif phi.op == Op.AND:
                yield Rule.AND_R, [Sequent(gamma, a), Sequent(gamma, b)], phi, None, None
            elif phi.op == Op.OR:
                yield Rule.OR_R1, [Sequent(gamma, a)], phi, None, None
                yield Rule.OR_R2, [Sequent(gamma, b)], phi, None, None
        if isinstance(phi, Quant):
            if phi.kind == "all":
                y = fresh_variable(s)
                yield Rule.ALL_R, [Sequent(gamma, instantiate(phi, y))], phi, None, y
            else:
                for t in instantiation_terms(s, self.policy):
                    yield Rule.EX_R, [Sequent(gamma, instantiate(phi, t))], phi, t, None

    def left_rules(self, s: Sequent, theta: Formula) -> Iterator[Candidate]:
        rest, delta = remove_one(s.antecedent, theta), s.succedent
        if theta == E:
            yield Rule.E_L, [Sequent(rest, delta)], theta, None, None
        if isinstance(theta, Binary):
            a, b = theta.left, theta.right
            if theta.op == Op.IMP:
                for g1, g2 in splits(rest):
                    yield Rule.IMP_L, [Sequent(g1, a), Sequent(g2 + (b,), delta)], theta, None, None
            elif theta.op == Op.PROD:
                yield Rule.PROD_L, [Sequent(rest + (a, b), delta)], theta, None, None
            elif theta.op == Op.AND:
                yield Rule.AND_L1, [Sequent(rest + (a,), delta)], theta, None, None
                yield Rule.AND_L2, [Sequent(rest + (b,), delta)], theta, None, None
            elif theta.op == Op.OR:
                yield Rule.OR_L, [Sequent(rest + (a,), delta), Sequent(rest + (b,), delta)], theta, None, None
        if isinstance(theta, Quant):
            if theta.kind == "all":
                for t in instantiation_terms(s, self.policy):
                    yield Rule.ALL_L, [Sequent(rest + (instantiate(theta, t),), delta)], theta, t, None
            else:
                y = fresh_variable(s)
                yield Rule.EX_L, [Sequent(rest + (instantiate(theta, y),), delta)], theta, None, y


def prove(sequent: Sequent, config: Optional[SearchConfig] = None) -> SearchOutcome:
    """反向证明搜索

    Args:
        sequent: 待证相继式
        config: 演算、收缩预算、深度上限与项策略

    Returns:
        SearchOutcome: DERIVABLE 时附带已通过 check_derivation 的推导
    """
    search = ProofSearch(config)
    outcome = search.run(sequent)
    logger.debug(f"证明搜索 {sequent}: {outcome.status.value}，访问 {outcome.nodes} 个节点")
    return outcome
