"""
插值式提取

给定推导 d ⊢ Γ(ȳ), Π(z̄) ⇒ Δ(z̄)（ȳ ∩ z̄ = ∅），沿推导归纳构造语句 χ 及推导
d₁ ⊢ Γ ⇒ χ、d₂ ⊢ Π, χ ⇒ Δ，且 md(d₁), md(d₂) ≤ md(d)。

内部统一记作 (A, B)：A 为第一侧，B 为第二侧，后件总随 B。
(→⇒) 主公式在 A 侧与 (⇒∃) 项 t 自由出现在 A 侧时，左前提交换两侧递归。
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from monolat.core.exceptions import DerivationError, InterpolationError
from monolat.proof.derivation import (
    Derivation, Rule, calculus_of, check_derivation, derive, md,
)
from monolat.proof.sequent import Multiset, Sequent, admissible_partitions, canonical, difference, remove_one
from monolat.schemas.models import Calculus, TermPolicy
from monolat.syntax.formulas import E, Binary, Formula, Op, instantiate, is_sentence
from monolat.utils.logger import logger

Interpolant = Tuple[Formula, Derivation, Derivation]


@dataclass(frozen=True)
class InterpolationResult:
    chi: Formula
    d1: Derivation
    d2: Derivation
    gamma: Multiset
    pi: Multiset
    md: int
    md1: int
    md2: int


def _allocate(part: Sequence[Formula], pool: Sequence[Formula]) -> Tuple[Multiset, Multiset]:
    """把 part 拆成 (part ∩ pool, 其余)，尽量从 pool 中取"""
    taken, left = [], list(pool)
    rest = []
    for phi in part:
        if phi in left:
            left.remove(phi)
            taken.append(phi)
        else:
            rest.append(phi)
    return canonical(taken), canonical(rest)


def _free(formulas: Sequence[Formula]) -> frozenset:
    return frozenset().union(*(phi.free for phi in formulas))


def _succedent(d: Derivation) -> Tuple[Formula, ...]:
    s = d.conclusion.succedent
    return () if s is None else (s,)


class Interpolator:
    """按规则分情形的递归提取"""

    def __init__(self, calculus: Calculus, policy: TermPolicy = TermPolicy.ANY_OCCURRENCE):
        self.calculus = Calculus(calculus)
        self.policy = TermPolicy(policy)

    def derive(self, rule: Rule, premises=(), **data) -> Derivation:
        try:
            return derive(rule, premises, policy=self.policy, **data)
        except DerivationError as exc:
            raise InterpolationError(f"构造 {rule.symbol} 失败: {exc}") from exc

    def run(self, d: Derivation, A: Sequence[Formula], B: Sequence[Formula]) -> Interpolant:
        A, B = canonical(A), canonical(B)
        s = d.conclusion
        if canonical(A + B) != s.antecedent:
            raise InterpolationError(f"划分与结论前件不符: {s}")
        if not A:
            return E, self.derive(Rule.E_R), self.derive(Rule.E_L, [d], principal=E)

        rule = d.rule
        if rule in (Rule.ID, Rule.F_L):
            chi = A[0]
            return chi, self.derive(Rule.ID, principal=chi), d
        handler = getattr(self, f"case_{rule.name.lower()}", None)
        if handler is None:
            raise InterpolationError(f"未知规则 {rule}")
        return handler(d, A, B)

    # ---------- 单前提 ----------

    def _unary_left(self, d: Derivation, A: Multiset, B: Multiset, replace: Sequence[Formula]) -> Interpolant:
        """主公式换成 replace 后原样下传，在所在一侧重放同一规则"""
        theta = d.principal
        data = {"principal": theta, "term": d.term, "eigenvariable": d.eigenvariable}
        data = {k: v for k, v in data.items() if v is not None}
        if theta in A:
            chi, d1, d2 = self.run(d.premises[0], remove_one(A, theta) + tuple(replace), B)
            return chi, self.derive(d.rule, [d1], **data), d2
        chi, d1, d2 = self.run(d.premises[0], A, remove_one(B, theta) + tuple(replace))
        return chi, d1, self.derive(d.rule, [d2], **data)

    def case_e_l(self, d, A, B):
        return self._unary_left(d, A, B, ())

    def case_prod_l(self, d, A, B):
        return self._unary_left(d, A, B, (d.principal.left, d.principal.right))

    def case_and_l1(self, d, A, B):
        return self._unary_left(d, A, B, (d.principal.left,))

    def case_and_l2(self, d, A, B):
        return self._unary_left(d, A, B, (d.principal.right,))

    def case_ex_l(self, d, A, B):
        return self._unary_left(d, A, B, (instantiate(d.principal, d.eigenvariable),))

    def _unary_right(self, d: Derivation, A: Multiset, B: Multiset, extra: Sequence[Formula] = ()) -> Interpolant:
        """后件规则：只改动 d₂"""
        chi, d1, d2 = self.run(d.premises[0], A, B + tuple(extra))
        data = {"principal": d.principal, "term": d.term, "eigenvariable": d.eigenvariable}
        data = {k: v for k, v in data.items() if v is not None}
        return chi, d1, self.derive(d.rule, [d2], **data)

    def case_f_r(self, d, A, B):
        return self._unary_right(d, A, B)

    def case_imp_r(self, d, A, B):
        return self._unary_right(d, A, B, (d.principal.left,))

    def case_or_r1(self, d, A, B):
        return self._unary_right(d, A, B)

    def case_or_r2(self, d, A, B):
        return self._unary_right(d, A, B)

    def case_all_r(self, d, A, B):
        return self._unary_right(d, A, B)

    def case_ex_r(self, d, A, B):
        t, theta = d.term, d.principal
        if t not in _free(A):
            return self._unary_right(d, A, B)
        # t 自由出现在 A 侧：交换两侧，χ = χ' → ∃xψ
        premise = d.premises[0]
        chi1, e1, e2 = self.run(premise, B, A)
        chi = Binary(Op.IMP, chi1, theta)
        d1 = self.derive(Rule.IMP_R, [self.derive(Rule.EX_R, [e2], principal=theta, term=t)], principal=chi)
        d2 = self.derive(Rule.IMP_L, [e1, self.derive(Rule.ID, principal=theta)], principal=chi)
        return chi, d1, d2

    def case_all_l(self, d, A, B):
        t, theta = d.term, d.principal
        instance = instantiate(theta, t)
        premise = d.premises[0]
        if theta in A:
            if t not in _free(B + _succedent(d)):
                return self._unary_left(d, A, B, (instance,))
            # t 自由出现在 B 侧：φ(t) 归入 B，χ = χ'·∀xφ
            chi1, e1, e2 = self.run(premise, remove_one(A, theta), B + (instance,))
            chi = Binary(Op.PROD, chi1, theta)
            d1 = self.derive(Rule.PROD_R, [e1, self.derive(Rule.ID, principal=theta)])
            quantified = self.derive(Rule.ALL_L, [e2], principal=theta, term=t)
            return chi, d1, self.derive(Rule.PROD_L, [quantified], principal=chi)
        if t not in _free(A):
            return self._unary_left(d, A, B, (instance,))
        # t 自由出现在 A 侧：φ(t) 归入 A，χ = ∀xφ → χ'
        chi1, e1, e2 = self.run(premise, A + (instance,), remove_one(B, theta))
        chi = Binary(Op.IMP, theta, chi1)
        quantified = self.derive(Rule.ALL_L, [e1], principal=theta, term=t)
        d1 = self.derive(Rule.IMP_R, [quantified], principal=chi)
        d2 = self.derive(Rule.IMP_L, [self.derive(Rule.ID, principal=theta), e2], principal=chi)
        return chi, d1, d2

    # ---------- 双前提 ----------

    def case_and_r(self, d, A, B):
        chi1, d1a, d2a = self.run(d.premises[0], A, B)
        chi2, d1b, d2b = self.run(d.premises[1], A, B)
        chi = Binary(Op.AND, chi1, chi2)
        d1 = self.derive(Rule.AND_R, [d1a, d1b])
        d2 = self.derive(Rule.AND_R, [
            self.derive(Rule.AND_L1, [d2a], principal=chi),
            self.derive(Rule.AND_L2, [d2b], principal=chi),
        ])
        return chi, d1, d2

    def case_or_l(self, d, A, B):
        theta = d.principal
        left, right = theta.left, theta.right
        if theta in A:
            rest = remove_one(A, theta)
            chi1, d1a, d2a = self.run(d.premises[0], rest + (left,), B)
            chi2, d1b, d2b = self.run(d.premises[1], rest + (right,), B)
            chi = Binary(Op.OR, chi1, chi2)
            d1 = self.derive(Rule.OR_L, [
                self.derive(Rule.OR_R1, [d1a], principal=chi),
                self.derive(Rule.OR_R2, [d1b], principal=chi),
            ], principal=theta)
            return chi, d1, self.derive(Rule.OR_L, [d2a, d2b], principal=chi)
        rest = remove_one(B, theta)
        chi1, d1a, d2a = self.run(d.premises[0], A, rest + (left,))
        chi2, d1b, d2b = self.run(d.premises[1], A, rest + (right,))
        chi = Binary(Op.AND, chi1, chi2)
        d2 = self.derive(Rule.OR_L, [
            self.derive(Rule.AND_L1, [d2a], principal=chi),
            self.derive(Rule.AND_L2, [d2b], principal=chi),
        ], principal=theta)
        return chi, self.derive(Rule.AND_R, [d1a, d1b]), d2

    def case_prod_r(self, d, A, B):
        p1, p2 = d.premises
        A1, B1 = _allocate(p1.conclusion.antecedent, A)
        A2, B2 = difference(A, A1), difference(B, B1)
        chi1, d1a, d2a = self.run(p1, A1, B1)
        chi2, d1b, d2b = self.run(p2, A2, B2)
        chi = Binary(Op.PROD, chi1, chi2)
        d1 = self.derive(Rule.PROD_R, [d1a, d1b])
        d2 = self.derive(Rule.PROD_L, [self.derive(Rule.PROD_R, [d2a, d2b])], principal=chi)
        return chi, d1, d2

    def case_imp_l(self, d, A, B):
        theta = d.principal
        p1, p2 = d.premises
        gamma1 = p1.conclusion.antecedent
        if theta in A:
            A_rest = remove_one(A, theta)
            A1, B1 = _allocate(gamma1, A_rest)
            A2, B2 = difference(A_rest, A1), difference(B, B1)
            # 左前提的后件 φ 属于 A 侧：交换两侧
            chi1, e1, e2 = self.run(p1, B1, A1)
            chi2, d1b, d2b = self.run(p2, A2 + (theta.right,), B2)
            chi = Binary(Op.IMP, chi1, chi2)
            inner = self.derive(Rule.IMP_L, [e2, d1b], principal=theta)
            d1 = self.derive(Rule.IMP_R, [inner], principal=chi)
            d2 = self.derive(Rule.IMP_L, [e1, d2b], principal=chi)
            return chi, d1, d2
        B_rest = remove_one(B, theta)
        A1, B1 = _allocate(gamma1, A)
        A2, B2 = difference(A, A1), difference(B_rest, B1)
        chi1, d1a, d2a = self.run(p1, A1, B1)
        chi2, d1b, d2b = self.run(p2, A2, B2 + (theta.right,))
        chi = Binary(Op.PROD, chi1, chi2)
        d1 = self.derive(Rule.PROD_R, [d1a, d1b])
        d2 = self.derive(Rule.PROD_L, [self.derive(Rule.IMP_L, [d2a, d2b], principal=theta)], principal=chi)
        return chi, d1, d2

    # ---------- 结构规则 ----------

    def case_w(self, d, A, B):
        premise = d.premises[0].conclusion
        A1, B1 = _allocate(premise.antecedent, A)
        chi, d1, d2 = self.run(d.premises[0], A1, B1)
        added_a = difference(A, A1)
        if added_a:
            d1 = self.derive(Rule.W, [d1], weaken=added_a)
        added_b = difference(B, B1)
        succedent = d.conclusion.succedent if premise.succedent is None else None
        if added_b or succedent is not None:
            d2 = self.derive(Rule.W, [d2], weaken=added_b, weaken_succedent=succedent)
        return chi, d1, d2

    def case_c(self, d, A, B):
        premise = d.premises[0].conclusion
        extra = difference(premise.antecedent, d.conclusion.antecedent)
        extra_a, extra_b = _allocate(extra, A)
        chi, d1, d2 = self.run(d.premises[0], A + extra_a, B + extra_b)
        if extra_a:
            d1 = self.derive(Rule.C, [d1], contract=extra_a)
        if extra_b:
            d2 = self.derive(Rule.C, [d2], contract=extra_b)
        return chi, d1, d2


def check_partition(sequent: Sequent, gamma_indices: Sequence[int]) -> Tuple[Multiset, Multiset]:
    """校验划分并返回 (Γ, Π)；Γ 的自由变元须与 Π、Δ 的不相交"""
    n = len(sequent.antecedent)
    indices = sorted(set(gamma_indices))
    if len(indices) != len(gamma_indices) or any(i < 0 or i >= n for i in indices):
        raise InterpolationError(f"划分下标无效: {list(gamma_indices)}（前件共 {n} 个公式）")
    gamma = tuple(sequent.antecedent[i] for i in indices)
    pi = tuple(phi for i, phi in enumerate(sequent.antecedent) if i not in indices)
    rest = list(pi) + ([sequent.succedent] if sequent.succedent is not None else [])
    shared = _free(gamma) & _free(rest)
    if shared:
        names = ", ".join(sorted(str(v) for v in shared))
        raise InterpolationError(f"划分违反变元不相交条件：{names} 同时出现在两侧")
    return canonical(gamma), canonical(pi)


def interpolate(
    d: Derivation,
    gamma_indices: Sequence[int],
    calculus: Optional[Calculus] = None,
    policy: TermPolicy = TermPolicy.ANY_OCCURRENCE,
) -> InterpolationResult:
    """提取插值式

    Args:
        d: 已通过检查的推导
        gamma_indices: Γ 侧公式在结论前件（规范顺序）中的下标
        calculus: 演算，缺省为推导实际用到的最小演算
        policy: 边条件 (i) 的读法

    Returns:
        InterpolationResult: χ、d₁、d₂ 及各自的 md
    """
    try:
        calculus = Calculus(calculus) if calculus is not None else calculus_of(d)
    except DerivationError as exc:
        raise InterpolationError(str(exc)) from exc
    gamma, pi = check_partition(d.conclusion, gamma_indices)
    check = check_derivation(d, calculus, policy)
    if not check.ok:
        raise InterpolationError(f"输入推导未通过检查: 路径 {check.path}, {check.reason}")

    chi, d1, d2 = Interpolator(calculus, policy).run(d, gamma, pi)

    if not is_sentence(chi):
        raise InterpolationError(f"插值式不是语句: {chi}")
    if d1.conclusion != Sequent(gamma, chi):
        raise InterpolationError(f"d₁ 的结论错误: {d1.conclusion}")
    if d2.conclusion != Sequent(pi + (chi,), d.conclusion.succedent):
        raise InterpolationError(f"d₂ 的结论错误: {d2.conclusion}")
    for label, part in (("d₁", d1), ("d₂", d2)):
        part_check = check_derivation(part, calculus, policy)
        if not part_check.ok:
            raise InterpolationError(f"{label} 未通过检查: 路径 {part_check.path}, {part_check.reason}")
    result = InterpolationResult(chi, d1, d2, gamma, pi, md(d), md(d1), md(d2))
    if result.md1 > result.md or result.md2 > result.md:
        raise InterpolationError(f"md 超界: md(d)={result.md}, md(d₁)={result.md1}, md(d₂)={result.md2}")
    logger.debug(f"插值式 {chi}（md {result.md1}/{result.md2} ≤ {result.md}）")
    return result


def interpolate_all(d: Derivation, calculus: Optional[Calculus] = None, policy: TermPolicy = TermPolicy.ANY_OCCURRENCE):
    """对全部可接受划分提取插值式，产出 (划分, 结果)"""
    for gamma_indices in admissible_partitions(d.conclusion):
        yield gamma_indices, interpolate(d, gamma_indices, calculus, policy)
