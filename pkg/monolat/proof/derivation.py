"""
推导树：规则、局部检查、前向构造、md、重命名与序列化

规则模式（结论在下）：
  id      φ ⇒ φ                 f⇒   f ⇒            ⇒e   ⇒ e
  e⇒      Γ ⇒ Δ / Γ, e ⇒ Δ       ⇒f   Γ ⇒ / Γ ⇒ f
  →⇒      Γ₁ ⇒ φ ; Γ₂, ψ ⇒ Δ / Γ₁, Γ₂, φ→ψ ⇒ Δ
  ⇒→      Γ, φ ⇒ ψ / Γ ⇒ φ→ψ
  ·⇒      Γ, φ, ψ ⇒ Δ / Γ, φ·ψ ⇒ Δ
  ⇒·      Γ₁ ⇒ φ ; Γ₂ ⇒ ψ / Γ₁, Γ₂ ⇒ φ·ψ
  ∧⇒ᵢ     Γ, φᵢ ⇒ Δ / Γ, φ₁∧φ₂ ⇒ Δ      ⇒∧   Γ ⇒ φ ; Γ ⇒ ψ / Γ ⇒ φ∧ψ
  ∨⇒      Γ, φ ⇒ Δ ; Γ, ψ ⇒ Δ / Γ, φ∨ψ ⇒ Δ   ⇒∨ᵢ  Γ ⇒ φᵢ / Γ ⇒ φ₁∨φ₂
  ∀⇒      Γ, φ(t) ⇒ Δ / Γ, ∀xφ ⇒ Δ   (i)   ⇒∀   Γ ⇒ φ(y) / Γ ⇒ ∀xφ   (ii)
  ∃⇒      Γ, φ(y) ⇒ Δ / Γ, ∃xφ ⇒ Δ   (ii)  ⇒∃   Γ ⇒ φ(t) / Γ ⇒ ∃xφ   (i)
  w       Γ₁ ⇒ Δ₁ / Γ₁, Γ₂ ⇒ Δ₁, Δ₂   （仅 FLew）
  c       Γ₁, Γ₂, Γ₂ ⇒ Δ / Γ₁, Γ₂ ⇒ Δ  （仅 FLec）
(i) t 在结论中出现；(ii) y 不在结论中自由出现。
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from monolat.core.exceptions import DerivationError, FormulaError, MonolatError
from monolat.proof.sequent import (
    Multiset, Sequent, canonical, difference, is_submultiset, remove_one,
)
from monolat.schemas.models import Calculus, DerivationCheck, TermPolicy
from monolat.syntax.formulas import (
    E, F, X, Atom, Binary, Formula, Op, Quant, Variable, abstract, forall,
    instantiate, occurs, render, substitute, xi,
)
from monolat.syntax.parser import parse_fo, parse_variable
from monolat.syntax.random_formulas import random_fo


class Rule(str, Enum):
    """规则标签；值为 ASCII 名，symbol 为 Unicode 名"""
    ID = "id"
    F_L = "f=>"
    E_R = "=>e"
    E_L = "e=>"
    F_R = "=>f"
    IMP_L = "->=>"
    IMP_R = "=>->"
    PROD_L = "*=>"
    PROD_R = "=>*"
    AND_L1 = "/\\=>1"
    AND_L2 = "/\\=>2"
    AND_R = "=>/\\"
    OR_L = "\\/=>"
    OR_R1 = "=>\\/1"
    OR_R2 = "=>\\/2"
    ALL_L = "A=>"
    ALL_R = "=>A"
    EX_L = "E=>"
    EX_R = "=>E"
    W = "w"
    C = "c"

    @property
    def symbol(self) -> str:
        return SYMBOLS[self]

    @property
    def is_quantifier(self) -> bool:
        return self in QUANTIFIER_RULES


SYMBOLS = {
    Rule.ID: "id", Rule.F_L: "f⇒", Rule.E_R: "⇒e", Rule.E_L: "e⇒", Rule.F_R: "⇒f",
    Rule.IMP_L: "→⇒", Rule.IMP_R: "⇒→", Rule.PROD_L: "·⇒", Rule.PROD_R: "⇒·",
    Rule.AND_L1: "∧⇒₁", Rule.AND_L2: "∧⇒₂", Rule.AND_R: "⇒∧", Rule.OR_L: "∨⇒",
    Rule.OR_R1: "⇒∨₁", Rule.OR_R2: "⇒∨₂", Rule.ALL_L: "∀⇒", Rule.ALL_R: "⇒∀",
    Rule.EX_L: "∃⇒", Rule.EX_R: "⇒∃", Rule.W: "w", Rule.C: "c",
}
QUANTIFIER_RULES = frozenset({Rule.ALL_L, Rule.ALL_R, Rule.EX_L, Rule.EX_R})
AXIOMS = frozenset({Rule.ID, Rule.F_L, Rule.E_R})
TWO_PREMISES = frozenset({Rule.IMP_L, Rule.PROD_R, Rule.AND_R, Rule.OR_L})
LEFT_RULES = frozenset({
    Rule.E_L, Rule.IMP_L, Rule.PROD_L, Rule.AND_L1, Rule.AND_L2, Rule.OR_L, Rule.ALL_L, Rule.EX_L,
})
RIGHT_RULES = frozenset({
    Rule.F_R, Rule.IMP_R, Rule.PROD_R, Rule.AND_R, Rule.OR_R1, Rule.OR_R2, Rule.ALL_R, Rule.EX_R,
})
PRINCIPAL_SHAPE = {
    Rule.IMP_L: Op.IMP, Rule.IMP_R: Op.IMP, Rule.PROD_L: Op.PROD, Rule.PROD_R: Op.PROD,
    Rule.AND_L1: Op.AND, Rule.AND_L2: Op.AND, Rule.AND_R: Op.AND,
    Rule.OR_L: Op.OR, Rule.OR_R1: Op.OR, Rule.OR_R2: Op.OR,
}
QUANTIFIER_SHAPE = {Rule.ALL_L: "all", Rule.ALL_R: "all", Rule.EX_L: "ex", Rule.EX_R: "ex"}


@dataclass(frozen=True)
class Derivation:
    """推导树节点

    principal 为结论中的主公式；term 为 (∀⇒)/(⇒∃) 的项 t；
    eigenvariable 为 (⇒∀)/(∃⇒) 的本征变元 y。
    """
    conclusion: Sequent
    rule: Rule
    premises: Tuple["Derivation", ...] = ()
    principal: Optional[Formula] = None
    term: Optional[Variable] = None
    eigenvariable: Optional[Variable] = None
    _size: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "_size", 1 + sum(p.node_count for p in self.premises))

    @property
    def node_count(self) -> int:
        return self._size

    def walk(self, path: Tuple[int, ...] = ()):
        """先序遍历，产出 (路径, 节点)"""
        yield path, self
        for i, premise in enumerate(self.premises):
            yield from premise.walk(path + (i,))

    def __str__(self) -> str:
        return to_text(self)


def md(d: Derivation) -> int:
    """任一分支上量词规则应用次数的最大值"""
    below = max((md(p) for p in d.premises), default=0)
    return below + (1 if d.rule.is_quantifier else 0)


def calculus_of(d: Derivation) -> Calculus:
    """推导实际用到的最小演算"""
    rules = {node.rule for _, node in d.walk()}
    if Rule.W in rules and Rule.C in rules:
        raise DerivationError("同一推导中同时出现 (w) 与 (c)")
    if Rule.W in rules:
        return Calculus.FLEW
    if Rule.C in rules:
        return Calculus.FLEC
    return Calculus.FLE


def term_admissible(t: Variable, conclusion: Sequent, policy: TermPolicy) -> bool:
    """边条件 (i)"""
    if policy == TermPolicy.FREE_ONLY:
        return t in conclusion.free
    return any(occurs(t, phi) for phi in conclusion.formulas)


# ---------- 局部检查 ----------

def _principal_in(where: Multiset, d: Derivation) -> Optional[str]:
    if d.principal is None:
        return f"{d.rule.symbol} 缺少主公式"
    if d.principal not in where:
        return f"主公式 {d.principal} 不在结论前件中"
    return None


def _shape(rule: Rule, phi: Optional[Formula]) -> Optional[str]:
    """主公式的外形"""
    if rule in PRINCIPAL_SHAPE and not (isinstance(phi, Binary) and phi.op == PRINCIPAL_SHAPE[rule]):
        return f"{rule.symbol} 的主公式形状不符: {phi}"
    if rule in QUANTIFIER_SHAPE and not (isinstance(phi, Quant) and phi.kind == QUANTIFIER_SHAPE[rule]):
        return f"{rule.symbol} 的主公式形状不符: {phi}"
    return None


def _expect(actual: Sequent, antecedent: Sequence[Formula], succedent: Optional[Formula], which: str) -> Optional[str]:
    expected = Sequent(tuple(antecedent), succedent)
    if actual != expected:
        return f"{which}应为 {expected}，实为 {actual}"
    return None


def check_node(d: Derivation, calculus: Calculus, policy: TermPolicy = TermPolicy.ANY_OCCURRENCE) -> Optional[str]:
    """检查单个节点是否是其规则模式的实例；返回违规原因或 None"""
    rule, s, prem = d.rule, d.conclusion, d.premises
    gamma, delta = s.antecedent, s.succedent
    arity = 0 if rule in AXIOMS else 2 if rule in TWO_PREMISES else 1
    if len(prem) != arity:
        return f"{rule.symbol} 需要 {arity} 个前提，实有 {len(prem)} 个"

    if rule == Rule.ID:
        if len(gamma) != 1 or delta != gamma[0]:
            return f"id 的结论必须形如 φ ⇒ φ: {s}"
        return None
    if rule == Rule.F_L:
        return None if gamma == (F,) and delta is None else f"f⇒ 的结论必须是 f ⇒ : {s}"
    if rule == Rule.E_R:
        return None if not gamma and delta == E else f"⇒e 的结论必须是 ⇒ e: {s}"

    if rule == Rule.W:
        if calculus != Calculus.FLEW:
            return "(w) 只在 FLew 中可用"
        p = prem[0].conclusion
        if not is_submultiset(p.antecedent, gamma):
            return "(w) 的前提前件不是结论前件的子多重集"
        if p.succedent is not None and p.succedent != delta:
            return "(w) 的前提后件与结论后件不符"
        return None
    if rule == Rule.C:
        if calculus != Calculus.FLEC:
            return "(c) 只在 FLec 中可用"
        p = prem[0].conclusion
        if p.succedent != delta:
            return "(c) 的前提后件与结论后件不符"
        extra = difference(p.antecedent, gamma)
        if extra is None or not is_submultiset(extra, gamma):
            return "(c) 的前提前件必须是 Γ₁, Γ₂, Γ₂"
        return None

    if rule in LEFT_RULES:
        problem = _principal_in(gamma, d)
        if problem:
            return problem
        phi = d.principal
        rest = remove_one(gamma, phi)
    else:
        if delta is None or d.principal not in (None, delta):
            return f"{rule.symbol} 的主公式必须是结论后件"
        phi = delta
        rest = gamma
    problem = _shape(rule, phi)
    if problem:
        return problem

    if rule == Rule.E_L:
        if phi != E:
            return "e⇒ 的主公式必须是 e"
        return _expect(prem[0].conclusion, rest, delta, "前提")
    if rule == Rule.F_R:
        if phi != F:
            return "⇒f 的主公式必须是 f"
        return _expect(prem[0].conclusion, rest, None, "前提")
    if rule == Rule.IMP_L:
        p1, p2 = prem[0].conclusion, prem[1].conclusion
        if p1.succedent != phi.left:
            return f"→⇒ 左前提后件应为 {phi.left}"
        gamma2 = difference(p2.antecedent, (phi.right,))
        if gamma2 is None or p2.succedent != delta:
            return f"→⇒ 右前提应形如 Γ₂, {phi.right} ⇒ Δ"
        if canonical(p1.antecedent + gamma2) != rest:
            return "→⇒ 的上下文 Γ₁, Γ₂ 与结论不符"
        return None
    if rule == Rule.IMP_R:
        return _expect(prem[0].conclusion, rest + (phi.left,), phi.right, "前提")
    if rule == Rule.PROD_L:
        return _expect(prem[0].conclusion, rest + (phi.left, phi.right), delta, "前提")
    if rule == Rule.PROD_R:
        p1, p2 = prem[0].conclusion, prem[1].conclusion
        if p1.succedent != phi.left or p2.succedent != phi.right:
            return f"⇒· 的前提后件应为 {phi.left} 与 {phi.right}"
        if canonical(p1.antecedent + p2.antecedent) != rest:
            return "⇒· 的上下文 Γ₁, Γ₂ 与结论不符"
        return None
    if rule in (Rule.AND_L1, Rule.AND_L2):
        part = phi.left if rule == Rule.AND_L1 else phi.right
        return _expect(prem[0].conclusion, rest + (part,), delta, "前提")
    if rule == Rule.AND_R:
        return _expect(prem[0].conclusion, rest, phi.left, "左前提") or \
            _expect(prem[1].conclusion, rest, phi.right, "右前提")
    if rule == Rule.OR_L:
        return _expect(prem[0].conclusion, rest + (phi.left,), delta, "左前提") or \
            _expect(prem[1].conclusion, rest + (phi.right,), delta, "右前提")
    if rule in (Rule.OR_R1, Rule.OR_R2):
        part = phi.left if rule == Rule.OR_R1 else phi.right
        return _expect(prem[0].conclusion, rest, part, "前提")

    if rule in (Rule.ALL_L, Rule.EX_R):
        t = d.term
        if t is None:
            return f"{rule.symbol} 缺少项 t"
        if not term_admissible(t, s, policy):
            return f"边条件 (i)：项 {t} 不在结论中出现"
        instance = instantiate(phi, t)
        if rule == Rule.ALL_L:
            return _expect(prem[0].conclusion, rest + (instance,), delta, "前提")
        return _expect(prem[0].conclusion, rest, instance, "前提")
    if rule in (Rule.ALL_R, Rule.EX_L):
        y = d.eigenvariable
        if y is None:
            return f"{rule.symbol} 缺少本征变元"
        if y in s.free:
            return f"边条件 (ii)：本征变元 {y} 在结论中自由出现"
        instance = instantiate(phi, y)
        if rule == Rule.ALL_R:
            return _expect(prem[0].conclusion, rest, instance, "前提")
        return _expect(prem[0].conclusion, rest + (instance,), delta, "前提")
    return f"未知规则 {rule}"


def check_derivation(
    d: Derivation,
    calculus: Calculus = Calculus.FLE,
    policy: TermPolicy = TermPolicy.ANY_OCCURRENCE,
) -> DerivationCheck:
    """逐节点检查（先序），报告第一个违规节点的路径与原因"""
    calculus = Calculus(calculus)
    for path, node in d.walk():
        try:
            reason = check_node(node, calculus, policy)
        except (FormulaError, AttributeError) as exc:
            reason = f"节点数据无效: {exc}"
        if reason is not None:
            return DerivationCheck(ok=False, path=list(path), rule=node.rule.value, reason=reason)
    return DerivationCheck(ok=True)


# ---------- 前向构造 ----------

def _calculus_for(rule: Rule) -> Calculus:
    return Calculus.FLEW if rule == Rule.W else Calculus.FLEC if rule == Rule.C else Calculus.FLE


def derive(
    rule: Rule,
    premises: Sequence[Derivation] = (),
    *,
    principal: Optional[Formula] = None,
    term: Optional[Variable] = None,
    eigenvariable: Optional[Variable] = None,
    weaken: Sequence[Formula] = (),
    weaken_succedent: Optional[Formula] = None,
    contract: Sequence[Formula] = (),
    policy: TermPolicy = TermPolicy.ANY_OCCURRENCE,
) -> Derivation:
    """由前提与规则数据计算结论并做局部检查

    Args:
        rule: 规则
        premises: 前提推导
        principal: 主公式（左规则、⇒∨ᵢ、⇒∃、⇒∀ 与 id 需要）
        term: (∀⇒)/(⇒∃) 的项
        eigenvariable: (⇒∀)/(∃⇒) 的本征变元
        weaken: (w) 添加到前件的公式
        weaken_succedent: (w) 添加的后件
        contract: (c) 中被收缩的 Γ₂

    Returns:
        Derivation: 通过局部检查的新节点
    """
    rule = Rule(rule)
    prem = tuple(premises)
    try:
        conclusion = _conclusion(rule, prem, principal, term, eigenvariable, weaken, weaken_succedent, contract)
    except (ValueError, IndexError, AttributeError) as exc:
        raise DerivationError(f"无法构造 {rule.symbol}: {exc}") from exc
    if principal is None:
        if rule in RIGHT_RULES:
            principal = conclusion.succedent
        elif rule == Rule.ID:
            principal = conclusion.succedent
    node = Derivation(conclusion, rule, prem, principal, term, eigenvariable)
    reason = check_node(node, _calculus_for(rule), policy)
    if reason is not None:
        raise DerivationError(f"{rule.symbol}: {reason}")
    return node


def _need(value, what: str):
    if value is None:
        raise ValueError(f"缺少{what}")
    return value


def _conclusion(rule, prem, principal, term, eigen, weaken, weaken_succedent, contract) -> Sequent:
    if rule == Rule.ID:
        phi = _need(principal, "主公式")
        return Sequent((phi,), phi)
    if rule == Rule.F_L:
        return Sequent((F,), None)
    if rule == Rule.E_R:
        return Sequent((), E)
    if not prem:
        raise ValueError("缺少前提")
    p = prem[0].conclusion
    if rule == Rule.E_L:
        return Sequent(p.antecedent + (E,), p.succedent)
    if rule == Rule.F_R:
        if p.succedent is not None:
            raise ValueError("⇒f 的前提后件必须为空")
        return Sequent(p.antecedent, F)
    if rule == Rule.IMP_L:
        phi = _need(principal, "主公式")
        q = prem[1].conclusion
        return Sequent(p.antecedent + remove_one(q.antecedent, phi.right) + (phi,), q.succedent)
    if rule == Rule.IMP_R:
        phi = _need(principal, "主公式")
        return Sequent(remove_one(p.antecedent, phi.left), phi)
    if rule == Rule.PROD_L:
        phi = _need(principal, "主公式")
        rest = remove_one(remove_one(p.antecedent, phi.left), phi.right)
        return Sequent(rest + (phi,), p.succedent)
    if rule == Rule.PROD_R:
        q = prem[1].conclusion
        return Sequent(p.antecedent + q.antecedent, Binary(Op.PROD, p.succedent, q.succedent))
    if rule in (Rule.AND_L1, Rule.AND_L2):
        phi = _need(principal, "主公式")
        part = phi.left if rule == Rule.AND_L1 else phi.right
        return Sequent(remove_one(p.antecedent, part) + (phi,), p.succedent)
    if rule == Rule.AND_R:
        q = prem[1].conclusion
        return Sequent(p.antecedent, Binary(Op.AND, p.succedent, q.succedent))
    if rule == Rule.OR_L:
        phi = _need(principal, "主公式")
        return Sequent(remove_one(p.antecedent, phi.left) + (phi,), p.succedent)
    if rule in (Rule.OR_R1, Rule.OR_R2):
        return Sequent(p.antecedent, _need(principal, "主公式"))
    if rule == Rule.ALL_L:
        phi = _need(principal, "主公式")
        instance = instantiate(phi, _need(term, "项 t"))
        return Sequent(remove_one(p.antecedent, instance) + (phi,), p.succedent)
    if rule == Rule.EX_R:
        return Sequent(p.antecedent, _need(principal, "主公式"))
    if rule == Rule.ALL_R:
        y = _need(eigen, "本征变元")
        phi = principal if principal is not None else forall(abstract(p.succedent, y))
        return Sequent(p.antecedent, phi)
    if rule == Rule.EX_L:
        phi = _need(principal, "主公式")
        instance = instantiate(phi, _need(eigen, "本征变元"))
        return Sequent(remove_one(p.antecedent, instance) + (phi,), p.succedent)
    if rule == Rule.W:
        succedent = p.succedent
        if weaken_succedent is not None:
            if succedent is not None:
                raise ValueError("(w) 的后件最多一个公式")
            succedent = weaken_succedent
        return Sequent(p.antecedent + tuple(weaken), succedent)
    if rule == Rule.C:
        rest = difference(p.antecedent, contract)
        if rest is None:
            raise ValueError("(c) 的收缩公式不在前提中")
        return Sequent(rest, p.succedent)
    raise ValueError(f"未知规则 {rule}")


# ---------- 重命名 ----------

def variables_of(d: Derivation) -> set:
    """推导中出现的全部变元：各节点的自由变元、项与本征变元"""
    found = set()
    for _, node in d.walk():
        found |= node.conclusion.free
        found |= {v for v in (node.term, node.eigenvariable) if v is not None}
    return found


def _rename_formula(phi: Optional[Formula], source: Variable, target: Variable) -> Optional[Formula]:
    return None if phi is None else substitute(phi, source, target)


def _rename(d: Derivation, source: Variable, target: Variable) -> Derivation:
    if source not in d.conclusion.free:
        return d
    if d.eigenvariable == target:
        raise DerivationError(f"{target} 在推导中用作本征变元，不能作为重命名目标")
    s = d.conclusion
    conclusion = Sequent(
        tuple(substitute(phi, source, target) for phi in s.antecedent),
        _rename_formula(s.succedent, source, target),
    )
    return Derivation(
        conclusion,
        d.rule,
        tuple(_rename(p, source, target) for p in d.premises),
        _rename_formula(d.principal, source, target),
        target if d.term == source else d.term,
        d.eigenvariable,
    )


def rename_derivation(
    d: Derivation,
    steps: Sequence[Tuple[Variable, Variable]],
    calculus: Optional[Calculus] = None,
    policy: TermPolicy = TermPolicy.ANY_OCCURRENCE,
) -> Derivation:
    """依次对自由出现做代换，例如 [(x, z), (y, x)]

    代换只下行到源变元仍在结论中自由出现的子树。
    目标变元（x 除外）必须在整个推导中未出现；x 作为目标时不得在结论中自由出现。
    """
    for source, target in steps:
        if source == target:
            continue
        if target == X:
            if X in d.conclusion.free:
                raise DerivationError("x 在结论中自由出现，不能作为重命名目标")
        elif target in variables_of(d):
            raise DerivationError(f"{target} 在推导中已出现，不是新变元")
        try:
            d = _rename(d, source, target)
        except FormulaError as exc:
            raise DerivationError(f"重命名 {source} ↦ {target} 失败: {exc}") from exc
    check = check_derivation(d, calculus or calculus_of(d), policy)
    if not check.ok:
        raise DerivationError(f"重命名后的推导不正确: 路径 {check.path}, {check.reason}")
    return d


# ---------- 序列化 ----------

def to_text(d: Derivation, ascii_only: bool = False, indent: str = "  ") -> str:
    """缩进树文本，每行一个节点：[规则] 结论 {规则数据}"""
    lines: List[str] = []
    for path, node in d.walk():
        tag = node.rule.value if ascii_only else node.rule.symbol
        data = []
        if node.term is not None:
            data.append(f"t={node.term}")
        if node.eigenvariable is not None:
            data.append(f"y={node.eigenvariable}")
        extra = f"  {{{', '.join(data)}}}" if data else ""
        lines.append(f"{indent * len(path)}[{tag}] {node.conclusion.render(ascii_only)}{extra}")
    return "\n".join(lines)


def _fmt(phi: Optional[Formula]) -> Optional[str]:
    return None if phi is None else render(phi, ascii_only=True)


def to_dict(d: Derivation) -> Dict[str, Any]:
    """与 Derivation 结构对应的 JSON 对象，公式为规范 ASCII 文本"""
    return {
        "rule": d.rule.value,
        "conclusion": {
            "antecedent": [_fmt(phi) for phi in d.conclusion.antecedent],
            "succedent": _fmt(d.conclusion.succedent),
        },
        "principal": _fmt(d.principal),
        "term": None if d.term is None else str(d.term),
        "eigenvariable": None if d.eigenvariable is None else str(d.eigenvariable),
        "premises": [to_dict(p) for p in d.premises],
    }


def derivation_from_dict(data: Dict[str, Any]) -> Derivation:
    """to_dict 的逆；不做规则检查"""
    try:
        conclusion = data["conclusion"]
        succedent = conclusion.get("succedent")
        return Derivation(
            Sequent(
                tuple(parse_fo(text) for text in conclusion.get("antecedent", [])),
                parse_fo(succedent) if succedent else None,
            ),
            Rule(data["rule"]),
            tuple(derivation_from_dict(p) for p in data.get("premises", [])),
            parse_fo(data["principal"]) if data.get("principal") else None,
            parse_variable(data["term"]) if data.get("term") else None,
            parse_variable(data["eigenvariable"]) if data.get("eigenvariable") else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MonolatError):
            raise
        raise DerivationError(f"推导 JSON 格式错误: {exc}") from exc


# ---------- 随机推导 ----------

LOGICAL_RULES = (
    Rule.E_L, Rule.F_R, Rule.IMP_L, Rule.IMP_R, Rule.PROD_L, Rule.PROD_R,
    Rule.AND_L1, Rule.AND_L2, Rule.AND_R, Rule.OR_L, Rule.OR_R1, Rule.OR_R2,
    Rule.ALL_L, Rule.ALL_R, Rule.EX_L, Rule.EX_R,
)


class _RandomBuilder:
    """前向随机构造：每次选一条规则，不适用时退回到前提本身"""

    def __init__(self, calculus: Calculus, rng: random.Random, n_preds: int, variables: Sequence[Variable]):
        self.calculus = Calculus(calculus)
        self.rng = rng
        self.n_preds = n_preds
        self.variables = tuple(variables)
        self.rules = list(LOGICAL_RULES)
        if self.calculus == Calculus.FLEW:
            self.rules.append(Rule.W)
        if self.calculus == Calculus.FLEC:
            self.rules.append(Rule.C)

    def atom(self) -> Formula:
        return Atom(self.rng.randrange(self.n_preds), self.rng.choice(self.variables))

    def side_formula(self) -> Formula:
        return random_fo(self.rng, 1, self.n_preds, self.variables, constants=False)

    def leaf(self) -> Derivation:
        roll = self.rng.random()
        if roll < 0.1:
            return derive(Rule.E_R)
        if roll < 0.15:
            return derive(Rule.F_L)
        return derive(Rule.ID, principal=self.atom())

    def build(self, depth: int) -> Derivation:
        if depth <= 0:
            return self.leaf()
        rule = self.rng.choice(self.rules)
        premise = self.build(depth - 1)
        try:
            return self.apply(rule, premise, depth)
        except DerivationError:
            return premise

    def apply(self, rule: Rule, p: Derivation, depth: int) -> Derivation:
        rng = self.rng
        s = p.conclusion
        gamma, delta = list(s.antecedent), s.succedent
        if rule == Rule.E_L:
            return derive(rule, [p], principal=E)
        if rule == Rule.F_R:
            return derive(rule, [p])
        if rule == Rule.IMP_R:
            if not gamma or delta is None:
                raise DerivationError("⇒→ 不适用")
            phi = rng.choice(gamma)
            return derive(rule, [p], principal=Binary(Op.IMP, phi, delta))
        if rule == Rule.PROD_L:
            if len(gamma) < 2:
                raise DerivationError("·⇒ 不适用")
            phi, psi = rng.sample(gamma, 2)
            return derive(rule, [p], principal=Binary(Op.PROD, phi, psi))
        if rule in (Rule.AND_L1, Rule.AND_L2):
            if not gamma:
                raise DerivationError("∧⇒ 不适用")
            phi, other = rng.choice(gamma), self.side_formula()
            pair = (phi, other) if rule == Rule.AND_L1 else (other, phi)
            return derive(rule, [p], principal=Binary(Op.AND, *pair))
        if rule in (Rule.OR_R1, Rule.OR_R2):
            if delta is None:
                raise DerivationError("⇒∨ 不适用")
            other = self.side_formula()
            pair = (delta, other) if rule == Rule.OR_R1 else (other, delta)
            return derive(rule, [p], principal=Binary(Op.OR, *pair))
        if rule == Rule.PROD_R:
            q = self.build(depth - 1)
            return derive(rule, [p, q])
        if rule == Rule.IMP_L:
            q = self.build(depth - 1)
            if p.conclusion.succedent is None or not q.conclusion.antecedent:
                raise DerivationError("→⇒ 不适用")
            psi = rng.choice(q.conclusion.antecedent)
            return derive(rule, [p, q], principal=Binary(Op.IMP, p.conclusion.succedent, psi))
        if rule == Rule.AND_R:
            if delta is None:
                raise DerivationError("⇒∧ 不适用")
            q = p if rng.random() < 0.5 else derive(Rule.OR_R1, [p], principal=Binary(Op.OR, delta, self.side_formula()))
            return derive(rule, [p, q])
        if rule == Rule.OR_L:
            if not gamma:
                raise DerivationError("∨⇒ 不适用")
            phi = rng.choice(gamma)
            if rng.random() < 0.5:
                q, psi = p, phi
            else:
                psi = Binary(Op.AND, phi, self.side_formula())
                q = derive(Rule.AND_L1, [p], principal=psi)
            return derive(rule, [p, q], principal=Binary(Op.OR, phi, psi))
        if rule in (Rule.ALL_L, Rule.EX_L):
            if not gamma:
                raise DerivationError("量词规则不适用")
            theta = rng.choice(gamma)
            kind = "all" if rule == Rule.ALL_L else "ex"
            if rule == Rule.ALL_L:
                t = rng.choice(sorted(theta.free, key=str)) if theta.free else X
                if len(theta.free - {t}):
                    raise DerivationError("∀⇒ 不适用")
                return derive(rule, [p], principal=Quant(kind, abstract(theta, t)), term=t)
            y = _single_free(theta)
            return derive(rule, [p], principal=Quant(kind, abstract(theta, y)), eigenvariable=y)
        if rule in (Rule.ALL_R, Rule.EX_R):
            if delta is None:
                raise DerivationError("量词规则不适用")
            kind = "all" if rule == Rule.ALL_R else "ex"
            if rule == Rule.EX_R:
                t = rng.choice(sorted(delta.free, key=str)) if delta.free else X
                if len(delta.free - {t}):
                    raise DerivationError("⇒∃ 不适用")
                return derive(rule, [p], principal=Quant(kind, abstract(delta, t)), term=t)
            y = _single_free(delta)
            return derive(rule, [p], principal=Quant(kind, abstract(delta, y)), eigenvariable=y)
        if rule == Rule.W:
            if delta is None and rng.random() < 0.3:
                return derive(rule, [p], weaken_succedent=self.atom())
            return derive(rule, [p], weaken=[self.atom()])
        if rule == Rule.C:
            doubled = derive(Rule.PROD_R, [p, p]) if delta is not None else p
            if doubled is p:
                raise DerivationError("(c) 不适用")
            return derive(rule, [doubled], contract=p.conclusion.antecedent)
        raise DerivationError(f"未知规则 {rule}")


def _single_free(theta: Formula) -> Variable:
    """本征变元：公式唯一的自由变元；闭公式取 x"""
    if len(theta.free) > 1:
        raise DerivationError("本征变元不唯一")
    return next(iter(theta.free), X)


def random_derivation(
    calculus: Calculus,
    rng: random.Random,
    depth: int,
    n_preds: int = 2,
    variables: Sequence[Variable] = (X, xi(0), xi(1)),
) -> Derivation:
    """随机生成一棵正确的推导，用作插值性质测试的语料"""
    return _RandomBuilder(calculus, rng, n_preds, variables).build(depth)
