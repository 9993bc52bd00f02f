"""
公式表示：模态命题语言 Fm_□ 与单变元一阶语言 Fm¹⁺_∀

两种语法共享常元与二元联结词节点；模态语言另有命题变元与 □/◇，
一阶语言另有原子 P_i(v) 与只约束 x 的量词 ∀x/∃x。
所有节点不可变，构造时即检查 Fm¹⁺ 的辖域条件。
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import FrozenSet, Optional, Tuple, Union

from monolat.core.exceptions import FormulaError


class Op(str, Enum):
    """二元联结词"""
    AND = "and"
    OR = "or"
    PROD = "prod"
    IMP = "imp"


UNICODE_OPS = {Op.AND: "∧", Op.OR: "∨", Op.PROD: "·", Op.IMP: "→"}
ASCII_OPS = {Op.AND: "/\\", Op.OR: "\\/", Op.PROD: "*", Op.IMP: "->"}

# 结合强度，越大越紧
PRECEDENCE = {Op.IMP: 1, Op.OR: 2, Op.AND: 3, Op.PROD: 4}
PREFIX_PRECEDENCE = 5
ATOM_PRECEDENCE = 6


@dataclass(frozen=True)
class Variable:
    """个体变元：index 为 None 表示唯一的约束变元 x，否则为 x_i"""
    index: Optional[int] = None

    @property
    def is_bound_symbol(self) -> bool:
        return self.index is None

    def __str__(self) -> str:
        return "x" if self.index is None else f"x{self.index}"


X = Variable()


def xi(i: int) -> Variable:
    """自由变元 x_i"""
    return Variable(i)


class Formula:
    """公式基类"""

    @cached_property
    def text(self) -> str:
        return render(self)

    @cached_property
    def sort_key(self) -> str:
        return render(self, ascii_only=True)

    @cached_property
    def free(self) -> FrozenSet[Variable]:
        return _free_vars(self)

    @cached_property
    def size(self) -> int:
        return _size(self)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True, eq=True)
class Const(Formula):
    """常元 e 或 f"""
    name: str

    def __post_init__(self):
        if self.name not in ("e", "f"):
            raise FormulaError(f"未知常元: {self.name}")


@dataclass(frozen=True, eq=True)
class PropVar(Formula):
    """命题变元 p_i"""
    index: int


@dataclass(frozen=True, eq=True)
class Binary(Formula):
    """二元联结词节点"""
    op: Op
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=True)
class Modal(Formula):
    """模态节点，kind 为 box 或 dia"""
    kind: str
    body: Formula

    def __post_init__(self):
        if self.kind not in ("box", "dia"):
            raise FormulaError(f"未知模态: {self.kind}")


@dataclass(frozen=True, eq=True)
class Atom(Formula):
    """一阶原子 P_i(v)"""
    pred: int
    var: Variable


@dataclass(frozen=True, eq=True)
class Quant(Formula):
    """量词节点 ∀x / ∃x，kind 为 all 或 ex；只约束 x"""
    kind: str
    body: Formula

    def __post_init__(self):
        if self.kind not in ("all", "ex"):
            raise FormulaError(f"未知量词: {self.kind}")
        stray = [v for v in self.body.free if v != X]
        if stray:
            names = ", ".join(sorted(str(v) for v in stray))
            raise FormulaError(f"变元 {names} 出现在量词辖域内")


E = Const("e")
F = Const("f")


# ---------- 构造助手 ----------

def meet(a: Formula, b: Formula) -> Binary:
    return Binary(Op.AND, a, b)


def join(a: Formula, b: Formula) -> Binary:
    return Binary(Op.OR, a, b)


def prod2(a: Formula, b: Formula) -> Binary:
    return Binary(Op.PROD, a, b)


def imp(a: Formula, b: Formula) -> Binary:
    return Binary(Op.IMP, a, b)


def box(a: Formula) -> Modal:
    return Modal("box", a)


def dia(a: Formula) -> Modal:
    return Modal("dia", a)


def forall(body: Formula) -> Quant:
    return Quant("all", body)


def exists(body: Formula) -> Quant:
    return Quant("ex", body)


# ---------- 变元 ----------

def _free_vars(phi: Formula) -> FrozenSet[Variable]:
    if isinstance(phi, Atom):
        return frozenset({phi.var})
    if isinstance(phi, Binary):
        return phi.left.free | phi.right.free
    if isinstance(phi, Quant):
        return phi.body.free - {X}
    if isinstance(phi, Modal):
        return phi.body.free
    return frozenset()


def _size(phi: Formula) -> int:
    if isinstance(phi, Binary):
        return 1 + phi.left.size + phi.right.size
    if isinstance(phi, (Quant, Modal)):
        return 1 + phi.body.size
    return 1


def free_vars(phi: Formula) -> FrozenSet[Variable]:
    """自由变元集合，x 被 ∀x/∃x 约束"""
    return phi.free


def is_sentence(phi: Formula) -> bool:
    """没有自由变元的公式"""
    return not phi.free


def in_fm1(phi: Formula) -> bool:
    """Fm¹：不含任何 x_i

    x_i 永远不在量词辖域内，因此其出现都是自由出现。
    """
    return all(v == X for v in phi.free)


def occurs(v: Variable, phi: Formula) -> bool:
    """v 是否在公式中出现（自由或约束）"""
    if v in phi.free:
        return True
    return v == X and has_quantifier(phi)


def has_quantifier(phi: Formula) -> bool:
    if isinstance(phi, Quant):
        return True
    if isinstance(phi, Binary):
        return has_quantifier(phi.left) or has_quantifier(phi.right)
    return False


def has_modality(phi: Formula) -> bool:
    if isinstance(phi, Modal):
        return True
    if isinstance(phi, Binary):
        return has_modality(phi.left) or has_modality(phi.right)
    return False


def kind_of(phi: Formula) -> Optional[str]:
    """公式所属语法：modal、fo，或仅由常元与联结词构成时为 None"""
    if isinstance(phi, (PropVar, Modal)):
        return "modal"
    if isinstance(phi, (Atom, Quant)):
        return "fo"
    if isinstance(phi, Binary):
        left, right = kind_of(phi.left), kind_of(phi.right)
        if left and right and left != right:
            raise FormulaError("模态公式与一阶公式混用")
        return left or right
    return None


def predicates(phi: Formula) -> FrozenSet[int]:
    """出现的谓词下标（模态公式为命题变元下标）"""
    if isinstance(phi, Atom):
        return frozenset({phi.pred})
    if isinstance(phi, PropVar):
        return frozenset({phi.index})
    if isinstance(phi, Binary):
        return predicates(phi.left) | predicates(phi.right)
    if isinstance(phi, (Quant, Modal)):
        return predicates(phi.body)
    return frozenset()


def substitute(phi: Formula, source: Variable, target: Variable) -> Formula:
    """把 source 的所有自由出现替换为 target（不允许变元捕获）"""
    if source == target or source not in phi.free:
        return phi
    return _subst(phi, source, target, in_scope=False)


def _subst(phi: Formula, source: Variable, target: Variable, in_scope: bool) -> Formula:
    if isinstance(phi, Atom):
        if phi.var != source:
            return phi
        if in_scope and target == X:
            raise FormulaError(f"代换 {source} ↦ {target} 会被量词捕获")
        return Atom(phi.pred, target)
    if isinstance(phi, Binary):
        return Binary(
            phi.op,
            _subst(phi.left, source, target, in_scope),
            _subst(phi.right, source, target, in_scope),
        )
    if isinstance(phi, Quant):
        if source == X:
            return phi
        return Quant(phi.kind, _subst(phi.body, source, target, True))
    return phi


def instantiate(quantified: Quant, t: Variable) -> Formula:
    """φ(t)：把量词体中的自由 x 替换为 t"""
    return substitute(quantified.body, X, t)


def abstract(phi: Formula, v: Variable) -> Formula:
    """φ(v) ↦ φ(x)，作为量词体使用"""
    return substitute(phi, v, X)


# ---------- 翻译 ----------

def star(phi: Formula) -> Formula:
    """一阶公式 → 模态公式：P_i(x) ↦ p_i，∀ ↦ □，∃ ↦ ◇"""
    if isinstance(phi, Atom):
        if phi.var != X:
            raise FormulaError(f"公式不在 Fm¹ 中：含自由变元 {phi.var}")
        return PropVar(phi.pred)
    if isinstance(phi, Const):
        return phi
    if isinstance(phi, Binary):
        return Binary(phi.op, star(phi.left), star(phi.right))
    if isinstance(phi, Quant):
        return Modal("box" if phi.kind == "all" else "dia", star(phi.body))
    raise FormulaError(f"不是一阶公式: {phi}")


def circle(alpha: Formula) -> Formula:
    """模态公式 → 一阶公式，star 的逆"""
    if isinstance(alpha, PropVar):
        return Atom(alpha.index, X)
    if isinstance(alpha, Const):
        return alpha
    if isinstance(alpha, Binary):
        return Binary(alpha.op, circle(alpha.left), circle(alpha.right))
    if isinstance(alpha, Modal):
        return Quant("all" if alpha.kind == "box" else "ex", circle(alpha.body))
    raise FormulaError(f"不是模态公式: {alpha}")


# ---------- 等式与理论 ----------

@dataclass(frozen=True)
class Equation:
    """等式 lhs ≈ rhs；φ ≤ ψ 以 φ∧ψ ≈ φ 存储"""
    lhs: Formula
    rhs: Formula

    def __post_init__(self):
        left, right = kind_of(self.lhs), kind_of(self.rhs)
        if left and right and left != right:
            raise FormulaError("等式两边必须来自同一语法")

    @classmethod
    def leq(cls, a: Formula, b: Formula) -> "Equation":
        return cls(meet(a, b), a)

    @property
    def kind(self) -> Optional[str]:
        return kind_of(self.lhs) or kind_of(self.rhs)

    def star(self) -> "Equation":
        return Equation(star(self.lhs), star(self.rhs))

    def circle(self) -> "Equation":
        return Equation(circle(self.lhs), circle(self.rhs))

    def render(self, ascii_only: bool = False) -> str:
        sym = "=" if ascii_only else "≈"
        return f"{render(self.lhs, ascii_only)} {sym} {render(self.rhs, ascii_only)}"

    def __str__(self) -> str:
        return self.render()


Theory = Tuple[Equation, ...]


# ---------- 打印 ----------

def _precedence(phi: Formula) -> int:
    if isinstance(phi, Binary):
        return PRECEDENCE[phi.op]
    if isinstance(phi, (Modal, Quant)):
        return PREFIX_PRECEDENCE
    return ATOM_PRECEDENCE


def render(phi: Formula, ascii_only: bool = False) -> str:
    """规范打印，只输出必要的括号"""
    if isinstance(phi, Const):
        return phi.name
    if isinstance(phi, PropVar):
        return f"p{phi.index}"
    if isinstance(phi, Atom):
        return f"P{phi.pred}({phi.var})"
    if isinstance(phi, Binary):
        level = PRECEDENCE[phi.op]
        left, right = render(phi.left, ascii_only), render(phi.right, ascii_only)
        lp, rp = _precedence(phi.left), _precedence(phi.right)
        if phi.op == Op.IMP:
            wrap_left, wrap_right = lp <= level, rp < level
        else:
            wrap_left, wrap_right = lp < level, rp <= level
        if wrap_left:
            left = f"({left})"
        if wrap_right:
            right = f"({right})"
        sym = (ASCII_OPS if ascii_only else UNICODE_OPS)[phi.op]
        return f"{left} {sym} {right}"
    if isinstance(phi, Modal):
        body = render(phi.body, ascii_only)
        if _precedence(phi.body) < PREFIX_PRECEDENCE:
            body = f"({body})"
        if ascii_only:
            return f"{phi.kind} {body}"
        return ("□" if phi.kind == "box" else "◇") + body
    if isinstance(phi, Quant):
        body = render(phi.body, ascii_only)
        if _precedence(phi.body) < PREFIX_PRECEDENCE:
            body = f"({body})"
        if ascii_only:
            return f"{'A' if phi.kind == 'all' else 'E'} x {body}"
        return f"{'∀' if phi.kind == 'all' else '∃'}x {body}"
    raise FormulaError(f"未知公式节点: {phi!r}")


AnyFormula = Union[Const, PropVar, Binary, Modal, Atom, Quant]
