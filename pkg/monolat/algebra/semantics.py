"""
语义：模态赋值、A-结构与两者之间的转换

模态公式在 ModalExpansion（或无模态的 FiniteAlgebra）中同态求值；
一阶公式在 A-结构中逐世界求值，量词取论域上的有限交/并。
批量求值器把赋值或解释放在数组的前导轴上，供后承枚举使用。
"""
from __future__ import annotations

from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from monolat.core.exceptions import AlgebraError, FormulaError
from monolat.algebra.finite import FiniteAlgebra
from monolat.algebra.modal import ModalExpansion, full_functional
from monolat.syntax.formulas import (
    X, Atom, Binary, Const, Equation, Formula, Modal, PropVar, Quant,
)

AlgebraLike = Union[ModalExpansion, FiniteAlgebra]


def base_of(algebra: AlgebraLike) -> FiniteAlgebra:
    return algebra.base if isinstance(algebra, ModalExpansion) else algebra


def _modal_table(algebra: AlgebraLike, kind: str) -> np.ndarray:
    if not isinstance(algebra, ModalExpansion):
        raise AlgebraError(f"{algebra.name} 没有 □/◇ 表，不能求值模态公式")
    return algebra.box if kind == "box" else algebra.diamond


class Assignment:
    """命题变元赋值：有限支撑，其余变元取默认元"""

    def __init__(self, values: Optional[Mapping[int, int]] = None, default: Optional[int] = None):
        self.values: Dict[int, int] = {int(k): int(v) for k, v in (values or {}).items()}
        self.default = default

    def get(self, index: int, algebra: AlgebraLike) -> int:
        base = base_of(algebra)
        value = self.values.get(index)
        if value is None:
            value = self.default if self.default is not None else base.default_element
        if not 0 <= value < base.size:
            raise AlgebraError(f"p{index} 的值 {value} 越界")
        return value

    def to_dict(self) -> Dict[str, int]:
        return {f"p{k}": v for k, v in sorted(self.values.items())}

    def __eq__(self, other) -> bool:
        return isinstance(other, Assignment) and self.values == other.values and self.default == other.default

    def __repr__(self) -> str:
        return f"Assignment({self.to_dict()})"


def eval_modal(algebra: AlgebraLike, assignment: Assignment, alpha: Formula) -> int:
    """同态求值"""
    base = base_of(algebra)
    if isinstance(alpha, Const):
        return base.const(alpha.name)
    if isinstance(alpha, PropVar):
        return assignment.get(alpha.index, algebra)
    if isinstance(alpha, Binary):
        left = eval_modal(algebra, assignment, alpha.left)
        right = eval_modal(algebra, assignment, alpha.right)
        return int(base.op(alpha.op.value)[left, right])
    if isinstance(alpha, Modal):
        return int(_modal_table(algebra, alpha.kind)[eval_modal(algebra, assignment, alpha.body)])
    raise FormulaError(f"不是模态公式: {alpha}")


def eval_modal_batch(
    algebra: AlgebraLike,
    alpha: Formula,
    columns: Mapping[int, np.ndarray],
    batch: int,
) -> np.ndarray:
    """一次求值一批赋值；columns[i] 是 p_i 在各赋值下的值"""
    base = base_of(algebra)
    cache: Dict[Formula, np.ndarray] = {}

    def go(phi: Formula) -> np.ndarray:
        if phi in cache:
            return cache[phi]
        if isinstance(phi, Const):
            out = np.full(batch, base.const(phi.name), dtype=np.int64)
        elif isinstance(phi, PropVar):
            out = columns.get(phi.index)
            if out is None:
                out = np.full(batch, base.default_element, dtype=np.int64)
        elif isinstance(phi, Binary):
            out = base.op(phi.op.value)[go(phi.left), go(phi.right)]
        elif isinstance(phi, Modal):
            out = _modal_table(algebra, phi.kind)[go(phi.body)]
        else:
            raise FormulaError(f"不是模态公式: {phi}")
        cache[phi] = out
        return out

    return go(alpha)


# ---------- A-结构 ----------

class Structure:
    """A-结构 ⟨A, S, I⟩：论域为 {0,…,size−1}，I(P_i) 是长度为 size 的取值表"""

    def __init__(
        self,
        base: FiniteAlgebra,
        size: int,
        interpretation: Mapping[int, Sequence[int]],
        name: Optional[str] = None,
    ):
        if size < 1:
            raise AlgebraError("结构的论域必须非空")
        self.base = base
        self.size = size
        self.interpretation: Dict[int, np.ndarray] = {}
        for pred, values in interpretation.items():
            arr = np.asarray(values, dtype=np.int64)
            if arr.shape != (size,):
                raise AlgebraError(f"I(P{pred}) 的长度必须为 {size}")
            if arr.min() < 0 or arr.max() >= base.size:
                raise AlgebraError(f"I(P{pred}) 的取值越界")
            arr.setflags(write=False)
            self.interpretation[int(pred)] = arr
        self.name = name or f"{base.name}-structure"

    def to_dict(self) -> Dict[str, list]:
        return {f"P{k}": v.tolist() for k, v in sorted(self.interpretation.items())}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Structure):
            return False
        return (
            self.base is other.base
            and self.size == other.size
            and self.interpretation.keys() == other.interpretation.keys()
            and all(np.array_equal(v, other.interpretation[k]) for k, v in self.interpretation.items())
        )

    def __repr__(self) -> str:
        return f"Structure({self.base.name}, |S|={self.size}, {self.to_dict()})"


def _reduce(table: np.ndarray, values: np.ndarray) -> np.ndarray:
    """沿最后一轴做 ∧ 或 ∨ 的折叠"""
    acc = values[..., 0]
    for k in range(1, values.shape[-1]):
        acc = table[acc, values[..., k]]
    return acc


def eval_fo_batch(
    base: FiniteAlgebra,
    phi: Formula,
    interpretation: Mapping[int, np.ndarray],
    shape: Tuple[int, int],
) -> np.ndarray:
    """在一批结构上求值 Fm¹ 公式，返回形状 (batch, |S|)，最后一轴是世界"""
    batch, worlds = shape

    def go(psi: Formula) -> np.ndarray:
        if isinstance(psi, Const):
            return np.full(shape, base.const(psi.name), dtype=np.int64)
        if isinstance(psi, Atom):
            if psi.var != X:
                raise FormulaError(f"公式不在 Fm¹ 中：含自由变元 {psi.var}")
            if psi.pred not in interpretation:
                raise FormulaError(f"谓词 P{psi.pred} 未被解释")
            return np.broadcast_to(interpretation[psi.pred], shape)
        if isinstance(psi, Binary):
            return base.op(psi.op.value)[go(psi.left), go(psi.right)]
        if isinstance(psi, Quant):
            table = base.meet if psi.kind == "all" else base.join
            folded = _reduce(table, go(psi.body))
            return np.repeat(folded[:, None], worlds, axis=1)
        raise FormulaError(f"不是一阶公式: {psi}")

    return go(phi)


def eval_fo_vector(structure: Structure, phi: Formula) -> np.ndarray:
    """⟦φ⟧^S_u 对所有 u 的取值"""
    interpretation = {k: v[None, :] for k, v in structure.interpretation.items()}
    return eval_fo_batch(structure.base, phi, interpretation, (1, structure.size))[0]


def eval_fo(structure: Structure, world: int, phi: Formula) -> int:
    """⟦φ⟧^S_u"""
    if not 0 <= world < structure.size:
        raise AlgebraError(f"世界 {world} 不在论域中")
    return int(eval_fo_vector(structure, phi)[world])


def holds_in_structure(structure: Structure, equation: Equation) -> bool:
    """S ⊨ φ ≈ ψ：在每个世界取值相同"""
    return bool(np.array_equal(eval_fo_vector(structure, equation.lhs), eval_fo_vector(structure, equation.rhs)))


def holds_in_algebra(algebra: AlgebraLike, assignment: Assignment, equation: Equation) -> bool:
    return eval_modal(algebra, assignment, equation.lhs) == eval_modal(algebra, assignment, equation.rhs)


# ---------- 结构 ↔ 赋值 ----------

def structure_to_evaluation(structure: Structure) -> Tuple[ModalExpansion, Assignment]:
    """S ↦ (A^S, p_i ↦ I(P_i))"""
    M = full_functional(structure.base, structure.size)
    values = {pred: M.encode(vals) for pred, vals in structure.interpretation.items()}
    return M, Assignment(values)


def evaluation_to_structure(
    M: ModalExpansion,
    assignment: Assignment,
    preds: Optional[Iterable[int]] = None,
) -> Structure:
    """全函数代数上的赋值 ↦ 结构：I(P_i)(u) = v(p_i)(u)"""
    if not M.is_functional_form:
        raise AlgebraError(f"{M.name} 不是全函数代数形式，无法还原结构")
    indices = sorted(set(preds) if preds is not None else assignment.values)
    interpretation = {i: M.tuples[assignment.get(i, M)] for i in indices}
    return Structure(M.factor, M.worlds, interpretation)
