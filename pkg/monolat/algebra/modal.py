"""
模态扩张 ⟨A, □, ◇⟩ 与相对完备子代数之间的对应

包括 m-格公理检查、□A 子论域、伴随模态、全函数代数 A^W，
以及模态扩张的两种独立枚举。
"""
from __future__ import annotations

import itertools
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from monolat.config.settings import settings
from monolat.core.exceptions import AlgebraError, BudgetExceeded
from monolat.algebra.finite import FiniteAlgebra, check_fle, check_lattice
from monolat.schemas.models import AlgebraSpec, AxiomReport, AxiomResult, SubuniverseReport
from monolat.utils.logger import logger


class ModalExpansion:
    """m-L-格候选：基代数加一元表 □、◇

    全函数代数额外记录因子 factor、世界数 worlds 与元素对应的函数元组。
    """

    def __init__(
        self,
        base: FiniteAlgebra,
        box: Sequence[int],
        diamond: Sequence[int],
        factor: Optional[FiniteAlgebra] = None,
        worlds: Optional[int] = None,
        name: Optional[str] = None,
    ):
        self.base = base
        self.box = np.asarray(box, dtype=np.int64)
        self.diamond = np.asarray(diamond, dtype=np.int64)
        for label, table in (("box", self.box), ("diamond", self.diamond)):
            if table.shape != (base.size,):
                raise AlgebraError(f"{label} 表长度必须为 {base.size}")
            if table.min() < 0 or table.max() >= base.size:
                raise AlgebraError(f"{label} 表项越界")
            table.setflags(write=False)
        self.factor = factor
        self.worlds = worlds
        self.name = name or base.name
        self._tuples: Optional[np.ndarray] = None

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def is_functional_form(self) -> bool:
        return self.factor is not None and self.worlds is not None

    @property
    def tuples(self) -> np.ndarray:
        """全函数代数中元素 i 对应的函数元组（字典序编码）"""
        if not self.is_functional_form:
            raise AlgebraError(f"{self.name} 不是全函数代数形式")
        if self._tuples is None:
            self._tuples = function_tuples(self.factor.size, self.worlds)
        return self._tuples

    def encode(self, values: Sequence[int]) -> int:
        """函数元组 → 元素下标"""
        if not self.is_functional_form:
            raise AlgebraError(f"{self.name} 不是全函数代数形式")
        return encode_tuple(values, self.factor.size)

    def table_key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return tuple(self.box.tolist()), tuple(self.diamond.tolist())

    def to_spec(self) -> AlgebraSpec:
        spec = self.base.to_spec()
        spec.box = self.box.tolist()
        spec.diamond = self.diamond.tolist()
        spec.name = self.name
        if self.is_functional_form:
            spec.worlds = self.worlds
            spec.factor = self.factor.to_spec()
        return spec

    @classmethod
    def from_spec(cls, spec: AlgebraSpec) -> "ModalExpansion":
        if spec.box is None or spec.diamond is None:
            raise AlgebraError("代数文件缺少 box/diamond")
        factor = FiniteAlgebra.from_spec(spec.factor) if spec.factor is not None else None
        return cls(FiniteAlgebra.from_spec(spec), spec.box, spec.diamond, factor, spec.worlds, spec.name)

    def __repr__(self) -> str:
        return f"ModalExpansion({self.name}, box={self.box.tolist()}, diamond={self.diamond.tolist()})"


# ---------- 函数元组编码 ----------

def function_tuples(n: int, worlds: int) -> np.ndarray:
    """W → A 的全部函数，按字典序排列，形状 (n^W, W)"""
    return np.array(list(itertools.product(range(n), repeat=worlds)), dtype=np.int64).reshape(-1, worlds)


def encode_tuple(values: Sequence[int], n: int) -> int:
    index = 0
    for v in values:
        index = index * n + int(v)
    return index


def _encode_rows(rows: np.ndarray, n: int) -> np.ndarray:
    worlds = rows.shape[-1]
    powers = n ** np.arange(worlds - 1, -1, -1, dtype=np.int64)
    return (rows * powers).sum(axis=-1)


# ---------- 公理检查 ----------

def _unary_result(name, equation, primitive, lhs, rhs, var_names=("x",)) -> AxiomResult:
    diff = np.argwhere(lhs != rhs)
    if diff.size == 0:
        return AxiomResult(name=name, equation=equation, primitive=primitive, passed=True)
    w = tuple(int(i) for i in diff[0])
    witness = {v: w[k] for k, v in enumerate(var_names)} if w else {}
    return AxiomResult(
        name=name, equation=equation, primitive=primitive, passed=False,
        witness=witness, values=[int(lhs[w]), int(rhs[w])],
    )


def _star_laws(M: ModalExpansion, modal: np.ndarray, symbol: str, primitive: bool) -> List[AxiomResult]:
    """(⋆_□)/(⋆_◇)：对签名中每个运算与常元"""
    A = M.base
    results = []
    for op_name, arity in A.signature:
        if arity == 0:
            c = A.const(op_name)
            lhs, rhs = np.array([modal[c]]), np.array([c])
            equation = f"{symbol}{op_name} ≈ {op_name}"
            result = _unary_result(f"star_{symbol}[{op_name}]", equation, primitive, lhs, rhs, ())
        else:
            inner = A.op(op_name)[np.ix_(*([modal] * arity))]
            args = ", ".join(f"{symbol}x{i + 1}" for i in range(arity))
            equation = f"{symbol}{op_name}({args}) ≈ {op_name}({args})"
            names = tuple(f"x{i + 1}" for i in range(arity))
            result = _unary_result(f"star_{symbol}[{op_name}]", equation, primitive, modal[inner], inner, names)
        results.append(result)
    return results


def check_m_axioms(M: ModalExpansion) -> AxiomReport:
    """逐条检查 L1–L3（□、◇）与 ⋆_□，以及派生律 L4、L5、⋆_◇、L6

    L6 只在基代数通过 FL_e 检查时检查。派生律必须在原始公理全部成立时成立。
    """
    A = M.base
    b, d = M.box, M.diamond
    m, j, leq = A.meet, A.join, A.leq
    x = np.arange(A.size)
    gx, gy = np.indices((A.size, A.size))
    xy = ("x", "y")

    results = [
        _unary_result("L1_box", "□x ∧ x ≈ □x", True, m[b, x], b),
        _unary_result("L1_dia", "◇x ∨ x ≈ ◇x", True, j[d, x], d),
        _unary_result("L2_box", "□(x ∧ y) ≈ □x ∧ □y", True, b[m[gx, gy]], m[b[gx], b[gy]], xy),
        _unary_result("L2_dia", "◇(x ∨ y) ≈ ◇x ∨ ◇y", True, d[j[gx, gy]], j[d[gx], d[gy]], xy),
        _unary_result("L3_box", "□◇x ≈ ◇x", True, b[d], d),
        _unary_result("L3_dia", "◇□x ≈ □x", True, d[b], b),
    ]
    results += _star_laws(M, b, "□", True)

    # 派生律
    results += [
        _unary_result("L4_box", "□□x ≈ □x", False, b[b], b),
        _unary_result("L4_dia", "◇◇x ≈ ◇x", False, d[d], d),
        _unary_result("L5_box", "x ≤ y ⟹ □x ≤ □y", False, leq & ~leq[b[gx], b[gy]], np.zeros_like(leq), xy),
        _unary_result("L5_dia", "x ≤ y ⟹ ◇x ≤ ◇y", False, leq & ~leq[d[gx], d[gy]], np.zeros_like(leq), xy),
    ]
    results += _star_laws(M, d, "◇", False)
    if A.has_fle_signature and check_fle(A).passed:
        r = A.op("imp")
        results += [
            _unary_result("L6_box", "□(x → □y) ≈ ◇x → □y", False, b[r[gx, b[gy]]], r[d[gx], b[gy]], xy),
            _unary_result("L6_dia", "□(□x → y) ≈ □x → □y", False, b[r[b[gx], gy]], r[b[gx], b[gy]], xy),
        ]

    primitive_passed = all(res.passed for res in results if res.primitive)
    derived_passed = all(res.passed for res in results if not res.primitive)
    derived_consistent = derived_passed or not primitive_passed
    if not derived_consistent:
        logger.error(f"{M.name}: 原始公理成立但派生律失败")
    return AxiomReport(
        results=results,
        passed=primitive_passed and derived_passed,
        primitive_passed=primitive_passed,
        derived_consistent=derived_consistent,
    )


# ---------- □A 与相对完备子代数 ----------

def _relative_bounds(A: FiniteAlgebra, subset: Sequence[int]) -> Tuple[List[Optional[int]], List[Optional[int]]]:
    """对每个 a 计算 max{b∈A₀ | b≤a} 与 min{b∈A₀ | a≤b}，不存在时为 None"""
    members = sorted(set(int(s) for s in subset))
    leq = A.leq
    lower_max: List[Optional[int]] = []
    upper_min: List[Optional[int]] = []
    for a in range(A.size):
        below = [b for b in members if leq[b, a]]
        above = [b for b in members if leq[a, b]]
        lower_max.append(next((c for c in below if all(leq[b, c] for b in below)), None))
        upper_min.append(next((c for c in above if all(leq[c, b] for b in above)), None))
    return lower_max, upper_min


def box_image(M: ModalExpansion) -> SubuniverseReport:
    """□A：检查封闭性、□A = ◇A，以及 □a、◇a 为相对最大/最小元"""
    elements = sorted(set(int(v) for v in M.box))
    closed = M.base.is_closed(elements)
    same = set(elements) == set(int(v) for v in M.diamond)
    lower_max, upper_min = _relative_bounds(M.base, elements)
    box_is_max = all(lower_max[a] == int(M.box[a]) for a in range(M.size))
    diamond_is_min = all(upper_min[a] == int(M.diamond[a]) for a in range(M.size))
    passed = closed and same and box_is_max and diamond_is_min
    if not passed:
        logger.warning(f"{M.name}: □A 检查未通过（输入可能违反 m-格公理）")
    return SubuniverseReport(
        elements=elements,
        closed=closed,
        equals_diamond_image=same,
        box_is_max=box_is_max,
        diamond_is_min=diamond_is_min,
        passed=passed,
    )


def is_relatively_complete(A: FiniteAlgebra, subset: Sequence[int]) -> bool:
    """A₀ 是否相对完备：每个 a 的下方有最大元、上方有最小元"""
    if not A.is_closed(subset):
        raise AlgebraError(f"{sorted(set(subset))} 不是 {A.name} 的子论域")
    lower_max, upper_min = _relative_bounds(A, subset)
    return all(v is not None for v in lower_max) and all(v is not None for v in upper_min)


def adjoint_modalities(A: FiniteAlgebra, subset: Sequence[int]) -> ModalExpansion:
    """□₀a = max{b∈A₀ | b≤a}，◇₀a = min{b∈A₀ | a≤b}"""
    if not is_relatively_complete(A, subset):
        raise AlgebraError(f"{sorted(set(subset))} 在 {A.name} 中不是相对完备的")
    lower_max, upper_min = _relative_bounds(A, subset)
    members = ",".join(str(s) for s in sorted(set(subset)))
    return ModalExpansion(A, lower_max, upper_min, name=f"{A.name}[{members}]")


def correspondence_roundtrip(item: Union[ModalExpansion, Tuple[FiniteAlgebra, Sequence[int]]]) -> bool:
    """模态扩张 ↔ (A, A₀) 两个方向的往返是否还原输入"""
    if isinstance(item, ModalExpansion):
        report = check_m_axioms(item)
        if not report.primitive_passed:
            raise AlgebraError(f"{item.name} 不满足 m-格公理")
        image = box_image(item).elements
        again = adjoint_modalities(item.base, image)
        return again.table_key() == item.table_key()
    A, subset = item
    again = adjoint_modalities(A, subset)
    return box_image(again).elements == sorted(set(int(s) for s in subset))


# ---------- 全函数代数 ----------

def full_functional(A: FiniteAlgebra, worlds: int) -> ModalExpansion:
    """A^W：逐点运算，□f 为常函数 ⋀f，◇f 为常函数 ⋁f"""
    if worlds < 1:
        raise AlgebraError("W 必须非空")
    if not check_lattice(A).passed:
        raise AlgebraError(f"{A.name} 不是格")
    n = A.size
    total = n ** worlds
    if total > settings.MAX_ALGEBRA_SIZE:
        raise BudgetExceeded("MAX_ALGEBRA_SIZE", settings.MAX_ALGEBRA_SIZE, f"{A.name}^{worlds} 有 {total} 个元素")

    rows = function_tuples(n, worlds)
    ops = {}
    for op_name, table in A.ops.items():
        arity = table.ndim
        args = tuple(
            rows.reshape((1,) * k + (total,) + (1,) * (arity - 1 - k) + (worlds,))
            for k in range(arity)
        )
        ops[op_name] = _encode_rows(table[args], n)
    consts = {c: encode_tuple([v] * worlds, n) for c, v in A.consts.items()}

    low, high = rows[:, 0], rows[:, 0]
    for u in range(1, worlds):
        low = A.meet[low, rows[:, u]]
        high = A.join[high, rows[:, u]]
    box = _encode_rows(np.repeat(low[:, None], worlds, axis=1), n)
    diamond = _encode_rows(np.repeat(high[:, None], worlds, axis=1), n)

    labels = ["(" + ",".join(A.label(int(v)) for v in row) + ")" for row in rows]
    name = f"{A.name}^{worlds}"
    base = FiniteAlgebra(total, ops, consts, labels, name)
    logger.debug(f"构造全函数代数 {name}，{total} 个元素")
    M = ModalExpansion(base, box, diamond, factor=A, worlds=worlds, name=name)
    M._tuples = rows
    return M


# ---------- 枚举 ----------

def _require_lattice(A: FiniteAlgebra) -> None:
    report = check_lattice(A)
    if not report.passed:
        raise AlgebraError(f"{A.name} 不是格: {report.failures[0].law}")


def enumerate_modal_expansions(A: FiniteAlgebra, max_size: int = 12) -> List[ModalExpansion]:
    """经由相对完备子代数枚举全部模态扩张，子集按字典序"""
    _require_lattice(A)
    if A.size > max_size:
        raise BudgetExceeded("max_size", max_size, f"{A.name} 的子集过多")
    subsets = []
    for k in range(1, A.size + 1):
        subsets.extend(itertools.combinations(range(A.size), k))
    subsets.sort()
    expansions = []
    for subset in subsets:
        if A.is_closed(subset) and is_relatively_complete(A, subset):
            expansions.append(adjoint_modalities(A, subset))
    logger.debug(f"{A.name}: 经子代数枚举得到 {len(expansions)} 个模态扩张")
    return expansions


def _candidate_maps(n: int, keep: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    maps = function_tuples(n, n)
    return maps[keep(maps)]


def enumerate_raw_modal_expansions(A: FiniteAlgebra, max_size: int = 6) -> List[ModalExpansion]:
    """直接枚举 □/◇ 表：L1、L2 逐个过滤，L3 与 ⋆_□ 成对过滤"""
    _require_lattice(A)
    if A.size > max_size:
        raise BudgetExceeded("max_size", max_size, f"{A.name} 的一元表过多")
    n = A.size
    m, j, leq = A.meet, A.join, A.leq
    x = np.arange(n)
    gx, gy = np.indices((n, n))

    def box_ok(maps: np.ndarray) -> np.ndarray:
        l1 = leq[maps, x].all(axis=1)
        l2 = (maps[:, m[gx, gy]] == m[maps[:, gx], maps[:, gy]]).all(axis=(1, 2))
        return l1 & l2

    def dia_ok(maps: np.ndarray) -> np.ndarray:
        l1 = leq[x, maps].all(axis=1)
        l2 = (maps[:, j[gx, gy]] == j[maps[:, gx], maps[:, gy]]).all(axis=(1, 2))
        return l1 & l2

    boxes = _candidate_maps(n, box_ok)
    diamonds = _candidate_maps(n, dia_ok)
    found = []
    for b in boxes:
        for d in diamonds:
            if not (np.array_equal(b[d], d) and np.array_equal(d[b], b)):
                continue
            candidate = ModalExpansion(A, b, d, name=f"{A.name}<{b.tolist()},{d.tolist()}>")
            if all(res.passed for res in _star_laws(candidate, candidate.box, "□", True)):
                found.append(candidate)
    found.sort(key=lambda M: M.table_key())
    logger.debug(f"{A.name}: 直接枚举得到 {len(found)} 个模态扩张")
    return found
