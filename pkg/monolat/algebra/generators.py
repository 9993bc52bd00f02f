"""
代数生成器与电池

枚举顺序是确定的：先按规模，再按发现顺序；同构的代数只保留第一个。
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from monolat.core.exceptions import AlgebraError
from monolat.algebra.finite import FiniteAlgebra, check_fle
from monolat.algebra.modal import ModalExpansion, enumerate_modal_expansions
from monolat.schemas.models import FLeVariant
from monolat.utils.logger import logger


def chain(n: int, name: Optional[str] = None) -> FiniteAlgebra:
    """n 元链 0 < 1 < … < n−1，只带格运算"""
    if n < 1:
        raise AlgebraError("链的规模必须为正")
    idx = np.arange(n)
    return FiniteAlgebra(
        n,
        {"and": np.minimum.outer(idx, idx), "or": np.maximum.outer(idx, idx)},
        name=name or f"C{n}",
    )


def lukasiewicz(n: int) -> FiniteAlgebra:
    """n 元 Łukasiewicz 链：x·y = max(0, x+y−1)，x→y = min(1, 1−x+y)"""
    if n < 2:
        raise AlgebraError("Łukasiewicz 链至少两个元素")
    top = n - 1
    x, y = np.indices((n, n))
    ops = {
        "and": np.minimum(x, y),
        "or": np.maximum(x, y),
        "prod": np.maximum(0, x + y - top),
        "imp": np.minimum(top, top - x + y),
    }
    labels = [str(Fraction(k, top)) for k in range(n)]
    return FiniteAlgebra(n, ops, {"e": top, "f": 0}, labels, f"Ł{n}")


def boolean2() -> FiniteAlgebra:
    """两元布尔代数，· = ∧"""
    x, y = np.indices((2, 2))
    ops = {
        "and": np.minimum(x, y),
        "or": np.maximum(x, y),
        "prod": np.minimum(x, y),
        "imp": np.maximum(1 - x, y),
    }
    return FiniteAlgebra(2, ops, {"e": 1, "f": 0}, ["0", "1"], "B2")


def diamond() -> FiniteAlgebra:
    """菱形格 {⊥, a, b, ⊤}，a 与 b 不可比"""
    meet = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]]
    join = [[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]]
    return FiniteAlgebra(4, {"and": meet, "or": join}, labels=["⊥", "a", "b", "⊤"], name="M2")


def l3_example_expansion() -> ModalExpansion:
    """Ł₃ 上的模态扩张：□0 = □½ = ◇0 = 0，□1 = ◇½ = ◇1 = 1"""
    return ModalExpansion(lukasiewicz(3), box=[0, 0, 2], diamond=[0, 2, 2], name="Ł3□")


# ---------- 格的枚举 ----------

def _lattice_from_order(leq: np.ndarray) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """由偏序构造 ∧、∨ 表；不是格时返回 None"""
    n = len(leq)
    meet = np.zeros((n, n), dtype=np.int64)
    join = np.zeros((n, n), dtype=np.int64)
    for a, b in itertools.product(range(n), repeat=2):
        lower = [c for c in range(n) if leq[c, a] and leq[c, b]]
        upper = [c for c in range(n) if leq[a, c] and leq[b, c]]
        glb = [c for c in lower if all(leq[d, c] for d in lower)]
        lub = [c for c in upper if all(leq[c, d] for d in upper)]
        if not glb or not lub:
            return None
        meet[a, b], join[a, b] = glb[0], lub[0]
    return meet, join


@lru_cache(maxsize=None)
def _lattices_of_size(n: int) -> Tuple[FiniteAlgebra, ...]:
    """n 元格（同构意义下）；只考虑 a ≤ b ⟹ a ≤ b（下标）的自然标号偏序"""
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    found: Dict[bytes, FiniteAlgebra] = {}
    for mask in range(1 << len(pairs)):
        leq = np.eye(n, dtype=bool)
        for bit, (a, b) in enumerate(pairs):
            if mask >> bit & 1:
                leq[a, b] = True
        # 传递性
        if not np.array_equal((leq.astype(np.int64) @ leq.astype(np.int64)) > 0, leq):
            continue
        tables = _lattice_from_order(leq)
        if tables is None:
            continue
        candidate = FiniteAlgebra(n, {"and": tables[0], "or": tables[1]})
        key = candidate.canonical_key()
        if key not in found:
            found[key] = FiniteAlgebra(n, candidate.ops, name=f"L{n}.{len(found) + 1}")
    return tuple(found.values())


def all_lattices(max_n: int) -> List[FiniteAlgebra]:
    """规模 ≤ max_n 的全部格"""
    result: List[FiniteAlgebra] = []
    for n in range(1, max_n + 1):
        result.extend(_lattices_of_size(n))
    logger.debug(f"规模 ≤ {max_n} 的格: {len(result)} 个")
    return result


# ---------- FL_e 代数的枚举 ----------

def _residuated_monoids(lattice: FiniteAlgebra, unit: int):
    """lattice 上以 unit 为单位元、保并且吸收 ⊥ 的交换幺半群"""
    n = lattice.size
    bottom = lattice.bottom
    join, leq = lattice.join, lattice.leq
    others = [a for a in range(n) if a != unit]
    free_cells = [(a, b) for i, a in enumerate(others) for b in others[i:]]
    x, y, z = np.indices((n, n, n))
    for values in itertools.product(range(n), repeat=len(free_cells)):
        p = np.zeros((n, n), dtype=np.int64)
        p[unit, :] = np.arange(n)
        p[:, unit] = np.arange(n)
        for (a, b), v in zip(free_cells, values):
            p[a, b] = p[b, a] = v
        if (p[bottom, :] != bottom).any():
            continue
        if (p[x, join[y, z]] != join[p[x, y], p[x, z]]).any():
            continue
        if (p[p[x, y], z] != p[x, p[y, z]]).any():
            continue
        # 保并的有限格上剩余存在：a→c = ⋁{b | a·b ≤ c}
        imp = np.zeros((n, n), dtype=np.int64)
        for a, c in itertools.product(range(n), repeat=2):
            imp[a, c] = lattice.join_all([b for b in range(n) if leq[p[a, b], c]])
        yield p, imp


@lru_cache(maxsize=None)
def _fle_of_size(n: int) -> Tuple[FiniteAlgebra, ...]:
    found: Dict[bytes, FiniteAlgebra] = {}
    for lattice in _lattices_of_size(n):
        for unit in range(n):
            for prod, imp in _residuated_monoids(lattice, unit):
                for f in range(n):
                    ops = {"and": lattice.meet, "or": lattice.join, "prod": prod, "imp": imp}
                    candidate = FiniteAlgebra(n, ops, {"e": unit, "f": f})
                    key = candidate.canonical_key()
                    if key in found:
                        continue
                    if not check_fle(candidate).passed:
                        logger.error(f"枚举得到的候选不满足 FL_e 公理: {candidate}")
                        continue
                    found[key] = FiniteAlgebra(n, ops, {"e": unit, "f": f}, name=f"FLe{n}.{len(found) + 1}")
    return tuple(found.values())


def all_fle_algebras(max_n: int, variant: FLeVariant = FLeVariant.PLAIN) -> List[FiniteAlgebra]:
    """规模 ≤ max_n 的全部 FL_e 代数（同构意义下），按变体过滤"""
    variant = FLeVariant(variant)
    result = []
    for n in range(1, max_n + 1):
        result.extend(A for A in _fle_of_size(n) if check_fle(A, variant).passed)
    logger.debug(f"规模 ≤ {max_n} 的 FL_e({variant.value}) 代数: {len(result)} 个")
    return result


# ---------- 电池 ----------

BATTERY_KINDS = ("chains", "lattices", "fle", "flew", "flec", "lukasiewicz", "l3", "boolean", "diamond")


def resolve_battery(spec: str) -> List[FiniteAlgebra]:
    """内置电池：chains:N, lattices:N, fle:N, flew:N, flec:N, lukasiewicz:N, l3, boolean, diamond"""
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    if kind not in BATTERY_KINDS:
        raise AlgebraError(f"未知电池: {spec}（可选 {', '.join(BATTERY_KINDS)}）")
    if kind in ("l3", "boolean", "diamond"):
        return [{"l3": lambda: lukasiewicz(3), "boolean": boolean2, "diamond": diamond}[kind]()]
    try:
        n = int(arg)
    except ValueError:
        raise AlgebraError(f"电池 {spec} 需要规模参数，例如 {kind}:3") from None
    if n < 1:
        raise AlgebraError(f"电池规模必须为正: {spec}")
    if kind == "chains":
        return [chain(k) for k in range(1, n + 1)]
    if kind == "lattices":
        return all_lattices(n)
    if kind == "lukasiewicz":
        return [lukasiewicz(k) for k in range(2, n + 1)]
    variant = {"fle": FLeVariant.PLAIN, "flew": FLeVariant.W, "flec": FLeVariant.C}[kind]
    return all_fle_algebras(n, variant)


def resolve_modal_battery(spec: str) -> List[ModalExpansion]:
    """模态电池：l3-example 为 Ł₃ 的示例扩张，其余为基代数电池上的全部模态扩张"""
    if spec.strip().lower() == "l3-example":
        return [l3_example_expansion()]
    expansions: List[ModalExpansion] = []
    for base in resolve_battery(spec):
        expansions.extend(enumerate_modal_expansions(base))
    return expansions
