"""
V-形态、超融合检查与函数嵌入搜索
"""
from __future__ import annotations

import itertools
from typing import List, Optional, Sequence, Tuple

import numpy as np

from monolat.config.settings import settings
from monolat.core.exceptions import AlgebraError, BudgetExceeded
from monolat.algebra.finite import FiniteAlgebra, check_lattice
from monolat.algebra.modal import ModalExpansion, full_functional
from monolat.schemas.models import (
    CheckFailure, EmbeddingResult, EmbeddingStatus, SuperamalgamReport,
)
from monolat.utils.logger import logger


class VFormation:
    """⟨A, B₁, B₂, C, f₁, f₂, g₁, g₂⟩，映射为元素表"""

    def __init__(
        self,
        A: FiniteAlgebra,
        B1: FiniteAlgebra,
        B2: FiniteAlgebra,
        C: FiniteAlgebra,
        f1: Sequence[int],
        f2: Sequence[int],
        g1: Sequence[int],
        g2: Sequence[int],
    ):
        self.A, self.B1, self.B2, self.C = A, B1, B2, C
        self.f1 = np.asarray(f1, dtype=np.int64)
        self.f2 = np.asarray(f2, dtype=np.int64)
        self.g1 = np.asarray(g1, dtype=np.int64)
        self.g2 = np.asarray(g2, dtype=np.int64)
        for label, algebra in (("B1", B1), ("B2", B2), ("C", C)):
            if not A.same_signature(algebra):
                raise AlgebraError(f"{label} 与 A 的签名不同")
        for label, table, source, target in self.maps:
            if table.shape != (source.size,):
                raise AlgebraError(f"{label} 的长度必须为 {source.size}")
            if table.size and (table.min() < 0 or table.max() >= target.size):
                raise AlgebraError(f"{label} 的取值越界")

    @property
    def maps(self) -> List[Tuple[str, np.ndarray, FiniteAlgebra, FiniteAlgebra]]:
        return [
            ("f1", self.f1, self.A, self.B1),
            ("f2", self.f2, self.A, self.B2),
            ("g1", self.g1, self.B1, self.C),
            ("g2", self.g2, self.B2, self.C),
        ]

    @classmethod
    def from_inclusions(
        cls,
        C: FiniteAlgebra,
        A_elements: Sequence[int],
        B1_elements: Sequence[int],
        B2_elements: Sequence[int],
    ) -> "VFormation":
        """由 C 的三个子论域构造包含映射；A 须同时包含于 B₁、B₂"""
        A = C.restrict(A_elements, name="A")
        B1 = C.restrict(B1_elements, name="B1")
        B2 = C.restrict(B2_elements, name="B2")
        for label, bigger in (("B1", B1_elements), ("B2", B2_elements)):
            missing = [a for a in A_elements if a not in bigger]
            if missing:
                raise AlgebraError(f"A 的元素 {missing} 不在 {label} 中")
        f1 = [list(B1_elements).index(a) for a in A_elements]
        f2 = [list(B2_elements).index(a) for a in A_elements]
        return cls(A, B1, B2, C, f1, f2, list(B1_elements), list(B2_elements))


def homomorphism_failure(
    h: np.ndarray,
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    label: str,
) -> Optional[CheckFailure]:
    """h 是否保持所有运算与常元；返回第一个失败"""
    for name, arity in source.signature:
        if arity == 0:
            if h[source.const(name)] != target.const(name):
                return CheckFailure(law=f"{label} 保持 {name}", witness=[], values=[int(h[source.const(name)]), target.const(name)])
            continue
        table = source.op(name)
        args = np.indices(table.shape)
        lhs = h[table]
        rhs = target.op(name)[tuple(h[a] for a in args)]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            w = tuple(int(i) for i in bad[0])
            return CheckFailure(
                law=f"{label} 保持 {name}",
                witness=list(w),
                values=[int(lhs[w]), int(rhs[w])],
            )
    return None


def is_superamalgam(V: VFormation) -> SuperamalgamReport:
    """检查四个映射是单同态、g₁f₁ = g₂f₂，以及超融合插值条件（两个方向）"""
    failures: List[CheckFailure] = []

    homomorphisms = True
    for label, table, source, target in V.maps:
        failure = homomorphism_failure(table, source, target, label)
        if failure is not None:
            homomorphisms = False
            failures.append(failure)

    injective = True
    for label, table, _, _ in V.maps:
        values, counts = np.unique(table, return_counts=True)
        if (counts > 1).any():
            injective = False
            collided = int(values[counts > 1][0])
            witness = np.flatnonzero(table == collided)[:2].tolist()
            failures.append(CheckFailure(law=f"{label} 单射", witness=witness, values=[collided, collided]))

    left, right = V.g1[V.f1], V.g2[V.f2]
    commutes = bool(np.array_equal(left, right))
    if not commutes:
        a = int(np.flatnonzero(left != right)[0])
        failures.append(CheckFailure(law="g1∘f1 = g2∘f2", witness=[a], values=[int(left[a]), int(right[a])]))

    leq = V.C.leq
    interpolation = True
    sides = ((V.g1, V.f1, V.g2, V.f2, "1≤2"), (V.g2, V.f2, V.g1, V.f1, "2≤1"))
    for gi, fi, gj, fj, direction in sides:
        ci, cj = gi[fi], gj[fj]
        related = leq[gi[:, None], gj[None, :]]
        through = (
            leq[gi[:, None, None], ci[None, None, :]]
            & (ci == cj)[None, None, :]
            & leq[cj[None, None, :], gj[None, :, None]]
        )
        bad = np.argwhere(related & ~through.any(axis=2))
        if bad.size:
            interpolation = False
            bi, bj = (int(v) for v in bad[0])
            failures.append(CheckFailure(
                law=f"超融合插值 ({direction})",
                witness=[bi, bj],
                values=[int(gi[bi]), int(gj[bj])],
                message="不存在 a ∈ A 使 gᵢ(bᵢ) ≤ gᵢfᵢ(a) = gⱼfⱼ(a) ≤ gⱼ(bⱼ)",
            ))
            break

    passed = homomorphisms and injective and commutes and interpolation
    logger.debug(f"超融合检查: {'通过' if passed else failures[0].law}")
    return SuperamalgamReport(
        passed=passed,
        homomorphisms=homomorphisms,
        injective=injective,
        commutes=commutes,
        interpolation=interpolation,
        failures=failures,
    )


# ---------- 函数嵌入搜索 ----------

class _EmbeddingSearch:
    """回溯搜索 M → T 的单射，保持选定运算、常元与 □、◇

    每次赋值后传播：已赋值元素上的运算结果被强制赋值，冲突即回溯。
    """

    def __init__(self, M: ModalExpansion, T: ModalExpansion, operations: Sequence[str], budget: int):
        self.M, self.T = M, T
        self.n = M.size
        self.ops = [name for name in operations if name in M.base.ops]
        self.consts = [name for name in operations if name in M.base.consts]
        self.budget = budget
        self.nodes = 0
        self.leq_m, self.leq_t = M.base.leq, T.base.leq
        # 只有保持 ∧ 或 ∨ 时嵌入才须保序
        self.keep_order = "and" in self.ops or "or" in self.ops

    def run(self) -> Optional[List[int]]:
        h = [-1] * self.n
        forced = [(self.M.base.const(c), self.T.base.const(c)) for c in self.consts]
        h = self._propagate(h, forced)
        if h is None:
            return None
        return self._extend(h)

    def _propagate(self, h: List[int], pending: List[Tuple[int, int]]) -> Optional[List[int]]:
        h = list(h)
        used = {v: a for a, v in enumerate(h) if v >= 0}
        while pending:
            a, v = pending.pop()
            if h[a] >= 0:
                if h[a] != v:
                    return None
                continue
            if v in used:
                return None
            for b, w in enumerate(h):
                if w < 0 or not self.keep_order:
                    continue
                if self.leq_m[a, b] != self.leq_t[v, w] or self.leq_m[b, a] != self.leq_t[w, v]:
                    return None
            h[a] = v
            used[v] = a
            pending.append((int(self.M.box[a]), int(self.T.box[v])))
            pending.append((int(self.M.diamond[a]), int(self.T.diamond[v])))
            assigned = [b for b in range(self.n) if h[b] >= 0]
            for name in self.ops:
                table, target = self.M.base.op(name), self.T.base.op(name)
                arity = table.ndim
                for args in _tuples_with(assigned, a, arity):
                    pending.append((int(table[args]), int(target[tuple(h[b] for b in args)])))
        return h

    def _extend(self, h: List[int]) -> Optional[List[int]]:
        if all(v >= 0 for v in h):
            return h
        a = h.index(-1)
        for v in range(self.T.size):
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded("EMBED_NODE_BUDGET", self.budget)
            candidate = self._propagate(h, [(a, v)])
            if candidate is None:
                continue
            result = self._extend(candidate)
            if result is not None:
                return result
        return None


def _tuples_with(assigned: List[int], a: int, arity: int):
    """由已赋值元素组成且至少含一个 a 的参数元组"""
    for args in itertools.product(assigned, repeat=arity):
        if a in args:
            yield args


def verify_embedding(M: ModalExpansion, T: ModalExpansion, images: Sequence[int], operations: Sequence[str]) -> bool:
    """独立复核：单射且保持所选运算、常元与 □、◇"""
    h = np.asarray(images, dtype=np.int64)
    if len(set(h.tolist())) != M.size:
        return False
    for name in operations:
        if name in M.base.consts:
            if h[M.base.const(name)] != T.base.const(name):
                return False
        elif name in M.base.ops:
            table = M.base.op(name)
            args = np.indices(table.shape)
            if not np.array_equal(h[table], T.base.op(name)[tuple(h[x] for x in args)]):
                return False
    return bool(np.array_equal(h[M.box], T.box[h]) and np.array_equal(h[M.diamond], T.diamond[h]))


def search_functional_embedding(
    M: ModalExpansion,
    bases: Sequence[FiniteAlgebra],
    max_worlds: int,
    operations: Optional[Sequence[str]] = None,
    node_budget: Optional[int] = None,
) -> EmbeddingResult:
    """在 B^w（B ∈ bases，w ≤ max_worlds）中搜索 M 的嵌入

    operations 给出须保持的运算与常元名（默认 M 的整个签名）；
    □、◇ 总是保持。结果只相对于给定的界。
    """
    if max_worlds < 1:
        raise AlgebraError("max_worlds 必须为正")
    names = list(operations) if operations is not None else [n for n, _ in M.base.signature]
    for name in names:
        if name not in M.base.ops and name not in M.base.consts:
            raise AlgebraError(f"{M.name} 的签名中没有 {name}")
    budget = node_budget or settings.EMBED_NODE_BUDGET
    logger.info(f"函数嵌入搜索: {M.name}，{len(bases)} 个基代数，w ≤ {max_worlds}，保持 {names}")

    nodes = 0
    for base in bases:
        if any(name not in base.ops and name not in base.consts for name in names):
            logger.debug(f"{base.name} 缺少所需运算，跳过")
            continue
        if not check_lattice(base).passed:
            continue
        for worlds in range(1, max_worlds + 1):
            if base.size ** worlds < M.size:
                continue
            try:
                T = full_functional(base, worlds)
            except BudgetExceeded:
                break
            search = _EmbeddingSearch(M, T, names, budget - nodes)
            try:
                images = search.run()
            except BudgetExceeded:
                nodes += search.nodes
                logger.warning(f"嵌入搜索超出节点预算 {budget}")
                return EmbeddingResult(status=EmbeddingStatus.BUDGET_EXCEEDED, nodes=nodes)
            nodes += search.nodes
            if images is not None:
                if not verify_embedding(M, T, images, names):
                    raise AlgebraError(f"嵌入复核失败: {images}")
                logger.info(f"找到嵌入: {M.name} → {T.name}")
                return EmbeddingResult(
                    status=EmbeddingStatus.FOUND,
                    base=base.name,
                    worlds=worlds,
                    images=[int(v) for v in images],
                    mapping=[T.tuples[v].tolist() for v in images],
                    nodes=nodes,
                )
    logger.info(f"{M.name}: 在给定界内未找到嵌入（{nodes} 个节点）")
    return EmbeddingResult(status=EmbeddingStatus.NOT_FOUND, nodes=nodes)
