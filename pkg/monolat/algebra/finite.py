"""
有限代数：以运算表表示的 L-格

论域为 {0,…,n−1}。必需运算 and/or，可选 prod/imp 与常元 e/f，
也可以带任意元数的其他命名运算（一般的格型签名）。
"""
from __future__ import annotations

import itertools
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from monolat.config.settings import settings
from monolat.core.exceptions import AlgebraError
from monolat.schemas.models import AlgebraSpec, CheckFailure, CheckReport, FLeVariant
from monolat.utils.logger import logger

LATTICE_OPS = ("and", "or")
FLE_OPS = ("and", "or", "prod", "imp")
FLE_CONSTS = ("e", "f")


class FiniteAlgebra:
    """运算表代数"""

    def __init__(
        self,
        size: int,
        ops: Mapping[str, Sequence],
        consts: Optional[Mapping[str, int]] = None,
        labels: Optional[Sequence[str]] = None,
        name: Optional[str] = None,
    ):
        if size < 1:
            raise AlgebraError(f"论域必须非空，size={size}")
        if size > settings.MAX_ALGEBRA_SIZE:
            raise AlgebraError(f"论域过大: {size} > {settings.MAX_ALGEBRA_SIZE}")
        self.size = size
        self.name = name or f"A{size}"
        self.ops: Dict[str, np.ndarray] = {}
        for op_name, table in ops.items():
            arr = np.asarray(table, dtype=np.int64)
            if arr.ndim < 1 or any(d != size for d in arr.shape):
                raise AlgebraError(f"运算 {op_name} 的表形状 {arr.shape} 与规模 {size} 不符")
            if arr.min() < 0 or arr.max() >= size:
                raise AlgebraError(f"运算 {op_name} 的表项越界")
            arr.setflags(write=False)
            self.ops[op_name] = arr
        for required in LATTICE_OPS:
            if required not in self.ops:
                raise AlgebraError(f"缺少必需运算 {required}")
            if self.ops[required].ndim != 2:
                raise AlgebraError(f"运算 {required} 必须是二元的")
        self.consts: Dict[str, int] = dict(consts or {})
        for const_name, value in self.consts.items():
            if not 0 <= value < size:
                raise AlgebraError(f"常元 {const_name}={value} 越界")
        if labels is not None and len(labels) != size:
            raise AlgebraError("labels 长度与规模不符")
        self.labels: Optional[List[str]] = list(labels) if labels is not None else None

    # ---------- 基本访问 ----------

    @property
    def meet(self) -> np.ndarray:
        return self.ops["and"]

    @property
    def join(self) -> np.ndarray:
        return self.ops["or"]

    def op(self, name: str) -> np.ndarray:
        if name not in self.ops:
            raise AlgebraError(f"运算 {name} 不在 {self.name} 的签名中")
        return self.ops[name]

    def const(self, name: str) -> int:
        if name not in self.consts:
            raise AlgebraError(f"常元 {name} 不在 {self.name} 的签名中")
        return self.consts[name]

    def arity(self, name: str) -> int:
        return self.op(name).ndim

    @property
    def signature(self) -> List[Tuple[str, int]]:
        """(名称, 元数) 列表；常元元数为 0"""
        ops = sorted(self.ops.items(), key=lambda kv: (kv[0] not in LATTICE_OPS, kv[0]))
        return [(k, v.ndim) for k, v in ops] + [(c, 0) for c in sorted(self.consts)]

    def same_signature(self, other: "FiniteAlgebra") -> bool:
        return self.signature == other.signature

    @property
    def has_fle_signature(self) -> bool:
        return all(o in self.ops for o in FLE_OPS) and all(c in self.consts for c in FLE_CONSTS)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    @cached_property
    def leq(self) -> np.ndarray:
        """leq[a, b] ⟺ a ∧ b = a"""
        idx = np.arange(self.size)
        return self.meet == idx[:, None]

    @cached_property
    def bottom(self) -> Optional[int]:
        rows = np.flatnonzero(self.leq.all(axis=1))
        return int(rows[0]) if rows.size else None

    @cached_property
    def top(self) -> Optional[int]:
        cols = np.flatnonzero(self.leq.all(axis=0))
        return int(cols[0]) if cols.size else None

    @property
    def default_element(self) -> int:
        """未提及变元的默认值：e，否则最小元，否则 0"""
        if "e" in self.consts:
            return self.consts["e"]
        return self.bottom if self.bottom is not None else 0

    def meet_all(self, elements: Iterable[int]) -> int:
        it = iter(elements)
        acc = next(it)
        for b in it:
            acc = int(self.meet[acc, b])
        return acc

    def join_all(self, elements: Iterable[int]) -> int:
        it = iter(elements)
        acc = next(it)
        for b in it:
            acc = int(self.join[acc, b])
        return acc

    # ---------- 子代数 ----------

    def is_closed(self, subset: Iterable[int]) -> bool:
        """子集是否对所有运算与常元封闭"""
        members = sorted(set(int(a) for a in subset))
        inside = np.zeros(self.size, dtype=bool)
        inside[members] = True
        if any(not inside[c] for c in self.consts.values()):
            return False
        if not members:
            return True
        idx = np.asarray(members)
        for table in self.ops.values():
            values = table[np.ix_(*([idx] * table.ndim))]
            if not inside[values].all():
                return False
        return True

    def restrict(self, subset: Sequence[int], name: Optional[str] = None) -> "FiniteAlgebra":
        """子代数，元素按 subset 的顺序重新编号"""
        members = list(subset)
        if not self.is_closed(members):
            raise AlgebraError(f"子集 {members} 对运算不封闭")
        position = {a: i for i, a in enumerate(members)}
        lookup = np.full(self.size, -1, dtype=np.int64)
        lookup[members] = np.arange(len(members))
        idx = np.asarray(members)
        ops = {k: lookup[t[np.ix_(*([idx] * t.ndim))]] for k, t in self.ops.items()}
        consts = {k: position[v] for k, v in self.consts.items()}
        labels = [self.label(a) for a in members]
        return FiniteAlgebra(len(members), ops, consts, labels, name or f"{self.name}|{members}")

    def permuted(self, perm: Sequence[int]) -> "FiniteAlgebra":
        """按 perm（旧元素 a ↦ 新元素 perm[a]）重新编号"""
        perm = np.asarray(perm)
        inverse = np.argsort(perm)
        ops = {k: perm[t[np.ix_(*([inverse] * t.ndim))]] for k, t in self.ops.items()}
        consts = {k: int(perm[v]) for k, v in self.consts.items()}
        labels = [self.label(int(a)) for a in inverse] if self.labels else None
        return FiniteAlgebra(self.size, ops, consts, labels, self.name)

    def canonical_key(self) -> bytes:
        """同构不变量：所有重新编号中表的字节串的最小值"""
        best = None
        for perm in itertools.permutations(range(self.size)):
            other = self.permuted(perm)
            key = b"".join(other.ops[k].tobytes() for k in sorted(other.ops))
            key += bytes(other.consts[c] for c in sorted(other.consts))
            if best is None or key < best:
                best = key
        return best

    # ---------- 序列化 ----------

    def to_spec(self) -> AlgebraSpec:
        return AlgebraSpec(
            size=self.size,
            ops={k: v.tolist() for k, v in self.ops.items()},
            consts=dict(self.consts),
            labels=self.labels,
            name=self.name,
        )

    @classmethod
    def from_spec(cls, spec: AlgebraSpec) -> "FiniteAlgebra":
        return cls(spec.size, spec.ops, spec.consts, spec.labels, spec.name)

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.name}, size={self.size}, ops={sorted(self.ops)})"


# ---------- 检查 ----------

def _first(mask: np.ndarray) -> Optional[Tuple[int, ...]]:
    """按字典序返回第一个 True 的下标"""
    hits = np.argwhere(mask)
    if hits.size == 0:
        return None
    return tuple(int(i) for i in hits[0])


def _grid(n: int, arity: int) -> Tuple[np.ndarray, ...]:
    return tuple(np.indices((n,) * arity))


def check_lattice(algebra: FiniteAlgebra) -> CheckReport:
    """检查 ∧、∨ 构成格，并给出序关系"""
    n = algebra.size
    m, j = algebra.meet, algebra.join
    a, b = _grid(n, 2)
    x, y, z = _grid(n, 3)
    laws = [
        ("x ∧ y ≈ y ∧ x", m != m.T, lambda w: [int(m[w]), int(m[w[::-1]])]),
        ("x ∨ y ≈ y ∨ x", j != j.T, lambda w: [int(j[w]), int(j[w[::-1]])]),
        ("(x ∧ y) ∧ z ≈ x ∧ (y ∧ z)", m[m[x, y], z] != m[x, m[y, z]],
         lambda w: [int(m[m[w[0], w[1]], w[2]]), int(m[w[0], m[w[1], w[2]]])]),
        ("(x ∨ y) ∨ z ≈ x ∨ (y ∨ z)", j[j[x, y], z] != j[x, j[y, z]],
         lambda w: [int(j[j[w[0], w[1]], w[2]]), int(j[w[0], j[w[1], w[2]]])]),
        ("x ∧ (x ∨ y) ≈ x", m[a, j[a, b]] != a, lambda w: [int(m[w[0], j[w]]), w[0]]),
        ("x ∨ (x ∧ y) ≈ x", j[a, m[a, b]] != a, lambda w: [int(j[w[0], m[w]]), w[0]]),
        ("x ∧ y ≈ x ⟺ x ∨ y ≈ y", (m[a, b] == a) != (j[a, b] == b),
         lambda w: [int(m[w]), int(j[w])]),
    ]
    failures = []
    for law, mask, values in laws:
        witness = _first(mask)
        if witness is not None:
            failures.append(CheckFailure(law=law, witness=list(witness), values=values(witness)))
    passed = not failures
    order = None
    if passed:
        order = [[int(p), int(q)] for p, q in np.argwhere(algebra.leq)]
    logger.debug(f"格检查 {algebra.name}: {'通过' if passed else f'{len(failures)} 条失败'}")
    return CheckReport(name=f"lattice:{algebra.name}", passed=passed, failures=failures, order=order)


def check_fle(algebra: FiniteAlgebra, variant: FLeVariant = FLeVariant.PLAIN) -> CheckReport:
    """检查 FL_e 代数公理：交换幺半群、剩余性，以及 w/c 变体的不等式"""
    variant = FLeVariant(variant)
    missing = [o for o in FLE_OPS if o not in algebra.ops] + [c for c in FLE_CONSTS if c not in algebra.consts]
    if missing:
        raise AlgebraError(f"{algebra.name} 缺少 FL_e 运算: {', '.join(missing)}")

    lattice = check_lattice(algebra)
    failures = list(lattice.failures)
    n = algebra.size
    p, r, leq = algebra.op("prod"), algebra.op("imp"), algebra.leq
    e, f = algebra.const("e"), algebra.const("f")
    a, b = _grid(n, 2)
    x, y, z = _grid(n, 3)
    idx = np.arange(n)
    laws = [
        ("x · y ≈ y · x", p != p.T, lambda w: [int(p[w]), int(p[w[::-1]])]),
        ("(x · y) · z ≈ x · (y · z)", p[p[x, y], z] != p[x, p[y, z]],
         lambda w: [int(p[p[w[0], w[1]], w[2]]), int(p[w[0], p[w[1], w[2]]])]),
        ("e · x ≈ x", p[e, idx] != idx, lambda w: [int(p[e, w[0]]), w[0]]),
        ("x · y ≤ z ⟺ x ≤ y → z", leq[p[x, y], z] != leq[x, r[y, z]],
         lambda w: [int(p[w[0], w[1]]), int(r[w[1], w[2]])]),
    ]
    if variant == FLeVariant.W:
        laws.append(("f ≤ x", ~leq[f, idx], lambda w: [f, w[0]]))
        laws.append(("x ≤ e", ~leq[idx, e], lambda w: [w[0], e]))
    elif variant == FLeVariant.C:
        laws.append(("x ≤ x · x", ~leq[idx, p[idx, idx]], lambda w: [w[0], int(p[w[0], w[0]])]))
    for law, mask, values in laws:
        witness = _first(mask)
        if witness is not None:
            failures.append(CheckFailure(law=law, witness=list(witness), values=values(witness)))
    passed = not failures
    logger.debug(f"FL_e({variant.value}) 检查 {algebra.name}: {'通过' if passed else '失败'}")
    return CheckReport(
        name=f"fle-{variant.value}:{algebra.name}",
        passed=passed,
        failures=failures,
        order=lattice.order,
    )


def is_fle(algebra: FiniteAlgebra, variant: FLeVariant = FLeVariant.PLAIN) -> bool:
    if not algebra.has_fle_signature:
        return False
    return check_fle(algebra, variant).passed
