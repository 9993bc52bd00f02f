"""
相继式 Γ ⇒ Δ 与多重集运算

前件以按规范 ASCII 文本排序的元组存储，相继式相等即规范形式相等。
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from monolat.core.exceptions import FormulaError
from monolat.syntax.formulas import (
    E, F, Formula, Variable, kind_of, prod2, render,
)
from monolat.syntax.parser import parse_sequent_parts

Multiset = Tuple[Formula, ...]


def canonical(formulas: Iterable[Formula]) -> Multiset:
    return tuple(sorted(formulas, key=lambda phi: phi.sort_key))


@dataclass(frozen=True)
class Sequent:
    """Γ ⇒ Δ，|Δ| ≤ 1"""
    antecedent: Multiset
    succedent: Optional[Formula] = None

    def __post_init__(self):
        object.__setattr__(self, "antecedent", canonical(self.antecedent))
        for phi in self.formulas:
            if kind_of(phi) == "modal":
                raise FormulaError(f"相继式只接受一阶公式: {phi}")

    @classmethod
    def of(cls, antecedent: Iterable[Formula], succedent: Optional[Formula] = None) -> "Sequent":
        return cls(tuple(antecedent), succedent)

    @classmethod
    def parse(cls, text: str) -> "Sequent":
        antecedent, succedent = parse_sequent_parts(text)
        return cls(tuple(antecedent), succedent)

    @property
    def formulas(self) -> Tuple[Formula, ...]:
        return self.antecedent + ((self.succedent,) if self.succedent is not None else ())

    @property
    def free(self) -> FrozenSet[Variable]:
        result: FrozenSet[Variable] = frozenset()
        for phi in self.formulas:
            result |= phi.free
        return result

    @property
    def measure(self) -> int:
        """公式总规模，搜索中每一步（除 (c) 外）严格下降"""
        return sum(phi.size for phi in self.formulas)

    def render(self, ascii_only: bool = False) -> str:
        left = ", ".join(render(phi, ascii_only) for phi in self.antecedent)
        right = render(self.succedent, ascii_only) if self.succedent is not None else ""
        arrow = "|-" if ascii_only else "⇒"
        return " ".join(part for part in (left, arrow, right) if part)

    def __str__(self) -> str:
        return self.render()


# ---------- 多重集 ----------

def remove_one(ms: Sequence[Formula], phi: Formula) -> Multiset:
    """删去 phi 的一次出现；不存在时抛出 ValueError"""
    items = list(ms)
    items.remove(phi)
    return tuple(items)


def difference(ms: Sequence[Formula], sub: Sequence[Formula]) -> Optional[Multiset]:
    """ms − sub；sub 不是子多重集时为 None"""
    items = list(ms)
    for phi in sub:
        if phi not in items:
            return None
        items.remove(phi)
    return canonical(items)


def is_submultiset(sub: Sequence[Formula], ms: Sequence[Formula]) -> bool:
    return difference(ms, sub) is not None


def splits(ms: Sequence[Formula]) -> Iterator[Tuple[Multiset, Multiset]]:
    """所有 (Γ₁, Γ₂) 使 Γ₁ + Γ₂ = ms，按内容去重"""
    items = canonical(ms)
    seen = set()
    for mask in itertools.product((0, 1), repeat=len(items)):
        left = tuple(phi for phi, m in zip(items, mask) if m == 0)
        right = tuple(phi for phi, m in zip(items, mask) if m == 1)
        if left in seen:
            continue
        seen.add(left)
        yield left, right


def submultisets(ms: Sequence[Formula]) -> List[Multiset]:
    """所有子多重集，按规模递减"""
    subs = {left for left, _ in splits(ms)}
    return sorted(subs, key=lambda s: (-len(s), [phi.sort_key for phi in s]))


def product_of(formulas: Sequence[Formula]) -> Formula:
    """∏(φ₁,…,φₙ) = (φ₁·φ₂)·…·φₙ，∏() = e"""
    items = list(formulas)
    if not items:
        return E
    acc = items[0]
    for phi in items[1:]:
        acc = prod2(acc, phi)
    return acc


def sum_of(succedent: Optional[Formula]) -> Formula:
    """∑(ψ) = ψ，∑() = f"""
    return F if succedent is None else succedent


def admissible_partitions(sequent: Sequent) -> List[Tuple[int, ...]]:
    """前件下标子集 Γ，使 Γ 的自由变元与其余前件及后件的自由变元不相交

    内容相同的划分只保留第一个；按规模、再按下标字典序排列。
    """
    n = len(sequent.antecedent)
    found: List[Tuple[int, ...]] = []
    seen = set()
    for size in range(n + 1):
        for gamma in itertools.combinations(range(n), size):
            left = tuple(sequent.antecedent[i] for i in gamma)
            if left in seen:
                continue
            rest = [sequent.antecedent[i] for i in range(n) if i not in gamma]
            if sequent.succedent is not None:
                rest.append(sequent.succedent)
            y = frozenset().union(*(phi.free for phi in left))
            z = frozenset().union(*(phi.free for phi in rest))
            if y & z:
                continue
            seen.add(left)
            found.append(gamma)
    return found
