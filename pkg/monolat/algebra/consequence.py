"""
有界语义后承

- equational_consequence：Σ ⊨ α ≈ β 在给定有限电池上的判定
- fo_consequence：T ⊨^∀ φ ≈ ψ 在 |S| ≤ maxS 的结构上的判定
- fo_consequence_via_modal：同一问题经全函数代数与 ∗ 翻译判定

所有 "holds" 结论都只相对于给定的电池与界。赋值与解释按字典序枚举，
第一个变元（谓词）为最高位，因此反模型是确定的。
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from monolat.config.settings import settings
from monolat.core.exceptions import AlgebraError, BudgetExceeded, FormulaError, MonolatError
from monolat.algebra.finite import FiniteAlgebra, check_lattice
from monolat.algebra.modal import full_functional
from monolat.algebra.semantics import (
    AlgebraLike, Assignment, Structure, base_of, eval_fo, eval_fo_batch,
    eval_modal, eval_modal_batch, evaluation_to_structure, holds_in_structure,
)
from monolat.schemas.models import ConsequenceStatus, ConsequenceVerdict, Countermodel
from monolat.syntax.formulas import Equation, Theory, in_fm1, predicates
from monolat.utils.logger import logger

CHUNK = 1 << 16


@dataclass
class _Scan:
    """单个代数上的扫描结果"""
    checked: int = 0
    exhausted: bool = False
    index: Optional[int] = None          # 第一个反例在枚举中的序号
    columns: Optional[Dict[int, Any]] = None
    lhs: int = 0
    rhs: int = 0
    world: int = 0


def _variables(theory: Theory, goal: Equation) -> Tuple[int, ...]:
    found = set()
    for eq in (*theory, goal):
        found |= predicates(eq.lhs) | predicates(eq.rhs)
    return tuple(sorted(found))


def _digits(indices: np.ndarray, n: int, width: int) -> np.ndarray:
    """枚举序号 → 长度为 width 的 n 进制数字（最高位在前）"""
    powers = n ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (indices[:, None] // powers[None, :]) % n


def _scan_modal(
    algebra: AlgebraLike,
    theory: Theory,
    goal: Equation,
    variables: Sequence[int],
    budget: int,
) -> _Scan:
    n = base_of(algebra).size
    k = len(variables)
    total = n ** k
    if total > budget:
        logger.warning(f"{algebra.name}: {total} 个赋值超出预算 {budget}，跳过")
        return _Scan(exhausted=True)
    scan = _Scan()
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        digits = _digits(idx, n, k)
        columns = {v: digits[:, pos] for pos, v in enumerate(variables)}
        ok = np.ones(len(idx), dtype=bool)
        for premise in theory:
            ok &= eval_modal_batch(algebra, premise.lhs, columns, len(idx)) == \
                eval_modal_batch(algebra, premise.rhs, columns, len(idx))
        lhs = eval_modal_batch(algebra, goal.lhs, columns, len(idx))
        rhs = eval_modal_batch(algebra, goal.rhs, columns, len(idx))
        bad = np.flatnonzero(ok & (lhs != rhs))
        if bad.size:
            first = int(bad[0])
            scan.checked += first + 1
            scan.index = start + first
            scan.columns = {v: int(c[first]) for v, c in columns.items()}
            scan.lhs, scan.rhs = int(lhs[first]), int(rhs[first])
            return scan
        scan.checked += len(idx)
    return scan


def _modal_countermodel(algebra: AlgebraLike, theory: Theory, goal: Equation, scan: _Scan) -> Countermodel:
    """构造反模型并用标量求值器复核"""
    assignment = Assignment(scan.columns)
    premises_hold = all(eval_modal(algebra, assignment, eq.lhs) == eval_modal(algebra, assignment, eq.rhs) for eq in theory)
    lhs = eval_modal(algebra, assignment, goal.lhs)
    rhs = eval_modal(algebra, assignment, goal.rhs)
    if not premises_hold or lhs == rhs or (lhs, rhs) != (scan.lhs, scan.rhs):
        raise MonolatError(f"{algebra.name}: 反模型复核失败 {assignment}")
    base = base_of(algebra)
    return Countermodel(
        algebra=algebra.name,
        assignment=assignment.to_dict(),
        lhs_value=lhs,
        rhs_value=rhs,
        lhs_label=base.label(lhs),
        rhs_label=base.label(rhs),
        premise_count=len(theory),
    )


def _run_battery(func, items: Sequence, jobs: int) -> List:
    """按电池顺序返回结果；jobs > 1 时多线程评估"""
    if jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


def _check_kind(theory: Theory, goal: Equation, wanted: str) -> None:
    for eq in (*theory, goal):
        kind = eq.kind
        if kind is not None and kind != wanted:
            label = "模态" if wanted == "modal" else "一阶"
            raise FormulaError(f"等式 {eq} 不是{label}等式")


def equational_consequence(
    algebras: Sequence[AlgebraLike],
    theory: Theory,
    goal: Equation,
    jobs: Optional[int] = None,
    max_assignments: Optional[int] = None,
) -> ConsequenceVerdict:
    """Σ ⊨ α ≈ β 相对于有限电池

    对每个代数枚举 Σ ∪ {α≈β} 中出现的变元的全部赋值；
    前提全部成立而结论不成立时给出反模型。
    """
    _check_kind(theory, goal, "modal")
    jobs = jobs or settings.JOBS
    budget = max_assignments or settings.MAX_ASSIGNMENTS
    variables = _variables(theory, goal)
    logger.info(f"等式后承: {len(algebras)} 个代数，{len(variables)} 个变元，目标 {goal}")

    scans = _run_battery(lambda A: _scan_modal(A, theory, goal, variables, budget), algebras, jobs)
    bounds = {
        "algebras": len(algebras),
        "variables": len(variables),
        "max_size": max((base_of(A).size for A in algebras), default=0),
    }
    checked = sum(s.checked for s in scans)
    for algebra, scan in zip(algebras, scans):
        if scan.index is not None:
            countermodel = _modal_countermodel(algebra, theory, goal, scan)
            logger.info(f"找到反模型: {algebra.name} {countermodel.assignment}")
            return ConsequenceVerdict(
                status=ConsequenceStatus.FAILS, bounds=bounds, checked=checked,
                countermodel=countermodel, message=f"在 {algebra.name} 中不成立",
            )
    if any(s.exhausted for s in scans):
        skipped = [A.name for A, s in zip(algebras, scans) if s.exhausted]
        return ConsequenceVerdict(
            status=ConsequenceStatus.EXHAUSTED, bounds=bounds, checked=checked,
            message=f"预算耗尽，未检查: {', '.join(skipped)}",
        )
    logger.info(f"在电池上成立，共检查 {checked} 个赋值")
    return ConsequenceVerdict(status=ConsequenceStatus.HOLDS, bounds=bounds, checked=checked, message="在电池上成立")


# ---------- 一阶后承 ----------

def _check_fo_input(theory: Theory, goal: Equation) -> Tuple[int, ...]:
    _check_kind(theory, goal, "fo")
    for eq in (*theory, goal):
        if not (in_fm1(eq.lhs) and in_fm1(eq.rhs)):
            raise FormulaError(f"等式 {eq} 不在 Fm¹ 中")
    return _variables(theory, goal)


def _require_lattices(bases: Sequence[FiniteAlgebra]) -> None:
    for base in bases:
        if not check_lattice(base).passed:
            raise AlgebraError(f"{base.name} 不是格，不能作为结构的基代数")


def _scan_structures(
    base: FiniteAlgebra,
    worlds: int,
    theory: Theory,
    goal: Equation,
    preds: Sequence[int],
    budget: int,
) -> _Scan:
    n, k = base.size, len(preds)
    width = k * worlds
    total = n ** width
    if total > budget:
        return _Scan(exhausted=True)
    scan = _Scan()
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        digits = _digits(idx, n, width)
        interpretation = {p: digits[:, pos * worlds:(pos + 1) * worlds] for pos, p in enumerate(preds)}
        shape = (len(idx), worlds)
        ok = np.ones(len(idx), dtype=bool)
        for premise in theory:
            lhs = eval_fo_batch(base, premise.lhs, interpretation, shape)
            rhs = eval_fo_batch(base, premise.rhs, interpretation, shape)
            ok &= (lhs == rhs).all(axis=1)
        lhs = eval_fo_batch(base, goal.lhs, interpretation, shape)
        rhs = eval_fo_batch(base, goal.rhs, interpretation, shape)
        bad = np.flatnonzero(ok & (lhs != rhs).any(axis=1))
        if bad.size:
            first = int(bad[0])
            world = int(np.flatnonzero(lhs[first] != rhs[first])[0])
            scan.checked += first + 1
            scan.index = start + first
            scan.columns = {p: digits[first, pos * worlds:(pos + 1) * worlds].tolist() for pos, p in enumerate(preds)}
            scan.lhs, scan.rhs = int(lhs[first, world]), int(rhs[first, world])
            scan.world = world
            return scan
        scan.checked += len(idx)
    return scan


def _fo_countermodel(structure: Structure, world: int, theory: Theory, goal: Equation) -> Countermodel:
    """一阶反模型，用逐点求值器复核"""
    if not all(holds_in_structure(structure, eq) for eq in theory):
        raise MonolatError(f"{structure}: 反模型复核失败（前提不成立）")
    lhs = eval_fo(structure, world, goal.lhs)
    rhs = eval_fo(structure, world, goal.rhs)
    if lhs == rhs:
        raise MonolatError(f"{structure}: 反模型复核失败（目标在世界 {world} 成立）")
    base = structure.base
    return Countermodel(
        algebra=base.name,
        interpretation=structure.to_dict(),
        domain_size=structure.size,
        world=world,
        lhs_value=lhs,
        rhs_value=rhs,
        lhs_label=base.label(lhs),
        rhs_label=base.label(rhs),
        premise_count=len(theory),
    )


def _fo_verdict(results, bases, max_size, checked, theory, goal, route) -> ConsequenceVerdict:
    bounds = {"bases": len(bases), "max_domain": max_size}
    for base, result in zip(bases, results):
        found, _, _ = result
        if found is not None:
            structure, world = found
            countermodel = _fo_countermodel(structure, world, theory, goal)
            logger.info(f"找到反模型（{route}）: {base.name} |S|={structure.size} {countermodel.interpretation}")
            return ConsequenceVerdict(
                status=ConsequenceStatus.FAILS, bounds=bounds, checked=checked,
                countermodel=countermodel, message=f"在 {base.name} 上的 {structure.size} 元结构中不成立",
            )
    skipped = [b.name for b, (_, _, exhausted) in zip(bases, results) if exhausted]
    if skipped:
        return ConsequenceVerdict(
            status=ConsequenceStatus.EXHAUSTED, bounds=bounds, checked=checked,
            message=f"预算耗尽: {', '.join(skipped)}",
        )
    return ConsequenceVerdict(
        status=ConsequenceStatus.HOLDS, bounds=bounds, checked=checked,
        message=f"在 |S| ≤ {max_size} 的结构上成立",
    )


def fo_consequence(
    bases: Sequence[FiniteAlgebra],
    max_size: int,
    theory: Theory,
    goal: Equation,
    jobs: Optional[int] = None,
    max_structures: Optional[int] = None,
) -> ConsequenceVerdict:
    """T ⊨^∀ φ ≈ ψ，在每个基代数上枚举 |S| ≤ max_size 的全部结构

    结构按 |S| 递增、解释按谓词优先的字典序枚举；
    每个基代数的解释总数超过 max_structures 时记为预算耗尽。
    """
    preds = _check_fo_input(theory, goal)
    _require_lattices(bases)
    if max_size < 1:
        raise AlgebraError("max_size 必须为正")
    jobs = jobs or settings.JOBS
    budget = max_structures or settings.MAX_STRUCTURES
    logger.info(f"一阶后承: {len(bases)} 个基代数，|S| ≤ {max_size}，目标 {goal}")

    def per_base(base: FiniteAlgebra):
        used, checked = 0, 0
        for worlds in range(1, max_size + 1):
            scan = _scan_structures(base, worlds, theory, goal, preds, budget - used)
            if scan.exhausted:
                logger.warning(f"{base.name}: |S|={worlds} 时超出结构预算 {budget}")
                return None, checked, True
            used += base.size ** (len(preds) * worlds)
            checked += scan.checked
            if scan.index is not None:
                return (Structure(base, worlds, scan.columns), scan.world), checked, False
        return None, checked, False

    outcomes = _run_battery(per_base, bases, jobs)
    checked = sum(c for _, c, _ in outcomes)
    return _fo_verdict(outcomes, bases, max_size, checked, theory, goal, "结构")


def fo_consequence_via_modal(
    bases: Sequence[FiniteAlgebra],
    max_size: int,
    theory: Theory,
    goal: Equation,
    max_structures: Optional[int] = None,
) -> ConsequenceVerdict:
    """同一有界问题经 T∗ ⊨ φ∗ ≈ ψ∗ 在 B^w（w ≤ max_size）上判定

    A^w 的元素按函数元组字典序编号，因此赋值的枚举顺序与
    fo_consequence 的解释顺序一致，两条路线给出同一个反模型。
    """
    preds = _check_fo_input(theory, goal)
    _require_lattices(bases)
    if max_size < 1:
        raise AlgebraError("max_size 必须为正")
    budget = max_structures or settings.MAX_STRUCTURES
    modal_theory = tuple(eq.star() for eq in theory)
    modal_goal = goal.star()
    logger.info(f"一阶后承（经全函数代数）: {len(bases)} 个基代数，w ≤ {max_size}")

    outcomes = []
    for base in bases:
        used, checked, found, exhausted = 0, 0, None, False
        for worlds in range(1, max_size + 1):
            try:
                M = full_functional(base, worlds)
            except BudgetExceeded:
                exhausted = True
                break
            scan = _scan_modal(M, modal_theory, modal_goal, preds, budget - used)
            if scan.exhausted:
                exhausted = True
                break
            used += M.size ** len(preds)
            checked += scan.checked
            if scan.index is not None:
                assignment = Assignment(scan.columns)
                structure = evaluation_to_structure(M, assignment, preds)
                world = int(np.flatnonzero(M.tuples[scan.lhs] != M.tuples[scan.rhs])[0])
                found = (structure, world)
                break
        outcomes.append((found, checked, exhausted))
    checked = sum(c for _, c, _ in outcomes)
    return _fo_verdict(outcomes, bases, max_size, checked, theory, goal, "全函数代数")


def find_counterexample(algebra: AlgebraLike, goal: Equation) -> Optional[Countermodel]:
    """单个代数上等式的第一个反例，不存在时为 None"""
    verdict = equational_consequence([algebra], (), goal, jobs=1)
    return verdict.countermodel
