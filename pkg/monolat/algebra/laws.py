"""
命名模态定律库

每条定律是一个等式，或形如 "前提 ⟹ 结论" 的拟等式（前提可有多条）。
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from monolat.core.exceptions import AlgebraError
from monolat.algebra.consequence import equational_consequence
from monolat.algebra.semantics import AlgebraLike
from monolat.schemas.models import AxiomResult, ConsequenceStatus
from monolat.syntax.formulas import Equation
from monolat.syntax.parser import parse_equation

LAWS: Dict[str, Tuple[Tuple[str, ...], str]] = {
    "L1_box": ((), "box p0 /\\ p0 = box p0"),
    "L1_dia": ((), "dia p0 \\/ p0 = dia p0"),
    "L2_box": ((), "box (p0 /\\ p1) = box p0 /\\ box p1"),
    "L2_dia": ((), "dia (p0 \\/ p1) = dia p0 \\/ dia p1"),
    "L3_box": ((), "box dia p0 = dia p0"),
    "L3_dia": ((), "dia box p0 = box p0"),
    "L4_box": ((), "box box p0 = box p0"),
    "L4_dia": ((), "dia dia p0 = dia p0"),
    "L5_box": (("p0 <= p1",), "box p0 <= box p1"),
    "L5_dia": (("p0 <= p1",), "dia p0 <= dia p1"),
    "L6_box": ((), "box (p0 -> box p1) = dia p0 -> box p1"),
    "L6_dia": ((), "box (box p0 -> p1) = box p0 -> box p1"),
    "dia_square": ((), "dia p0 * dia p0 = dia (p0 * p0)"),
    "constant_domain": ((), "box (box p0 \\/ p1) = box p0 \\/ box p1"),
    "prelinearity": ((), "e <= (p0 -> p1) \\/ (p1 -> p0)"),
    "integrality": ((), "p0 <= e"),
    "square_increasing": ((), "p0 <= p0 * p0"),
    "mv_join": ((), "(p0 -> p1) -> p1 = p0 \\/ p1"),
}


def law(name: str) -> Tuple[Tuple[Equation, ...], Equation]:
    """按名称取定律：(前提, 结论)"""
    if name not in LAWS:
        raise AlgebraError(f"未知定律 {name}，可选: {', '.join(LAWS)}")
    premises, conclusion = LAWS[name]
    return tuple(parse_equation(p, "modal") for p in premises), parse_equation(conclusion, "modal")


def describe(name: str) -> str:
    premises, conclusion = LAWS[name]
    return f"{' ; '.join(premises)} ⟹ {conclusion}" if premises else conclusion


def check_variety(algebra: AlgebraLike, names: Optional[Sequence[str]] = None) -> List[AxiomResult]:
    """逐条检查定律，拟等式按蕴涵检查"""
    results = []
    for name in names or list(LAWS):
        premises, conclusion = law(name)
        verdict = equational_consequence([algebra], premises, conclusion, jobs=1)
        cm = verdict.countermodel
        results.append(AxiomResult(
            name=name,
            equation=describe(name),
            primitive=False,
            passed=verdict.status == ConsequenceStatus.HOLDS,
            witness=cm.assignment if cm else None,
            values=[cm.lhs_value, cm.rhs_value] if cm else None,
            message=verdict.message,
        ))
    return results
