"""
可靠性桥接：可推导的 Fm¹ 相继式 Γ ⇒ Δ 在 FL_e 电池上必须满足 ∏Γ ≤ ∑Δ
"""
from __future__ import annotations

from typing import List, Optional, Sequence

from monolat.core.exceptions import FormulaError
from monolat.algebra.consequence import fo_consequence
from monolat.algebra.finite import FiniteAlgebra
from monolat.algebra.generators import all_fle_algebras
from monolat.proof.sequent import Sequent, product_of, sum_of
from monolat.schemas.models import BridgeReport, Calculus, ConsequenceStatus, FLeVariant
from monolat.syntax.formulas import Equation, in_fm1
from monolat.utils.logger import logger

VARIANT_OF = {Calculus.FLE: FLeVariant.PLAIN, Calculus.FLEW: FLeVariant.W, Calculus.FLEC: FLeVariant.C}


def battery_for(calculus: Calculus, max_n: int) -> List[FiniteAlgebra]:
    """与演算匹配的 FL_e 电池：FLew 取整代数，FLec 取平方递增代数"""
    return all_fle_algebras(max_n, VARIANT_OF[Calculus(calculus)])


def sequent_inequation(sequent: Sequent) -> Equation:
    """∏Γ ≤ ∑Δ"""
    return Equation.leq(product_of(sequent.antecedent), sum_of(sequent.succedent))


def soundness_bridge(
    sequent: Sequent,
    derivable: bool,
    bases: Sequence[FiniteAlgebra],
    max_size: int,
    max_structures: Optional[int] = None,
) -> BridgeReport:
    """在电池上检查 ∏Γ ≤ ∑Δ

    Args:
        sequent: 只含 x 的相继式
        derivable: 证明搜索是否给出了推导
        bases: 基代数电池
        max_size: 结构规模上界

    Returns:
        BridgeReport: consistent 为 False 表示可推导却找到了反模型
    """
    if not all(in_fm1(phi) for phi in sequent.formulas):
        raise FormulaError(f"相继式必须属于 Fm¹（不含 x_i）: {sequent}")
    goal = sequent_inequation(sequent)
    verdict = fo_consequence(bases, max_size, (), goal, max_structures=max_structures)
    consistent = not (derivable and verdict.status == ConsequenceStatus.FAILS)
    if not consistent:
        logger.error(f"可推导的相继式 {sequent} 在 {verdict.countermodel.algebra} 上有反模型")
    return BridgeReport(
        sequent=sequent.render(),
        derivable=derivable,
        verdict=verdict,
        consistent=consistent,
    )
