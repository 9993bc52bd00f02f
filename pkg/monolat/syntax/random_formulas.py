"""
随机公式生成器（带种子，可复现）
"""
from __future__ import annotations

import random
from typing import Optional, Sequence

from monolat.config.settings import settings
from monolat.syntax.formulas import (
    E, F, X, Atom, Binary, Formula, Modal, Op, PropVar, Quant, Variable,
)

OPS = (Op.AND, Op.OR, Op.PROD, Op.IMP)


def random_modal(
    rng: random.Random,
    depth: int,
    n_vars: int = 2,
    constants: bool = True,
) -> Formula:
    """随机模态公式，深度不超过 depth"""
    if depth <= 0 or rng.random() < 0.2:
        if constants and rng.random() < 0.15:
            return rng.choice((E, F))
        return PropVar(rng.randrange(n_vars))
    if rng.random() < 0.3:
        return Modal(rng.choice(("box", "dia")), random_modal(rng, depth - 1, n_vars, constants))
    return Binary(
        rng.choice(OPS),
        random_modal(rng, depth - 1, n_vars, constants),
        random_modal(rng, depth - 1, n_vars, constants),
    )


def random_fo(
    rng: random.Random,
    depth: int,
    n_preds: int = 2,
    variables: Sequence[Variable] = (X,),
    constants: bool = True,
    quantifier_rate: float = 0.3,
) -> Formula:
    """随机 Fm¹⁺ 公式

    量词辖域外的原子从 variables 中取变元，辖域内只用 x。
    variables 只含 x 时结果属于 Fm¹。
    """
    return _fo(rng, depth, n_preds, tuple(variables), constants, quantifier_rate, False)


def _fo(rng, depth, n_preds, variables, constants, rate, in_scope) -> Formula:
    if depth <= 0 or rng.random() < 0.2:
        if constants and rng.random() < 0.15:
            return rng.choice((E, F))
        var = X if in_scope else rng.choice(variables)
        return Atom(rng.randrange(n_preds), var)
    if rng.random() < rate:
        body = _fo(rng, depth - 1, n_preds, variables, constants, rate, True)
        return Quant(rng.choice(("all", "ex")), body)
    return Binary(
        rng.choice(OPS),
        _fo(rng, depth - 1, n_preds, variables, constants, rate, in_scope),
        _fo(rng, depth - 1, n_preds, variables, constants, rate, in_scope),
    )


def make_rng(seed: Optional[int] = None) -> random.Random:
    return random.Random(settings.RANDOM_SEED if seed is None else seed)
