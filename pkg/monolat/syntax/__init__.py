"""
语法模块：公式、翻译、解析与打印
"""
from monolat.syntax.formulas import (
    E, F, X, Atom, Binary, Const, Equation, Formula, Modal, Op, PropVar, Quant,
    Theory, Variable, abstract, circle, free_vars, in_fm1, instantiate,
    is_sentence, render, star, substitute, xi,
)
from monolat.syntax.parser import (
    parse, parse_equation, parse_fo, parse_modal, parse_sequent_parts, parse_theory,
)

__all__ = [
    "E", "F", "X", "Atom", "Binary", "Const", "Equation", "Formula", "Modal", "Op",
    "PropVar", "Quant", "Theory", "Variable", "abstract", "circle", "free_vars",
    "in_fm1", "instantiate", "is_sentence", "render", "star", "substitute", "xi",
    "parse", "parse_equation", "parse_fo", "parse_modal", "parse_sequent_parts",
    "parse_theory",
]
