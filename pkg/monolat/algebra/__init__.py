"""
代数模块：有限代数、模态扩张、语义求值与后承判定
"""
from monolat.algebra.finite import FiniteAlgebra, check_fle, check_lattice, is_fle
from monolat.algebra.modal import ModalExpansion, box_image, check_m_axioms, enumerate_modal_expansions, full_functional
from monolat.algebra.semantics import Assignment, Structure, eval_fo, eval_modal

__all__ = [
    "FiniteAlgebra", "check_fle", "check_lattice", "is_fle",
    "ModalExpansion", "box_image", "check_m_axioms", "enumerate_modal_expansions", "full_functional",
    "Assignment", "Structure", "eval_fo", "eval_modal",
]
