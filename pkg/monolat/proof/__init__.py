"""
证明模块：相继式、推导检查、证明搜索与插值
"""
from monolat.proof.derivation import Derivation, Rule, check_derivation, derive, md
from monolat.proof.interpolation import interpolate
from monolat.proof.search import prove
from monolat.proof.sequent import Sequent

__all__ = ["Derivation", "Rule", "check_derivation", "derive", "md", "interpolate", "prove", "Sequent"]
