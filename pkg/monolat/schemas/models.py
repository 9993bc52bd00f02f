"""
数据模型定义
"""
from pydantic import BaseModel, Field
from typing import Optional, List, Dict, Any
from enum import Enum

from monolat.config.settings import settings


def _default(name: str) -> int:
    return getattr(settings, name)


class FLeVariant(str, Enum):
    """FL_e 代数变体"""
    PLAIN = "plain"        # FL_e
    W = "w"                # 整：f ≤ x ≤ e
    C = "c"                # 平方递增：x ≤ x·x


class ConsequenceStatus(str, Enum):
    """后承判定结果"""
    HOLDS = "holds"            # 在给定界内成立
    FAILS = "fails"            # 找到反模型
    EXHAUSTED = "exhausted"    # 预算耗尽


class EmbeddingStatus(str, Enum):
    """函数嵌入搜索结果"""
    FOUND = "found"
    NOT_FOUND = "not_found"
    BUDGET_EXCEEDED = "budget_exceeded"


class SearchStatus(str, Enum):
    """证明搜索结果"""
    DERIVABLE = "derivable"
    NOT_DERIVABLE = "not_derivable"
    BOUND_EXHAUSTED = "bound_exhausted"


class Calculus(str, Enum):
    """相继式演算"""
    FLE = "fle"
    FLEW = "flew"              # 加 (w)
    FLEC = "flec"              # 加 (c)


class TermPolicy(str, Enum):
    """(∀⇒)/(⇒∃) 的边条件 (i)：项 t 须在结论中出现的读法"""
    ANY_OCCURRENCE = "any"     # 自由或约束出现均可，x 总是可用
    FREE_ONLY = "free"         # 只认自由出现


class AlgebraSpec(BaseModel):
    """代数文件格式（JSON）"""
    size: int
    ops: Dict[str, Any]                                 # 运算名: 嵌套数组，元数 = 嵌套深度
    consts: Dict[str, int] = Field(default_factory=dict)
    box: Optional[List[int]] = None
    diamond: Optional[List[int]] = None
    labels: Optional[List[str]] = None
    name: Optional[str] = None
    worlds: Optional[int] = None                        # 全函数代数的 |W|
    factor: Optional["AlgebraSpec"] = None              # 全函数代数的因子 A


class CheckFailure(BaseModel):
    """一条失败的等式及其见证"""
    law: str
    witness: List[int] = Field(default_factory=list)
    values: List[int] = Field(default_factory=list)
    message: str = ""


class CheckReport(BaseModel):
    """格 / FL_e 检查报告"""
    name: str = ""
    passed: bool
    failures: List[CheckFailure] = Field(default_factory=list)
    order: Optional[List[List[int]]] = None             # 序关系对 (a, b)，a ≤ b


class AxiomResult(BaseModel):
    """单条模态公理的检查结果"""
    name: str
    equation: str
    primitive: bool = True
    passed: bool
    witness: Optional[Dict[str, int]] = None
    values: Optional[List[int]] = None                  # [左值, 右值]
    message: str = ""


class AxiomReport(BaseModel):
    """m-格公理检查报告"""
    results: List[AxiomResult] = Field(default_factory=list)
    passed: bool
    primitive_passed: bool
    derived_consistent: bool                            # 原始公理成立时派生律也全部成立


class SubuniverseReport(BaseModel):
    """□A 子论域报告"""
    elements: List[int]
    closed: bool
    equals_diamond_image: bool
    box_is_max: bool
    diamond_is_min: bool
    passed: bool


class SuperamalgamReport(BaseModel):
    """超融合检查报告"""
    passed: bool
    homomorphisms: bool
    injective: bool
    commutes: bool                                      # g₁∘f₁ = g₂∘f₂
    interpolation: bool
    failures: List[CheckFailure] = Field(default_factory=list)


class Countermodel(BaseModel):
    """反模型"""
    algebra: str
    assignment: Optional[Dict[str, int]] = None         # 模态情形：变量 -> 元素
    interpretation: Optional[Dict[str, List[int]]] = None  # 一阶情形：谓词 -> 各世界取值
    domain_size: Optional[int] = None
    world: Optional[int] = None
    lhs_value: int
    rhs_value: int
    lhs_label: str = ""
    rhs_label: str = ""
    premise_count: int = 0


class ConsequenceVerdict(BaseModel):
    """后承判定"""
    status: ConsequenceStatus
    bounds: Dict[str, int] = Field(default_factory=dict)
    checked: int = 0                                    # 检查过的赋值或结构数
    countermodel: Optional[Countermodel] = None
    message: str = ""


class DerivationCheck(BaseModel):
    """推导检查结果"""
    ok: bool
    path: List[int] = Field(default_factory=list)       # 从根到出错节点的前提下标
    rule: Optional[str] = None
    reason: str = ""


class EmbeddingResult(BaseModel):
    """函数嵌入搜索结果"""
    status: EmbeddingStatus
    base: Optional[str] = None
    worlds: Optional[int] = None
    images: Optional[List[int]] = None                  # 元素 -> A^W 中的下标
    mapping: Optional[List[List[int]]] = None           # 元素 -> 函数元组
    nodes: int = 0


class SearchConfig(BaseModel):
    """证明搜索配置"""
    calculus: Calculus = Calculus.FLE
    contraction_budget: int = Field(default_factory=lambda: _default("CONTRACTION_BUDGET"), gt=0)
    depth_cap: int = Field(default_factory=lambda: _default("SEARCH_DEPTH_CAP"), gt=0)
    policy: TermPolicy = TermPolicy.ANY_OCCURRENCE


class BridgeReport(BaseModel):
    """可靠性桥接：可推导的相继式在电池上不应有反模型"""
    sequent: str
    derivable: bool
    verdict: ConsequenceVerdict
    consistent: bool                                    # 可推导却有反模型时为 False


class Report(BaseModel):
    """命令行输出"""
    command: str
    status: str
    exit_code: int
    text: str = ""
    data: Dict[str, Any] = Field(default_factory=dict)


AlgebraSpec.model_rebuild()
