"""
异常定义
"""
from typing import Optional


class MonolatError(Exception):
    """所有 monolat 异常的基类"""


class ParseError(MonolatError, ValueError):
    """文本解析错误，附带出错位置"""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} (位置 {position})")


class FormulaError(MonolatError, ValueError):
    """公式构造错误：量词辖域条件、代换捕获、不在 Fm¹ 中"""


class AlgebraError(MonolatError, ValueError):
    """代数输入错误：运算表缺失或越界、规模不匹配、非格等"""


class BudgetExceeded(MonolatError):
    """组合预算耗尽"""

    def __init__(self, bound: str, value: int, message: Optional[str] = None):
        self.bound = bound
        self.value = value
        super().__init__(message or f"超出预算 {bound}={value}")


class DerivationError(MonolatError):
    """推导树构造错误"""


class InterpolationError(MonolatError):
    """插值提取错误：划分不满足变量不相交、未知规则、自检失败"""
