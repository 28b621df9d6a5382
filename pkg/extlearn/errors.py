"""
ExtLearn 异常定义
全部继承 ValueError，调用方可以统一按输入错误处理
"""
from typing import Any


class ExtLearnError(ValueError):
    """所有 ExtLearn 错误的基类"""


class BoundaryMismatchError(ExtLearnError):
    """复合或比较时边界不一致"""

    def __init__(self, message: str, left: Any = None, right: Any = None):
        super().__init__(message)
        self.left = left
        self.right = right


class LabelError(ExtLearnError):
    """元素标签格式错误或不属于集合"""


class TermSyntaxError(ExtLearnError):
    """项语言语法错误，带出错位置"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (位置 {position})")
        self.detail = message
        self.position = position


class UnknownGeneratorError(ExtLearnError):
    """签名中不存在的生成元"""


class InterpretationError(ExtLearnError):
    """解释缺少生成元或元数不匹配"""


class SearchBoundError(ExtLearnError):
    """搜索界限非法或超出可枚举范围"""


class DimensionError(ExtLearnError):
    """光滑学习器向量维度不匹配"""
