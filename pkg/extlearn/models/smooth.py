"""
ExtLearn 光滑对偶演示的输出模型
"""
from __future__ import annotations
from pydantic import Field

from extlearn.models.base import ExtLearnBaseModel


class LagRow(ExtLearnBaseModel):
    """单步预测：原学习器、对偶、二重对偶"""
    step: int
    original: list[float]
    dual: list[float]
    double_dual: list[float]
    lag_ok: bool


class LagReport(ExtLearnBaseModel):
    """neuron-dual 实验报告"""
    dim: int
    steps: int
    seed: int
    activation: str
    rows: list[LagRow] = Field(default_factory=list)
    lag_law_holds: bool
    max_gradient_error: float
