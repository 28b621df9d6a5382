"""
ExtLearn HTTP API 请求模型
"""
from __future__ import annotations
from typing import Optional, Union
from pydantic import Field

from extlearn.models.base import Activation, EquivKind, ExtLearnBaseModel
from extlearn.models.learner import IntLearner, Learner
from extlearn.models.term import Interpretation

AnyLearner = Union[Learner, IntLearner]


class SetSizes(ExtLearnBaseModel):
    """identity / snake 的边界大小；A' 缺省为单位集"""
    A: int = Field(..., ge=1, le=16, description="|A|")
    Ap: Optional[int] = Field(default=None, alias="A'", ge=0, le=16, description="|A'|")


class LearnerInput(ExtLearnBaseModel):
    learner: AnyLearner


class LearnerPair(ExtLearnBaseModel):
    """compose 时 first 在前"""
    first: AnyLearner
    second: AnyLearner


class EquivRequest(ExtLearnBaseModel):
    kind: EquivKind = Field(default=EquivKind.INT, description="关系种类")
    first: AnyLearner
    second: AnyLearner
    bound: Optional[int] = Field(default=None, ge=1, le=8, description="闭包搜索界限")


class FhatRequest(ExtLearnBaseModel):
    learner: AnyLearner
    model: str = Field(default="rel", description="语义模型名称")


class AtempCompareRequest(ExtLearnBaseModel):
    first: AnyLearner
    second: AnyLearner
    models: Optional[list[str]] = Field(default=None, description="缺省读取配置")


class FreeSmcRequest(ExtLearnBaseModel):
    """签名文档与要操作的项名或学习器名"""
    document: str = Field(..., min_length=1)
    names: list[str] = Field(default_factory=list)
    interpretation: Optional[Interpretation] = None
    seed: Optional[int] = Field(default=None, description="缺省读取配置")
    samples: int = Field(default=20, ge=1, le=200)
    max_size: int = Field(default=3, ge=1, le=5)
    models: Optional[list[str]] = None


class NeuronDualRequest(ExtLearnBaseModel):
    dim: int = Field(default=3, ge=1, le=64)
    steps: int = Field(default=100, ge=0, le=10000)
    seed: Optional[int] = Field(default=None, description="缺省读取配置")
    activation: Activation = Activation.LOGISTIC
