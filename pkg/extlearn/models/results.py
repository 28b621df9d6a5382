"""
ExtLearn 判定结果模型：见证、闭包链与 Atemp 判决
"""
from __future__ import annotations
from typing import Optional, Union
from pydantic import Field

from extlearn.models.base import (
    ExtLearnBaseModel, WitnessKind, ClosureStatus, AtempMeaning, EquivKind,
)
from extlearn.models.finite import FinFun, FinRel
from extlearn.models.learner import IntLearner, Learner


class Witness(ExtLearnBaseModel):
    """
    一步关系的见证
    - bijection / outer-square / surjective: 只有 f
    - diagonal-filler: f 与 uhat
    - coend-slide: u : P₁ → P₂ 与 v : Q₂ → Q₁
    """
    kind: WitnessKind
    f: Optional[FinFun] = None
    uhat: Optional[FinFun] = None
    u: Optional[FinFun] = None
    v: Optional[FinFun] = None


class ChainLink(ExtLearnBaseModel):
    """闭包链中的一环；forward 为真表示见证从 learners[i] 指向 learners[i+1]"""
    forward: bool
    witness: Witness


class ClosureResult(ExtLearnBaseModel):
    """有界闭包判定结果，status 永不表示全局不等"""
    status: ClosureStatus
    learners: list[Union[IntLearner, Learner]] = Field(default_factory=list)
    chain: list[ChainLink] = Field(default_factory=list)
    explored: int = 0
    bound: int = 0
    certificate: Optional[str] = None


class ModelComparison(ExtLearnBaseModel):
    """单个语义模型下的比较结果"""
    model: str
    equal: bool


class AtempVerdict(ExtLearnBaseModel):
    """Atemp 比较判决：distinguished 可靠，consistent 不是相等性证明"""
    relation1: FinRel
    relation2: FinRel
    equal: bool
    meaning: AtempMeaning
    models: list[ModelComparison] = Field(default_factory=list)
    separating_model: Optional[str] = None


class EquivalenceReport(ExtLearnBaseModel):
    """按关系种类的判定汇总；related 为 None 表示在界限内未判定"""
    kind: EquivKind
    related: Optional[bool] = None
    witness: Optional[Witness] = None
    closure: Optional[ClosureResult] = None


class SnakeCheck(ExtLearnBaseModel):
    """(A, I) 上蛇形复合的检查结果"""
    size: int
    bound: int
    int_equiv_delayed: bool
    ext_onestep_to_identity: bool
    ext_onestep_from_identity: bool
    closure_status: ClosureStatus
    fhat_is_identity: bool
    passed: bool
