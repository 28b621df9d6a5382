"""
ExtLearn 学习器数据模型
Learner 为余端表示 (P, Q, l, r)；IntLearner 为内涵表示 (P, I, U, r)
"""
from __future__ import annotations
from pydantic import Field, model_validator

from extlearn.models.base import ExtLearnBaseModel
from extlearn.models.finite import FinFun, FinSet, product


def _expect(fun: FinFun, dom: FinSet, cod: FinSet, name: str) -> None:
    if fun.dom != dom:
        raise ValueError(f"{name} 的定义域与边界不符")
    if fun.cod != cod:
        raise ValueError(f"{name} 的陪域与边界不符")


class Obj(ExtLearnBaseModel):
    """Learn 中的对象 (A, A')"""
    A: FinSet
    Ap: FinSet = Field(alias="A'")

    def dual(self) -> "Obj":
        return Obj(A=self.Ap, Ap=self.A)


class Boundary(ExtLearnBaseModel):
    """(A, A') ⇸ (B, B')"""
    A: FinSet
    Ap: FinSet = Field(alias="A'")
    B: FinSet
    Bp: FinSet = Field(alias="B'")

    @property
    def source(self) -> Obj:
        return Obj(A=self.A, Ap=self.Ap)

    @property
    def target(self) -> Obj:
        return Obj(A=self.B, Ap=self.Bp)


class Learner(ExtLearnBaseModel):
    """外延学习器的余端代表元 (l | r)"""
    A: FinSet
    Ap: FinSet = Field(alias="A'")
    B: FinSet
    Bp: FinSet = Field(alias="B'")
    P: FinSet
    Q: FinSet
    l: FinFun
    r: FinFun

    @model_validator(mode="after")
    def _check_components(self) -> "Learner":
        _expect(self.l, product(self.P, self.A), product(self.Q, self.B), "l")
        _expect(self.r, product(self.Q, self.Bp), product(self.P, self.Ap), "r")
        return self

    @property
    def boundary(self) -> Boundary:
        return Boundary(A=self.A, Ap=self.Ap, B=self.B, Bp=self.Bp)


class IntLearner(ExtLearnBaseModel):
    """内涵学习器 (P, I, U, r)，U 与 r 以 ((p, a), b') 为参数"""
    A: FinSet
    Ap: FinSet = Field(alias="A'")
    B: FinSet
    Bp: FinSet = Field(alias="B'")
    P: FinSet
    I: FinFun
    U: FinFun
    r: FinFun

    @model_validator(mode="after")
    def _check_components(self) -> "IntLearner":
        pa = product(self.P, self.A)
        pab = product(pa, self.Bp)
        _expect(self.I, pa, self.B, "I")
        _expect(self.U, pab, self.P, "U")
        _expect(self.r, pab, self.Ap, "r")
        return self

    @property
    def boundary(self) -> Boundary:
        return Boundary(A=self.A, Ap=self.Ap, B=self.B, Bp=self.Bp)
