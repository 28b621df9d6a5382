"""
ExtLearn 自由对称幺半范畴项语言的数据模型
"""
from __future__ import annotations
from typing import Annotated, Literal, Optional, Union
from pydantic import Field, model_validator

from extlearn.models.base import AtempMeaning, ExtLearnBaseModel
from extlearn.models.finite import FinFun, FinSet

Word = tuple[str, ...]


# ============================================================
# 签名
# ============================================================

class GeneratorType(ExtLearnBaseModel):
    dom: Word
    cod: Word


class Signature(ExtLearnBaseModel):
    """对象生成元与态射生成元 f : dom → cod"""
    objects: tuple[str, ...] = ()
    generators: dict[str, GeneratorType] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_names(self) -> "Signature":
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("对象生成元名称重复")
        clash = set(self.objects) & set(self.generators)
        if clash:
            raise ValueError(f"对象与态射生成元重名: {sorted(clash)}")
        known = set(self.objects)
        for name, gt in self.generators.items():
            bad = [o for o in gt.dom + gt.cod if o not in known]
            if bad:
                raise ValueError(f"生成元 {name} 使用了未声明的对象: {bad}")
        return self


# ============================================================
# 项
# ============================================================

class Id(ExtLearnBaseModel):
    kind: Literal["id"] = "id"
    word: Word = ()


class Gen(ExtLearnBaseModel):
    kind: Literal["gen"] = "gen"
    name: str


class Seq(ExtLearnBaseModel):
    kind: Literal["seq"] = "seq"
    first: "Term"
    second: "Term"


class Par(ExtLearnBaseModel):
    kind: Literal["par"] = "par"
    left: "Term"
    right: "Term"


class Sym(ExtLearnBaseModel):
    kind: Literal["sym"] = "sym"
    left: Word
    right: Word


Term = Annotated[Union[Id, Gen, Seq, Par, Sym], Field(discriminator="kind")]

Seq.model_rebuild()
Par.model_rebuild()


# ============================================================
# 形式学习器与解释
# ============================================================

class FormalLearner(ExtLearnBaseModel):
    """自由 𝒞 上的学习器：l : P·A → Q·B，r : Q·B' → P·A'"""
    name: Optional[str] = None
    A: Word = ()
    Ap: Word = Field(default=(), alias="A'")
    B: Word = ()
    Bp: Word = Field(default=(), alias="B'")
    P: Word = ()
    Q: Word = ()
    l: Term
    r: Term


class Interpretation(ExtLearnBaseModel):
    """把对象生成元解释为 FinSet，态射生成元解释为 FinFun"""
    objects: dict[str, FinSet] = Field(default_factory=dict)
    morphisms: dict[str, FinFun] = Field(default_factory=dict)


# ============================================================
# 开超图与文档
# ============================================================

class HyperBox(ExtLearnBaseModel):
    """生成元实例：输入线与输出线按端口顺序排列"""
    gen: str
    ins: tuple[int, ...] = ()
    outs: tuple[int, ...] = ()


class OpenHypergraph(ExtLearnBaseModel):
    """单配开超图：每条线至多一个生产者、至多一个消费者"""
    wire_types: tuple[str, ...] = ()
    boxes: tuple[HyperBox, ...] = ()
    inputs: tuple[int, ...] = ()
    outputs: tuple[int, ...] = ()


class Document(ExtLearnBaseModel):
    """签名文本文件的解析结果"""
    signature: Signature = Field(default_factory=Signature)
    terms: dict[str, Term] = Field(default_factory=dict)
    learners: dict[str, FormalLearner] = Field(default_factory=dict)


class FormalAtempVerdict(ExtLearnBaseModel):
    """逐个解释比较 F̂ 的结果；distinguished 时给出第一个区分的解释下标"""
    meaning: AtempMeaning
    interpretations: int = 0
    separating_index: Optional[int] = None
