"""
ExtLearn 基础数据类型与枚举定义
"""
from __future__ import annotations
from enum import Enum
from pydantic import BaseModel, ConfigDict


# ============================================================
# 枚举类型
# ============================================================

class WitnessKind(str, Enum):
    BIJECTION = "bijection"
    DIAGONAL_FILLER = "diagonal-filler"
    OUTER_SQUARE = "outer-square"
    SURJECTIVE = "surjective"
    COEND_SLIDE = "coend-slide"


class ClosureStatus(str, Enum):
    YES = "yes"
    NO_WITHIN_BOUND = "no-within-bound"
    UNKNOWN = "unknown"


class AtempMeaning(str, Enum):
    DISTINGUISHED = "distinguished"
    CONSISTENT = "consistent-with-equality"


class EquivKind(str, Enum):
    INT = "int"
    EXT = "ext"
    EXT_CLOSURE = "ext-closure"
    TWO_MORPHISM = "2mor"
    SURJ = "surj"
    COEND = "coend"


class Activation(str, Enum):
    IDENTITY = "identity"
    LOGISTIC = "logistic"


# ============================================================
# 基础模型配置
# ============================================================

class ExtLearnBaseModel(BaseModel):
    """所有数据模型的基类配置（不可变值）"""
    model_config = ConfigDict(
        use_enum_values=True,
        from_attributes=True,
        extra="forbid",
        frozen=True,
        populate_by_name=True,
    )

    def to_api(self) -> dict:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)

    def to_full(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)
