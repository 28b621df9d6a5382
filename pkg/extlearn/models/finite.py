"""
ExtLearn 有限基范畴数据模型
FinSet / FinFun / FinRel，以及乘积元素的规范标签编解码
"""
from __future__ import annotations
from typing import Callable, Iterable
from cachetools import LRUCache, cached
from pydantic import field_validator, model_validator

from extlearn.errors import LabelError
from extlearn.models.base import ExtLearnBaseModel

UNIT_LABEL = "*"
_RESERVED = set("(),")


# ============================================================
# 标签编解码
# ============================================================

def pair(x: str, y: str) -> str:
    """乘积元素的规范标签 "(x,y)" """
    return f"({x},{y})"


@cached(cache=LRUCache(maxsize=1 << 16))
def unpair(label: str) -> tuple[str, str]:
    """按括号深度拆分 "(x,y)"，返回 (x, y)"""
    if len(label) < 5 or label[0] != "(" or label[-1] != ")":
        raise LabelError(f"不是乘积标签: {label!r}")
    depth = 0
    for i in range(1, len(label) - 1):
        ch = label[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            left, right = label[1:i], label[i + 1:-1]
            if not left or not right:
                break
            return left, right
    raise LabelError(f"乘积标签格式错误: {label!r}")


@cached(cache=LRUCache(maxsize=1 << 14))
def is_well_formed(label: str) -> bool:
    """原子标签不含保留字符；复合标签递归合法"""
    if not label:
        return False
    if label[0] == "(":
        try:
            left, right = unpair(label)
        except LabelError:
            return False
        return is_well_formed(left) and is_well_formed(right)
    return not (_RESERVED & set(label))


# ============================================================
# FinSet / FinFun / FinRel
# ============================================================

class FinSet(ExtLearnBaseModel):
    """有限集：有序、互不相同的元素标签"""
    elements: tuple[str, ...]

    @field_validator("elements")
    @classmethod
    def _check_elements(cls, v: tuple[str, ...]) -> tuple[str, ...]:
        if len(set(v)) != len(v):
            raise ValueError("元素标签必须互不相同")
        bad = [x for x in v if not is_well_formed(x)]
        if bad:
            raise ValueError(f"元素标签格式错误: {bad[:3]}")
        return v

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def index(self, x: str) -> int:
        try:
            return self.elements.index(x)
        except ValueError:
            raise LabelError(f"元素 {x!r} 不在集合中") from None


class FinFun(ExtLearnBaseModel):
    """全函数 dom → cod，以赋值表表示"""
    dom: FinSet
    cod: FinSet
    map: dict[str, str]

    @model_validator(mode="after")
    def _check_total(self) -> "FinFun":
        if set(self.map) != set(self.dom.elements):
            missing = [x for x in self.dom.elements if x not in self.map]
            raise ValueError(f"函数不是全函数或定义域不符，缺少: {missing[:3]}")
        cod = set(self.cod.elements)
        stray = [y for y in self.map.values() if y not in cod]
        if stray:
            raise ValueError(f"像不在陪域中: {stray[:3]}")
        return self

    def __call__(self, x: str) -> str:
        try:
            return self.map[x]
        except KeyError:
            raise LabelError(f"{x!r} 不在定义域中") from None

    @classmethod
    def from_callable(cls, dom: FinSet, cod: FinSet, fn: Callable[[str], str]) -> "FinFun":
        return cls(dom=dom, cod=cod, map={x: fn(x) for x in dom.elements})

    def table(self) -> list[tuple[str, str]]:
        """按定义域顺序输出函数表"""
        return [(x, self.map[x]) for x in self.dom.elements]


class FinRel(ExtLearnBaseModel):
    """有限关系 dom ⇸ cod；pairs 规范化为按字典序排序且去重"""
    dom: FinSet
    cod: FinSet
    pairs: tuple[tuple[str, str], ...] = ()

    @field_validator("pairs")
    @classmethod
    def _normalize(cls, v: tuple[tuple[str, str], ...]) -> tuple[tuple[str, str], ...]:
        return tuple(sorted(set(v)))

    @model_validator(mode="after")
    def _check_pairs(self) -> "FinRel":
        dom, cod = set(self.dom.elements), set(self.cod.elements)
        stray = [(x, y) for x, y in self.pairs if x not in dom or y not in cod]
        if stray:
            raise ValueError(f"关系对超出 dom × cod: {stray[:3]}")
        return self


# ============================================================
# 构造
# ============================================================

def unit_set() -> FinSet:
    """单位对象 I = {"*"}"""
    return FinSet(elements=(UNIT_LABEL,))


def finset(n: int, prefix: str = "") -> FinSet:
    """{"0", ..., "n-1"}，可加前缀"""
    return FinSet(elements=tuple(f"{prefix}{i}" for i in range(n)))


def product(x: FinSet, y: FinSet) -> FinSet:
    """笛卡尔积，元素按分量字典序排列"""
    return FinSet.model_construct(
        elements=tuple(pair(a, b) for a in x.elements for b in y.elements)
    )


def product_all(sets: Iterable[FinSet]) -> FinSet:
    """左结合的多重乘积；空乘积为 I"""
    result: FinSet | None = None
    for s in sets:
        result = s if result is None else product(result, s)
    return result if result is not None else unit_set()
