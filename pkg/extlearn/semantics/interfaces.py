"""
ExtLearn 紧闭语义模型抽象接口
所有模型（关系、计数矩阵等）必须实现这些接口；对象一律为 FinSet 的载体，且自对偶
"""
from abc import ABC, abstractmethod
from typing import Any

from extlearn.models import FinFun, FinRel, FinSet, product
from extlearn.core.finbase import (
    associator, associator_inv, id_fun,
    unitor_left, unitor_left_inv, unitor_right, unitor_right_inv,
)


class CompactClosedModel(ABC):
    """紧闭范畴 𝒟 与对称幺半函子 F : FinSet → 𝒟"""

    name: str = ""

    @abstractmethod
    def fun(self, f: FinFun) -> Any:
        """F 作用于基范畴态射"""
        ...

    @abstractmethod
    def compose(self, r: Any, s: Any) -> Any:
        """先 r 后 s"""
        ...

    @abstractmethod
    def tensor(self, r: Any, s: Any) -> Any:
        """乘积集合上的张量"""
        ...

    @abstractmethod
    def cup(self, x: FinSet) -> Any:
        """η : I → X×X"""
        ...

    @abstractmethod
    def cap(self, x: FinSet) -> Any:
        """ε : X×X → I"""
        ...

    @abstractmethod
    def equal(self, r: Any, s: Any) -> bool:
        """态射相等"""
        ...

    @abstractmethod
    def support(self, r: Any) -> FinRel:
        """态射的支撑关系，供输出与跨模型比较"""
        ...

    @abstractmethod
    def to_api(self, r: Any) -> dict:
        """JSON 形式"""
        ...

    # ------------------------------------------------------------
    # 由上面的原语导出的结构
    # ------------------------------------------------------------

    def identity(self, x: FinSet) -> Any:
        return self.fun(id_fun(x))

    def compose_all(self, *arrows: Any) -> Any:
        result = arrows[0]
        for s in arrows[1:]:
            result = self.compose(result, s)
        return result

    def transpose(self, r: Any, x: FinSet, y: FinSet) -> Any:
        """
        r : X → Y 的转置 Y → X：
        Y ≅ I×Y → (X×X)×Y ≅ X×(X×Y) → X×(Y×Y) → X×I ≅ X
        """
        return self.compose_all(
            self.fun(unitor_left_inv(y)),
            self.tensor(self.cup(x), self.identity(y)),
            self.fun(associator(x, x, y)),
            self.tensor(self.identity(x), self.tensor(r, self.identity(y))),
            self.tensor(self.identity(x), self.cap(y)),
            self.fun(unitor_right(x)),
        )

    def snakes(self, x: FinSet) -> tuple[Any, Any]:
        """两条 zig-zag 复合"""
        first = self.compose_all(
            self.fun(unitor_right_inv(x)),
            self.tensor(self.identity(x), self.cup(x)),
            self.fun(associator_inv(x, x, x)),
            self.tensor(self.cap(x), self.identity(x)),
            self.fun(unitor_left(x)),
        )
        second = self.compose_all(
            self.fun(unitor_left_inv(x)),
            self.tensor(self.cup(x), self.identity(x)),
            self.fun(associator(x, x, x)),
            self.tensor(self.identity(x), self.cap(x)),
            self.fun(unitor_right(x)),
        )
        return first, second

    def check_snakes(self, x: FinSet) -> bool:
        ident = self.identity(x)
        first, second = self.snakes(x)
        return self.equal(first, ident) and self.equal(second, ident)

    def carrier(self, a: FinSet, ap: FinSet) -> FinSet:
        """F̂(A, A') = (FA')* ⊗ FA，自对偶时即 A'×A"""
        return product(ap, a)
