"""
ExtLearn 计数模型 "count"
自然数矩阵范畴：复合为矩阵乘法，张量为 Kronecker 积（与乘积标签的顺序一致），
cup/cap 为对角 0/1 向量。F̂ 的矩阵元记录 (p, q) 见证的个数。
"""
import logging
from dataclasses import dataclass

import numpy as np

from extlearn.errors import BoundaryMismatchError
from extlearn.models import FinFun, FinRel, FinSet, product, unit_set
from extlearn.semantics.interfaces import CompactClosedModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CountMatrix:
    """dom → cod 的 ℕ 值矩阵，行按 dom、列按 cod 的元素顺序"""
    dom: FinSet
    cod: FinSet
    data: np.ndarray

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CountMatrix):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and np.array_equal(self.data, other.data))

    __hash__ = None


class CountingModel(CompactClosedModel):
    """有限计数矩阵模型"""

    name = "count"

    def fun(self, f: FinFun) -> CountMatrix:
        data = np.zeros((f.dom.size, f.cod.size), dtype=np.int64)
        col = {y: j for j, y in enumerate(f.cod.elements)}
        for i, x in enumerate(f.dom.elements):
            data[i, col[f.map[x]]] = 1
        return CountMatrix(f.dom, f.cod, data)

    def compose(self, r: CountMatrix, s: CountMatrix) -> CountMatrix:
        if r.cod != s.dom:
            raise BoundaryMismatchError("count.compose: cod(R) ≠ dom(S)", r.cod, s.dom)
        return CountMatrix(r.dom, s.cod, r.data @ s.data)

    def tensor(self, r: CountMatrix, s: CountMatrix) -> CountMatrix:
        return CountMatrix(product(r.dom, s.dom), product(r.cod, s.cod), np.kron(r.data, s.data))

    def cup(self, x: FinSet) -> CountMatrix:
        n = x.size
        data = np.zeros((1, n * n), dtype=np.int64)
        data[0, [i * n + i for i in range(n)]] = 1
        return CountMatrix(unit_set(), product(x, x), data)

    def cap(self, x: FinSet) -> CountMatrix:
        cup = self.cup(x)
        return CountMatrix(cup.cod, cup.dom, cup.data.T.copy())

    def equal(self, r: CountMatrix, s: CountMatrix) -> bool:
        return r == s

    def support(self, r: CountMatrix) -> FinRel:
        rows, cols = np.nonzero(r.data)
        return FinRel(
            dom=r.dom, cod=r.cod,
            pairs=tuple((r.dom.elements[i], r.cod.elements[j]) for i, j in zip(rows, cols)),
        )

    def to_api(self, r: CountMatrix) -> dict:
        rows, cols = np.nonzero(r.data)
        entries = sorted(
            [r.dom.elements[i], r.cod.elements[j], int(r.data[i, j])] for i, j in zip(rows, cols)
        )
        return {"model": self.name, "entries": entries}
