"""
ExtLearn 关系模型 "rel"
FinRel 以乘积为张量，F 为图函子；每个对象自对偶，蛇形恒等式严格成立
"""
import logging
from typing import Any

from extlearn.models import FinFun, FinRel, FinSet
from extlearn.core.finbase import (
    graph_rel, rel_cap, rel_compose, rel_cup, rel_pairs_sorted, rel_tensor,
)
from extlearn.semantics.interfaces import CompactClosedModel

logger = logging.getLogger(__name__)


class RelationalModel(CompactClosedModel):
    """有限关系模型"""

    name = "rel"

    def fun(self, f: FinFun) -> FinRel:
        return graph_rel(f)

    def compose(self, r: FinRel, s: FinRel) -> FinRel:
        return rel_compose(r, s)

    def tensor(self, r: FinRel, s: FinRel) -> FinRel:
        return rel_tensor(r, s)

    def cup(self, x: FinSet) -> FinRel:
        return rel_cup(x)

    def cap(self, x: FinSet) -> FinRel:
        return rel_cap(x)

    def equal(self, r: FinRel, s: FinRel) -> bool:
        return r == s

    def support(self, r: FinRel) -> FinRel:
        return r

    def to_api(self, r: Any) -> dict:
        return {"model": self.name, "pairs": rel_pairs_sorted(r)}
