"""
ExtLearn Atemp 语义 (atemp-semantics)
紧闭语义函子 F̂ : Atemp_FinSet → 𝒟。对象 (A, A') ↦ A'×A；
学习器 (l | r) ↦ 在 P 上插入 cup、在 Q 上插入 cap 的连线图。
默认 𝒟 = FinRel，此时 F̂ 即存在量词公式
  (a', a) ~ (b', b)  ⟺  ∃ p, q : l(p, a) = (q, b) ∧ r(q, b') = (p, a')
"""
from __future__ import annotations
import logging
from typing import Any, Optional

from cachetools import LRUCache

from extlearn.config import get_config
from extlearn.models import (
    AtempMeaning, AtempVerdict, FinFun, FinRel, FinSet, Learner, ModelComparison, Obj,
    pair, product,
)
from extlearn.core.finbase import (
    graph_rel, inverse, rel_compose_all, rel_tensor, structural, unitor_left, unitor_right_inv,
)
from extlearn.core.learner import apply_l, apply_r, check_same_boundary

logger = logging.getLogger(__name__)


# ============================================================
# 对象与结构同构
# ============================================================

def fhat_object(x: Obj) -> FinSet:
    """F̂(A, A') = A'×A"""
    return product(x.Ap, x.A)


def phi(x: Obj, y: Obj) -> FinFun:
    """
    幺半结构同构 F̂X ⊗ F̂Y → F̂(X⊗Y)：
    (A'_X×A_X)×(A'_Y×A_Y) → (A'_Y×A'_X)×(A_X×A_Y)
    """
    return structural(
        ((x.Ap, x.A), (y.Ap, y.A)),
        ((y.Ap, x.Ap), (x.A, y.A)),
        [2, 0, 1, 3],
    )


def swap_relabel(x: Obj) -> FinFun:
    """F̂(X*) = A×A' 与 F̂(X) = A'×A 之间的交换"""
    return structural((x.A, x.Ap), (x.Ap, x.A), [1, 0])


# ============================================================
# F̂
# ============================================================

def fhat_rel(m: Learner) -> FinRel:
    """直接按存在量词公式求值，对 (p, a) 与 q 枚举"""
    pairs = set()
    for p in m.P.elements:
        for a in m.A.elements:
            q, b = apply_l(m, p, a)
            for bp in m.Bp.elements:
                p2, ap = apply_r(m, q, bp)
                if p2 == p:
                    pairs.add((pair(ap, a), pair(bp, b)))
    return FinRel(dom=product(m.Ap, m.A), cod=product(m.Bp, m.B), pairs=tuple(pairs))


def fhat_generic(m: Learner, model: Any) -> Any:
    """
    在任意紧闭模型中按连线图求值：
    A'×A ≅ (A'×A)×I → (A'×A)×(P×P) ≅ (P×A')×(P×A)
      → (Q×B')×(Q×B)   [r 的转置 ⊗ l]
      ≅ (Q×Q)×(B'×B) → I×(B'×B) ≅ B'×B
    """
    P, Q = m.P, m.Q
    src = model.carrier(m.A, m.Ap)
    dst = model.carrier(m.B, m.Bp)
    r_t = model.transpose(model.fun(m.r), product(Q, m.Bp), product(P, m.Ap))
    return model.compose_all(
        model.fun(unitor_right_inv(src)),
        model.tensor(model.identity(src), model.cup(P)),
        model.fun(structural(((m.Ap, m.A), (P, P)), ((P, m.Ap), (P, m.A)), [2, 0, 3, 1])),
        model.tensor(r_t, model.fun(m.l)),
        model.fun(structural(((Q, m.Bp), (Q, m.B)), ((Q, Q), (m.Bp, m.B)), [0, 2, 1, 3])),
        model.tensor(model.cap(Q), model.identity(dst)),
        model.fun(unitor_left(dst)),
    )


def fhat_tensor_expected(mL: Learner, mR: Learner, left: FinRel, right: FinRel) -> FinRel:
    """由两侧关系与 φ 拼出 F̂(mL ⊗ mR) 的期望值"""
    x = Obj(A=mL.A, Ap=mL.Ap)
    y = Obj(A=mR.A, Ap=mR.Ap)
    xb = Obj(A=mL.B, Ap=mL.Bp)
    yb = Obj(A=mR.B, Ap=mR.Bp)
    return rel_compose_all(
        graph_rel(inverse(phi(x, y))),
        rel_tensor(left, right),
        graph_rel(phi(xb, yb)),
    )


# ============================================================
# 比较
# ============================================================

class AtempSemantics:
    """带 LRU 缓存的 F̂ 求值服务"""

    def __init__(self, model_names: Optional[list[str]] = None):
        from extlearn.semantics import create_models

        cfg = get_config().semantics
        self.bundle = create_models(model_names or cfg.semantic_models)
        self._cache: LRUCache = LRUCache(maxsize=cfg.fhat_cache_size)

    @property
    def model_names(self) -> list[str]:
        return self.bundle.names

    def evaluate(self, m: Learner, model_name: str) -> Any:
        key = (model_name, m.model_dump_json(by_alias=True))
        if key in self._cache:
            return self._cache[key]
        model = next((x for x in self.bundle.models if x.name == model_name), None)
        if model is None:
            raise ValueError(f"未加载的语义模型: {model_name}")
        value = fhat_generic(m, model)
        self._cache[key] = value
        return value

    def compare(self, m1: Learner, m2: Learner) -> AtempVerdict:
        """任一模型区分即 distinguished；否则只报告 consistent-with-equality"""
        check_same_boundary(m1, m2, "atemp_compare")
        rel1, rel2 = fhat_rel(m1), fhat_rel(m2)
        comparisons = []
        separating = None
        for model in self.bundle.models:
            equal = model.equal(self.evaluate(m1, model.name), self.evaluate(m2, model.name))
            comparisons.append(ModelComparison(model=model.name, equal=equal))
            if not equal and separating is None:
                separating = model.name
        if rel1 != rel2 and separating is None:
            separating = "rel"
        meaning = AtempMeaning.CONSISTENT if separating is None else AtempMeaning.DISTINGUISHED
        logger.info(f"atemp_compare: {meaning.value} (models={self.model_names})")
        return AtempVerdict(
            relation1=rel1, relation2=rel2, equal=rel1 == rel2,
            meaning=meaning, models=comparisons, separating_model=separating,
        )


def atemp_compare(m1: Learner, m2: Learner, models: Optional[list[str]] = None) -> AtempVerdict:
    return AtempSemantics(models).compare(m1, m2)
