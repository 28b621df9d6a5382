"""
ExtLearn 内涵学习器 (intensional)
IntLearner (P, I, U, r) 与余端代表元之间的转换、显式对偶与二重对偶公式、
延迟恒等学习器以及有限训练循环。

约定：U 与 r 的参数写作 ((p, a), b')；标签一律使用规范乘积标签。
"""
from __future__ import annotations
import logging
from typing import Callable, Optional, Sequence

import numpy as np

from extlearn.errors import LabelError
from extlearn.models import (
    FinSet, FinFun, IntLearner, Learner, UNIT_LABEL,
    pair, unpair, unit_set, product,
)
from extlearn.core.finbase import inverse, is_bijection
from extlearn.core.learner import apply_l, apply_r, make_learner, make_rng, random_fun

logger = logging.getLogger(__name__)

ImplementFn = Callable[[str, str], str]
UpdateFn = Callable[[str, str, str], str]


# ============================================================
# 构造与求值
# ============================================================

def make_int_learner(
    A: FinSet, Ap: FinSet, B: FinSet, Bp: FinSet, P: FinSet,
    I_fn: ImplementFn, U_fn: UpdateFn, r_fn: UpdateFn,
) -> IntLearner:
    """由逐点函数 I_fn(p, a)、U_fn(p, a, b')、r_fn(p, a, b') 构造内涵学习器"""
    pa = product(P, A)
    pab = product(pa, Bp)
    I_map, U_map, r_map = {}, {}, {}
    for p in P.elements:
        for a in A.elements:
            I_map[pair(p, a)] = I_fn(p, a)
            for bp in Bp.elements:
                key = pair(pair(p, a), bp)
                U_map[key] = U_fn(p, a, bp)
                r_map[key] = r_fn(p, a, bp)
    return IntLearner(
        A=A, Ap=Ap, B=B, Bp=Bp, P=P,
        I=FinFun(dom=pa, cod=B, map=I_map),
        U=FinFun(dom=pab, cod=P, map=U_map),
        r=FinFun(dom=pab, cod=Ap, map=r_map),
    )


def implement(m: IntLearner, p: str, a: str) -> str:
    return m.I.map[pair(p, a)]


def update(m: IntLearner, p: str, a: str, bp: str) -> str:
    return m.U.map[pair(pair(p, a), bp)]


def request(m: IntLearner, p: str, a: str, bp: str) -> str:
    return m.r.map[pair(pair(p, a), bp)]


def run_int(
    m: IntLearner, p0: str, stream: Sequence[tuple[str, str]],
) -> tuple[list[tuple[str, str]], str]:
    """
    有限训练循环：第 t 步先输出 I(p_t, a_t)，再更新 p_{t+1} = U(p_t, a_t, b'_t)。
    返回 ([(b_t, p_{t+1}), ...], 最终状态)
    """
    if p0 not in m.P:
        raise LabelError(f"初始状态 {p0!r} 不在参数集中")
    state = p0
    outputs = []
    for a, bp in stream:
        b = implement(m, state, a)
        state = update(m, state, a, bp)
        outputs.append((b, state))
    return outputs, state


# ============================================================
# 内涵表示 ↔ 余端代表元
# ============================================================

def to_coend(m: IntLearner) -> Learner:
    """Q = P×A；l(p, a) = ((p, a), I(p, a))；r((p, a), b') = (U, r)"""
    def l_fn(p: str, a: str) -> tuple[str, str]:
        return pair(p, a), implement(m, p, a)

    def r_fn(q: str, bp: str) -> tuple[str, str]:
        p, a = unpair(q)
        return update(m, p, a, bp), request(m, p, a, bp)

    return make_learner(m.A, m.Ap, m.B, m.Bp, m.P, product(m.P, m.A), l_fn, r_fn)


def to_int(m: Learner) -> IntLearner:
    """
    I(p, a) = snd l(p, a)
    U(p, a, b') = fst r(fst l(p, a), b')
    r(p, a, b') = snd r(fst l(p, a), b')
    """
    def I_fn(p: str, a: str) -> str:
        return apply_l(m, p, a)[1]

    def U_fn(p: str, a: str, bp: str) -> str:
        return apply_r(m, apply_l(m, p, a)[0], bp)[0]

    def r_fn(p: str, a: str, bp: str) -> str:
        return apply_r(m, apply_l(m, p, a)[0], bp)[1]

    return make_int_learner(m.A, m.Ap, m.B, m.Bp, m.P, I_fn, U_fn, r_fn)


# ============================================================
# 对偶
# ============================================================

def dual_int(m: IntLearner) -> IntLearner:
    """
    (B', B) ⇸ (A', A)，P* = P×A：
      I*((p, p_a), b')    = r(p, p_a, b')
      U*((p, p_a), b', a) = (U(p, p_a, b'), a)
      r*((p, p_a), b', a) = I(U(p, p_a, b'), a)
    """
    def I_fn(s: str, bp: str) -> str:
        p, pa = unpair(s)
        return request(m, p, pa, bp)

    def U_fn(s: str, bp: str, a: str) -> str:
        p, pa = unpair(s)
        return pair(update(m, p, pa, bp), a)

    def r_fn(s: str, bp: str, a: str) -> str:
        p, pa = unpair(s)
        return implement(m, update(m, p, pa, bp), a)

    return make_int_learner(m.Bp, m.B, m.Ap, m.A, product(m.P, m.A), I_fn, U_fn, r_fn)


def double_dual_int(m: IntLearner) -> IntLearner:
    """
    P** = (P×A)×B'，状态标签 ((p, p_a), p_b')：
      I**(s, a)     = I(U(p, p_a, p_b'), a)
      U**(s, a, b') = ((U(p, p_a, p_b'), a), b')
      r**(s, a, b') = r(U(p, p_a, p_b'), a, b')
    与 dual_int(dual_int(m)) 逐字段相等。
    """
    def moved(s: str) -> str:
        ppa, pbp = unpair(s)
        p, pa = unpair(ppa)
        return update(m, p, pa, pbp)

    return make_int_learner(
        m.A, m.Ap, m.B, m.Bp, product(product(m.P, m.A), m.Bp),
        lambda s, a: implement(m, moved(s), a),
        lambda s, a, bp: pair(pair(moved(s), a), bp),
        lambda s, a, bp: request(m, moved(s), a, bp),
    )


# ============================================================
# 特殊学习器
# ============================================================

def delayed_identity(A: FinSet) -> IntLearner:
    """(A, I) ⇸ (A, I)，P = A：输出上一次收到的输入，U((p, a), *) = a，r 恒为 *"""
    unit = unit_set()
    return make_int_learner(
        A, unit, A, unit, A,
        lambda p, _a: p,
        lambda _p, a, _bp: a,
        lambda _p, _a, _bp: UNIT_LABEL,
    )


def relabel_params(m: IntLearner, f: FinFun) -> IntLearner:
    """沿双射 f : P → P' 搬运参数集"""
    if f.dom != m.P or not is_bijection(f):
        raise LabelError("relabel_params 需要以 P 为定义域的双射")
    back = inverse(f)
    return make_int_learner(
        m.A, m.Ap, m.B, m.Bp, f.cod,
        lambda q, a: implement(m, back.map[q], a),
        lambda q, a, bp: f.map[update(m, back.map[q], a, bp)],
        lambda q, a, bp: request(m, back.map[q], a, bp),
    )


def random_int_learner(
    rng: Optional[np.random.Generator],
    A: FinSet, Ap: FinSet, B: FinSet, Bp: FinSet, P: FinSet,
) -> IntLearner:
    rng = make_rng() if rng is None else rng
    pa = product(P, A)
    pab = product(pa, Bp)
    return IntLearner(
        A=A, Ap=Ap, B=B, Bp=Bp, P=P,
        I=random_fun(rng, pa, B),
        U=random_fun(rng, pab, P),
        r=random_fun(rng, pab, Ap),
    )
