"""
ExtLearn 学习器核心 (learner-core)
Learn_FinSet 中的恒等、复合、张量、对偶、cup/cap、ι 嵌入、optic 嵌入、
蛇形复合与分解。所有构造逐点给出，边界检查失败时抛出 BoundaryMismatchError。

参数集顺序约定：compose 取 P = P₂×P₁、Q = Q₁×Q₂，
这样 dual(compose(m1, m2)) 与 compose(dual m2, dual m1) 在代表元层面严格相等。
"""
from __future__ import annotations
import logging
from typing import Callable, Optional, Sequence

import numpy as np

from extlearn.config import get_config
from extlearn.errors import BoundaryMismatchError, LabelError
from extlearn.models import (
    FinSet, FinFun, Obj, Learner, UNIT_LABEL,
    pair, unpair, unit_set, product,
)
from extlearn.core.finbase import (
    id_fun, structural, symmetry,
    unitor_left, unitor_left_inv, unitor_right, unitor_right_inv,
    associator, associator_inv,
)

logger = logging.getLogger(__name__)

PairFn = Callable[[str, str], tuple[str, str]]


# ============================================================
# 基本构造
# ============================================================

def make_learner(
    A: FinSet, Ap: FinSet, B: FinSet, Bp: FinSet,
    P: FinSet, Q: FinSet, l_fn: PairFn, r_fn: PairFn,
) -> Learner:
    """由逐点函数 l_fn(p, a) = (q, b)、r_fn(q, b') = (p, a') 构造代表元"""
    l_map = {}
    for p in P.elements:
        for a in A.elements:
            q, b = l_fn(p, a)
            l_map[pair(p, a)] = pair(q, b)
    r_map = {}
    for q in Q.elements:
        for bp in Bp.elements:
            p, ap = r_fn(q, bp)
            r_map[pair(q, bp)] = pair(p, ap)
    return Learner(
        A=A, Ap=Ap, B=B, Bp=Bp, P=P, Q=Q,
        l=FinFun(dom=product(P, A), cod=product(Q, B), map=l_map),
        r=FinFun(dom=product(Q, Bp), cod=product(P, Ap), map=r_map),
    )


def apply_l(m: Learner, p: str, a: str) -> tuple[str, str]:
    return unpair(m.l.map[pair(p, a)])


def apply_r(m: Learner, q: str, bp: str) -> tuple[str, str]:
    return unpair(m.r.map[pair(q, bp)])


def source(m: Learner) -> Obj:
    return Obj(A=m.A, Ap=m.Ap)


def target(m: Learner) -> Obj:
    return Obj(A=m.B, Ap=m.Bp)


def obj_tensor(x: Obj, y: Obj) -> Obj:
    """(A, A') ⊗ (B, B') = (A×B, B'×A')"""
    return Obj(A=product(x.A, y.A), Ap=product(y.Ap, x.Ap))


def unit_obj() -> Obj:
    return Obj(A=unit_set(), Ap=unit_set())


def identity(A: FinSet, Ap: FinSet) -> Learner:
    """恒等学习器：P = Q = I，l = id_{I×A}，r = id_{I×A'}"""
    unit = unit_set()
    return Learner(
        A=A, Ap=Ap, B=A, Bp=Ap, P=unit, Q=unit,
        l=id_fun(product(unit, A)), r=id_fun(product(unit, Ap)),
    )


def identity_on(x: Obj) -> Learner:
    return identity(x.A, x.Ap)


def compose(m1: Learner, m2: Learner) -> Learner:
    """先 m1 后 m2"""
    if m1.B != m2.A or m1.Bp != m2.Ap:
        raise BoundaryMismatchError(
            "compose: m1 的目标与 m2 的源不一致", target(m1), source(m2),
        )

    def l_fn(p21: str, a: str) -> tuple[str, str]:
        p2, p1 = unpair(p21)
        q1, b = apply_l(m1, p1, a)
        q2, c = apply_l(m2, p2, b)
        return pair(q1, q2), c

    def r_fn(q12: str, cp: str) -> tuple[str, str]:
        q1, q2 = unpair(q12)
        p2, bp = apply_r(m2, q2, cp)
        p1, ap = apply_r(m1, q1, bp)
        return pair(p2, p1), ap

    return make_learner(
        m1.A, m1.Ap, m2.B, m2.Bp,
        product(m2.P, m1.P), product(m1.Q, m2.Q), l_fn, r_fn,
    )


def compose_all(learners: Sequence[Learner]) -> Learner:
    """左折叠复合"""
    if not learners:
        raise BoundaryMismatchError("compose_all: 空序列", None, None)
    result = learners[0]
    for m in learners[1:]:
        result = compose(result, m)
    return result


def tensor(mL: Learner, mR: Learner) -> Learner:
    """
    (A_L×A_R, A'_R×A'_L) ⇸ (B_L×B_R, B'_R×B'_L)，P = P_L×P_R，Q = Q_L×Q_R。
    反向分量先处理右侧学习器，再把 A' 以 (A'_R, A'_L) 的次序输出。
    """
    def l_fn(pp: str, aa: str) -> tuple[str, str]:
        pl, pr = unpair(pp)
        al, ar = unpair(aa)
        ql, bl = apply_l(mL, pl, al)
        qr, br = apply_l(mR, pr, ar)
        return pair(ql, qr), pair(bl, br)

    def r_fn(qq: str, bb: str) -> tuple[str, str]:
        ql, qr = unpair(qq)
        bpr, bpl = unpair(bb)
        pr, apr = apply_r(mR, qr, bpr)
        pl, apl = apply_r(mL, ql, bpl)
        return pair(pl, pr), pair(apr, apl)

    return make_learner(
        product(mL.A, mR.A), product(mR.Ap, mL.Ap),
        product(mL.B, mR.B), product(mR.Bp, mL.Bp),
        product(mL.P, mR.P), product(mL.Q, mR.Q), l_fn, r_fn,
    )


def dual(m: Learner) -> Learner:
    """(L | R)* = (R | L)，严格对合"""
    return Learner(
        A=m.Bp, Ap=m.B, B=m.Ap, Bp=m.A,
        P=m.Q, Q=m.P, l=m.r, r=m.l,
    )


# ============================================================
# cup / cap
# ============================================================

def cup(A: FinSet, Ap: FinSet) -> Learner:
    """η_{(A,A')} : (I, I) ⇸ (A×A', A×A')，P = A×A'，Q = I"""
    unit = unit_set()
    carrier = product(A, Ap)
    return make_learner(
        unit, unit, carrier, carrier, carrier, unit,
        lambda p, _a: (UNIT_LABEL, p),
        lambda _q, bp: (bp, UNIT_LABEL),
    )


def cap(A: FinSet, Ap: FinSet) -> Learner:
    """ε_{(A,A')} : (A'×A, A'×A) ⇸ (I, I)，P = I，Q = A'×A"""
    unit = unit_set()
    carrier = product(Ap, A)
    return make_learner(
        carrier, carrier, unit, unit, unit, carrier,
        lambda _p, a: (a, UNIT_LABEL),
        lambda q, _bp: (UNIT_LABEL, q),
    )


# ============================================================
# ι 嵌入与 optic
# ============================================================

def iota_pair(f: FinFun, g: FinFun) -> Learner:
    """ι(f, g) : (A, A') ⇸ (B, B')，f : A → B，g : B' → A'，P = Q = I"""
    unit = unit_set()
    return make_learner(
        f.dom, g.cod, f.cod, g.dom, unit, unit,
        lambda p, a: (p, f.map[a]),
        lambda q, bp: (q, g.map[bp]),
    )


def iota_fun(f: FinFun) -> Learner:
    """A' = B' = I 的特例"""
    return iota_pair(f, id_fun(unit_set()))


def _factor_right(prod: FinSet, left: FinSet) -> FinSet:
    """从 prod = left × R 中恢复 R"""
    if left.size == 0 or prod.size % left.size:
        raise BoundaryMismatchError("无法分解乘积集合", prod, left)
    width = prod.size // left.size
    right = FinSet(elements=tuple(unpair(e)[1] for e in prod.elements[:width]))
    if product(left, right) != prod:
        raise BoundaryMismatchError("集合不是给定因子的乘积", prod, left)
    return right


def from_optic(M: FinSet, l: FinFun, r: FinFun) -> Learner:
    """optic (l : A → M×B, r : M×B' → A') 嵌入为 P = I、Q = M 的学习器"""
    B = _factor_right(l.cod, M)
    Bp = _factor_right(r.dom, M)
    unit = unit_set()
    return make_learner(
        l.dom, r.cod, B, Bp, unit, M,
        lambda _p, a: unpair(l.map[a]),
        lambda q, bp: (UNIT_LABEL, r.map[pair(q, bp)]),
    )


def compose_optics(
    first: tuple[FinSet, FinFun, FinFun], second: tuple[FinSet, FinFun, FinFun],
) -> tuple[FinSet, FinFun, FinFun]:
    """Optic 中的复合，残差为 M₁×M₂"""
    M1, l1, r1 = first
    M2, l2, r2 = second
    M = product(M1, M2)
    C = _factor_right(l2.cod, M2)
    Cp = _factor_right(r2.dom, M2)

    l_map = {}
    for a in l1.dom.elements:
        m1, b = unpair(l1.map[a])
        m2, c = unpair(l2.map[b])
        l_map[a] = pair(pair(m1, m2), c)
    r_map = {}
    for m1 in M1.elements:
        for m2 in M2.elements:
            for cp in Cp.elements:
                bp = r2.map[pair(m2, cp)]
                r_map[pair(pair(m1, m2), cp)] = r1.map[pair(m1, bp)]
    return (
        M,
        FinFun(dom=l1.dom, cod=product(M, C), map=l_map),
        FinFun(dom=product(M, Cp), cod=r1.cod, map=r_map),
    )


# ============================================================
# 结构学习器（ι 的像）
# ============================================================

def learn_unitor_left(x: Obj) -> Learner:
    """I⊗X = (I×A, A'×I) ⇸ X"""
    return iota_pair(unitor_left(x.A), unitor_right_inv(x.Ap))


def learn_unitor_left_inv(x: Obj) -> Learner:
    """X ⇸ I⊗X"""
    return iota_pair(unitor_left_inv(x.A), unitor_right(x.Ap))


def learn_unitor_right(x: Obj) -> Learner:
    """X⊗I = (A×I, I×A') ⇸ X"""
    return iota_pair(unitor_right(x.A), unitor_left_inv(x.Ap))


def learn_unitor_right_inv(x: Obj) -> Learner:
    """X ⇸ X⊗I"""
    return iota_pair(unitor_right_inv(x.A), unitor_left(x.Ap))


def learn_associator(x: Obj, y: Obj, z: Obj) -> Learner:
    """(X⊗Y)⊗Z ⇸ X⊗(Y⊗Z)"""
    return iota_pair(associator(x.A, y.A, z.A), associator(z.Ap, y.Ap, x.Ap))


def learn_associator_inv(x: Obj, y: Obj, z: Obj) -> Learner:
    """X⊗(Y⊗Z) ⇸ (X⊗Y)⊗Z"""
    return iota_pair(associator_inv(x.A, y.A, z.A), associator_inv(z.Ap, y.Ap, x.Ap))


def symmetry_learner(x: Obj, y: Obj) -> Learner:
    """s_{X,Y} : X⊗Y ⇸ Y⊗X，为基范畴对称的 ι 像"""
    return iota_pair(symmetry(x.A, y.A), symmetry(x.Ap, y.Ap))


def cup_of(x: Obj) -> Learner:
    return cup(x.A, x.Ap)


def cap_of(x: Obj) -> Learner:
    return cap(x.A, x.Ap)


# ============================================================
# 蛇形复合
# ============================================================

def snake_composite(A: FinSet, Ap: FinSet) -> Learner:
    """
    X ⇸ X⊗I ⇸ X⊗(X*⊗X) ⇸ (X⊗X*)⊗X ⇸ I⊗X ⇸ X，X = (A, A')，
    中间两步为 id ⊗ η_{X*} 与 ε_{X*} ⊗ id。
    对 (A, I) 消去单位后 P = Q = A，分量为 s_{A,A} 与 id。
    """
    x = Obj(A=A, Ap=Ap)
    xs = x.dual()
    return compose_all([
        learn_unitor_right_inv(x),
        tensor(identity_on(x), cup_of(xs)),
        learn_associator_inv(x, xs, x),
        tensor(cap_of(xs), identity_on(x)),
        learn_unitor_left(x),
    ])


def dual_snake_composite(A: FinSet, Ap: FinSet) -> Learner:
    """另一条 zig-zag：X ⇸ I⊗X ⇸ (X⊗X*)⊗X ⇸ X⊗(X*⊗X) ⇸ X⊗I ⇸ X"""
    x = Obj(A=A, Ap=Ap)
    xs = x.dual()
    return compose_all([
        learn_unitor_left_inv(x),
        tensor(cup_of(x), identity_on(x)),
        learn_associator(x, xs, x),
        tensor(identity_on(x), cap_of(x)),
        learn_unitor_right(x),
    ])


def swap_delay_learner(A: FinSet) -> Learner:
    """(A, I) ⇸ (A, I)，P = Q = A，l = s_{A,A}，r = id"""
    unit = unit_set()
    return make_learner(
        A, unit, A, unit, A, A,
        lambda p, a: (a, p),
        lambda q, bp: (q, bp),
    )


# ============================================================
# 分解
# ============================================================

def decompose(m: Learner) -> Learner:
    """
    把 (l | r) 写成只含 cup、cap、ι(l, r) 与结构同构的复合：
    X ⇸ I⊗X ⇸ (P×I, P×I)⊗X ⇸ (P×A, P×A') ⇸ (Q×B, Q×B') ⇸ (I×Q, I×Q)⊗Y ⇸ I⊗Y ⇸ Y
    其中 (P×I, P×I) 为 η_{(P,I)} 的目标，(I×Q, I×Q) 为 ε_{(Q,I)} 的源。
    """
    unit = unit_set()
    P, Q, A, Ap, B, Bp = m.P, m.Q, m.A, m.Ap, m.B, m.Bp
    x, y = source(m), target(m)

    enter = iota_pair(
        structural(((P, unit), A), (P, A), [0, 2]),
        structural((P, Ap), (Ap, (P, unit)), [1, 0, None]),
    )
    leave = iota_pair(
        structural((Q, B), ((unit, Q), B), [None, 0, 1]),
        structural((Bp, (unit, Q)), (Q, Bp), [2, 0]),
    )
    return compose_all([
        learn_unitor_left_inv(x),
        tensor(cup(P, unit), identity_on(x)),
        enter,
        iota_pair(m.l, m.r),
        leave,
        tensor(cap(Q, unit), identity_on(y)),
        learn_unitor_left(y),
    ])


# ============================================================
# 随机实例
# ============================================================

def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """seed 缺省时取配置中的 random_seed"""
    return np.random.default_rng(get_config().search.random_seed if seed is None else seed)


def random_fun(rng: np.random.Generator, dom: FinSet, cod: FinSet) -> FinFun:
    if cod.size == 0 and dom.size:
        raise LabelError("空陪域上不存在全函数")
    picks = rng.integers(0, max(cod.size, 1), size=dom.size)
    return FinFun(dom=dom, cod=cod, map={x: cod.elements[int(i)] for x, i in zip(dom.elements, picks)})


def random_learner(
    rng: Optional[np.random.Generator],
    A: FinSet, Ap: FinSet, B: FinSet, Bp: FinSet,
    P: FinSet, Q: FinSet,
) -> Learner:
    """rng 为 None 时使用 make_rng()"""
    rng = make_rng() if rng is None else rng
    return Learner(
        A=A, Ap=Ap, B=B, Bp=Bp, P=P, Q=Q,
        l=random_fun(rng, product(P, A), product(Q, B)),
        r=random_fun(rng, product(Q, Bp), product(P, Ap)),
    )


def check_same_boundary(m1, m2, op: str) -> None:
    """Learner 与 IntLearner 通用的边界一致性检查"""
    if (m1.A, m1.Ap, m1.B, m1.Bp) != (m2.A, m2.Ap, m2.B, m2.Bp):
        raise BoundaryMismatchError(f"{op}: 两个学习器的边界不同", m1.boundary, m2.boundary)
