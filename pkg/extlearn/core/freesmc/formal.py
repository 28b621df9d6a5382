"""
常用的形式学习器
"""
from __future__ import annotations

from extlearn.errors import UnknownGeneratorError
from extlearn.models import FormalLearner, Gen, Id, Signature, Sym, Word


def formal_identity(A: Word, Ap: Word = ()) -> FormalLearner:
    """P = Q = I，l = id[A]，r = id[A']"""
    return FormalLearner(name="id", A=A, Ap=Ap, B=A, Bp=Ap, l=Id(word=A), r=Id(word=Ap))


def formal_snake(A: Word) -> FormalLearner:
    """(A, I) 上蛇形复合的规范代表元：P = Q = A，l = sym[A|A]，r = id[A]"""
    return FormalLearner(
        name="snake", A=A, B=A, P=A, Q=A,
        l=Sym(left=A, right=A), r=Id(word=A),
    )


def formal_iota(name: str, sig: Signature) -> FormalLearner:
    """生成元 f : A → B 的 ι 嵌入 (A, I) ⇸ (B, I)"""
    gt = sig.generators.get(name)
    if gt is None:
        raise UnknownGeneratorError(f"未知生成元 {name!r}")
    return FormalLearner(name=f"iota_{name}", A=gt.dom, B=gt.cod, l=Gen(name=name), r=Id(word=()))


def formal_dual(fl: FormalLearner) -> FormalLearner:
    """(l | r)* = (r | l)，边界与参数对象随之交换"""
    return FormalLearner(
        name=f"{fl.name}*" if fl.name else None,
        A=fl.Bp, Ap=fl.B, B=fl.Ap, Bp=fl.A, P=fl.Q, Q=fl.P,
        l=fl.r, r=fl.l,
    )
