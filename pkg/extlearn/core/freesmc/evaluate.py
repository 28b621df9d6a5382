"""
自由 SMC 项在 FinSet 中的求值
解释把对象生成元映到 FinSet、态射生成元映到 FinFun；
词 a·b·c 解释为右嵌套乘积 a×(b×c)，空词解释为 I。
"""
from __future__ import annotations
import logging
from typing import Callable, Optional, Sequence

import numpy as np

from extlearn.errors import BoundaryMismatchError, InterpretationError
from extlearn.models import (
    AtempMeaning, FinFun, FinSet, FormalAtempVerdict, FormalLearner, Gen, Id, Interpretation,
    Learner, Seq, Signature, Sym, Term, UNIT_LABEL, Word,
    finset, pair, product, unit_set, unpair,
)
from extlearn.core.learner import make_learner, random_fun
from extlearn.core.freesmc.typecheck import typecheck, typecheck_learner

logger = logging.getLogger(__name__)

Leaves = tuple[str, ...]


# ============================================================
# 词与元素
# ============================================================

def word_set(word: Word, interp: Interpretation) -> FinSet:
    if not word:
        return unit_set()
    head = interp.objects[word[0]]
    if len(word) == 1:
        return head
    return product(head, word_set(word[1:], interp))


def encode(word: Word, leaves: Sequence[str]) -> str:
    """叶子元组 → word_set(word) 中的标签"""
    if not word:
        return UNIT_LABEL
    if len(word) == 1:
        return leaves[0]
    return pair(leaves[0], encode(word[1:], leaves[1:]))


def decode(word: Word, label: str) -> Leaves:
    if not word:
        return ()
    if len(word) == 1:
        return (label,)
    head, rest = unpair(label)
    return (head,) + decode(word[1:], rest)


# ============================================================
# 解释
# ============================================================

def validate_interpretation(sig: Signature, interp: Interpretation) -> None:
    """解释必须覆盖全部生成元，且态射的定义域、陪域与生成元类型一致"""
    missing = [o for o in sig.objects if o not in interp.objects]
    if missing:
        raise InterpretationError(f"解释缺少对象生成元: {missing}")
    for name, gt in sig.generators.items():
        f = interp.morphisms.get(name)
        if f is None:
            raise InterpretationError(f"解释缺少态射生成元: {name}")
        if f.dom != word_set(gt.dom, interp) or f.cod != word_set(gt.cod, interp):
            raise InterpretationError(f"生成元 {name} 的解释与类型 {gt.dom} -> {gt.cod} 不符")


def random_interpretation(sig: Signature, rng: np.random.Generator, max_size: int = 3) -> Interpretation:
    objects = {o: finset(int(rng.integers(1, max_size + 1)), prefix=o) for o in sig.objects}
    interp = Interpretation(objects=objects)
    morphisms = {
        name: random_fun(rng, word_set(gt.dom, interp), word_set(gt.cod, interp))
        for name, gt in sig.generators.items()
    }
    return Interpretation(objects=objects, morphisms=morphisms)


# ============================================================
# 求值
# ============================================================

def _compile(term: Term, sig: Signature, interp: Interpretation) -> Callable[[Leaves], Leaves]:
    if isinstance(term, Id):
        return lambda t: t
    if isinstance(term, Gen):
        gt = sig.generators[term.name]
        f = interp.morphisms[term.name]
        return lambda t: decode(gt.cod, f(encode(gt.dom, t)))
    if isinstance(term, Sym):
        k = len(term.left)
        return lambda t: t[k:] + t[:k]
    if isinstance(term, Seq):
        f, g = _compile(term.first, sig, interp), _compile(term.second, sig, interp)
        return lambda t: g(f(t))
    k = len(typecheck(term.left, sig)[0])
    f, g = _compile(term.left, sig, interp), _compile(term.right, sig, interp)
    return lambda t: f(t[:k]) + g(t[k:])


def eval_term(term: Term, interp: Interpretation, sig: Signature) -> FinFun:
    """严格幺半求值，结果为 word_set(dom) → word_set(cod) 的函数"""
    dom, cod = typecheck(term, sig)
    validate_interpretation(sig, interp)
    fn = _compile(term, sig, interp)
    src, dst = word_set(dom, interp), word_set(cod, interp)
    return FinFun(dom=src, cod=dst, map={x: encode(cod, fn(decode(dom, x))) for x in src.elements})


def eval_learner(fl: FormalLearner, interp: Interpretation, sig: Signature) -> Learner:
    """
    l : P·A → Q·B 在 P×A 上按分量拆开后求值，再拼回 Q×B；r 同理。
    得到的 Learner 的参数集为 word_set(P)、word_set(Q)。
    """
    typecheck_learner(fl, sig)
    validate_interpretation(sig, interp)
    l_fn = _compile(fl.l, sig, interp)
    r_fn = _compile(fl.r, sig, interp)
    kq, kp = len(fl.Q), len(fl.P)

    def l_pointwise(p: str, a: str) -> tuple[str, str]:
        out = l_fn(decode(fl.P, p) + decode(fl.A, a))
        return encode(fl.Q, out[:kq]), encode(fl.B, out[kq:])

    def r_pointwise(q: str, bp: str) -> tuple[str, str]:
        out = r_fn(decode(fl.Q, q) + decode(fl.Bp, bp))
        return encode(fl.P, out[:kp]), encode(fl.Ap, out[kp:])

    sets = [word_set(w, interp) for w in (fl.A, fl.Ap, fl.B, fl.Bp, fl.P, fl.Q)]
    return make_learner(*sets, l_pointwise, r_pointwise)


# ============================================================
# 形式学习器的 Atemp 检查
# ============================================================

def atemp_check_formal(
    fl1: FormalLearner, fl2: FormalLearner, sig: Signature,
    interps: Sequence[Interpretation], models: Optional[list[str]] = None,
) -> FormalAtempVerdict:
    """逐个解释比较 F̂；任一解释区分即 distinguished，否则只报告 consistent"""
    from extlearn.core.atemp import AtempSemantics

    b1 = (fl1.A, fl1.Ap, fl1.B, fl1.Bp)
    b2 = (fl2.A, fl2.Ap, fl2.B, fl2.Bp)
    if b1 != b2:
        raise BoundaryMismatchError("atemp_check_formal: 两个形式学习器的边界不同", b1, b2)
    semantics = AtempSemantics(models)
    for i, interp in enumerate(interps):
        verdict = semantics.compare(eval_learner(fl1, interp, sig), eval_learner(fl2, interp, sig))
        if verdict.meaning == AtempMeaning.DISTINGUISHED:
            logger.info(f"atemp_check_formal: 第 {i} 个解释区分了两个学习器")
            return FormalAtempVerdict(
                meaning=AtempMeaning.DISTINGUISHED, interpretations=i + 1, separating_index=i,
            )
    return FormalAtempVerdict(meaning=AtempMeaning.CONSISTENT, interpretations=len(interps))
