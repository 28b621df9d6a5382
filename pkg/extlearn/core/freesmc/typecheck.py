"""
自由 SMC 项的类型检查
Seq 要求 cod(t1) = dom(t2)；Par 拼接；Sym(w1, w2) : w1·w2 → w2·w1
"""
from __future__ import annotations
import logging

from extlearn.errors import BoundaryMismatchError, UnknownGeneratorError
from extlearn.models import FormalLearner, Gen, Id, Par, Seq, Signature, Sym, Term, Word

logger = logging.getLogger(__name__)


def _check_word(w: Word, sig: Signature) -> None:
    unknown = [o for o in w if o not in sig.objects]
    if unknown:
        raise UnknownGeneratorError(f"未声明的对象生成元: {unknown}")


def typecheck(term: Term, sig: Signature) -> tuple[Word, Word]:
    """返回 (dom, cod)"""
    if isinstance(term, Id):
        _check_word(term.word, sig)
        return term.word, term.word
    if isinstance(term, Gen):
        gt = sig.generators.get(term.name)
        if gt is None:
            raise UnknownGeneratorError(f"未知生成元 {term.name!r}")
        return gt.dom, gt.cod
    if isinstance(term, Sym):
        _check_word(term.left, sig)
        _check_word(term.right, sig)
        return term.left + term.right, term.right + term.left
    if isinstance(term, Seq):
        d1, c1 = typecheck(term.first, sig)
        d2, c2 = typecheck(term.second, sig)
        if c1 != d2:
            raise BoundaryMismatchError(
                f"顺序复合类型不匹配: {' '.join(c1) or 'I'} ≠ {' '.join(d2) or 'I'}", c1, d2,
            )
        return d1, c2
    if isinstance(term, Par):
        d1, c1 = typecheck(term.left, sig)
        d2, c2 = typecheck(term.right, sig)
        return d1 + d2, c1 + c2
    raise TypeError(f"不是项: {term!r}")


def typecheck_learner(fl: FormalLearner, sig: Signature) -> None:
    """l : P·A → Q·B，r : Q·B' → P·A'"""
    for w in (fl.A, fl.Ap, fl.B, fl.Bp, fl.P, fl.Q):
        _check_word(w, sig)
    expected = {
        "l": (fl.P + fl.A, fl.Q + fl.B),
        "r": (fl.Q + fl.Bp, fl.P + fl.Ap),
    }
    for name, term in (("l", fl.l), ("r", fl.r)):
        got = typecheck(term, sig)
        if got != expected[name]:
            raise BoundaryMismatchError(
                f"学习器 {fl.name or ''} 的 {name} 类型为 {got}，期望 {expected[name]}",
                got, expected[name],
            )
