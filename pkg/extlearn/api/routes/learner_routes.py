"""
ExtLearn 学习器构造 API 路由
"""
from fastapi import APIRouter, Query

from extlearn.models import (
    IntLearner, Learner, LearnerInput, LearnerPair, SetSizes, SnakeCheck, finset, unit_set,
)
from extlearn.core import learner as lc
from extlearn.core.intensional import double_dual_int, dual_int, to_coend
from extlearn.core.equivalence import as_int, snake_check

router = APIRouter(prefix="/api/v1/learners", tags=["Learners"])


def _coend(m) -> Learner:
    return to_coend(m) if isinstance(m, IntLearner) else m


def _sets(body: SetSizes):
    return finset(body.A), unit_set() if body.Ap is None else finset(body.Ap)


# ============================================================
# 构造
# ============================================================

@router.post("/identity", response_model=Learner)
def identity(body: SetSizes):
    """(A, A') 上的恒等学习器"""
    return lc.identity(*_sets(body))


@router.post("/snake", response_model=Learner)
def snake(body: SetSizes):
    """蛇形复合"""
    return lc.snake_composite(*_sets(body))


@router.get("/snake-check", response_model=SnakeCheck)
def check_snake(size: int = Query(2, ge=1, le=4), bound: int | None = Query(None, ge=1, le=6)):
    """(A, I) 上蛇形复合的检查"""
    return snake_check(size, bound)


# ============================================================
# 运算
# ============================================================

@router.post("/compose", response_model=Learner)
def compose(body: LearnerPair):
    """先 first 后 second"""
    return lc.compose(_coend(body.first), _coend(body.second))


@router.post("/tensor", response_model=Learner)
def tensor(body: LearnerPair):
    return lc.tensor(_coend(body.first), _coend(body.second))


@router.post("/dual", response_model=Learner)
def dual(body: LearnerInput):
    return lc.dual(_coend(body.learner))


@router.post("/decompose", response_model=Learner)
def decompose(body: LearnerInput):
    return lc.decompose(_coend(body.learner))


@router.post("/to-coend", response_model=Learner)
def to_coend_form(body: LearnerInput):
    return _coend(body.learner)


@router.post("/to-int", response_model=IntLearner)
def to_int_form(body: LearnerInput):
    return as_int(body.learner)


@router.post("/dual-int", response_model=IntLearner)
def dual_intensional(body: LearnerInput):
    return dual_int(as_int(body.learner))


@router.post("/double-dual", response_model=IntLearner)
def double_dual(body: LearnerInput):
    return double_dual_int(as_int(body.learner))
