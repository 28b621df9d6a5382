"""
ExtLearn 等价判定 API 路由
"""
from fastapi import APIRouter

from extlearn.models import EquivalenceReport, EquivKind, EquivRequest, IntLearner
from extlearn.core.intensional import to_coend
from extlearn.core.equivalence import check_equivalence

router = APIRouter(prefix="/api/v1/equiv", tags=["Equivalence"])


@router.post("", response_model=EquivalenceReport, response_model_exclude_none=True)
def equiv(body: EquivRequest):
    """related 为 null 表示在界限内未判定"""
    m1, m2 = body.first, body.second
    if body.kind == EquivKind.COEND:
        m1 = to_coend(m1) if isinstance(m1, IntLearner) else m1
        m2 = to_coend(m2) if isinstance(m2, IntLearner) else m2
    return check_equivalence(body.kind, m1, m2, body.bound)
