"""
ExtLearn Atemp 语义 API 路由
"""
from fastapi import APIRouter, HTTPException

from extlearn.errors import ExtLearnError
from extlearn.models import AtempCompareRequest, AtempVerdict, FhatRequest, IntLearner
from extlearn.core.atemp import AtempSemantics
from extlearn.core.intensional import to_coend

router = APIRouter(prefix="/api/v1/semantics", tags=["Semantics"])


def _get_semantics():
    from extlearn.main import get_semantics
    return get_semantics()


def _coend(m):
    return to_coend(m) if isinstance(m, IntLearner) else m


def _semantics_for(models: list[str] | None) -> AtempSemantics:
    if not models:
        return _get_semantics()
    try:
        return AtempSemantics(models)
    except ExtLearnError:
        raise
    except NotImplementedError as e:
        raise HTTPException(status_code=501, detail=str(e))
    except ValueError as e:
        raise HTTPException(status_code=404, detail=str(e))


@router.post("/fhat")
def fhat(body: FhatRequest):
    """F̂ 在指定模型中的值"""
    semantics = _semantics_for([body.model])
    model = next(m for m in semantics.bundle.models if m.name == body.model)
    return model.to_api(semantics.evaluate(_coend(body.learner), body.model))


@router.post("/compare", response_model=AtempVerdict, response_model_exclude_none=True)
def compare(body: AtempCompareRequest):
    """distinguished 可靠；consistent-with-equality 不是相等性证明"""
    return _semantics_for(body.models).compare(_coend(body.first), _coend(body.second))
