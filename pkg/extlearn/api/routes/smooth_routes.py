"""
ExtLearn 光滑对偶实验 API 路由
"""
from fastapi import APIRouter

from extlearn.models import LagReport, NeuronDualRequest
from extlearn.core.smooth import neuron_dual_report

router = APIRouter(prefix="/api/v1/smooth", tags=["Smooth"])


@router.post("/neuron-dual", response_model=LagReport)
def neuron_dual(body: NeuronDualRequest):
    """神经元的二重对偶“落后一个训练样本”实验"""
    return neuron_dual_report(body.dim, body.steps, body.seed, body.activation)
