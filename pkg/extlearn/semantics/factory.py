"""
ExtLearn 语义模型工厂
按名称创建紧闭模型，并在构造时检查有限载体上的蛇形恒等式
"""
import logging
from dataclasses import dataclass, field

from cachetools import LRUCache, cached

from extlearn.config import get_config
from extlearn.errors import ExtLearnError
from extlearn.models import finset
from extlearn.semantics.interfaces import CompactClosedModel

logger = logging.getLogger(__name__)

RESERVED_MODELS = ("real",)


@dataclass
class ModelBundle:
    """一次比较所用的模型集合"""
    models: list[CompactClosedModel] = field(default_factory=list)

    @property
    def names(self) -> list[str]:
        return [m.name for m in self.models]


@cached(cache=LRUCache(maxsize=8))
def create_model(name: str) -> CompactClosedModel:
    """
    工厂函数：根据名称创建语义模型。
    rel：有限关系；count：自然数矩阵；real：实矩阵（预留）
    """
    if name == "rel":
        from extlearn.semantics.relational import RelationalModel
        model: CompactClosedModel = RelationalModel()
    elif name == "count":
        from extlearn.semantics.counting import CountingModel
        model = CountingModel()
    elif name in RESERVED_MODELS:
        raise NotImplementedError(f"语义模型 {name} 尚未实现。可用模型: rel, count")
    else:
        raise ValueError(f"不支持的语义模型: {name}")

    max_size = get_config().semantics.snake_check_max_size
    for n in range(1, max_size + 1):
        if not model.check_snakes(finset(n)):
            raise ExtLearnError(f"模型 {name} 在大小 {n} 的载体上不满足蛇形恒等式")
    logger.debug(f"语义模型 {name} 已创建，蛇形恒等式检查至大小 {max_size}")
    return model


def create_models(names: list[str] | None = None) -> ModelBundle:
    names = names if names else get_config().semantics.semantic_models
    return ModelBundle(models=[create_model(n) for n in dict.fromkeys(names)])
