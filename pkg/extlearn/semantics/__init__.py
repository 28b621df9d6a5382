"""ExtLearn 紧闭语义模型"""
from .factory import create_model, create_models, ModelBundle, RESERVED_MODELS
from .interfaces import CompactClosedModel

__all__ = ["create_model", "create_models", "ModelBundle", "RESERVED_MODELS", "CompactClosedModel"]
