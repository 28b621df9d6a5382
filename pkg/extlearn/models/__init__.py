"""ExtLearn 数据模型包"""
from .base import (
    WitnessKind, ClosureStatus, AtempMeaning, EquivKind, Activation,
    ExtLearnBaseModel,
)
from .finite import (
    FinSet, FinFun, FinRel, UNIT_LABEL,
    pair, unpair, is_well_formed, unit_set, finset, product, product_all,
)
from .learner import Obj, Boundary, Learner, IntLearner
from .results import (
    Witness, ChainLink, ClosureResult, ModelComparison, AtempVerdict, EquivalenceReport, SnakeCheck,
)
from .term import (
    Word, GeneratorType, Signature, Id, Gen, Seq, Par, Sym, Term,
    FormalLearner, Interpretation, HyperBox, OpenHypergraph, Document, FormalAtempVerdict,
)
from .smooth import LagRow, LagReport
from .requests import (
    SetSizes, LearnerInput, LearnerPair, EquivRequest, FhatRequest, AtempCompareRequest,
    FreeSmcRequest, NeuronDualRequest,
)

__all__ = [
    "WitnessKind", "ClosureStatus", "AtempMeaning", "EquivKind", "Activation",
    "ExtLearnBaseModel",
    "FinSet", "FinFun", "FinRel", "UNIT_LABEL",
    "pair", "unpair", "is_well_formed", "unit_set", "finset", "product", "product_all",
    "Obj", "Boundary", "Learner", "IntLearner",
    "Witness", "ChainLink", "ClosureResult", "ModelComparison", "AtempVerdict",
    "EquivalenceReport", "SnakeCheck",
    "Word", "GeneratorType", "Signature", "Id", "Gen", "Seq", "Par", "Sym", "Term",
    "FormalLearner", "Interpretation", "HyperBox", "OpenHypergraph", "Document",
    "FormalAtempVerdict",
    "LagRow", "LagReport",
    "SetSizes", "LearnerInput", "LearnerPair", "EquivRequest", "FhatRequest",
    "AtempCompareRequest", "FreeSmcRequest", "NeuronDualRequest",
]
