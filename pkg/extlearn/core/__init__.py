"""ExtLearn 核心演算"""
from . import finbase
from .learner import (
    make_learner, identity, compose, compose_all, tensor, dual, cup, cap,
    iota_fun, iota_pair, from_optic, snake_composite, dual_snake_composite,
    swap_delay_learner, decompose, make_rng, random_learner,
)
from .intensional import (
    make_int_learner, to_coend, to_int, dual_int, double_dual_int, run_int, delayed_identity,
)
from .equivalence import (
    int_equiv, ext_onestep, two_morphism, surj_onestep, coend_slide,
    ext_equiv, surj_equiv, coend_equiv, check_equivalence, validate_witness, validate_chain,
)
from .atemp import fhat_rel, fhat_generic, AtempSemantics, atemp_compare
from .smooth import SmoothLearner, neuron, dual_smooth, double_dual_smooth, run_stream, lag_experiment

__all__ = [
    "finbase",
    "make_learner", "identity", "compose", "compose_all", "tensor", "dual", "cup", "cap",
    "iota_fun", "iota_pair", "from_optic", "snake_composite", "dual_snake_composite",
    "swap_delay_learner", "decompose", "make_rng", "random_learner",
    "make_int_learner", "to_coend", "to_int", "dual_int", "double_dual_int", "run_int",
    "delayed_identity",
    "int_equiv", "ext_onestep", "two_morphism", "surj_onestep", "coend_slide",
    "ext_equiv", "surj_equiv", "coend_equiv", "check_equivalence", "validate_witness",
    "validate_chain",
    "fhat_rel", "fhat_generic", "AtempSemantics", "atemp_compare",
    "SmoothLearner", "neuron", "dual_smooth", "double_dual_smooth", "run_stream", "lag_experiment",
]
