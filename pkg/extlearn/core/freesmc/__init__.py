"""ExtLearn 自由对称幺半范畴项语言"""
from .parser import parse_term, parse_document, pretty, tokenize, KEYWORDS
from .typecheck import typecheck, typecheck_learner
from .hypergraph import (
    to_hypergraph, hypergraph_canonical, structural_eq, to_networkx, hypergraph_isomorphic,
)
from .evaluate import (
    word_set, encode, decode, eval_term, eval_learner,
    validate_interpretation, random_interpretation, atemp_check_formal,
)
from .formal import formal_identity, formal_snake, formal_iota, formal_dual

__all__ = [
    "parse_term", "parse_document", "pretty", "tokenize", "KEYWORDS",
    "typecheck", "typecheck_learner",
    "to_hypergraph", "hypergraph_canonical", "structural_eq", "to_networkx",
    "hypergraph_isomorphic",
    "word_set", "encode", "decode", "eval_term", "eval_learner",
    "validate_interpretation", "random_interpretation", "atemp_check_formal",
    "formal_identity", "formal_snake", "formal_iota", "formal_dual",
]
