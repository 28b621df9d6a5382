"""
ExtLearn 自由 SMC 项语言 API 路由
"""
from fastapi import APIRouter, HTTPException

from extlearn.errors import ExtLearnError
from extlearn.models import Document, FormalAtempVerdict, FreeSmcRequest, Interpretation
from extlearn.core.learner import make_rng
from extlearn.core.freesmc import (
    atemp_check_formal, eval_term, hypergraph_canonical, parse_document, pretty,
    random_interpretation, structural_eq, to_hypergraph, typecheck, typecheck_learner,
)

router = APIRouter(prefix="/api/v1/freesmc", tags=["FreeSMC"])


def _pick(table: dict, names: list[str], count: int, what: str) -> list:
    if len(names) != count:
        raise HTTPException(status_code=422, detail=f"需要 {count} 个{what}名")
    missing = [n for n in names if n not in table]
    if missing:
        raise HTTPException(status_code=404, detail=f"文档中没有{what}: {missing}")
    return [table[n] for n in names]


def _interpretations(body: FreeSmcRequest, doc: Document, count: int) -> list[Interpretation]:
    if body.interpretation is not None:
        return [body.interpretation]
    rng = make_rng(body.seed)
    return [random_interpretation(doc.signature, rng, body.max_size) for _ in range(count)]


@router.post("/check")
def check(body: FreeSmcRequest):
    """解析并检查文档中全部项与学习器的类型"""
    doc = parse_document(body.document)
    terms = {}
    for name, t in doc.terms.items():
        dom, cod = typecheck(t, doc.signature)
        terms[name] = {"dom": list(dom), "cod": list(cod), "term": pretty(t)}
    for fl in doc.learners.values():
        typecheck_learner(fl, doc.signature)
    return {"terms": terms, "learners": sorted(doc.learners)}


@router.post("/eval")
def evaluate(body: FreeSmcRequest):
    doc = parse_document(body.document)
    (term,) = _pick(doc.terms, body.names, 1, "项")
    return eval_term(term, _interpretations(body, doc, 1)[0], doc.signature)


@router.post("/eq")
def eq(body: FreeSmcRequest):
    """超图规范形比较"""
    doc = parse_document(body.document)
    t1, t2 = _pick(doc.terms, body.names, 2, "项")
    return {
        "equal": structural_eq(t1, t2, doc.signature),
        "canonical": [hypergraph_canonical(to_hypergraph(t, doc.signature)) for t in (t1, t2)],
    }


@router.post("/atemp", response_model=FormalAtempVerdict, response_model_exclude_none=True)
def atemp(body: FreeSmcRequest):
    doc = parse_document(body.document)
    fl1, fl2 = _pick(doc.learners, body.names, 2, "学习器")
    interps = _interpretations(body, doc, body.samples)
    try:
        return atemp_check_formal(fl1, fl2, doc.signature, interps, body.models)
    except ExtLearnError:
        raise
    except NotImplementedError as e:
        raise HTTPException(status_code=501, detail=str(e))
    except ValueError as e:
        raise HTTPException(status_code=404, detail=str(e))
