"""
ExtLearn API 端到端测试
使用 FastAPI TestClient 测试所有 API 端点
"""
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fastapi.testclient import TestClient

from extlearn.main import app
from extlearn.models import finset, unit_set
from extlearn.core.learner import identity, snake_composite
from extlearn.core.intensional import delayed_identity

client = TestClient(app)

DOCUMENT = """
obj a
gen f : a -> a
gen g : a -> a
term t1 = f ; id[a]
term t2 = f
term t3 = g
learner L A="a" B="a" l="f" r="id[]"
learner M A="a" B="a" l="g" r="id[]"
learner N A="a" B="a" l="f ; id[a]" r="id[]"
"""

INTERPRETATION = {
    "objects": {"a": {"elements": ["a0", "a1"]}},
    "morphisms": {
        "f": {"dom": {"elements": ["a0", "a1"]}, "cod": {"elements": ["a0", "a1"]},
              "map": {"a0": "a0", "a1": "a1"}},
        "g": {"dom": {"elements": ["a0", "a1"]}, "cod": {"elements": ["a0", "a1"]},
              "map": {"a0": "a0", "a1": "a0"}},
    },
}


def _identity_json(n=2):
    return identity(finset(n), unit_set()).to_api()


def _snake_json(n=2):
    return snake_composite(finset(n), unit_set()).to_api()


# ============================================================
# 系统
# ============================================================

class TestSystemAPI:
    def test_root(self):
        resp = client.get("/")
        assert resp.status_code == 200
        data = resp.json()
        assert data["name"] == "ExtLearn"
        assert "version" in data

    def test_health(self):
        resp = client.get("/api/v1/system/health")
        assert resp.status_code == 200
        assert resp.json()["status"] == "healthy"


# ============================================================
# 学习器
# ============================================================

class TestLearnerAPI:
    def test_identity(self):
        resp = client.post("/api/v1/learners/identity", json={"A": 2})
        assert resp.status_code == 200
        data = resp.json()
        assert data["A"]["elements"] == ["0", "1"]
        assert data["A'"]["elements"] == ["*"]
        assert data["P"]["elements"] == ["*"]

    def test_identity_with_alias(self):
        resp = client.post("/api/v1/learners/identity", json={"A": 1, "A'": 2})
        assert resp.status_code == 200
        assert len(resp.json()["A'"]["elements"]) == 2

    def test_identity_validation(self):
        resp = client.post("/api/v1/learners/identity", json={"A": 0})
        assert resp.status_code == 422

    def test_snake(self):
        resp = client.post("/api/v1/learners/snake", json={"A": 2})
        assert resp.status_code == 200
        assert len(resp.json()["P"]["elements"]) == 2

    def test_snake_check(self):
        resp = client.get("/api/v1/learners/snake-check?size=2&bound=3")
        assert resp.status_code == 200
        data = resp.json()
        assert data["passed"] is True
        assert data["closure_status"] == "no-within-bound"

    def test_compose_with_identity(self):
        resp = client.post("/api/v1/learners/compose",
                           json={"first": _identity_json(), "second": _snake_json()})
        assert resp.status_code == 200
        assert resp.json()["B"]["elements"] == ["0", "1"]

    def test_compose_mismatch(self):
        resp = client.post("/api/v1/learners/compose",
                           json={"first": _identity_json(2), "second": _identity_json(3)})
        assert resp.status_code == 400
        assert "detail" in resp.json()

    def test_dual_swaps_boundary(self):
        resp = client.post("/api/v1/learners/dual", json={"learner": _snake_json()})
        assert resp.status_code == 200
        data = resp.json()
        assert data["A"]["elements"] == ["*"]
        assert data["A'"]["elements"] == ["0", "1"]

    def test_to_int_and_back(self):
        resp = client.post("/api/v1/learners/to-int", json={"learner": _identity_json()})
        assert resp.status_code == 200
        m = resp.json()
        assert "I" in m
        resp = client.post("/api/v1/learners/to-coend", json={"learner": m})
        assert resp.status_code == 200
        assert "l" in resp.json()

    def test_double_dual(self):
        m = delayed_identity(finset(2)).to_api()
        resp = client.post("/api/v1/learners/double-dual", json={"learner": m})
        assert resp.status_code == 200
        assert len(resp.json()["P"]["elements"]) == 4


# ============================================================
# 等价
# ============================================================

class TestEquivAPI:
    def test_int_snake_and_delayed(self):
        resp = client.post("/api/v1/equiv", json={
            "kind": "int", "first": _snake_json(), "second": delayed_identity(finset(2)).to_api(),
        })
        assert resp.status_code == 200
        data = resp.json()
        assert data["related"] is True
        assert data["witness"]["kind"] == "bijection"

    def test_ext_onestep_snake_identity(self):
        resp = client.post("/api/v1/equiv", json={
            "kind": "ext", "first": _snake_json(), "second": _identity_json(),
        })
        assert resp.status_code == 200
        assert resp.json()["related"] is False

    def test_closure_undecided(self):
        resp = client.post("/api/v1/equiv", json={
            "kind": "ext-closure", "first": _snake_json(), "second": _identity_json(), "bound": 3,
        })
        assert resp.status_code == 200
        data = resp.json()
        assert "related" not in data
        assert data["closure"]["status"] == "no-within-bound"

    def test_bound_below_size(self):
        resp = client.post("/api/v1/equiv", json={
            "kind": "ext-closure", "first": _snake_json(), "second": _identity_json(), "bound": 1,
        })
        assert resp.status_code == 400


# ============================================================
# Atemp 语义
# ============================================================

class TestSemanticsAPI:
    def test_fhat_rel(self):
        resp = client.post("/api/v1/semantics/fhat", json={"learner": _snake_json()})
        assert resp.status_code == 200
        data = resp.json()
        assert data["model"] == "rel"
        assert data["pairs"] == [["(*,0)", "(*,0)"], ["(*,1)", "(*,1)"]]

    def test_fhat_count(self):
        resp = client.post("/api/v1/semantics/fhat", json={"learner": _identity_json(), "model": "count"})
        assert resp.status_code == 200
        assert resp.json()["entries"] == [["(*,0)", "(*,0)", 1], ["(*,1)", "(*,1)", 1]]

    def test_fhat_reserved_model(self):
        resp = client.post("/api/v1/semantics/fhat", json={"learner": _identity_json(), "model": "real"})
        assert resp.status_code == 501

    def test_fhat_unknown_model(self):
        resp = client.post("/api/v1/semantics/fhat", json={"learner": _identity_json(), "model": "quantum"})
        assert resp.status_code == 404

    def test_compare_consistent(self):
        resp = client.post("/api/v1/semantics/compare",
                           json={"first": _snake_json(), "second": _identity_json()})
        assert resp.status_code == 200
        data = resp.json()
        assert data["meaning"] == "consistent-with-equality"
        assert "separating_model" not in data


# ============================================================
# 自由 SMC
# ============================================================

class TestFreeSmcAPI:
    def test_check(self):
        resp = client.post("/api/v1/freesmc/check", json={"document": DOCUMENT})
        assert resp.status_code == 200
        data = resp.json()
        assert data["terms"]["t1"] == {"dom": ["a"], "cod": ["a"], "term": "f ; id[a]"}
        assert data["learners"] == ["L", "M", "N"]

    def test_syntax_error(self):
        resp = client.post("/api/v1/freesmc/check", json={"document": "obj a\nterm t = (id[a]\n"})
        assert resp.status_code == 400

    def test_eval_with_interpretation(self):
        resp = client.post("/api/v1/freesmc/eval", json={
            "document": DOCUMENT, "names": ["t3"], "interpretation": INTERPRETATION,
        })
        assert resp.status_code == 200
        assert resp.json()["map"] == {"a0": "a0", "a1": "a0"}

    def test_eval_missing_term(self):
        resp = client.post("/api/v1/freesmc/eval", json={"document": DOCUMENT, "names": ["nope"]})
        assert resp.status_code == 404

    def test_eq(self):
        resp = client.post("/api/v1/freesmc/eq", json={"document": DOCUMENT, "names": ["t1", "t2"]})
        assert resp.status_code == 200
        data = resp.json()
        assert data["equal"] is True
        assert data["canonical"][0] == data["canonical"][1]

    def test_eq_needs_two_names(self):
        resp = client.post("/api/v1/freesmc/eq", json={"document": DOCUMENT, "names": ["t1"]})
        assert resp.status_code == 422

    def test_atemp_distinguished(self):
        resp = client.post("/api/v1/freesmc/atemp", json={
            "document": DOCUMENT, "names": ["L", "M"], "interpretation": INTERPRETATION,
        })
        assert resp.status_code == 200
        data = resp.json()
        assert data["meaning"] == "distinguished"
        assert data["separating_index"] == 0

    def test_atemp_consistent(self):
        resp = client.post("/api/v1/freesmc/atemp", json={
            "document": DOCUMENT, "names": ["L", "N"], "samples": 5,
        })
        assert resp.status_code == 200
        data = resp.json()
        assert data["meaning"] == "consistent-with-equality"
        assert data["interpretations"] == 5


# ============================================================
# 光滑对偶
# ============================================================

class TestSmoothAPI:
    def test_neuron_dual(self):
        resp = client.post("/api/v1/smooth/neuron-dual", json={"dim": 2, "steps": 10, "seed": 1})
        assert resp.status_code == 200
        data = resp.json()
        assert data["lag_law_holds"] is True
        assert len(data["rows"]) == 10
        assert data["max_gradient_error"] <= 1e-6

    def test_neuron_dual_validation(self):
        resp = client.post("/api/v1/smooth/neuron-dual", json={"dim": 0})
        assert resp.status_code == 422
