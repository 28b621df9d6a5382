"""
ExtLearn 命令行测试
子命令的退出码、--json 输出与错误处理
"""
import csv
import json
import logging
import os
import sys
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from extlearn.cli import EXIT_ERROR, EXIT_OK, EXIT_UNDECIDED, dispatch, load_learner, log_level
from extlearn.config import get_config
from extlearn.models import IntLearner, Learner, finset, unit_set
from extlearn.core.learner import identity, snake_composite
from extlearn.core.intensional import delayed_identity

DOCUMENT = """
obj a
gen f : a -> a
gen g : a -> a
term t1 = f ; id[a]
term t2 = f
learner L A="a" B="a" l="f" r="id[]"
learner M A="a" B="a" l="g" r="id[]"
learner N A="a" B="a" l="f ; id[a]" r="id[]"
"""

INTERPRETATION = {
    "objects": {"a": {"elements": ["a0", "a1"]}},
    "morphisms": {
        "f": {"dom": {"elements": ["a0", "a1"]}, "cod": {"elements": ["a0", "a1"]},
              "map": {"a0": "a1", "a1": "a0"}},
        "g": {"dom": {"elements": ["a0", "a1"]}, "cod": {"elements": ["a0", "a1"]},
              "map": {"a0": "a0", "a1": "a1"}},
    },
}


@pytest.fixture
def files(tmp_path):
    """写出 identity / snake / delayed 学习器与签名文档"""
    paths = {}
    for name, m in [
        ("identity", identity(finset(2), unit_set())),
        ("snake", snake_composite(finset(2), unit_set())),
        ("delayed", delayed_identity(finset(2))),
        ("small", identity(finset(3), unit_set())),
    ]:
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(m.to_api()), encoding="utf-8")
        paths[name] = str(p)
    doc = tmp_path / "doc.smc"
    doc.write_text(DOCUMENT, encoding="utf-8")
    paths["doc"] = str(doc)
    interp = tmp_path / "interp.json"
    interp.write_text(json.dumps(INTERPRETATION), encoding="utf-8")
    paths["interp"] = str(interp)
    return paths


# ============================================================
# learner
# ============================================================

class TestLearnerCommand:
    def test_identity_json(self, capsys):
        assert dispatch(["learner", "identity", "--A", "2", "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["A"]["elements"] == ["0", "1"]
        assert data["A'"]["elements"] == ["*"]

    def test_identity_text(self, capsys):
        assert dispatch(["learner", "identity", "--A", "1"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "l:" in out and "r:" in out

    def test_missing_size(self, capsys):
        assert dispatch(["learner", "snake"]) == EXIT_ERROR
        assert "错误" in capsys.readouterr().err

    def test_snake_check(self, capsys):
        assert dispatch(["learner", "snake", "--A", "2", "--check", "--bound", "3", "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["passed"] is True

    def test_compose(self, files, capsys):
        assert dispatch(["learner", "compose", files["identity"], files["snake"], "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["B"]["elements"] == ["0", "1"]

    def test_compose_arity(self, files, capsys):
        assert dispatch(["learner", "compose", files["identity"]]) == EXIT_ERROR
        assert "2 个输入文件" in capsys.readouterr().err

    def test_compose_mismatch(self, files):
        assert dispatch(["learner", "compose", files["identity"], files["small"]]) == EXIT_ERROR

    def test_double_dual_of_intensional(self, files, capsys):
        assert dispatch(["learner", "double-dual", files["delayed"], "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert "I" in data
        assert len(data["P"]["elements"]) == 4

    def test_bad_json(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{not json", encoding="utf-8")
        assert dispatch(["learner", "dual", str(p)]) == EXIT_ERROR
        assert "JSON" in capsys.readouterr().err

    def test_invalid_learner_names_file(self, tmp_path, capsys):
        p = tmp_path / "partial.json"
        p.write_text(json.dumps({"A": {"elements": ["0"]}}), encoding="utf-8")
        assert dispatch(["learner", "dual", str(p)]) == EXIT_ERROR
        assert "partial.json" in capsys.readouterr().err

    def test_load_learner_kind(self, files):
        assert isinstance(load_learner(files["delayed"]), IntLearner)
        assert isinstance(load_learner(files["snake"]), Learner)


# ============================================================
# equiv / fhat / atemp-compare
# ============================================================

class TestEquivCommand:
    def test_int_related(self, files, capsys):
        assert dispatch(["equiv", "--kind", "int", files["snake"], files["delayed"], "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["related"] is True

    def test_ext_onestep_absent_is_decided(self, files, capsys):
        assert dispatch(["equiv", "--kind", "ext", files["snake"], files["identity"]]) == EXIT_OK
        assert "不相关" in capsys.readouterr().out

    def test_closure_undecided(self, files, capsys):
        code = dispatch(["equiv", "--kind", "ext-closure", files["snake"], files["identity"], "--bound", "3"])
        assert code == EXIT_UNDECIDED
        assert "core-behaviour" in capsys.readouterr().out

    def test_bound_too_small(self, files):
        code = dispatch(["equiv", "--kind", "ext-closure", files["snake"], files["identity"], "--bound", "1"])
        assert code == EXIT_ERROR

    def test_fhat(self, files, capsys):
        assert dispatch(["fhat", files["snake"], "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["pairs"] == [["(*,0)", "(*,0)"], ["(*,1)", "(*,1)"]]

    def test_fhat_count(self, files, capsys):
        assert dispatch(["fhat", files["identity"], "--model", "count"]) == EXIT_OK
        assert "(*,1) ~ (*,1) : 1" in capsys.readouterr().out

    def test_fhat_reserved_model(self, files, capsys):
        assert dispatch(["fhat", files["identity"], "--model", "real"]) == EXIT_ERROR

    def test_atemp_compare_consistent(self, files, capsys):
        code = dispatch(["atemp-compare", files["snake"], files["identity"], "--model", "rel", "--model", "count"])
        assert code == EXIT_UNDECIDED
        assert "consistent-with-equality" in capsys.readouterr().out


# ============================================================
# freesmc
# ============================================================

class TestFreeSmcCommand:
    def test_check(self, files, capsys):
        assert dispatch(["freesmc", "check", files["doc"]]) == EXIT_OK
        out = capsys.readouterr().out
        assert "t1 : a -> a" in out
        assert "learner L: 类型正确" in out

    def test_eq(self, files, capsys):
        assert dispatch(["freesmc", "eq", files["doc"], "t1", "t2", "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["equal"] is True

    def test_eval(self, files, capsys):
        assert dispatch(["freesmc", "eval", files["doc"], "t1", "--interp", files["interp"], "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["map"] == {"a0": "a1", "a1": "a0"}

    def test_eval_unknown_term(self, files, capsys):
        assert dispatch(["freesmc", "eval", files["doc"], "zz"]) == EXIT_ERROR
        assert "zz" in capsys.readouterr().err

    def test_atemp_distinguished(self, files, capsys):
        code = dispatch(["freesmc", "atemp", files["doc"], "L", "M", "--interp", files["interp"]])
        assert code == EXIT_OK
        assert "distinguished" in capsys.readouterr().out

    def test_atemp_consistent(self, files):
        code = dispatch(["freesmc", "atemp", files["doc"], "L", "N", "--samples", "3", "--seed", "4"])
        assert code == EXIT_UNDECIDED

    def test_syntax_error(self, tmp_path, capsys):
        doc = tmp_path / "bad.smc"
        doc.write_text("obj a\nterm t = id[a] ;\n", encoding="utf-8")
        assert dispatch(["freesmc", "check", str(doc)]) == EXIT_ERROR
        assert "第 2 行" in capsys.readouterr().err


# ============================================================
# smooth
# ============================================================

class TestSmoothCommand:
    def test_neuron_dual_csv(self, tmp_path, capsys):
        out = tmp_path / "lag.csv"
        code = dispatch(["smooth", "neuron-dual", "--dim", "2", "--steps", "5", "--seed", "3", "--csv", str(out)])
        assert code == EXIT_OK
        with open(out, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["step", "original", "dual", "double_dual", "lag_ok"]
        assert len(rows) == 6
        assert all(r[4] == "1" for r in rows[1:])
        assert "成立" in capsys.readouterr().out

    def test_seed_defaults_to_config(self, monkeypatch, capsys):
        monkeypatch.setattr(get_config().search, "random_seed", 11)
        assert dispatch(["smooth", "neuron-dual", "--dim", "1", "--steps", "2", "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["seed"] == 11

    def test_neuron_dual_json(self, capsys):
        assert dispatch(["smooth", "neuron-dual", "--dim", "1", "--steps", "3", "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["lag_law_holds"] is True
        assert data["activation"] == "logistic"


# ============================================================
# 日志级别
# ============================================================

class TestLogLevel:
    def test_verbose_is_debug(self):
        assert log_level(True) == logging.DEBUG

    def test_falls_back_to_config(self, monkeypatch):
        monkeypatch.setattr(get_config(), "log_level", "error")
        assert log_level(False) == logging.ERROR

    def test_unknown_name_is_info(self, monkeypatch):
        monkeypatch.setattr(get_config(), "log_level", "chatty")
        assert log_level(False) == logging.INFO
