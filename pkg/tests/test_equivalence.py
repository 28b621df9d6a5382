"""
ExtLearn 等价关系测试
内涵等价、外延一步关系、2-态射、满射关系、余端滑动、闭包链与蛇形复合检查
"""
import os
import sys
import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from extlearn.config import get_config
from extlearn.errors import BoundaryMismatchError, ExtLearnError, SearchBoundError
from extlearn.models import (
    ClosureResult, ClosureStatus, EquivKind, FinFun, Witness, WitnessKind, finset, unit_set,
)
from extlearn.core.finbase import id_fun
from extlearn.core.learner import identity, random_learner, snake_composite
from extlearn.core.intensional import (
    delayed_identity, implement, make_int_learner, random_int_learner, relabel_params,
    request, to_coend, to_int, update,
)
from extlearn.core.equivalence import (
    behaviour_core, canonical_key, check_equivalence, coend_equiv, coend_slide,
    diagonal_filler, ext_equiv, ext_onestep, int_equiv, normal_form_chain, snake_check,
    surj_equiv, surj_onestep, two_morphism, validate_chain, validate_witness,
)


def with_copied_state(m):
    """在 m 上追加一个与 p0 行为相同、但不在 U 的像中的状态"""
    P = finset(m.P.size + 1, "p")
    extra = P.elements[-1]

    def orig(p):
        return m.P.elements[0] if p == extra else p

    return make_int_learner(
        m.A, m.Ap, m.B, m.Bp, P,
        lambda p, a: implement(m, orig(p), a),
        lambda p, a, bp: update(m, orig(p), a, bp),
        lambda p, a, bp: request(m, orig(p), a, bp),
    )


# ============================================================
# 一步关系
# ============================================================

class TestOneStep:
    def setup_method(self):
        self.rng = np.random.default_rng(17)
        self.m = random_int_learner(
            self.rng, finset(2, "a"), finset(2, "x"), finset(2, "b"), finset(1, "y"), finset(2, "p"))
        self.big = with_copied_state(self.m)

    def test_int_equiv_on_relabel(self):
        f = FinFun(dom=self.m.P, cod=finset(2, "s"), map={"p0": "s1", "p1": "s0"})
        moved = relabel_params(self.m, f)
        w = int_equiv(self.m, moved)
        assert w is not None
        assert w.kind == WitnessKind.BIJECTION
        assert validate_witness(self.m, moved, w)

    def test_int_equiv_needs_same_size(self):
        assert int_equiv(self.big, self.m) is None

    def test_ext_onestep_collapses_copy(self):
        w = ext_onestep(self.big, self.m)
        assert w is not None
        assert w.kind == WitnessKind.DIAGONAL_FILLER
        assert validate_witness(self.big, self.m, w)

    def test_diagonal_filler_for_given_map(self):
        f = FinFun(dom=self.big.P, cod=self.m.P, map={"p0": "p0", "p1": "p1", "p2": "p0"})
        assert diagonal_filler(self.big, self.m, f) is not None

    def test_two_morphism_and_surjection(self):
        w = two_morphism(self.big, self.m)
        assert w is not None and validate_witness(self.big, self.m, w)
        s = surj_onestep(self.big, self.m)
        assert s is not None and s.kind == WitnessKind.SURJECTIVE
        assert validate_witness(self.big, self.m, s)

    def test_tampered_witness_rejected(self):
        d = delayed_identity(finset(2))
        swap = FinFun(dom=d.P, cod=d.P, map={"0": "1", "1": "0"})
        assert not validate_witness(d, d, Witness(kind=WitnessKind.BIJECTION, f=swap))
        assert validate_witness(d, d, Witness(kind=WitnessKind.BIJECTION, f=id_fun(d.P)))

    def test_boundary_mismatch(self):
        other = delayed_identity(finset(2))
        with pytest.raises(BoundaryMismatchError):
            int_equiv(self.m, other)

    def test_bijection_size_limit(self, monkeypatch):
        monkeypatch.setattr(get_config().search, "max_bijection_size", 1)
        with pytest.raises(SearchBoundError):
            int_equiv(self.m, self.m)
        with pytest.raises(SearchBoundError):
            check_equivalence("int", self.m, self.m)
        assert ext_onestep(self.big, self.m) is not None

    def test_canonical_key_ignores_labels(self):
        f = FinFun(dom=self.m.P, cod=finset(2, "s"), map={"p0": "s1", "p1": "s0"})
        assert canonical_key(self.m) == canonical_key(relabel_params(self.m, f))


# ============================================================
# 规范化链
# ============================================================

class TestNormalForm:
    def setup_method(self):
        rng = np.random.default_rng(2)
        self.m = random_int_learner(
            rng, finset(2, "a"), finset(1, "x"), finset(2, "b"), finset(2, "y"), finset(3, "p"))

    def test_chain_validates(self):
        big = with_copied_state(self.m)
        learners, links = normal_form_chain(big)
        assert len(learners) == len(links) + 1
        assert learners[-1].P.size <= self.m.P.size
        result = ClosureResult(status=ClosureStatus.YES, learners=learners, chain=links)
        assert validate_chain(result)

    def test_behaviour_core_of_delayed_identity(self):
        A = finset(3)
        assert behaviour_core(delayed_identity(A)) == A

    def test_validate_chain_rejects_broken_link(self):
        big = with_copied_state(self.m)
        learners, links = normal_form_chain(big)
        broken = ClosureResult(status=ClosureStatus.YES, learners=learners[:1], chain=links)
        assert not validate_chain(broken)


# ============================================================
# 闭包
# ============================================================

class TestClosure:
    def setup_method(self):
        self.A = finset(2)
        self.snake = snake_composite(self.A, unit_set())
        self.ident = identity(self.A, unit_set())

    def test_snake_has_no_onestep_to_identity(self):
        assert ext_onestep(self.snake, self.ident) is None
        assert ext_onestep(self.ident, self.snake) is None

    def test_snake_closure_not_within_bound(self):
        result = ext_equiv(self.snake, self.ident, bound=3)
        assert result.status == ClosureStatus.NO_WITHIN_BOUND
        assert result.certificate == "core-behaviour"
        assert result.chain == []

    def test_closure_yes_has_valid_chain(self):
        rng = np.random.default_rng(9)
        m = random_int_learner(rng, finset(2, "a"), finset(2, "x"), finset(1, "b"), finset(2, "y"),
                               finset(2, "p"))
        result = ext_equiv(with_copied_state(m), m, bound=3)
        assert result.status == ClosureStatus.YES
        assert validate_chain(result)

    def test_bound_below_size(self):
        with pytest.raises(SearchBoundError):
            ext_equiv(self.snake, self.ident, bound=1)

    def test_surj_equiv_distinguishes_snake(self):
        result = surj_equiv(self.snake, self.ident)
        assert result.status == ClosureStatus.NO_WITHIN_BOUND

    def test_surj_equiv_common_quotient(self):
        rng = np.random.default_rng(1)
        m = random_int_learner(rng, finset(2, "a"), finset(1, "x"), finset(2, "b"), finset(1, "y"),
                               finset(2, "p"))
        result = surj_equiv(with_copied_state(m), with_copied_state(with_copied_state(m)))
        assert result.status == ClosureStatus.YES
        assert validate_chain(result)


# ============================================================
# 余端滑动
# ============================================================

class TestCoend:
    def setup_method(self):
        rng = np.random.default_rng(6)
        self.L = random_learner(rng, finset(2, "a"), finset(2, "x"), finset(2, "b"), finset(1, "y"),
                                finset(2, "p"), finset(3, "q"))

    def test_slide_to_intensional_form(self):
        T = to_coend(to_int(self.L))
        w = coend_slide(self.L, T)
        assert w is not None
        assert w.kind == WitnessKind.COEND_SLIDE
        assert validate_witness(self.L, T, w)

    def test_slide_needs_coend_representatives(self):
        T = to_coend(to_int(self.L))
        w = coend_slide(self.L, T)
        assert not validate_witness(to_int(self.L), to_int(T), w)

    def test_coend_equiv_reflexive(self):
        result = coend_equiv(self.L, self.L)
        assert result.status == ClosureStatus.YES
        assert validate_chain(result)

    def test_coend_equiv_via_fhat(self):
        A = finset(2)
        other = to_coend(delayed_identity(A))
        result = coend_equiv(identity(A, unit_set()), other, bound=4)
        assert result.status in (ClosureStatus.NO_WITHIN_BOUND, ClosureStatus.UNKNOWN)


# ============================================================
# 汇总入口
# ============================================================

class TestCheckEquivalence:
    def setup_method(self):
        self.A = finset(2)
        self.snake = snake_composite(self.A, unit_set())
        self.ident = identity(self.A, unit_set())

    def test_int(self):
        report = check_equivalence(EquivKind.INT, self.snake, to_coend(delayed_identity(self.A)))
        assert report.related is True
        assert report.witness is not None

    def test_ext_onestep_none_is_decided(self):
        report = check_equivalence("ext", self.snake, self.ident)
        assert report.related is False

    def test_ext_closure_undecided(self):
        report = check_equivalence("ext-closure", self.snake, self.ident, bound=3)
        assert report.related is None
        assert report.closure.status == ClosureStatus.NO_WITHIN_BOUND

    def test_surj_is_exact(self):
        report = check_equivalence("surj", self.snake, self.ident)
        assert report.related is False

    def test_coend_requires_representatives(self):
        with pytest.raises(ExtLearnError):
            check_equivalence("coend", to_int(self.snake), to_int(self.ident))


# ============================================================
# 蛇形复合检查
# ============================================================

class TestSnakeCheck:
    @pytest.mark.parametrize("size", [1, 2, 3])
    def test_passes(self, size):
        report = snake_check(size, bound=3)
        assert report.passed
        assert report.int_equiv_delayed
        assert report.fhat_is_identity

    def test_size_two_details(self):
        report = snake_check(2)
        assert not report.ext_onestep_to_identity
        assert not report.ext_onestep_from_identity
        assert report.closure_status == ClosureStatus.NO_WITHIN_BOUND

    def test_rejects_empty(self):
        with pytest.raises(ExtLearnError):
            snake_check(0)
