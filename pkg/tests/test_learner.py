"""
ExtLearn 学习器核心测试
范畴律（差一个内涵等价）、对偶的严格性、cup/cap、ι 与 optic 嵌入、蛇形复合与分解
"""
import itertools
import os
import sys
import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from extlearn.config import get_config
from extlearn.errors import BoundaryMismatchError
from extlearn.models import ClosureStatus, FinFun, Obj, finset, product, unit_set
from extlearn.core.finbase import compose_fun, id_fun, is_bijection, rel_identity
from extlearn.core.learner import (
    cap, cap_of, compose, compose_all, compose_optics, cup, cup_of, decompose, dual, from_optic,
    identity, identity_on, iota_pair, make_rng, obj_tensor, random_fun, random_learner,
    snake_composite, dual_snake_composite, swap_delay_learner, symmetry_learner, tensor,
)
from extlearn.core.intensional import delayed_identity, to_coend
from extlearn.core.equivalence import (
    coend_equiv, coend_slide, int_equiv, validate_chain, validate_witness,
)
from extlearn.core.atemp import fhat_rel


def assert_int_equivalent(m1, m2):
    w = int_equiv(m1, m2)
    assert w is not None
    assert validate_witness(m1, m2, w)


# ============================================================
# 范畴律
# ============================================================

class TestCategoryLaws:
    def setup_method(self):
        self.rng = np.random.default_rng(7)
        self.A, self.Ap = finset(2, "a"), finset(2, "x")
        self.B, self.Bp = finset(2, "b"), finset(1, "y")
        self.C, self.Cp = finset(3, "c"), finset(2, "z")

    def _m(self, A, Ap, B, Bp, p=2, q=2):
        return random_learner(self.rng, A, Ap, B, Bp, finset(p, "p"), finset(q, "q"))

    def test_left_unit(self):
        m = self._m(self.A, self.Ap, self.B, self.Bp)
        assert_int_equivalent(compose(identity(self.A, self.Ap), m), m)

    def test_right_unit(self):
        m = self._m(self.A, self.Ap, self.B, self.Bp)
        assert_int_equivalent(compose(m, identity(self.B, self.Bp)), m)

    def test_associativity(self):
        m1 = self._m(self.A, self.Ap, self.B, self.Bp)
        m2 = self._m(self.B, self.Bp, self.C, self.Cp, p=1)
        m3 = self._m(self.C, self.Cp, self.A, self.Ap, p=2, q=1)
        left = compose(compose(m1, m2), m3)
        right = compose(m1, compose(m2, m3))
        assert_int_equivalent(left, right)

    def test_compose_all_is_left_fold(self):
        m1 = self._m(self.A, self.Ap, self.B, self.Bp)
        m2 = self._m(self.B, self.Bp, self.C, self.Cp)
        m3 = self._m(self.C, self.Cp, self.A, self.Ap)
        assert compose_all([m1, m2, m3]) == compose(compose(m1, m2), m3)

    def test_compose_boundary_mismatch(self):
        m1 = self._m(self.A, self.Ap, self.B, self.Bp)
        with pytest.raises(BoundaryMismatchError):
            compose(m1, m1)

    def test_compose_all_empty(self):
        with pytest.raises(BoundaryMismatchError):
            compose_all([])

    def test_compose_parameter_order(self):
        m1 = self._m(self.A, self.Ap, self.B, self.Bp, p=2, q=3)
        m2 = self._m(self.B, self.Bp, self.C, self.Cp, p=1, q=2)
        c = compose(m1, m2)
        assert c.P == product(m2.P, m1.P)
        assert c.Q == product(m1.Q, m2.Q)


# ============================================================
# 张量与对称
# ============================================================

class TestTensor:
    def setup_method(self):
        self.rng = np.random.default_rng(11)
        self.x = Obj(A=finset(2, "a"), Ap=finset(1, "x"))
        self.y = Obj(A=finset(1, "b"), Ap=finset(2, "y"))

    def test_tensor_boundary(self):
        m1 = random_learner(self.rng, self.x.A, self.x.Ap, self.y.A, self.y.Ap, finset(1), finset(2))
        m2 = random_learner(self.rng, self.y.A, self.y.Ap, self.x.A, self.x.Ap, finset(2), finset(1))
        t = tensor(m1, m2)
        assert t.A == product(m1.A, m2.A)
        assert t.Ap == product(m2.Ap, m1.Ap)
        assert t.Bp == product(m2.Bp, m1.Bp)
        assert t.P == product(m1.P, m2.P)

    def test_obj_tensor(self):
        xy = obj_tensor(self.x, self.y)
        assert xy.A == product(self.x.A, self.y.A)
        assert xy.Ap == product(self.y.Ap, self.x.Ap)

    def test_symmetry_is_involutive(self):
        s = compose(symmetry_learner(self.x, self.y), symmetry_learner(self.y, self.x))
        assert_int_equivalent(s, identity_on(obj_tensor(self.x, self.y)))


# ============================================================
# 对偶
# ============================================================

class TestDual:
    def setup_method(self):
        self.rng = np.random.default_rng(3)
        self.A, self.Ap = finset(2, "a"), finset(3, "x")
        self.B, self.Bp = finset(2, "b"), finset(2, "y")

    def test_involution(self):
        m = random_learner(self.rng, self.A, self.Ap, self.B, self.Bp, finset(2), finset(3))
        assert dual(dual(m)) == m

    def test_boundary_swap(self):
        m = random_learner(self.rng, self.A, self.Ap, self.B, self.Bp, finset(2), finset(3))
        d = dual(m)
        assert (d.A, d.Ap, d.B, d.Bp) == (self.Bp, self.B, self.Ap, self.A)
        assert (d.P, d.Q) == (m.Q, m.P)

    def test_dual_reverses_composition_strictly(self):
        m1 = random_learner(self.rng, self.A, self.Ap, self.B, self.Bp, finset(2), finset(2))
        m2 = random_learner(self.rng, self.B, self.Bp, self.A, self.Ap, finset(3), finset(1))
        assert dual(compose(m1, m2)) == compose(dual(m2), dual(m1))

    @pytest.mark.parametrize("n,k", list(itertools.product([1, 2, 3], repeat=2)))
    def test_dual_of_cup_and_cap(self, n, k):
        A, Ap = finset(n, "a"), finset(k, "x")
        assert dual(cup(A, Ap)) == cap(Ap, A)
        assert dual(cap(A, Ap)) == cup(Ap, A)


# ============================================================
# ι 与 optic
# ============================================================

class TestEmbeddings:
    def setup_method(self):
        self.rng = np.random.default_rng(5)
        self.A, self.B, self.C = finset(2, "a"), finset(3, "b"), finset(2, "c")
        self.Ap, self.Bp, self.Cp = finset(2, "x"), finset(2, "y"), finset(1, "z")

    def test_iota_is_functorial(self):
        f1 = random_fun(self.rng, self.A, self.B)
        f2 = random_fun(self.rng, self.B, self.C)
        g1 = random_fun(self.rng, self.Bp, self.Ap)
        g2 = random_fun(self.rng, self.Cp, self.Bp)
        lhs = compose(iota_pair(f1, g1), iota_pair(f2, g2))
        rhs = iota_pair(compose_fun(f1, f2), compose_fun(g2, g1))
        assert_int_equivalent(lhs, rhs)

    def test_iota_of_identities(self):
        assert_int_equivalent(
            iota_pair(id_fun(self.A), id_fun(self.Ap)), identity(self.A, self.Ap))

    def test_optic_composition(self):
        M1, M2 = finset(2, "m"), finset(2, "n")
        first = (M1,
                 random_fun(self.rng, self.A, product(M1, self.B)),
                 random_fun(self.rng, product(M1, self.Bp), self.Ap))
        second = (M2,
                  random_fun(self.rng, self.B, product(M2, self.C)),
                  random_fun(self.rng, product(M2, self.Cp), self.Bp))
        composed = from_optic(*compose_optics(first, second))
        assert_int_equivalent(composed, compose(from_optic(*first), from_optic(*second)))

    def test_optic_boundary(self):
        M = finset(2, "m")
        m = from_optic(M, random_fun(self.rng, self.A, product(M, self.B)),
                       random_fun(self.rng, product(M, self.Bp), self.Ap))
        assert (m.A, m.Ap, m.B, m.Bp) == (self.A, self.Ap, self.B, self.Bp)
        assert m.P == unit_set() and m.Q == M


# ============================================================
# 蛇形复合
# ============================================================

class TestSnake:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_snake_is_swap_delay(self, n):
        A = finset(n)
        assert_int_equivalent(snake_composite(A, unit_set()), swap_delay_learner(A))

    @pytest.mark.parametrize("n", [2, 3])
    def test_snake_is_delayed_identity(self, n):
        A = finset(n)
        assert_int_equivalent(snake_composite(A, unit_set()), to_coend(delayed_identity(A)))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_snake_fhat_is_identity(self, n):
        A = finset(n)
        assert fhat_rel(snake_composite(A, unit_set())) == rel_identity(product(unit_set(), A))

    def test_dual_snake_boundary(self):
        A, Ap = finset(2), finset(2, "x")
        s = dual_snake_composite(A, Ap)
        assert (s.A, s.Ap, s.B, s.Bp) == (A, Ap, A, Ap)

    def test_swap_delay_tables(self):
        s = swap_delay_learner(finset(2))
        assert s.l.map["(0,1)"] == "(1,0)"
        assert s.r.map["(1,*)"] == "(1,*)"


# ============================================================
# 随机实例
# ============================================================

class TestRandom:
    def test_default_rng_uses_configured_seed(self, monkeypatch):
        monkeypatch.setattr(get_config().search, "random_seed", 5)
        args = (finset(2, "a"), finset(1, "x"), finset(2, "b"), finset(2, "y"), finset(2, "p"), finset(2, "q"))
        assert random_learner(None, *args) == random_learner(np.random.default_rng(5), *args)
        assert make_rng().integers(0, 1000) == np.random.default_rng(5).integers(0, 1000)
        assert make_rng(3).integers(0, 1000) == np.random.default_rng(3).integers(0, 1000)


# ============================================================
# 分解
# ============================================================

class TestDecompose:
    def setup_method(self):
        self.rng = np.random.default_rng(13)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_decompose_is_int_equivalent(self, seed):
        rng = np.random.default_rng(seed)
        m = random_learner(rng, finset(2, "a"), finset(2, "x"), finset(2, "b"), finset(1, "y"),
                           finset(2, "p"), finset(3, "q"))
        d = decompose(m)
        assert (d.A, d.Ap, d.B, d.Bp) == (m.A, m.Ap, m.B, m.Bp)
        assert_int_equivalent(d, m)

    def test_decompose_preserves_fhat(self):
        m = random_learner(self.rng, finset(2, "a"), finset(1, "x"), finset(2, "b"), finset(2, "y"),
                           finset(2, "p"), finset(2, "q"))
        assert fhat_rel(decompose(m)) == fhat_rel(m)

    def test_learner_components_checked(self):
        m = swap_delay_learner(finset(2))
        with pytest.raises(ValueError):
            type(m)(A=m.A, Ap=m.Ap, B=m.B, Bp=m.Bp, P=m.P, Q=m.Q, l=m.r, r=m.r)


# ============================================================
# η、ε 的超自然性与对称的自然性
# ============================================================

def all_funs(dom, cod):
    for images in itertools.product(cod.elements, repeat=dom.size):
        yield FinFun(dom=dom, cod=cod, map=dict(zip(dom.elements, images)))


def cup_sides(h, x, y):
    """η_X ; (h ⊗ id_{X*}) 与 η_Y ; (id_Y ⊗ h*)"""
    lhs = compose(cup_of(x), tensor(h, identity_on(x.dual())))
    rhs = compose(cup_of(y), tensor(identity_on(y), dual(h)))
    return lhs, rhs


def cap_sides(h, x, y):
    """(id_{Y*} ⊗ h) ; ε_Y 与 (h* ⊗ id_X) ; ε_X"""
    lhs = compose(tensor(identity_on(y.dual()), h), cap_of(y))
    rhs = compose(tensor(dual(h), identity_on(x)), cap_of(x))
    return lhs, rhs


def iotas(x, y):
    for f in all_funs(x.A, y.A):
        for g in all_funs(y.Ap, x.Ap):
            yield f, g, iota_pair(f, g)


def objects(sizes):
    a, ap, b, bp = sizes
    return Obj(A=finset(a, "a"), Ap=finset(ap, "x")), Obj(A=finset(b, "b"), Ap=finset(bp, "y"))


def assert_coend_equivalent(lhs, rhs):
    result = coend_equiv(lhs, rhs)
    assert result.status == ClosureStatus.YES
    assert validate_chain(result)


class TestExtranaturality:
    @pytest.mark.parametrize("sizes", list(itertools.product([1, 2], repeat=4)))
    def test_cup_extranatural(self, sizes):
        x, y = objects(sizes)
        for _f, _g, h in iotas(x, y):
            lhs, rhs = cup_sides(h, x, y)
            assert (lhs.A, lhs.Ap, lhs.B, lhs.Bp) == (rhs.A, rhs.Ap, rhs.B, rhs.Bp)
            assert_coend_equivalent(lhs, rhs)
            assert fhat_rel(lhs) == fhat_rel(rhs)
            assert fhat_rel(dual(lhs)) == fhat_rel(dual(rhs))

    @pytest.mark.parametrize("sizes", list(itertools.product([1, 2], repeat=4)))
    def test_cap_extranatural(self, sizes):
        x, y = objects(sizes)
        for _f, _g, h in iotas(x, y):
            lhs, rhs = cap_sides(h, x, y)
            assert (lhs.A, lhs.Ap, lhs.B, lhs.Bp) == (rhs.A, rhs.Ap, rhs.B, rhs.Bp)
            assert_coend_equivalent(lhs, rhs)
            assert fhat_rel(lhs) == fhat_rel(rhs)

    def test_cup_needs_more_than_one_slide(self):
        x, y = objects((1, 1, 2, 2))
        f = FinFun(dom=x.A, cod=y.A, map={"a0": "b0"})
        g = FinFun(dom=y.Ap, cod=x.Ap, map={"y0": "x0", "y1": "x0"})
        lhs, rhs = cup_sides(iota_pair(f, g), x, y)
        assert (lhs.P.size, rhs.P.size) == (1, 4)
        assert coend_slide(lhs, rhs) is None and coend_slide(rhs, lhs) is None
        result = coend_equiv(lhs, rhs)
        assert result.status == ClosureStatus.YES
        assert len(result.chain) > 1
        assert validate_chain(result)

    @pytest.mark.parametrize("n,k", [(1, 1), (1, 2), (2, 1), (2, 2)])
    def test_cup_extranatural_for_isomorphisms(self, n, k):
        x = Obj(A=finset(n, "a"), Ap=finset(k, "x"))
        y = Obj(A=finset(n, "b"), Ap=finset(k, "y"))
        for f, g, h in iotas(x, y):
            if not (is_bijection(f) and is_bijection(g)):
                continue
            assert_int_equivalent(*cup_sides(h, x, y))

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_symmetry_is_natural(self, seed):
        rng = np.random.default_rng(seed)
        x, x2 = Obj(A=finset(2, "a"), Ap=finset(1, "x")), Obj(A=finset(2, "c"), Ap=finset(2, "z"))
        y, y2 = Obj(A=finset(1, "b"), Ap=finset(2, "y")), Obj(A=finset(2, "d"), Ap=finset(1, "w"))
        h = iota_pair(random_fun(rng, x.A, x2.A), random_fun(rng, x2.Ap, x.Ap))
        k = iota_pair(random_fun(rng, y.A, y2.A), random_fun(rng, y2.Ap, y.Ap))
        lhs = compose(symmetry_learner(x, y), tensor(k, h))
        rhs = compose(tensor(h, k), symmetry_learner(x2, y2))
        assert_int_equivalent(lhs, rhs)
