"""
ExtLearn 有限基范畴测试
标签编解码、FinSet/FinFun/FinRel 校验、结构同构与 FinRel 的紧闭结构
"""
import os
import sys
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from extlearn.errors import BoundaryMismatchError, LabelError
from extlearn.models import (
    FinFun, FinRel, FinSet, finset, is_well_formed, pair, product, product_all, unit_set, unpair,
)
from extlearn.core.finbase import (
    associator, associator_inv, compose_fun, compose_funs, constant_fun, fun_product,
    graph_rel, id_fun, inverse, is_bijection, is_surjection,
    rel_cap, rel_compose, rel_compose_all, rel_converse, rel_cup, rel_identity,
    rel_pairs_sorted, rel_snake, rel_snake_dual, rel_tensor,
    structural, symmetry, unitor_left, unitor_left_inv, unitor_right,
)


# ============================================================
# 标签
# ============================================================

class TestLabels:
    def test_pair_and_unpair(self):
        assert pair("a", "b") == "(a,b)"
        assert unpair("(a,b)") == ("a", "b")

    def test_unpair_nested(self):
        assert unpair("((a,b),c)") == ("(a,b)", "c")
        assert unpair("(a,(b,c))") == ("a", "(b,c)")

    def test_unpair_rejects_atoms(self):
        with pytest.raises(LabelError):
            unpair("abc")
        with pytest.raises(LabelError):
            unpair("(a)")

    def test_well_formed(self):
        assert is_well_formed("x0")
        assert is_well_formed("((a,b),*)")
        assert not is_well_formed("a,b")
        assert not is_well_formed("")
        assert not is_well_formed("(a,b")

    def test_finset_rejects_duplicates(self):
        with pytest.raises(ValueError):
            FinSet(elements=("a", "a"))

    def test_finset_rejects_reserved_characters(self):
        with pytest.raises(ValueError):
            FinSet(elements=("a,b",))

    def test_product_order(self):
        s = product(finset(2), finset(2, "x"))
        assert s.elements == ("(0,x0)", "(0,x1)", "(1,x0)", "(1,x1)")

    def test_product_all_empty_is_unit(self):
        assert product_all([]) == unit_set()
        assert product_all([finset(2)]) == finset(2)


# ============================================================
# 函数
# ============================================================

class TestFunctions:
    def setup_method(self):
        self.A = finset(2)
        self.B = finset(3, "b")

    def test_finfun_must_be_total(self):
        with pytest.raises(ValueError):
            FinFun(dom=self.A, cod=self.B, map={"0": "b0"})

    def test_finfun_rejects_stray_values(self):
        with pytest.raises(ValueError):
            FinFun(dom=self.A, cod=self.B, map={"0": "b0", "1": "zz"})

    def test_compose_order(self):
        f = FinFun(dom=self.A, cod=self.B, map={"0": "b2", "1": "b0"})
        g = constant_fun(self.B, self.A, "1")
        assert compose_fun(f, g).map == {"0": "1", "1": "1"}

    def test_compose_mismatch(self):
        with pytest.raises(BoundaryMismatchError):
            compose_fun(id_fun(self.A), id_fun(self.B))

    def test_symmetry_is_involutive(self):
        s = compose_fun(symmetry(self.A, self.B), symmetry(self.B, self.A))
        assert s == id_fun(product(self.A, self.B))

    def test_inverse(self):
        s = symmetry(self.A, self.B)
        assert is_bijection(s)
        assert inverse(s) == symmetry(self.B, self.A)
        with pytest.raises(LabelError):
            inverse(constant_fun(self.A, self.B, "b0"))

    def test_surjection(self):
        assert not is_surjection(constant_fun(self.B, self.A, "0"))
        f = FinFun(dom=self.B, cod=self.A, map={"b0": "0", "b1": "1", "b2": "1"})
        assert is_surjection(f)

    def test_fun_product(self):
        f = fun_product(id_fun(self.A), constant_fun(self.B, self.A, "0"))
        assert f.map[pair("1", "b2")] == pair("1", "0")

    def test_associator_roundtrip(self):
        x, y, z = finset(2), finset(1, "y"), finset(2, "z")
        assert compose_funs(associator(x, y, z), associator_inv(x, y, z)) == id_fun(
            product(product(x, y), z))


# ============================================================
# 结构同构
# ============================================================

class TestStructural:
    def setup_method(self):
        self.A = finset(2)
        self.B = finset(2, "b")

    def test_swap(self):
        assert structural((self.A, self.B), (self.B, self.A), [1, 0]) == symmetry(self.A, self.B)

    def test_insert_unit(self):
        assert structural(self.A, (unit_set(), self.A), [None, 0]) == unitor_left_inv(self.A)

    def test_drop_unit(self):
        assert structural((self.A, unit_set()), self.A, [0]) == unitor_right(self.A)

    def test_cannot_drop_non_unit(self):
        with pytest.raises(BoundaryMismatchError):
            structural((self.A, self.B), self.A, [0])

    def test_cannot_reuse_leaf(self):
        with pytest.raises(BoundaryMismatchError):
            structural((self.A, self.B), (self.A, self.A), [0, 0])


# ============================================================
# 关系
# ============================================================

class TestRelations:
    def test_graph_is_functorial(self):
        A, B = finset(2), finset(3, "b")
        f = FinFun(dom=A, cod=B, map={"0": "b1", "1": "b1"})
        g = FinFun(dom=B, cod=A, map={"b0": "0", "b1": "1", "b2": "0"})
        assert rel_compose(graph_rel(f), graph_rel(g)) == graph_rel(compose_fun(f, g))

    def test_pairs_normalized(self):
        A = finset(2)
        r = FinRel(dom=A, cod=A, pairs=(("1", "0"), ("0", "1"), ("1", "0")))
        assert r.pairs == (("0", "1"), ("1", "0"))
        assert rel_pairs_sorted(r) == [["0", "1"], ["1", "0"]]

    def test_rejects_stray_pairs(self):
        with pytest.raises(ValueError):
            FinRel(dom=finset(1), cod=finset(1), pairs=(("0", "9"),))

    def test_converse(self):
        A = finset(3)
        f = FinFun(dom=A, cod=A, map={"0": "1", "1": "2", "2": "2"})
        r = graph_rel(f)
        assert rel_converse(rel_converse(r)) == r
        assert ("2", "1") in rel_converse(r).pairs

    def test_tensor_of_identities(self):
        A, B = finset(2), finset(3)
        assert rel_tensor(rel_identity(A), rel_identity(B)) == rel_identity(product(A, B))

    def test_cup_and_cap_are_diagonal(self):
        A = finset(2)
        assert rel_cup(A).pairs == (("*", "(0,0)"), ("*", "(1,1)"))
        assert rel_converse(rel_cup(A)) == rel_cap(A)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_snakes(self, n):
        x = finset(n)
        assert rel_snake(x) == rel_identity(x)
        assert rel_snake_dual(x) == rel_identity(x)

    def test_compose_all_with_unitors(self):
        A = finset(2)
        r = rel_compose_all(graph_rel(unitor_left_inv(A)), graph_rel(unitor_left(A)))
        assert r == rel_identity(A)
