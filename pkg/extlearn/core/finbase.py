"""
ExtLearn 有限基范畴 (finbase)
FinSet 上的函数、对称与结构同构，以及图函子 FinSet → FinRel 和 FinRel 的紧闭结构。
单位不严格化：I×A 与 A 是不同的集合，单位子与结合子都是显式双射。
"""
from __future__ import annotations
import logging
from typing import Optional, Sequence, Union

from extlearn.errors import BoundaryMismatchError, LabelError
from extlearn.models import (
    FinSet, FinFun, FinRel, UNIT_LABEL,
    pair, unpair, unit_set, product,
)

logger = logging.getLogger(__name__)

# 嵌套乘积的形状：叶子为 FinSet，内部结点为二元组
Shape = Union[FinSet, tuple]


# ============================================================
# 函数
# ============================================================

def id_fun(x: FinSet) -> FinFun:
    return FinFun(dom=x, cod=x, map={e: e for e in x.elements})


def compose_fun(f: FinFun, g: FinFun) -> FinFun:
    """先 f 后 g，即 g∘f"""
    if f.cod != g.dom:
        raise BoundaryMismatchError("compose_fun: cod(f) ≠ dom(g)", f.cod, g.dom)
    return FinFun(dom=f.dom, cod=g.cod, map={x: g.map[y] for x, y in f.map.items()})


def compose_funs(*funs: FinFun) -> FinFun:
    result = funs[0]
    for g in funs[1:]:
        result = compose_fun(result, g)
    return result


def fun_product(f: FinFun, g: FinFun) -> FinFun:
    """f × g : X×Y → X'×Y'"""
    dom = product(f.dom, g.dom)
    cod = product(f.cod, g.cod)
    return FinFun(
        dom=dom, cod=cod,
        map={pair(x, y): pair(f.map[x], g.map[y]) for x in f.dom.elements for y in g.dom.elements},
    )


def constant_fun(dom: FinSet, cod: FinSet, value: str) -> FinFun:
    return FinFun(dom=dom, cod=cod, map={x: value for x in dom.elements})


def is_bijection(f: FinFun) -> bool:
    return f.dom.size == f.cod.size and len(set(f.map.values())) == f.cod.size


def is_surjection(f: FinFun) -> bool:
    return set(f.map.values()) == set(f.cod.elements)


def inverse(f: FinFun) -> FinFun:
    if not is_bijection(f):
        raise LabelError("只有双射才有逆")
    return FinFun(dom=f.cod, cod=f.dom, map={y: x for x, y in f.map.items()})


# ============================================================
# 对称、单位子、结合子
# ============================================================

def symmetry(x: FinSet, y: FinSet) -> FinFun:
    """s_{X,Y} : X×Y → Y×X"""
    return FinFun(
        dom=product(x, y), cod=product(y, x),
        map={pair(a, b): pair(b, a) for a in x.elements for b in y.elements},
    )


def unitor_left(a: FinSet) -> FinFun:
    """λ_A : I×A → A"""
    return FinFun(dom=product(unit_set(), a), cod=a,
                  map={pair(UNIT_LABEL, x): x for x in a.elements})


def unitor_left_inv(a: FinSet) -> FinFun:
    return inverse(unitor_left(a))


def unitor_right(a: FinSet) -> FinFun:
    """ρ_A : A×I → A"""
    return FinFun(dom=product(a, unit_set()), cod=a,
                  map={pair(x, UNIT_LABEL): x for x in a.elements})


def unitor_right_inv(a: FinSet) -> FinFun:
    return inverse(unitor_right(a))


def associator(x: FinSet, y: FinSet, z: FinSet) -> FinFun:
    """α : (X×Y)×Z → X×(Y×Z)"""
    return FinFun(
        dom=product(product(x, y), z), cod=product(x, product(y, z)),
        map={
            pair(pair(a, b), c): pair(a, pair(b, c))
            for a in x.elements for b in y.elements for c in z.elements
        },
    )


def associator_inv(x: FinSet, y: FinSet, z: FinSet) -> FinFun:
    return inverse(associator(x, y, z))


# ============================================================
# 形状与通用结构双射
# ============================================================

def shape_set(shape: Shape) -> FinSet:
    if isinstance(shape, FinSet):
        return shape
    left, right = shape
    return product(shape_set(left), shape_set(right))


def shape_leaves(shape: Shape) -> list[FinSet]:
    if isinstance(shape, FinSet):
        return [shape]
    left, right = shape
    return shape_leaves(left) + shape_leaves(right)


def split_label(shape: Shape, label: str) -> list[str]:
    """按形状把元素标签拆成叶子标签"""
    if isinstance(shape, FinSet):
        return [label]
    left, right = shape
    a, b = unpair(label)
    return split_label(left, a) + split_label(right, b)


def join_label(shape: Shape, leaves: Sequence[str]) -> str:
    """split_label 的逆"""
    def build(s: Shape, i: int) -> tuple[str, int]:
        if isinstance(s, FinSet):
            return leaves[i], i + 1
        a, i = build(s[0], i)
        b, i = build(s[1], i)
        return pair(a, b), i

    label, used = build(shape, 0)
    if used != len(leaves):
        raise LabelError("叶子数量与形状不符")
    return label


def structural(src: Shape, dst: Shape, wiring: Sequence[Optional[int]]) -> FinFun:
    """
    嵌套乘积之间的结构双射。
    wiring[i] 给出目标第 i 个叶子取自源的哪个叶子；None 表示插入单位 I。
    源中未被使用的叶子必须是 I（被消去的单位）。
    """
    src_leaves, dst_leaves = shape_leaves(src), shape_leaves(dst)
    if len(wiring) != len(dst_leaves):
        raise BoundaryMismatchError("wiring 长度与目标叶子数不符", len(wiring), len(dst_leaves))
    used = [w for w in wiring if w is not None]
    if len(set(used)) != len(used):
        raise BoundaryMismatchError("源叶子被重复使用", wiring, None)
    unit = unit_set()
    for i, w in enumerate(wiring):
        expected = unit if w is None else src_leaves[w]
        if dst_leaves[i] != expected:
            raise BoundaryMismatchError(f"目标叶子 {i} 与源不匹配", dst_leaves[i], expected)
    for j, leaf in enumerate(src_leaves):
        if j not in used and leaf != unit:
            raise BoundaryMismatchError(f"源叶子 {j} 被丢弃但不是单位", leaf, unit)

    dom, cod = shape_set(src), shape_set(dst)
    mapping = {}
    for x in dom.elements:
        parts = split_label(src, x)
        mapping[x] = join_label(dst, [UNIT_LABEL if w is None else parts[w] for w in wiring])
    return FinFun(dom=dom, cod=cod, map=mapping)


# ============================================================
# 关系与图函子
# ============================================================

def graph_rel(f: FinFun) -> FinRel:
    return FinRel(dom=f.dom, cod=f.cod, pairs=tuple(f.table()))


def rel_identity(x: FinSet) -> FinRel:
    return FinRel(dom=x, cod=x, pairs=tuple((e, e) for e in x.elements))


def rel_compose(r: FinRel, s: FinRel) -> FinRel:
    """先 R 后 S"""
    if r.cod != s.dom:
        raise BoundaryMismatchError("rel_compose: cod(R) ≠ dom(S)", r.cod, s.dom)
    forward: dict[str, list[str]] = {}
    for y, z in s.pairs:
        forward.setdefault(y, []).append(z)
    pairs = {(x, z) for x, y in r.pairs for z in forward.get(y, ())}
    return FinRel(dom=r.dom, cod=s.cod, pairs=tuple(pairs))


def rel_compose_all(*rels: FinRel) -> FinRel:
    result = rels[0]
    for s in rels[1:]:
        result = rel_compose(result, s)
    return result


def rel_tensor(r: FinRel, s: FinRel) -> FinRel:
    return FinRel(
        dom=product(r.dom, s.dom), cod=product(r.cod, s.cod),
        pairs=tuple((pair(x, y), pair(x2, y2)) for x, x2 in r.pairs for y, y2 in s.pairs),
    )


def rel_converse(r: FinRel) -> FinRel:
    return FinRel(dom=r.cod, cod=r.dom, pairs=tuple((y, x) for x, y in r.pairs))


def rel_cup(x: FinSet) -> FinRel:
    """I ⇸ X×X 的对角关系"""
    return FinRel(dom=unit_set(), cod=product(x, x),
                  pairs=tuple((UNIT_LABEL, pair(e, e)) for e in x.elements))


def rel_cap(x: FinSet) -> FinRel:
    """X×X ⇸ I 的对角关系"""
    return FinRel(dom=product(x, x), cod=unit_set(),
                  pairs=tuple((pair(e, e), UNIT_LABEL) for e in x.elements))


def rel_snake(x: FinSet) -> FinRel:
    """X ≅ X×I → X×(X×X) ≅ (X×X)×X → I×X ≅ X"""
    return rel_compose_all(
        graph_rel(unitor_right_inv(x)),
        rel_tensor(rel_identity(x), rel_cup(x)),
        graph_rel(associator_inv(x, x, x)),
        rel_tensor(rel_cap(x), rel_identity(x)),
        graph_rel(unitor_left(x)),
    )


def rel_snake_dual(x: FinSet) -> FinRel:
    """X ≅ I×X → (X×X)×X ≅ X×(X×X) → X×I ≅ X"""
    return rel_compose_all(
        graph_rel(unitor_left_inv(x)),
        rel_tensor(rel_cup(x), rel_identity(x)),
        graph_rel(associator(x, x, x)),
        rel_tensor(rel_identity(x), rel_cap(x)),
        graph_rel(unitor_right(x)),
    )


def rel_pairs_sorted(r: FinRel) -> list[list[str]]:
    """按字典序排列的关系对，供逐字节一致的输出使用"""
    return [[x, y] for x, y in r.pairs]
