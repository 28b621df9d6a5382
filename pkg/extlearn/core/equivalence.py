"""
ExtLearn 等价关系判定 (equivalence)
内涵等价（参数集双射）、外延一步关系（对角填充 f 与 Û）、外延闭包、
2-态射（外方块交换）、满射关系，以及余端代表元上的滑动关系。

所有搜索按函数表字典序穷举，返回第一个见证；有界闭包只给出
yes / no-within-bound / unknown，从不声称全局不等。
"""
from __future__ import annotations
import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from extlearn.config import get_config
from extlearn.errors import ExtLearnError, SearchBoundError
from extlearn.models import (
    FinSet, FinFun, IntLearner, Learner,
    Witness, ChainLink, ClosureResult, EquivalenceReport, SnakeCheck,
    WitnessKind, ClosureStatus, EquivKind,
    pair, unpair, finset, product, unit_set,
)
from extlearn.core.finbase import id_fun
from extlearn.core.learner import apply_l, apply_r, check_same_boundary, make_learner
from extlearn.core.intensional import implement, make_int_learner, to_coend, to_int

logger = logging.getLogger(__name__)

AnyLearner = Union[IntLearner, Learner]
Row = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


# ============================================================
# 下标表
# ============================================================

@dataclass(frozen=True)
class StateTable:
    """IntLearner 的下标形式：I[p][a]、U[p][k]、R[p][k]，k = a·|B'| + b'"""
    I: tuple[tuple[int, ...], ...]
    U: tuple[tuple[int, ...], ...]
    R: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.I)

    def row(self, p: int) -> Row:
        return self.I[p], self.U[p], self.R[p]

    @classmethod
    def from_rows(cls, rows: Sequence[Row]) -> "StateTable":
        return cls(
            I=tuple(r[0] for r in rows),
            U=tuple(r[1] for r in rows),
            R=tuple(r[2] for r in rows),
        )


def _positions(s: FinSet) -> dict[str, int]:
    return {x: i for i, x in enumerate(s.elements)}


def table_of(m: IntLearner) -> StateTable:
    p_pos, b_pos, ap_pos = _positions(m.P), _positions(m.B), _positions(m.Ap)
    I, U, R = [], [], []
    for p in m.P.elements:
        I.append(tuple(b_pos[m.I.map[pair(p, a)]] for a in m.A.elements))
        keys = [pair(pair(p, a), bp) for a in m.A.elements for bp in m.Bp.elements]
        U.append(tuple(p_pos[m.U.map[k]] for k in keys))
        R.append(tuple(ap_pos[m.r.map[k]] for k in keys))
    return StateTable(I=tuple(I), U=tuple(U), R=tuple(R))


def learner_of(template: IntLearner, t: StateTable, P: Optional[FinSet] = None) -> IntLearner:
    """按 template 的边界把下标表还原为 IntLearner；默认状态标签 s0, s1, ..."""
    P = P if P is not None else finset(t.n, "s")
    p_pos, a_pos, bp_pos = _positions(P), _positions(template.A), _positions(template.Bp)
    width = template.Bp.size

    def k(a: str, bp: str) -> int:
        return a_pos[a] * width + bp_pos[bp]

    return make_int_learner(
        template.A, template.Ap, template.B, template.Bp, P,
        lambda p, a: template.B.elements[t.I[p_pos[p]][a_pos[a]]],
        lambda p, a, bp: P.elements[t.U[p_pos[p]][k(a, bp)]],
        lambda p, a, bp: template.Ap.elements[t.R[p_pos[p]][k(a, bp)]],
    )


def as_int(m: AnyLearner) -> IntLearner:
    return to_int(m) if isinstance(m, Learner) else m


def _fun(dom: FinSet, cod: FinSet, idx: Sequence[int]) -> FinFun:
    return FinFun(dom=dom, cod=cod, map={x: cod.elements[j] for x, j in zip(dom.elements, idx)})


def _indices(f: FinFun, dom: FinSet, cod: FinSet) -> Optional[list[int]]:
    if f.dom != dom or f.cod != cod:
        return None
    pos = _positions(cod)
    return [pos[f.map[x]] for x in dom.elements]


class _Budget:
    """搜索结点计数，超出上限时抛出 SearchBoundError"""

    def __init__(self, what: str, limit: Optional[int] = None):
        self.what = what
        self.limit = limit if limit is not None else get_config().search.max_function_candidates
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise SearchBoundError(f"{self.what}: 超出候选上限 {self.limit}")


# ============================================================
# 互模拟划分
# ============================================================

def _rank(sigs: list[list]) -> list[list[int]]:
    order = {s: i for i, s in enumerate(sorted({s for ss in sigs for s in ss}))}
    return [[order[s] for s in ss] for ss in sigs]


def refine(tables: Sequence[StateTable]) -> list[list[int]]:
    """
    在不交并上做划分细化，返回各表中状态的互模拟类编号。
    编号只依赖行的内容，与状态标签无关。
    """
    colours = _rank([[(t.I[p], t.R[p]) for p in range(t.n)] for t in tables])
    count = -1
    while True:
        n_colours = len({c for cs in colours for c in cs})
        if n_colours == count:
            return colours
        count = n_colours
        colours = _rank([
            [(cs[p], tuple(cs[q] for q in t.U[p])) for p in range(t.n)]
            for t, cs in zip(tables, colours)
        ])


def canonical_form(t: StateTable) -> tuple:
    """同构类的规范键：按互模拟类排序状态，只在类内枚举排列"""
    (colours,) = refine([t])
    order = sorted(range(t.n), key=lambda p: colours[p])
    groups = [list(g) for _, g in itertools.groupby(order, key=lambda p: colours[p])]
    total = math.prod(math.factorial(len(g)) for g in groups)
    if total > get_config().search.max_function_candidates:
        raise SearchBoundError(f"canonical_form: 需要枚举 {total} 个排列")

    best = None
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        seq = [p for g in choice for p in g]
        pos = {p: i for i, p in enumerate(seq)}
        key = tuple((t.I[p], tuple(pos[q] for q in t.U[p]), t.R[p]) for p in seq)
        if best is None or key < best:
            best = key
    return t.n, best or ()


def canonical_key(m: AnyLearner) -> tuple:
    return canonical_form(table_of(as_int(m)))


# ============================================================
# 一步关系的回溯搜索
# ============================================================

_BIJECTION, _FILLER, _COALGEBRA, _SURJECTIVE = "bijection", "filler", "coalgebra", "surjective"


def _search_map(t1: StateTable, t2: StateTable, mode: str, budget: _Budget) -> Optional[tuple[int, ...]]:
    """
    搜索 f : P₁ → P₂，使 I₂(fp) = I₁(p)、R₂(fp) = R₁(p)、U₂(fp) = f(U₁(p))。
    mode 附加条件：bijection 单射；filler 同像的状态 U 行相同且像覆盖所有 U₂ 后继；
    surjective 满射。候选按下标升序，返回字典序最小的 f。
    """
    if mode == _BIJECTION:
        if t1.n != t2.n:
            return None
        limit = get_config().search.max_bijection_size
        if t1.n > limit:
            raise SearchBoundError(f"双射搜索: 参数集大小 {t1.n} 超过上限 {limit}")
    c1, c2 = refine([t1, t2])
    if mode == _BIJECTION and sorted(c1) != sorted(c2):
        return None
    if mode == _SURJECTIVE and not set(c2) <= set(c1):
        return None
    candidates = [[q for q in range(t2.n) if c2[q] == c1[p]] for p in range(t1.n)]
    if any(not c for c in candidates):
        return None

    f = [-1] * t1.n
    used = [0] * t2.n
    first_pre = [-1] * t2.n
    trail: list[int] = []

    def assign(p: int, q: int) -> bool:
        stack = [(p, q)]
        while stack:
            x, y = stack.pop()
            if f[x] >= 0:
                if f[x] != y:
                    return False
                continue
            if c1[x] != c2[y]:
                return False
            if used[y]:
                if mode == _BIJECTION:
                    return False
                if mode == _FILLER and t1.U[first_pre[y]] != t1.U[x]:
                    return False
            else:
                first_pre[y] = x
            f[x] = y
            used[y] += 1
            trail.append(x)
            stack.extend(zip(t1.U[x], t2.U[y]))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            x = trail.pop()
            y = f[x]
            used[y] -= 1
            if not used[y]:
                first_pre[y] = -1
            f[x] = -1

    def complete() -> bool:
        if mode == _FILLER:
            return all(used[q] for row in t2.U for q in row)
        if mode == _SURJECTIVE:
            return all(used)
        return True

    def dfs(p: int) -> bool:
        while p < t1.n and f[p] >= 0:
            p += 1
        if p == t1.n:
            return complete()
        for q in candidates[p]:
            budget.tick()
            mark = len(trail)
            if assign(p, q) and dfs(p + 1):
                return True
            undo(mark)
        return False

    return tuple(f) if dfs(0) else None


def _filler_table(t1: StateTable, t2: StateTable, f: Sequence[int]) -> Optional[tuple[tuple[int, ...], ...]]:
    """给定 f 时构造 Û；像外的状态取最小原像。条件不满足时返回 None"""
    pre: dict[int, int] = {}
    for p, q in enumerate(f):
        pre.setdefault(q, p)
    for p, q in enumerate(f):
        if t2.I[q] != t1.I[p] or t2.R[q] != t1.R[p]:
            return None
        if any(t2.U[q][k] != f[x] for k, x in enumerate(t1.U[p])):
            return None
        if t1.U[pre[q]] != t1.U[p]:
            return None
    uhat = []
    for q in range(t2.n):
        if q in pre:
            uhat.append(t1.U[pre[q]])
            continue
        row = []
        for target in t2.U[q]:
            if target not in pre:
                return None
            row.append(pre[target])
        uhat.append(tuple(row))
    return tuple(uhat)


def _is_coalgebra_map(t1: StateTable, t2: StateTable, f: Sequence[int]) -> bool:
    return all(
        t2.I[q] == t1.I[p] and t2.R[q] == t1.R[p]
        and all(t2.U[q][k] == f[x] for k, x in enumerate(t1.U[p]))
        for p, q in enumerate(f)
    )


def _uhat_fun(m1: IntLearner, m2: IntLearner, uhat: Sequence[Sequence[int]]) -> FinFun:
    dom = product(product(m2.P, m2.A), m2.Bp)
    flat = [x for row in uhat for x in row]
    return _fun(dom, m1.P, flat)


def _filler_witness(
    m1: IntLearner, m2: IntLearner, t1: StateTable, t2: StateTable, f: Sequence[int],
) -> Witness:
    uhat = _filler_table(t1, t2, f)
    if uhat is None:
        raise ExtLearnError("构造的映射不满足对角填充条件")
    return Witness(
        kind=WitnessKind.DIAGONAL_FILLER,
        f=_fun(m1.P, m2.P, f), uhat=_uhat_fun(m1, m2, uhat),
    )


# ============================================================
# 一步关系
# ============================================================

def int_equiv(m1: AnyLearner, m2: AnyLearner) -> Optional[Witness]:
    """参数集双射 f，满足 I、r 与 U 的三条等式"""
    m1, m2 = as_int(m1), as_int(m2)
    check_same_boundary(m1, m2, "int_equiv")
    f = _search_map(table_of(m1), table_of(m2), _BIJECTION, _Budget("int_equiv"))
    logger.debug(f"int_equiv |P|={m1.P.size},{m2.P.size}: {'found' if f else 'none'}")
    if f is None:
        return None
    return Witness(kind=WitnessKind.BIJECTION, f=_fun(m1.P, m2.P, f))


def diagonal_filler(m1: AnyLearner, m2: AnyLearner, f: FinFun) -> Optional[FinFun]:
    """给定 f : P₁ → P₂，返回使四条等式成立的 Û（像外取最小原像），不存在时为 None"""
    m1, m2 = as_int(m1), as_int(m2)
    idx = _indices(f, m1.P, m2.P)
    if idx is None:
        return None
    uhat = _filler_table(table_of(m1), table_of(m2), idx)
    return None if uhat is None else _uhat_fun(m1, m2, uhat)


def ext_onestep(m1: AnyLearner, m2: AnyLearner) -> Optional[Witness]:
    """
    外延一步关系 m₁ → m₂：f : P₁ → P₂ 与 Û : (P₂×A)×B' → P₁，满足
      I₂(fp, a) = I₁(p, a)，r₂(fp, a, b') = r₁(p, a, b')，
      Û(fp, a, b') = U₁(p, a, b')，U₂(p', a, b') = f(Û(p', a, b'))
    """
    m1, m2 = as_int(m1), as_int(m2)
    check_same_boundary(m1, m2, "ext_onestep")
    t1, t2 = table_of(m1), table_of(m2)
    f = _search_map(t1, t2, _FILLER, _Budget("ext_onestep"))
    logger.debug(f"ext_onestep |P|={t1.n}→{t2.n}: {'found' if f else 'none'}")
    if f is None:
        return None
    return _filler_witness(m1, m2, t1, t2, f)


def two_morphism(m1: AnyLearner, m2: AnyLearner) -> Optional[Witness]:
    """外方块交换的 2-态射：只要求 I、r 等式与 U₂(fp) = f(U₁(p))"""
    m1, m2 = as_int(m1), as_int(m2)
    check_same_boundary(m1, m2, "two_morphism")
    f = _search_map(table_of(m1), table_of(m2), _COALGEBRA, _Budget("two_morphism"))
    if f is None:
        return None
    return Witness(kind=WitnessKind.OUTER_SQUARE, f=_fun(m1.P, m2.P, f))


def surj_onestep(m1: AnyLearner, m2: AnyLearner) -> Optional[Witness]:
    """满射的 2-态射"""
    m1, m2 = as_int(m1), as_int(m2)
    check_same_boundary(m1, m2, "surj_onestep")
    f = _search_map(table_of(m1), table_of(m2), _SURJECTIVE, _Budget("surj_onestep"))
    if f is None:
        return None
    return Witness(kind=WitnessKind.SURJECTIVE, f=_fun(m1.P, m2.P, f))


# ============================================================
# 余端滑动
# ============================================================

def _coend_tables(m: Learner) -> tuple[list[list[tuple[int, int]]], list[list[tuple[int, int]]]]:
    p_pos, q_pos = _positions(m.P), _positions(m.Q)
    b_pos, ap_pos = _positions(m.B), _positions(m.Ap)
    l_tab = []
    for p in m.P.elements:
        row = []
        for a in m.A.elements:
            q, b = apply_l(m, p, a)
            row.append((q_pos[q], b_pos[b]))
        l_tab.append(row)
    r_tab = []
    for q in m.Q.elements:
        row = []
        for bp in m.Bp.elements:
            p, ap = apply_r(m, q, bp)
            row.append((p_pos[p], ap_pos[ap]))
        r_tab.append(row)
    return l_tab, r_tab


def coend_slide(L1: Learner, L2: Learner) -> Optional[Witness]:
    """
    余端滑动 L₁ → L₂：u : P₁ → P₂，v : Q₂ → Q₁，满足
      l₁ = (v×B) ∘ l₂ ∘ (u×A)，r₂ = (u×A') ∘ r₁ ∘ (v×B')
    搜索顺序为 (u, v) 的函数表字典序。
    """
    check_same_boundary(L1, L2, "coend_slide")
    l1, r1 = _coend_tables(L1)
    l2, r2 = _coend_tables(L2)
    n_u, n_v = L1.P.size, L2.Q.size
    u = [-1] * n_u
    v = [-1] * n_v
    trail: list[tuple[int, int]] = []
    budget = _Budget("coend_slide")

    def assign(kind: int, x: int, y: int) -> bool:
        stack = [(kind, x, y)]
        while stack:
            kind, x, y = stack.pop()
            table = u if kind == 0 else v
            if table[x] >= 0:
                if table[x] != y:
                    return False
                continue
            table[x] = y
            trail.append((kind, x))
            if kind == 0:
                for (q2, b2), (q1, b1) in zip(l2[y], l1[x]):
                    if b1 != b2:
                        return False
                    stack.append((1, q2, q1))
            else:
                for (p1, a1), (p2, a2) in zip(r1[y], r2[x]):
                    if a1 != a2:
                        return False
                    stack.append((0, p1, p2))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            kind, x = trail.pop()
            (u if kind == 0 else v)[x] = -1

    def dfs() -> bool:
        if -1 in u:
            kind, x, choices = 0, u.index(-1), L2.P.size
        elif -1 in v:
            kind, x, choices = 1, v.index(-1), L1.Q.size
        else:
            return True
        for y in range(choices):
            budget.tick()
            mark = len(trail)
            if assign(kind, x, y) and dfs():
                return True
            undo(mark)
        return False

    if not dfs():
        return None
    return Witness(
        kind=WitnessKind.COEND_SLIDE,
        u=_fun(L1.P, L2.P, u), v=_fun(L2.Q, L1.Q, v),
    )


def _check_slide(L1: Learner, L2: Learner, w: Witness) -> bool:
    if w.u is None or w.v is None:
        return False
    u = _indices(w.u, L1.P, L2.P)
    v = _indices(w.v, L2.Q, L1.Q)
    if u is None or v is None:
        return False
    l1, r1 = _coend_tables(L1)
    l2, r2 = _coend_tables(L2)
    for p, row in enumerate(l1):
        for (q1, b1), (q2, b2) in zip(row, l2[u[p]]):
            if (q1, b1) != (v[q2], b2):
                return False
    for q2, row in enumerate(r2):
        for (p2, a2), (p1, a1) in zip(row, r1[v[q2]]):
            if (p2, a2) != (u[p1], a1):
                return False
    return True


# ============================================================
# 见证校验
# ============================================================

def validate_witness(m1: AnyLearner, m2: AnyLearner, w: Witness) -> bool:
    """逐点重算见证的定义等式"""
    if w.kind == WitnessKind.COEND_SLIDE:
        if not isinstance(m1, Learner) or not isinstance(m2, Learner):
            return False
        return _check_slide(m1, m2, w)

    m1, m2 = as_int(m1), as_int(m2)
    if (m1.A, m1.Ap, m1.B, m1.Bp) != (m2.A, m2.Ap, m2.B, m2.Bp) or w.f is None:
        return False
    f = _indices(w.f, m1.P, m2.P)
    if f is None:
        return False
    t1, t2 = table_of(m1), table_of(m2)

    if w.kind == WitnessKind.DIAGONAL_FILLER:
        if w.uhat is None:
            return False
        flat = _indices(w.uhat, product(product(m2.P, m2.A), m2.Bp), m1.P)
        if flat is None:
            return False
        width = m1.A.size * m1.Bp.size
        uhat = [flat[q * width:(q + 1) * width] for q in range(t2.n)]
        for p, q in enumerate(f):
            if t2.I[q] != t1.I[p] or t2.R[q] != t1.R[p]:
                return False
            if list(uhat[q]) != list(t1.U[p]):
                return False
        return all(
            t2.U[q][k] == f[uhat[q][k]]
            for q in range(t2.n) for k in range(width)
        )

    if not _is_coalgebra_map(t1, t2, f):
        return False
    if w.kind == WitnessKind.BIJECTION:
        return sorted(f) == list(range(t2.n))
    if w.kind == WitnessKind.SURJECTIVE:
        return set(f) == set(range(t2.n))
    return w.kind == WitnessKind.OUTER_SQUARE


def validate_chain(result: ClosureResult) -> bool:
    """逐环校验闭包链"""
    if result.status != ClosureStatus.YES:
        return not result.chain
    if len(result.learners) != len(result.chain) + 1:
        return False
    for i, link in enumerate(result.chain):
        x, y = result.learners[i], result.learners[i + 1]
        if not (validate_witness(x, y, link.witness) if link.forward
                else validate_witness(y, x, link.witness)):
            return False
    return True


# ============================================================
# 规范化：限制到 U 的像、合并相同行
# ============================================================

def _successors(t: StateTable) -> set[int]:
    return {q for row in t.U for q in row}


def _restrict(t: StateTable) -> Optional[tuple[StateTable, tuple[int, ...]]]:
    """限制到 U 的像；返回子学习器与包含映射 子 → 原"""
    keep = sorted(_successors(t))
    if len(keep) == t.n:
        return None
    new = {p: i for i, p in enumerate(keep)}
    rows = [(t.I[p], tuple(new[q] for q in t.U[p]), t.R[p]) for p in keep]
    return StateTable.from_rows(rows), tuple(keep)


def _merge(t: StateTable) -> Optional[tuple[StateTable, tuple[int, ...]]]:
    """合并 I、U、r 行完全相同的状态；返回商与投影 原 → 商"""
    blocks: dict[Row, int] = {}
    proj = [blocks.setdefault(t.row(p), len(blocks)) for p in range(t.n)]
    if len(blocks) == t.n:
        return None
    reps = [proj.index(b) for b in range(len(blocks))]
    rows = [(t.I[p], tuple(proj[q] for q in t.U[p]), t.R[p]) for p in reps]
    return StateTable.from_rows(rows), tuple(proj)


def normal_form_chain(m: AnyLearner) -> tuple[list[IntLearner], list[ChainLink]]:
    """交替做限制与合并直到不动点；每一环都是外延一步关系"""
    current = as_int(m)
    t = table_of(current)
    learners, links = [current], []
    while True:
        step = _restrict(t)
        forward = False
        if step is None:
            step = _merge(t)
            forward = True
        if step is None:
            break
        nt, f = step
        nxt = learner_of(current, nt)
        if forward:
            w = _filler_witness(current, nxt, t, nt, f)
        else:
            w = _filler_witness(nxt, current, nt, t, f)
        learners.append(nxt)
        links.append(ChainLink(forward=forward, witness=w))
        current, t = nxt, nt
    logger.debug(f"normal_form_chain: {learners[0].P.size} → {current.P.size} 个状态，{len(links)} 步")
    return learners, links


def _core(t: StateTable) -> list[int]:
    states = set(range(t.n))
    while True:
        nxt = {t.U[p][k] for p in states for k in range(len(t.U[p]))}
        if nxt == states:
            return sorted(states)
        states = nxt


def behaviour_core(m: AnyLearner) -> FinSet:
    """稳定核 ⋂ₖ Succᵏ(P)：反复取 U 的像直到不变"""
    m = as_int(m)
    core = _core(table_of(m))
    return FinSet(elements=tuple(m.P.elements[p] for p in core))


def core_behaviours_differ(m1: AnyLearner, m2: AnyLearner) -> bool:
    """
    比较两个稳定核中出现的互模拟类集合。
    外延一步关系保持这一集合，因此集合不同说明两者不在同一闭包中。
    """
    t1, t2 = table_of(as_int(m1)), table_of(as_int(m2))
    c1, c2 = refine([t1, t2])
    return {c1[p] for p in _core(t1)} != {c2[p] for p in _core(t2)}


# ============================================================
# 闭包 BFS 的邻居
# ============================================================

def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[head]] + part
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]


def _compositions(count: int, total: int) -> Iterator[tuple[int, ...]]:
    """count 个正整数、和不超过 total 的所有序列"""
    if count == 0:
        yield ()
        return
    for first in range(1, total - count + 2):
        for rest in _compositions(count - 1, total - first):
            yield (first,) + rest


def _forward_moves(
    t: StateTable, bound: int, dims: tuple[int, int, int, int], budget: _Budget,
) -> Iterator[tuple[StateTable, tuple[int, ...]]]:
    """t → t'：把相同行的状态按任意划分合并，再添加 U 指向像内的附加状态"""
    n_a, n_b, n_ap, n_bp = dims
    width = n_a * n_bp
    groups: dict[Row, list[int]] = {}
    for p in range(t.n):
        groups.setdefault(t.row(p), []).append(p)

    for parts in itertools.product(*(list(_set_partitions(g)) for g in groups.values())):
        blocks = [b for part in parts for b in part]
        proj = [0] * t.n
        for i, block in enumerate(blocks):
            for p in block:
                proj[p] = i
        base = [(t.I[b[0]], tuple(proj[q] for q in t.U[b[0]]), t.R[b[0]]) for b in blocks]
        spare = bound - len(blocks)
        if len(blocks) < t.n:
            budget.tick()
            yield StateTable.from_rows(base), tuple(proj)
        if spare <= 0:
            continue
        n_rows = n_b ** n_a * len(blocks) ** width * n_ap ** width
        if n_rows > budget.limit - budget.used:
            raise SearchBoundError(f"附加状态的候选行过多: {n_rows}")
        junk_rows = list(itertools.product(
            itertools.product(range(n_b), repeat=n_a),
            itertools.product(range(len(blocks)), repeat=width),
            itertools.product(range(n_ap), repeat=width),
        ))
        for j in range(1, spare + 1):
            for extra in itertools.combinations_with_replacement(junk_rows, j):
                budget.tick()
                yield StateTable.from_rows(base + list(extra)), tuple(proj)


def _backward_moves(
    t: StateTable, bound: int, budget: _Budget,
) -> Iterator[tuple[StateTable, tuple[int, ...]]]:
    """t' → t：取包含全部后继的子集 S，每个 p ∈ S 复制若干份，复制件的 U 指向相应纤维"""
    succ = _successors(t)
    optional = [p for p in range(t.n) if p not in succ]
    for r in range(len(optional) + 1):
        for drop in itertools.combinations(optional, r):
            kept = [p for p in range(t.n) if p not in drop]
            if len(kept) > bound:
                continue
            for sizes in _compositions(len(kept), bound):
                fibers: dict[int, list[int]] = {}
                f: list[int] = []
                for p, k in zip(kept, sizes):
                    fibers[p] = list(range(len(f), len(f) + k))
                    f.extend([p] * k)
                trivial = not drop and all(k == 1 for k in sizes)
                choice_lists = [
                    list(itertools.product(*(fibers[q] for q in t.U[p]))) for p in kept
                ]
                for choice in itertools.product(*choice_lists):
                    if trivial:
                        break
                    budget.tick()
                    rows = []
                    for p, k, urow in zip(kept, sizes, choice):
                        rows.extend([(t.I[p], urow, t.R[p])] * k)
                    yield StateTable.from_rows(rows), tuple(f)


def _moves(
    t: StateTable, bound: int, dims: tuple[int, int, int, int], budget: _Budget,
) -> Iterator[tuple[StateTable, tuple[int, ...], bool]]:
    for nt, f in _forward_moves(t, bound, dims, budget):
        yield nt, f, True
    for nt, f in _backward_moves(t, bound, budget):
        yield nt, f, False


# ============================================================
# 外延闭包
# ============================================================

def _check_bound(bound: int, *sizes: int) -> None:
    if bound < max(sizes, default=0):
        raise SearchBoundError(f"界限 {bound} 小于参数集大小 {max(sizes)}")


def _reverse_links(links: Sequence[ChainLink]) -> list[ChainLink]:
    return [ChainLink(forward=not c.forward, witness=c.witness) for c in reversed(links)]


def _join(
    left: list[AnyLearner], left_links: list[ChainLink],
    right: list[AnyLearner], right_links: list[ChainLink],
    bridge: Optional[Witness],
) -> tuple[list[AnyLearner], list[ChainLink]]:
    """left 从 m₁ 出发到 x，right 从 m₂ 出发到 y，bridge 为 x → y 的见证（x == y 时为 None）"""
    learners = list(left)
    links = list(left_links)
    if bridge is not None:
        learners.append(right[-1])
        links.append(ChainLink(forward=True, witness=bridge))
    learners.extend(reversed(right[:-1]))
    links.extend(_reverse_links(right_links))
    return learners, links


def _closure_bfs(
    m1: IntLearner, m2: IntLearner, bound: int, max_nodes: int,
) -> tuple[ClosureStatus, list[AnyLearner], list[ChainLink], int]:
    t1, t2 = table_of(m1), table_of(m2)
    dims = (m1.A.size, m1.B.size, m1.Ap.size, m1.Bp.size)
    budget = _Budget("ext_equiv")
    start, target = canonical_form(t1), canonical_form(t2)
    parents: dict[tuple, Optional[tuple]] = {start: None}
    queue = deque([(start, t1)])
    found = None
    try:
        while queue and found is None:
            key, t = queue.popleft()
            for nt, f, forward in _moves(t, bound, dims, budget):
                c = canonical_form(nt)
                if c in parents:
                    continue
                parents[c] = (key, t, nt, f, forward)
                if c == target:
                    found = c
                    break
                if len(parents) >= max_nodes:
                    logger.warning(f"ext_equiv: 访问 {len(parents)} 个同构类后达到上限")
                    return ClosureStatus.UNKNOWN, [], [], len(parents)
                queue.append((c, nt))
    except SearchBoundError as e:
        logger.warning(f"ext_equiv: {e}")
        return ClosureStatus.UNKNOWN, [], [], len(parents)

    if found is None:
        return ClosureStatus.NO_WITHIN_BOUND, [], [], len(parents)

    steps = []
    c = found
    while parents[c] is not None:
        prev, t, nt, f, forward = parents[c]
        steps.append((t, nt, f, forward))
        c = prev
    steps.reverse()

    learners: list[AnyLearner] = [m1]
    links: list[ChainLink] = []
    current = m1
    for t, nt, f, forward in steps:
        nxt = learner_of(m1, nt)
        w = (_filler_witness(current, nxt, t, nt, f) if forward
             else _filler_witness(nxt, current, nt, t, f))
        learners.append(nxt)
        links.append(ChainLink(forward=forward, witness=w))
        current = nxt
    if current != m2:
        bridge = int_equiv(current, m2)
        if bridge is None:
            raise ExtLearnError("规范键相同但未找到双射")
        learners.append(m2)
        links.append(ChainLink(forward=True, witness=bridge))
    return ClosureStatus.YES, learners, links, len(parents)


def ext_equiv(
    m1: AnyLearner, m2: AnyLearner,
    bound: Optional[int] = None, max_nodes: Optional[int] = None,
) -> ClosureResult:
    """
    外延一步关系在 |P| ≤ bound 的学习器上的对称传递闭包：
    1. 任一方向一步成立
    2. 两侧规范形同构
    3. 稳定核的行为集合不同 → no-within-bound
    4. 同构类上的 BFS
    """
    m1, m2 = as_int(m1), as_int(m2)
    check_same_boundary(m1, m2, "ext_equiv")
    cfg = get_config().search
    bound = cfg.default_bound if bound is None else bound
    max_nodes = cfg.closure_max_nodes if max_nodes is None else max_nodes
    _check_bound(bound, m1.P.size, m2.P.size)

    for forward, (x, y) in ((True, (m1, m2)), (False, (m2, m1))):
        try:
            w = ext_onestep(x, y)
        except SearchBoundError as e:
            logger.warning(f"ext_equiv 一步搜索放弃: {e}")
            w = None
        if w is not None:
            logger.info(f"ext_equiv: 一步关系成立 (forward={forward})")
            return ClosureResult(
                status=ClosureStatus.YES, learners=[m1, m2],
                chain=[ChainLink(forward=forward, witness=w)], bound=bound,
            )

    left, left_links = normal_form_chain(m1)
    right, right_links = normal_form_chain(m2)
    n1, n2 = left[-1], right[-1]
    if canonical_key(n1) == canonical_key(n2):
        bridge = None if n1 == n2 else int_equiv(n1, n2)
        learners, links = _join(left, left_links, right, right_links, bridge)
        logger.info(f"ext_equiv: 规范形同构，链长 {len(links)}")
        return ClosureResult(
            status=ClosureStatus.YES, learners=learners, chain=links,
            bound=bound, certificate="normal-form",
        )

    if core_behaviours_differ(m1, m2):
        logger.info("ext_equiv: 稳定核行为不同")
        return ClosureResult(
            status=ClosureStatus.NO_WITHIN_BOUND, bound=bound, certificate="core-behaviour",
        )

    status, learners, links, explored = _closure_bfs(m1, m2, bound, max_nodes)
    logger.info(f"ext_equiv: BFS 结果 {status.value}，访问 {explored} 个同构类")
    return ClosureResult(
        status=status, learners=learners, chain=links, explored=explored, bound=bound,
    )


# ============================================================
# 满射关系的闭包
# ============================================================

def surj_equiv(m1: AnyLearner, m2: AnyLearner) -> ClosureResult:
    """
    经由公共满射商的锯齿链。满射 2-态射保持出现的互模拟类集合，
    两侧集合相同时都满射到同一个互模拟商上。
    """
    m1, m2 = as_int(m1), as_int(m2)
    check_same_boundary(m1, m2, "surj_equiv")
    for forward, (x, y) in ((True, (m1, m2)), (False, (m2, m1))):
        w = surj_onestep(x, y)
        if w is not None:
            return ClosureResult(
                status=ClosureStatus.YES, learners=[m1, m2],
                chain=[ChainLink(forward=forward, witness=w)],
            )

    t1, t2 = table_of(m1), table_of(m2)
    c1, c2 = refine([t1, t2])
    if set(c1) != set(c2):
        return ClosureResult(status=ClosureStatus.NO_WITHIN_BOUND, certificate="behaviour-set")

    classes = sorted(set(c1))
    index = {c: i for i, c in enumerate(classes)}
    reps = [c1.index(c) for c in classes]
    rows = [(t1.I[p], tuple(index[c1[q]] for q in t1.U[p]), t1.R[p]) for p in reps]
    quotient = learner_of(m1, StateTable.from_rows(rows), finset(len(classes), "c"))
    links = [
        ChainLink(forward=True, witness=Witness(
            kind=WitnessKind.SURJECTIVE, f=_fun(m1.P, quotient.P, [index[c] for c in c1]))),
        ChainLink(forward=False, witness=Witness(
            kind=WitnessKind.SURJECTIVE, f=_fun(m2.P, quotient.P, [index[c] for c in c2]))),
    ]
    logger.info(f"surj_equiv: 经由 {len(classes)} 个状态的公共商")
    return ClosureResult(status=ClosureStatus.YES, learners=[m1, quotient, m2], chain=links)


# ============================================================
# 余端闭包
# ============================================================

def _slide(u: FinFun, v: FinFun) -> Witness:
    return Witness(kind=WitnessKind.COEND_SLIDE, u=u, v=v)


def _filler_parts(src: IntLearner, dst: IntLearner, w: Witness) -> tuple[FinFun, FinFun]:
    """外延一步见证的 (f, Û)；双射见证的 Û 由 diagonal_filler 补出"""
    uhat = w.uhat if w.kind == WitnessKind.DIAGONAL_FILLER else diagonal_filler(src, dst, w.f)
    if w.f is None or uhat is None:
        raise ExtLearnError(f"{w.kind} 见证无法提升为余端滑动")
    return w.f, uhat


def _span_learner(src: IntLearner, dst: IntLearner, f: FinFun, uhat: FinFun) -> Learner:
    """
    外延一步 src → dst 的顶点 K：P = P_src，Q = P_dst × A，
      l(p, a) = ((f p, a), I_src(p, a))
      r((p', a), b') = (Û(p', a, b'), r_dst(p', a, b'))
    K 分别滑动到 to_coend(src) 与 to_coend(dst)。
    """
    def l_fn(p: str, a: str) -> tuple[str, str]:
        return pair(f.map[p], a), implement(src, p, a)

    def r_fn(q: str, bp: str) -> tuple[str, str]:
        key = pair(q, bp)
        return uhat.map[key], dst.r.map[key]

    return make_learner(src.A, src.Ap, src.B, src.Bp, src.P, product(dst.P, src.A), l_fn, r_fn)


def _lift_link(
    left: IntLearner, right: IntLearner, link: ChainLink,
) -> tuple[list[Learner], list[ChainLink]]:
    """把内涵链上的一环换成 to_coend(left) ← K → to_coend(right) 两次滑动"""
    src, dst = (left, right) if link.forward else (right, left)
    f, uhat = _filler_parts(src, dst, link.witness)
    K = _span_learner(src, dst, f, uhat)
    T_src, T_dst = to_coend(src), to_coend(dst)
    to_src = _slide(id_fun(src.P), FinFun.from_callable(
        T_src.Q, K.Q, lambda q: pair(f(unpair(q)[0]), unpair(q)[1])))
    to_dst = _slide(f, id_fun(T_dst.Q))
    first, second = (to_src, to_dst) if link.forward else (to_dst, to_src)
    return [K, to_coend(right)], [
        ChainLink(forward=False, witness=first), ChainLink(forward=True, witness=second),
    ]


def _first_l(L: Learner, T: Learner) -> FinFun:
    """v : Q_T = P×A → Q_L，(p, a) ↦ fst l(p, a)"""
    return FinFun.from_callable(T.Q, L.Q, lambda q: apply_l(L, *unpair(q))[0])


def _lift_chain(L1: Learner, L2: Learner, closure: ClosureResult) -> tuple[list[Learner], list[ChainLink]]:
    """
    外延闭包链 to_int(L₁) ~ … ~ to_int(L₂) 提升为余端滑动链：
    L₁ → to_coend(to_int(L₁))，每个外延一步换成一对滑动，最后滑回 L₂。
    """
    chain = [as_int(x) for x in closure.learners]
    learners: list[Learner] = [L1]
    links: list[ChainLink] = []
    T1 = to_coend(chain[0])
    if T1 != L1:
        learners.append(T1)
        links.append(ChainLink(forward=True, witness=_slide(id_fun(L1.P), _first_l(L1, T1))))
    for left, right, link in zip(chain, chain[1:], closure.chain):
        more, more_links = _lift_link(left, right, link)
        learners.extend(more)
        links.extend(more_links)
    T2 = learners[-1]
    if T2 != L2:
        learners.append(L2)
        links.append(ChainLink(forward=False, witness=_slide(id_fun(L2.P), _first_l(L2, T2))))
    return learners, links


def coend_equiv(
    L1: Learner, L2: Learner,
    bound: Optional[int] = None, max_nodes: Optional[int] = None,
) -> ClosureResult:
    """
    余端滑动的有界闭包，bound 限制中间学习器的参数集 P：
    1. 任一方向一步滑动
    2. F̂ 不同 → no-within-bound
    3. 内涵形式上的外延闭包（ext_equiv，末段为同构类 BFS），
       yes 时逐环提升为滑动链；其余状态与证书原样返回

    每次滑动诱导内涵形式之间的外延一步关系，因此外延闭包的
    no-within-bound 对余端闭包同样成立。
    """
    from extlearn.core.atemp import fhat_rel

    check_same_boundary(L1, L2, "coend_equiv")
    bound = get_config().search.default_bound if bound is None else bound
    _check_bound(bound, L1.P.size, L2.P.size)

    for forward, (x, y) in ((True, (L1, L2)), (False, (L2, L1))):
        w = coend_slide(x, y)
        if w is not None:
            return ClosureResult(
                status=ClosureStatus.YES, learners=[L1, L2],
                chain=[ChainLink(forward=forward, witness=w)], bound=bound,
            )

    if fhat_rel(L1) != fhat_rel(L2):
        return ClosureResult(status=ClosureStatus.NO_WITHIN_BOUND, bound=bound, certificate="fhat")

    ext = ext_equiv(to_int(L1), to_int(L2), bound, max_nodes)
    if ext.status != ClosureStatus.YES:
        logger.info(f"coend_equiv: 内涵形式闭包 {ext.status}")
        return ClosureResult(
            status=ext.status, bound=bound, explored=ext.explored, certificate=ext.certificate,
        )
    learners, links = _lift_chain(L1, L2, ext)
    logger.info(f"coend_equiv: 由 {len(ext.chain)} 环外延链提升出 {len(links)} 次滑动")
    return ClosureResult(
        status=ClosureStatus.YES, learners=learners, chain=links,
        explored=ext.explored, bound=bound, certificate="intensional-form",
    )


# ============================================================
# 按种类分派
# ============================================================

def check_equivalence(
    kind: Union[EquivKind, str], m1: AnyLearner, m2: AnyLearner, bound: Optional[int] = None,
) -> EquivalenceReport:
    """CLI 与 HTTP API 共用的入口"""
    kind = EquivKind(kind)
    one_step = {
        EquivKind.INT: int_equiv,
        EquivKind.EXT: ext_onestep,
        EquivKind.TWO_MORPHISM: two_morphism,
    }
    if kind in one_step:
        w = one_step[kind](m1, m2)
        return EquivalenceReport(kind=kind, related=w is not None, witness=w)

    if kind == EquivKind.COEND:
        if not isinstance(m1, Learner) or not isinstance(m2, Learner):
            raise ExtLearnError("coend 关系需要余端代表元 (P, Q, l, r)")
        closure = coend_equiv(m1, m2, bound)
    elif kind == EquivKind.SURJ:
        closure = surj_equiv(m1, m2)
    else:
        closure = ext_equiv(m1, m2, bound)
    related = True if closure.status == ClosureStatus.YES else None
    if kind == EquivKind.SURJ and closure.status == ClosureStatus.NO_WITHIN_BOUND:
        # 满射闭包按互模拟类集合精确判定
        related = False
    return EquivalenceReport(kind=kind, related=related, closure=closure)


# ============================================================
# 蛇形复合检查
# ============================================================

def snake_check(size: int, bound: Optional[int] = None) -> SnakeCheck:
    """
    对 A = {0..size-1}、A' = I：
    蛇形复合与延迟恒等内涵等价，与恒等学习器没有任何方向的外延一步关系，
    闭包在界限内不相关，而 F̂ 仍是恒等关系。
    """
    from extlearn.core.atemp import fhat_rel
    from extlearn.core.finbase import rel_identity
    from extlearn.core.intensional import delayed_identity
    from extlearn.core.learner import identity, snake_composite

    if size < 1:
        raise ExtLearnError("集合大小至少为 1")
    bound = get_config().search.default_bound if bound is None else bound
    A, unit = finset(size), unit_set()
    snake = snake_composite(A, unit)
    ident = identity(A, unit)

    delayed = int_equiv(snake, to_coend(delayed_identity(A))) is not None
    forward = ext_onestep(snake, ident) is not None
    backward = ext_onestep(ident, snake) is not None
    closure = ext_equiv(snake, ident, bound)
    fhat_ok = fhat_rel(snake) == rel_identity(product(unit, A))

    if size == 1:
        passed = delayed and forward and backward and fhat_ok
    else:
        passed = (delayed and not forward and not backward and fhat_ok
                  and closure.status == ClosureStatus.NO_WITHIN_BOUND)
    logger.info(f"snake_check(|A|={size}): passed={passed}, closure={closure.status}")
    return SnakeCheck(
        size=size, bound=bound, int_equiv_delayed=delayed,
        ext_onestep_to_identity=forward, ext_onestep_from_identity=backward,
        closure_status=closure.status, fhat_is_identity=fhat_ok, passed=passed,
    )
