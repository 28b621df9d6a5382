"""
自由 SMC 项的开超图表示与规范形
线（wire）带对象类型，盒子（box）为生成元实例；Seq 把后一项的输入线粘到前一项的输出线上。
规范形：从输入、输出边界出发做确定的宽度优先遍历，按访问顺序重新编号；
不与边界相连的浮动分量各自取最小序列化后排序。
"""
from __future__ import annotations
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx
from networkx.algorithms import isomorphism

from extlearn.errors import BoundaryMismatchError
from extlearn.models import Gen, HyperBox, Id, OpenHypergraph, Par, Seq, Signature, Sym, Term
from extlearn.core.freesmc.typecheck import typecheck

logger = logging.getLogger(__name__)


@dataclass
class _Graph:
    """构造过程中的可变超图"""
    wire_types: list[str] = field(default_factory=list)
    boxes: list[tuple[str, list[int], list[int]]] = field(default_factory=list)
    inputs: list[int] = field(default_factory=list)
    outputs: list[int] = field(default_factory=list)


def _shifted(g: _Graph, offset: int) -> _Graph:
    return _Graph(
        wire_types=list(g.wire_types),
        boxes=[(name, [w + offset for w in ins], [w + offset for w in outs]) for name, ins, outs in g.boxes],
        inputs=[w + offset for w in g.inputs],
        outputs=[w + offset for w in g.outputs],
    )


def _build(term: Term, sig: Signature) -> _Graph:
    if isinstance(term, Id):
        n = len(term.word)
        return _Graph(list(term.word), [], list(range(n)), list(range(n)))
    if isinstance(term, Gen):
        gt = sig.generators[term.name]
        k, n = len(gt.dom), len(gt.dom) + len(gt.cod)
        ins, outs = list(range(k)), list(range(k, n))
        return _Graph(list(gt.dom + gt.cod), [(term.name, ins, outs)], ins, outs)
    if isinstance(term, Sym):
        k, n = len(term.left), len(term.left) + len(term.right)
        return _Graph(list(term.left + term.right), [], list(range(n)),
                      list(range(k, n)) + list(range(k)))
    if isinstance(term, Par):
        g1 = _build(term.left, sig)
        g2 = _shifted(_build(term.right, sig), len(g1.wire_types))
        return _Graph(g1.wire_types + g2.wire_types, g1.boxes + g2.boxes,
                      g1.inputs + g2.inputs, g1.outputs + g2.outputs)

    g1 = _build(term.first, sig)
    g2 = _shifted(_build(term.second, sig), len(g1.wire_types))
    total = len(g1.wire_types) + len(g2.wire_types)
    parent = list(range(total))

    def find(w: int) -> int:
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    for out, inp in zip(g1.outputs, g2.inputs):
        a, b = find(out), find(inp)
        if a != b:
            parent[max(a, b)] = min(a, b)

    types = g1.wire_types + g2.wire_types
    new: dict[int, int] = {}
    for w in range(total):
        new.setdefault(find(w), len(new))
    remap = [new[find(w)] for w in range(total)]
    wire_types = [""] * len(new)
    for w in range(total):
        wire_types[remap[w]] = types[w]
    return _Graph(
        wire_types=wire_types,
        boxes=[(name, [remap[w] for w in ins], [remap[w] for w in outs])
               for name, ins, outs in g1.boxes + g2.boxes],
        inputs=[remap[w] for w in g1.inputs],
        outputs=[remap[w] for w in g2.outputs],
    )


def to_hypergraph(term: Term, sig: Signature) -> OpenHypergraph:
    typecheck(term, sig)
    g = _build(term, sig)
    return OpenHypergraph(
        wire_types=tuple(g.wire_types),
        boxes=tuple(HyperBox(gen=name, ins=tuple(ins), outs=tuple(outs)) for name, ins, outs in g.boxes),
        inputs=tuple(g.inputs),
        outputs=tuple(g.outputs),
    )


# ============================================================
# networkx 表示
# ============================================================

def to_networkx(h: OpenHypergraph) -> nx.DiGraph:
    """线与盒子为结点，端口写在边上；边界端口用独立结点表示"""
    g = nx.DiGraph()
    for w, t in enumerate(h.wire_types):
        g.add_node(("w", w), kind="wire", label=t)
    for b, box in enumerate(h.boxes):
        g.add_node(("b", b), kind="box", label=box.gen)
        for k, w in enumerate(box.ins):
            g.add_edge(("w", w), ("b", b), port=("in", k))
        for k, w in enumerate(box.outs):
            g.add_edge(("b", b), ("w", w), port=("out", k))
    for i, w in enumerate(h.inputs):
        g.add_node(("in", i), kind="boundary", label=f"in:{i}")
        g.add_edge(("in", i), ("w", w), port=("boundary", i))
    for j, w in enumerate(h.outputs):
        g.add_node(("out", j), kind="boundary", label=f"out:{j}")
        g.add_edge(("w", w), ("out", j), port=("boundary", j))
    return g


def hypergraph_isomorphic(h1: OpenHypergraph, h2: OpenHypergraph) -> bool:
    """保持边界顺序的同构判定（networkx VF2），作为规范形的独立对照"""
    matcher = isomorphism.DiGraphMatcher(
        to_networkx(h1), to_networkx(h2),
        node_match=lambda a, b: a["kind"] == b["kind"] and a["label"] == b["label"],
        edge_match=lambda a, b: a["port"] == b["port"],
    )
    return matcher.is_isomorphic()


# ============================================================
# 规范形
# ============================================================

def _ports(h: OpenHypergraph) -> tuple[dict[int, int], dict[int, int]]:
    producer, consumer = {}, {}
    for b, box in enumerate(h.boxes):
        for w in box.outs:
            producer[w] = b
        for w in box.ins:
            consumer[w] = b
    return producer, consumer


def _number(
    h: OpenHypergraph, producer: dict[int, int], consumer: dict[int, int],
    seed_wires: list[int], seed_box: Optional[int] = None,
) -> tuple[dict[int, int], dict[int, int]]:
    """线：先消费者后生产者；盒子：先输入线后输出线"""
    wire_num: dict[int, int] = {}
    box_num: dict[int, int] = {}
    queue: deque = deque()

    def visit_wire(w: int) -> None:
        if w not in wire_num:
            wire_num[w] = len(wire_num)
            queue.append(("w", w))

    def visit_box(b: int) -> None:
        if b not in box_num:
            box_num[b] = len(box_num)
            queue.append(("b", b))

    for w in seed_wires:
        visit_wire(w)
    if seed_box is not None:
        visit_box(seed_box)
    while queue:
        kind, x = queue.popleft()
        if kind == "w":
            if x in consumer:
                visit_box(consumer[x])
            if x in producer:
                visit_box(producer[x])
        else:
            for w in h.boxes[x].ins:
                visit_wire(w)
            for w in h.boxes[x].outs:
                visit_wire(w)
    return wire_num, box_num


def _serialize(h: OpenHypergraph, wire_num: dict[int, int], box_num: dict[int, int]) -> tuple:
    types = [""] * len(wire_num)
    for w, i in wire_num.items():
        types[i] = h.wire_types[w]
    boxes = [None] * len(box_num)
    for b, j in box_num.items():
        box = h.boxes[b]
        boxes[j] = (box.gen, tuple(wire_num[w] for w in box.ins), tuple(wire_num[w] for w in box.outs))
    return tuple(types), tuple(boxes)


def hypergraph_canonical(h: OpenHypergraph) -> OpenHypergraph:
    """边界锚定的规范重编号；对规范形再次规范化得到同一结果"""
    producer, consumer = _ports(h)
    wire_num, box_num = _number(h, producer, consumer, list(h.inputs) + list(h.outputs))
    main_types, main_boxes = _serialize(h, wire_num, box_num)

    floating = [b for b in range(len(h.boxes)) if b not in box_num]
    parts = []
    if floating:
        graph = to_networkx(h)
        rest = graph.subgraph(
            n for n in graph.nodes
            if (n[0] == "b" and n[1] not in box_num) or (n[0] == "w" and n[1] not in wire_num)
        )
        for component in nx.weakly_connected_components(rest):
            starts = sorted(n[1] for n in component if n[0] == "b")
            parts.append(min(_serialize(h, *_number(h, producer, consumer, [], b)) for b in starts))
        parts.sort()
        logger.debug(f"规范化: {len(parts)} 个浮动分量")

    types = list(main_types)
    boxes = [HyperBox(gen=g, ins=i, outs=o) for g, i, o in main_boxes]
    for part_types, part_boxes in parts:
        offset = len(types)
        types.extend(part_types)
        boxes.extend(
            HyperBox(gen=g, ins=tuple(w + offset for w in i), outs=tuple(w + offset for w in o))
            for g, i, o in part_boxes
        )
    return OpenHypergraph(
        wire_types=tuple(types), boxes=tuple(boxes),
        inputs=tuple(wire_num[w] for w in h.inputs),
        outputs=tuple(wire_num[w] for w in h.outputs),
    )


def structural_eq(t1: Term, t2: Term, sig: Signature) -> bool:
    """两个项在自由 SMC 中表示同一态射当且仅当规范形相同"""
    ty1, ty2 = typecheck(t1, sig), typecheck(t2, sig)
    if ty1 != ty2:
        raise BoundaryMismatchError("structural_eq: 两个项的类型不同", ty1, ty2)
    return hypergraph_canonical(to_hypergraph(t1, sig)) == hypergraph_canonical(to_hypergraph(t2, sig))
