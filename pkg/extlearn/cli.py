"""
ExtLearn 命令行入口
子命令：learner / equiv / fhat / atemp-compare / freesmc / smooth

退出码：0 已判定（含一步搜索返回“无见证”），2 界限内未判定或仅 consistent-with-equality，1 错误
"""
from __future__ import annotations
import argparse
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence, Union

from pydantic import ValidationError

from extlearn import __version__
from extlearn.config import get_config
from extlearn.errors import ExtLearnError
from extlearn.models import (
    AtempMeaning, EquivKind, ExtLearnBaseModel, FinFun, FinSet, IntLearner,
    Interpretation, Learner, finset, unit_set,
)
from extlearn.core import learner as lc
from extlearn.core.intensional import double_dual_int, dual_int, to_coend
from extlearn.core.equivalence import as_int, check_equivalence, snake_check
from extlearn.core.atemp import AtempSemantics, fhat_rel
from extlearn.core.finbase import rel_pairs_sorted
from extlearn.core.freesmc import (
    atemp_check_formal, eval_term, hypergraph_canonical, parse_document, pretty,
    random_interpretation, structural_eq, to_hypergraph, typecheck, typecheck_learner,
)
from extlearn.core.smooth import neuron_dual_report

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_ERROR, EXIT_UNDECIDED = 0, 1, 2

AnyLearner = Union[Learner, IntLearner]


# ============================================================
# 输入输出
# ============================================================

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def load_learner(path: str) -> AnyLearner:
    """含 I 字段的 JSON 按内涵学习器读取，否则按余端代表元 (P, Q, l, r) 读取"""
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as e:
        raise ExtLearnError(f"{path}: JSON 格式错误 (第 {e.lineno} 行): {e.msg}") from None
    if not isinstance(data, dict):
        raise ExtLearnError(f"{path}: 顶层必须是对象")
    model = IntLearner if "I" in data else Learner
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise ExtLearnError(f"{path}: {e}") from None


def _as_coend(m: AnyLearner) -> Learner:
    return to_coend(m) if isinstance(m, IntLearner) else m


def _set_of(n: Optional[int]) -> FinSet:
    return unit_set() if n is None else finset(n)


def _dump(payload: Any) -> str:
    if isinstance(payload, ExtLearnBaseModel):
        payload = payload.to_api()
    return json.dumps(payload, ensure_ascii=False, indent=2)


def _fun_lines(f: FinFun, indent: str = "  ") -> list[str]:
    return [f"{indent}{x} ↦ {y}" for x, y in f.table()]


def describe_learner(m: AnyLearner) -> str:
    """人类可读的函数表"""
    head = [f"A = {list(m.A.elements)}  A' = {list(m.Ap.elements)}",
            f"B = {list(m.B.elements)}  B' = {list(m.Bp.elements)}",
            f"P = {list(m.P.elements)}"]
    if isinstance(m, IntLearner):
        body = ["I:", *_fun_lines(m.I), "U:", *_fun_lines(m.U), "r:", *_fun_lines(m.r)]
    else:
        head.append(f"Q = {list(m.Q.elements)}")
        body = ["l:", *_fun_lines(m.l), "r:", *_fun_lines(m.r)]
    return "\n".join(head + body)


def _emit(args: argparse.Namespace, payload: Any, text: Callable[[], str]) -> None:
    print(_dump(payload) if args.json else text())


# ============================================================
# learner
# ============================================================

def _learner_result(args: argparse.Namespace) -> AnyLearner:
    op = args.op
    if op == "identity":
        return lc.identity(finset(args.A), _set_of(args.A_prime))
    if op == "snake":
        return lc.snake_composite(finset(args.A), _set_of(args.A_prime))

    files = [load_learner(p) for p in args.files]
    arity = 2 if op in ("compose", "tensor") else 1
    if len(files) != arity:
        raise ExtLearnError(f"learner {op} 需要 {arity} 个输入文件，实际 {len(files)} 个")
    if op == "compose":
        return lc.compose(_as_coend(files[0]), _as_coend(files[1]))
    if op == "tensor":
        return lc.tensor(_as_coend(files[0]), _as_coend(files[1]))
    if op == "dual":
        return lc.dual(_as_coend(files[0]))
    if op == "decompose":
        return lc.decompose(_as_coend(files[0]))
    if op == "to-coend":
        return _as_coend(files[0])
    if op == "to-int":
        return as_int(files[0])
    if op == "dual-int":
        return dual_int(as_int(files[0]))
    return double_dual_int(as_int(files[0]))


def cmd_learner(args: argparse.Namespace) -> int:
    if args.op in ("identity", "snake") and args.A is None:
        raise ExtLearnError(f"learner {args.op} 需要 --A")
    if args.op == "snake" and args.check:
        report = snake_check(args.A, args.bound)
        _emit(args, report, lambda: "\n".join([
            f"|A| = {report.size}, 界限 {report.bound}",
            f"与延迟恒等内涵等价: {report.int_equiv_delayed}",
            f"到恒等的外延一步见证: {report.ext_onestep_to_identity}",
            f"从恒等的外延一步见证: {report.ext_onestep_from_identity}",
            f"外延闭包: {report.closure_status}",
            f"F̂ 为恒等关系: {report.fhat_is_identity}",
            f"检查{'通过' if report.passed else '失败'}",
        ]))
        return EXIT_OK if report.passed else EXIT_ERROR
    m = _learner_result(args)
    _emit(args, m, lambda: describe_learner(m))
    return EXIT_OK


# ============================================================
# equiv / fhat / atemp-compare
# ============================================================

_KIND_NAMES = {k.value: k for k in EquivKind}


def cmd_equiv(args: argparse.Namespace) -> int:
    m1, m2 = load_learner(args.files[0]), load_learner(args.files[1])
    if args.kind == EquivKind.COEND.value:
        m1, m2 = _as_coend(m1), _as_coend(m2)
    report = check_equivalence(_KIND_NAMES[args.kind], m1, m2, args.bound)

    def text() -> str:
        verdict = {True: "相关", False: "不相关", None: "界限内未判定"}[report.related]
        lines = [f"关系 {args.kind}: {verdict}"]
        if report.witness is not None:
            w = report.witness
            lines.append(f"见证种类: {w.kind}")
            for name in ("f", "uhat", "u", "v"):
                fun = getattr(w, name)
                if fun is not None:
                    lines += [f"{name}:", *_fun_lines(fun)]
        if report.closure is not None:
            c = report.closure
            lines.append(f"闭包状态: {c.status}  链长 {len(c.chain)}  界限 {c.bound}")
            if c.certificate:
                lines.append(f"证书: {c.certificate}")
        return "\n".join(lines)

    _emit(args, report, text)
    return EXIT_OK if report.related is not None else EXIT_UNDECIDED


def cmd_fhat(args: argparse.Namespace) -> int:
    m = _as_coend(load_learner(args.file))
    model = args.model[0] if args.model else "rel"
    if model == "rel":
        rel = fhat_rel(m)
        payload = {"model": "rel", "pairs": rel_pairs_sorted(rel)}
    else:
        semantics = AtempSemantics([model])
        payload = semantics.bundle.models[0].to_api(semantics.evaluate(m, model))

    def text() -> str:
        if "pairs" in payload:
            return "\n".join(f"{x} ~ {y}" for x, y in payload["pairs"]) or "(空关系)"
        return "\n".join(f"{x} ~ {y} : {n}" for x, y, n in payload["entries"]) or "(零矩阵)"

    _emit(args, payload, text)
    return EXIT_OK


def cmd_atemp_compare(args: argparse.Namespace) -> int:
    m1, m2 = (_as_coend(load_learner(p)) for p in args.files)
    verdict = AtempSemantics(args.model).compare(m1, m2)
    _emit(args, verdict, lambda: "\n".join(
        [f"{verdict.meaning}"]
        + [f"  {c.model}: {'相等' if c.equal else '不同'}" for c in verdict.models]
        + ([f"区分模型: {verdict.separating_model}"] if verdict.separating_model else [])
    ))
    return EXIT_OK if verdict.meaning == AtempMeaning.DISTINGUISHED else EXIT_UNDECIDED


# ============================================================
# freesmc
# ============================================================

def _interpretations(args: argparse.Namespace, sig, count: int) -> list[Interpretation]:
    if args.interp:
        return [Interpretation.model_validate_json(_read_text(args.interp))]
    rng = lc.make_rng(args.seed)
    return [random_interpretation(sig, rng, args.max_size) for _ in range(count)]


def cmd_freesmc(args: argparse.Namespace) -> int:
    doc = parse_document(_read_text(args.file))
    sig = doc.signature
    names = list(args.names)

    def term(name: str):
        if name not in doc.terms:
            raise ExtLearnError(f"文档中没有项 {name!r}")
        return doc.terms[name]

    def formal(name: str):
        if name not in doc.learners:
            raise ExtLearnError(f"文档中没有学习器 {name!r}")
        return doc.learners[name]

    if args.op == "check":
        types = {}
        for name, t in doc.terms.items():
            dom, cod = typecheck(t, sig)
            types[name] = {"dom": list(dom), "cod": list(cod), "term": pretty(t)}
        for fl in doc.learners.values():
            typecheck_learner(fl, sig)
        payload = {"terms": types, "learners": sorted(doc.learners)}
        _emit(args, payload, lambda: "\n".join(
            [f"{n} : {' '.join(v['dom']) or 'I'} -> {' '.join(v['cod']) or 'I'}    {v['term']}"
             for n, v in types.items()]
            + [f"learner {n}: 类型正确" for n in payload["learners"]]
        ))
        return EXIT_OK

    if args.op == "eval":
        if len(names) != 1:
            raise ExtLearnError("freesmc eval 需要一个项名")
        f = eval_term(term(names[0]), _interpretations(args, sig, 1)[0], sig)
        _emit(args, f, lambda: "\n".join(_fun_lines(f, indent="")))
        return EXIT_OK

    if args.op == "eq":
        if len(names) != 2:
            raise ExtLearnError("freesmc eq 需要两个项名")
        t1, t2 = term(names[0]), term(names[1])
        equal = structural_eq(t1, t2, sig)
        payload = {
            "equal": equal,
            "canonical": [hypergraph_canonical(to_hypergraph(t, sig)).to_api() for t in (t1, t2)],
        }
        _emit(args, payload, lambda: "结构相等" if equal else "结构不同")
        return EXIT_OK

    if len(names) != 2:
        raise ExtLearnError("freesmc atemp 需要两个学习器名")
    interps = _interpretations(args, sig, args.samples)
    verdict = atemp_check_formal(formal(names[0]), formal(names[1]), sig, interps, args.model)
    _emit(args, verdict, lambda: f"{verdict.meaning}（共检查 {verdict.interpretations} 个解释）"
          + (f"，第 {verdict.separating_index} 个解释区分" if verdict.separating_index is not None else ""))
    return EXIT_OK if verdict.meaning == AtempMeaning.DISTINGUISHED else EXIT_UNDECIDED


# ============================================================
# smooth
# ============================================================

def _write_csv(path: str, report) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "original", "dual", "double_dual", "lag_ok"])
        for row in report.rows:
            writer.writerow([
                row.step,
                ";".join(repr(x) for x in row.original),
                ";".join(repr(x) for x in row.dual),
                ";".join(repr(x) for x in row.double_dual),
                int(row.lag_ok),
            ])


def cmd_smooth(args: argparse.Namespace) -> int:
    report = neuron_dual_report(args.dim, args.steps, args.seed, args.activation)
    if args.csv:
        _write_csv(args.csv, report)
        logger.info(f"已写出 {len(report.rows)} 行到 {args.csv}")
    rtol = get_config().smooth.gradient_rtol
    _emit(args, report, lambda: "\n".join([
        f"neuron[{report.activation}] dim={report.dim} steps={report.steps} seed={report.seed}",
        f"二重对偶落后一步: {'成立' if report.lag_law_holds else '不成立'}",
        f"梯度最大相对误差: {report.max_gradient_error:.3e}",
    ]))
    ok = report.lag_law_holds and report.max_gradient_error <= rtol
    return EXIT_OK if ok else EXIT_ERROR


# ============================================================
# 参数解析
# ============================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="输出 JSON")
    common.add_argument("-v", "--verbose", action="store_true", help="输出 DEBUG 日志到 stderr；缺省级别取 LOG_LEVEL")

    parser = argparse.ArgumentParser(prog="extlearn", description="有限集上外延学习器的演算与判定")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("learner", parents=[common], help="构造与变换学习器")
    p.add_argument("op", choices=["identity", "compose", "tensor", "dual", "dual-int", "double-dual",
                                  "to-coend", "to-int", "decompose", "snake"])
    p.add_argument("files", nargs="*", help="学习器 JSON 文件，'-' 表示标准输入")
    p.add_argument("--A", type=int, help="|A|")
    p.add_argument("--A-prime", dest="A_prime", type=int, help="|A'|，缺省为单位集 I")
    p.add_argument("--check", action="store_true", help="snake：运行蛇形复合检查")
    p.add_argument("--bound", type=int, help="闭包搜索的参数集大小上限")
    p.set_defaults(handler=cmd_learner)

    p = sub.add_parser("equiv", parents=[common], help="判定两个学习器之间的关系")
    p.add_argument("--kind", choices=list(_KIND_NAMES), default="int")
    p.add_argument("files", nargs=2)
    p.add_argument("--bound", type=int)
    p.set_defaults(handler=cmd_equiv)

    p = sub.add_parser("fhat", parents=[common], help="计算 F̂")
    p.add_argument("file")
    p.add_argument("--model", action="append", help="rel（缺省）或 count")
    p.set_defaults(handler=cmd_fhat)

    p = sub.add_parser("atemp-compare", parents=[common], help="在 Atemp 语义下比较")
    p.add_argument("files", nargs=2)
    p.add_argument("--model", action="append", help="可重复；缺省读取配置")
    p.set_defaults(handler=cmd_atemp_compare)

    p = sub.add_parser("freesmc", parents=[common], help="自由 SMC 项语言")
    p.add_argument("op", choices=["check", "eval", "eq", "atemp"])
    p.add_argument("file", help="签名文档")
    p.add_argument("names", nargs="*", help="项名或学习器名")
    p.add_argument("--interp", help="解释 JSON；缺省随机生成")
    p.add_argument("--seed", type=int, help="缺省取配置中的 RANDOM_SEED")
    p.add_argument("--samples", type=int, default=20, help="atemp：随机解释个数")
    p.add_argument("--max-size", dest="max_size", type=int, default=3)
    p.add_argument("--model", action="append")
    p.set_defaults(handler=cmd_freesmc)

    p = sub.add_parser("smooth", parents=[common], help="光滑学习器的对偶实验")
    p.add_argument("op", choices=["neuron-dual"])
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--seed", type=int, help="缺省取配置中的 RANDOM_SEED")
    p.add_argument("--activation", choices=["identity", "logistic"], default="logistic")
    p.add_argument("--csv", help="逐步预测写出到 CSV")
    p.set_defaults(handler=cmd_smooth)
    return parser


def log_level(verbose: bool) -> int:
    """-v 时为 DEBUG，否则取配置中的 log_level"""
    if verbose:
        return logging.DEBUG
    return getattr(logging, get_config().log_level.upper(), logging.INFO)


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=log_level(args.verbose),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except (ExtLearnError, ValueError, OSError, NotImplementedError) as e:
        logger.debug("命令失败", exc_info=True)
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(dispatch())
