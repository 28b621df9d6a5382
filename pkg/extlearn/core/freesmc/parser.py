"""
自由 SMC 项语言的词法、语法分析与打印

    expr := par (';' par)*          左结合
    par  := atom ('*' atom)*        左结合，优先级高于 ';'
    atom := 'id' '[' word ']' | 'sym' '[' word '|' word ']' | NAME | '(' expr ')'
    word := NAME*                   空白分隔的对象生成元

文档格式按行：
    obj a b c
    gen f : a b -> c
    term name = f ; (sym[a|b] * id[c])
    learner NAME A="a" A'="" B="a" B'="" P="a" Q="a" l="sym[a|a]" r="id[a]"
"""
from __future__ import annotations
import logging
import re
import shlex
from typing import Optional

from extlearn.errors import TermSyntaxError, UnknownGeneratorError
from extlearn.models import (
    Document, FormalLearner, GeneratorType, Gen, Id, Par, Seq, Signature, Sym, Term, Word,
)

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<sym>[;*()\[\]|]))")
KEYWORDS = ("id", "sym")


# ============================================================
# 词法
# ============================================================

def tokenize(text: str) -> list[tuple[str, str, int]]:
    """返回 (种类, 文本, 位置)，以 ("end", "", len) 结尾"""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            start = len(text) - len(text[pos:].lstrip())
            raise TermSyntaxError(f"无法识别的字符 {text[start]!r}", start)
        kind = "name" if match.group("name") else "sym"
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


# ============================================================
# 语法
# ============================================================

class _Parser:
    def __init__(self, text: str, signature: Optional[Signature]):
        self.tokens = tokenize(text)
        self.i = 0
        self.signature = signature

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, value: Optional[str] = None) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            found = tok[1] or "输入结尾"
            raise TermSyntaxError(f"期望 {value!r}，得到 {found!r}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> Term:
        term = self.par()
        while self.peek()[1] == ";":
            self.take()
            term = Seq(first=term, second=self.par())
        return term

    def par(self) -> Term:
        term = self.atom()
        while self.peek()[1] == "*":
            self.take()
            term = Par(left=term, right=self.atom())
        return term

    def word(self, stops: tuple[str, ...]) -> Word:
        names = []
        while self.peek()[1] not in stops:
            kind, name, pos = self.take()
            if kind != "name":
                raise TermSyntaxError(f"对象名称位置出现 {name or '输入结尾'!r}", pos)
            names.append(name)
        return tuple(names)

    def atom(self) -> Term:
        kind, value, pos = self.peek()
        if value == "(":
            self.take()
            term = self.expr()
            self.take(")")
            return term
        if kind != "name":
            raise TermSyntaxError(f"期望项，得到 {value or '输入结尾'!r}", pos)
        self.take()
        if value == "id":
            self.take("[")
            w = self.word(("]", ""))
            self.take("]")
            return Id(word=w)
        if value == "sym":
            self.take("[")
            left = self.word(("|", ""))
            self.take("|")
            right = self.word(("]", ""))
            self.take("]")
            return Sym(left=left, right=right)
        if self.signature is not None and value not in self.signature.generators:
            raise UnknownGeneratorError(f"未知生成元 {value!r} (位置 {pos})")
        return Gen(name=value)


def parse_term(text: str, signature: Optional[Signature] = None) -> Term:
    """解析项；给定签名时同时检查生成元是否已声明"""
    parser = _Parser(text, signature)
    term = parser.expr()
    kind, value, pos = parser.peek()
    if kind != "end":
        raise TermSyntaxError(f"多余的输入 {value!r}", pos)
    return term


# ============================================================
# 打印
# ============================================================

def _word(w: Word) -> str:
    return " ".join(w)


def pretty(term: Term) -> str:
    """最少括号的打印；parse_term(pretty(t)) == t"""
    if isinstance(term, Id):
        return f"id[{_word(term.word)}]"
    if isinstance(term, Sym):
        return f"sym[{_word(term.left)}|{_word(term.right)}]"
    if isinstance(term, Gen):
        return term.name
    if isinstance(term, Seq):
        right = pretty(term.second)
        if isinstance(term.second, Seq):
            right = f"({right})"
        return f"{pretty(term.first)} ; {right}"
    left, right = pretty(term.left), pretty(term.right)
    if isinstance(term.left, Seq):
        left = f"({left})"
    if isinstance(term.right, (Seq, Par)):
        right = f"({right})"
    return f"{left} * {right}"


# ============================================================
# 文档
# ============================================================

_LEARNER_KEYS = ("A", "A'", "B", "B'", "P", "Q", "l", "r")


def _split_word(text: str) -> Word:
    return tuple(text.split())


def parse_document(text: str) -> Document:
    """解析 obj / gen / term / learner 行；'#' 开头为注释"""
    objects: list[str] = []
    generators: dict[str, GeneratorType] = {}
    raw_terms: dict[str, tuple[str, int]] = {}
    raw_learners: dict[str, tuple[dict[str, str], int]] = {}

    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        head, _, rest = stripped.partition(" ")
        if head == "obj":
            objects.extend(rest.split())
        elif head == "gen":
            name, colon, arrow_part = rest.partition(":")
            dom, arrow, cod = arrow_part.partition("->")
            name = name.strip()
            if not colon or not arrow or not name:
                raise TermSyntaxError(f"第 {lineno} 行：gen 需要形如 'gen f : a b -> c'", 0)
            if name in generators or name in KEYWORDS:
                raise TermSyntaxError(f"第 {lineno} 行：生成元 {name!r} 重复或为保留字", 0)
            generators[name] = GeneratorType(dom=_split_word(dom), cod=_split_word(cod))
        elif head == "term":
            name, eq, body = rest.partition("=")
            if not eq or not name.strip():
                raise TermSyntaxError(f"第 {lineno} 行：term 需要形如 'term name = ...'", 0)
            raw_terms[name.strip()] = (body, lineno)
        elif head == "learner":
            try:
                parts = shlex.split(rest)
            except ValueError as e:
                raise TermSyntaxError(f"第 {lineno} 行：{e}", 0) from None
            if not parts:
                raise TermSyntaxError(f"第 {lineno} 行：learner 缺少名称", 0)
            fields = {}
            for part in parts[1:]:
                key, eq, value = part.partition("=")
                if not eq or key not in _LEARNER_KEYS:
                    raise TermSyntaxError(f"第 {lineno} 行：无法识别的字段 {part!r}", 0)
                fields[key] = value
            raw_learners[parts[0]] = (fields, lineno)
        else:
            raise TermSyntaxError(f"第 {lineno} 行：未知指令 {head!r}", 0)

    signature = Signature(objects=tuple(objects), generators=generators)

    def parse_at(body: str, lineno: int) -> Term:
        try:
            return parse_term(body, signature)
        except TermSyntaxError as e:
            raise TermSyntaxError(f"第 {lineno} 行：{e.detail}", e.position) from None

    terms = {name: parse_at(body, lineno) for name, (body, lineno) in raw_terms.items()}
    learners = {}
    for name, (fields, lineno) in raw_learners.items():
        missing = [k for k in ("l", "r") if k not in fields]
        if missing:
            raise TermSyntaxError(f"第 {lineno} 行：learner 缺少 {missing}", 0)
        learners[name] = FormalLearner(
            name=name,
            A=_split_word(fields.get("A", "")), Ap=_split_word(fields.get("A'", "")),
            B=_split_word(fields.get("B", "")), Bp=_split_word(fields.get("B'", "")),
            P=_split_word(fields.get("P", "")), Q=_split_word(fields.get("Q", "")),
            l=parse_at(fields["l"], lineno), r=parse_at(fields["r"], lineno),
        )
    logger.debug(f"文档: {len(objects)} 个对象, {len(generators)} 个生成元, "
                 f"{len(terms)} 个项, {len(learners)} 个学习器")
    return Document(signature=signature, terms=terms, learners=learners)
