"""
公式解析器：正则分词 + 递归下降

优先级（由紧到松）：□ ◇ ∀x ∃x，·，∧，∨，→（右结合）。
ASCII 与 Unicode 写法均可：/\\ ∧，\\/ ∨，* ·，-> →，box □，dia ◇，A ∀，E ∃。
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from monolat.core.exceptions import FormulaError, ParseError
from monolat.syntax.formulas import (
    E, F, Atom, Binary, Equation, Formula, Modal, Op, PropVar, Quant, Theory,
    Variable,
)

TOKEN_SPEC = [
    ("WS", r"\s+"),
    ("TURNSTILE", r"\|-|⇒|⊢"),
    ("AND", r"/\\|∧"),
    ("OR", r"\\/|∨"),
    ("PROD", r"\*|·"),
    ("IMP", r"->|→"),
    ("LEQ", r"<=|≤"),
    ("APPROX", r"≈|="),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("COMMA", r","),
    ("BOX", r"□"),
    ("DIA", r"◇"),
    ("ALL", r"∀"),
    ("EX", r"∃"),
    ("PRED", r"P\d+"),
    ("PVAR", r"p\d+"),
    ("VAR", r"x\d*(?![A-Za-z_])"),
    ("WORD", r"[A-Za-z_][A-Za-z0-9_]*"),
]
TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_SPEC))

KEYWORDS = {"box": "BOX", "dia": "DIA", "A": "ALL", "E": "EX", "e": "CONST", "f": "CONST"}
BINARY_TOKENS = {"AND": Op.AND, "OR": Op.OR, "PROD": Op.PROD, "IMP": Op.IMP}
MODAL_ONLY = {"BOX", "DIA", "PVAR"}
FO_ONLY = {"ALL", "EX", "PRED"}


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> List[Token]:
    """分词；无法识别的字符报告位置"""
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if not match:
            raise ParseError(f"无法识别的字符 {text[pos]!r}", pos, text)
        kind = match.lastgroup
        value = match.group()
        if kind == "WORD":
            if value not in KEYWORDS:
                raise ParseError(f"无法识别的记号 {value!r}", pos, text)
            kind = KEYWORDS[value]
        elif kind == "APPROX" and value == "=" and text.startswith("=>", pos):
            raise ParseError("请使用 |- 或 ⇒ 作为相继式箭头", pos, text)
        if kind != "WS":
            tokens.append(Token(kind, value, pos))
        pos = match.end()
    tokens.append(Token("EOF", "", len(text)))
    return tokens


class Parser:
    """递归下降解析器

    syntax 取 "modal"、"fo" 或 "auto"；auto 模式在遇到第一个
    语法专属记号时锁定。
    """

    def __init__(self, text: str, syntax: str = "auto"):
        if syntax not in ("modal", "fo", "auto"):
            raise ValueError(f"未知语法: {syntax}")
        self.text = text
        self.syntax = syntax
        self.tokens = tokenize(text)
        self.index = 0

    # ---------- 记号流 ----------

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str, what: str) -> Token:
        token = self.current
        if token.kind != kind:
            found = token.value or "输入结束"
            raise ParseError(f"期望 {what}，却遇到 {found!r}", token.pos, self.text)
        return self.advance()

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, token.pos, self.text)

    def _lock(self, token: Token) -> None:
        wanted = "modal" if token.kind in MODAL_ONLY else "fo" if token.kind in FO_ONLY else None
        if wanted is None:
            return
        if self.syntax == "auto":
            self.syntax = wanted
        elif self.syntax != wanted:
            label = "模态" if self.syntax == "modal" else "一阶"
            raise self.error(f"记号 {token.value!r} 不属于{label}语法", token)

    # ---------- 文法 ----------

    def formula(self) -> Formula:
        return self.implication()

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.current.kind == "IMP":
            self.advance()
            return Binary(Op.IMP, left, self.implication())
        return left

    def _left_assoc(self, kind: str, operand) -> Formula:
        left = operand()
        while self.current.kind == kind:
            self.advance()
            left = Binary(BINARY_TOKENS[kind], left, operand())
        return left

    def disjunction(self) -> Formula:
        return self._left_assoc("OR", self.conjunction)

    def conjunction(self) -> Formula:
        return self._left_assoc("AND", self.product)

    def product(self) -> Formula:
        return self._left_assoc("PROD", self.unary)

    def unary(self) -> Formula:
        token = self.current
        if token.kind in ("BOX", "DIA"):
            self._lock(token)
            self.advance()
            return Modal("box" if token.kind == "BOX" else "dia", self.unary())
        if token.kind in ("ALL", "EX"):
            self._lock(token)
            self.advance()
            var = self.expect("VAR", "量词变元 x")
            if var.value != "x":
                raise self.error(f"量词只能约束 x，不能约束自由变元符号 {var.value}", var)
            body = self.unary()
            try:
                return Quant("all" if token.kind == "ALL" else "ex", body)
            except FormulaError as exc:
                raise self.error(str(exc), token) from exc
        return self.primary()

    def primary(self) -> Formula:
        token = self.current
        if token.kind == "CONST":
            self.advance()
            return E if token.value == "e" else F
        if token.kind == "PVAR":
            self._lock(token)
            self.advance()
            return PropVar(int(token.value[1:]))
        if token.kind == "PRED":
            self._lock(token)
            self.advance()
            self.expect("LPAREN", "'('")
            var = self.expect("VAR", "变元")
            self.expect("RPAREN", "')'")
            return Atom(int(token.value[1:]), parse_variable(var.value))
        if token.kind == "LPAREN":
            self.advance()
            inner = self.formula()
            self.expect("RPAREN", "')'")
            return inner
        found = token.value or "输入结束"
        raise self.error(f"意外的记号 {found!r}")

    def end(self) -> None:
        if self.current.kind != "EOF":
            raise self.error(f"多余的记号 {self.current.value!r}")


def parse_variable(name: str) -> Variable:
    """'x' → x，'x3' → x_3"""
    return Variable() if name == "x" else Variable(int(name[1:]))


def parse(text: str, syntax: str = "auto") -> Formula:
    """解析单个公式"""
    parser = Parser(text, syntax)
    result = parser.formula()
    parser.end()
    return result


def parse_modal(text: str) -> Formula:
    return parse(text, "modal")


def parse_fo(text: str) -> Formula:
    return parse(text, "fo")


def parse_equation(text: str, syntax: str = "auto") -> Equation:
    """解析等式 φ ≈ ψ 或不等式 φ ≤ ψ"""
    parser = Parser(text, syntax)
    lhs = parser.formula()
    token = parser.current
    if token.kind not in ("APPROX", "LEQ"):
        raise parser.error("期望 ≈ 或 ≤")
    parser.advance()
    rhs = parser.formula()
    parser.end()
    try:
        return Equation.leq(lhs, rhs) if token.kind == "LEQ" else Equation(lhs, rhs)
    except FormulaError as exc:
        raise ParseError(str(exc), token.pos, text) from exc


def parse_theory(text: str, syntax: str = "auto") -> Theory:
    """解析理论：每行或分号分隔一条等式，# 开头为注释"""
    equations = []
    for line in text.replace(";", "\n").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            equations.append(parse_equation(line, syntax))
    return tuple(equations)


def parse_sequent_parts(text: str) -> Tuple[List[Formula], Optional[Formula]]:
    """解析 'Γ |- Δ'，返回（前件列表，后件或 None）"""
    parser = Parser(text, "fo")
    antecedent: List[Formula] = []
    if parser.current.kind != "TURNSTILE":
        antecedent.append(parser.formula())
        while parser.current.kind == "COMMA":
            parser.advance()
            antecedent.append(parser.formula())
    parser.expect("TURNSTILE", "'|-'")
    succedent = None
    if parser.current.kind != "EOF":
        succedent = parser.formula()
        if parser.current.kind == "COMMA":
            raise parser.error("后件最多只能有一个公式")
    parser.end()
    return antecedent, succedent
