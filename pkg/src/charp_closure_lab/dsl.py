"""Tokenizer and recursive-descent parser for the ideal-expression language.

    program := stmt*
    stmt    := KIND NAME "=" expr ";"          KIND in ring|ideal|poly|class|sop|family
             | "print" expr ("," expr)* ";"  |  "use" NAME ";"  |  NAME "(" args ")" ";"
    ring    := "Fp" "(" INT ")" "[" NAME ("," NAME)* "]" ["/" expr]
    expr    := term (("+"|"-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | power
    power   := atom ["^" unary]
    atom    := INT | STRING | NAME | NAME "(" args ")" | "(" expr ("," expr)* ")"
             | "[" [expr ("," expr)*] "]"

Comments run from ``#`` to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .errors import DSLSyntaxError

BINDING_KINDS = ("ring", "ideal", "poly", "class", "sop", "family")
COMMANDS = ("gb", "nf", "member", "colon", "intersect", "eliminate", "bracket", "tc", "tcmember",
            "testideal", "partestideal", "sop", "lcclass", "frob", "annihilates", "strongcheck",
            "idcert", "reproduce", "print", "save", "load")

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<op>[-+*^/(),;=\[\]])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # int, name, string, op, eof
    text: str
    line: int
    col: int
    offset: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1, pos))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1, pos))
    return tokens


# --- syntax tree ---------------------------------------------------------------------


@dataclass(frozen=True)
class Loc:
    line: int
    col: int


@dataclass(frozen=True)
class Num:
    value: int
    loc: Loc


@dataclass(frozen=True)
class Str:
    value: str
    loc: Loc


@dataclass(frozen=True)
class Name:
    id: str
    loc: Loc


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    loc: Loc


@dataclass(frozen=True)
class TupleLit:
    items: tuple
    loc: Loc


@dataclass(frozen=True)
class ListLit:
    items: tuple
    loc: Loc


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    loc: Loc


@dataclass(frozen=True)
class Neg:
    operand: object
    loc: Loc


@dataclass(frozen=True)
class RingLit:
    prime: int
    variables: tuple[str, ...]
    defining: object | None
    loc: Loc


Expr = Union[Num, Str, Name, Call, TupleLit, ListLit, BinOp, Neg, RingLit]


@dataclass(frozen=True)
class Binding:
    kind: str
    name: str
    expr: Expr
    loc: Loc
    text: str


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple
    loc: Loc
    text: str


@dataclass(frozen=True)
class Use:
    name: str
    loc: Loc
    text: str


Statement = Union[Binding, Command, Use]


@dataclass
class Program:
    statements: list[Statement] = field(default_factory=list)


class Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0

    # --- token helpers -----------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, expected: set[str], tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise DSLSyntaxError(f"syntax error at {found}", tok.line, tok.col, frozenset(expected))

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "name") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error({repr(text)})
        tok = self.tok
        self.i += 1
        return tok

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            self.error({what})
        tok = self.tok
        self.i += 1
        return tok

    def loc(self) -> Loc:
        return Loc(self.tok.line, self.tok.col)

    # --- statements --------------------------------------------------------------

    def program(self) -> Program:
        prog = Program()
        while self.tok.kind != "eof":
            prog.statements.append(self.statement())
        return prog

    def statement(self) -> Statement:
        start = self.tok
        loc = self.loc()
        if start.kind != "name":
            self.error({"statement"})
        if start.text in BINDING_KINDS and self.peek().kind == "name":
            kind = start.text
            self.i += 1
            name = self.expect_kind("name", "name").text
            self.expect("=")
            expr = self.ring_literal() if kind == "ring" and self.at("Fp") else self.expr()
            node = Binding(kind, name, expr, loc, "")
        elif start.text == "use" and self.peek().kind == "name":
            self.i += 1
            node = Use(self.expect_kind("name", "name").text, loc, "")
        elif start.text == "print" and not (self.peek().kind == "op" and self.peek().text == "(" ):
            self.i += 1
            items = [self.expr()]
            while self.at(","):
                self.i += 1
                items.append(self.expr())
            node = Command("print", tuple(items), loc, "")
        elif self.peek().kind == "op" and self.peek().text == "(":
            self.i += 1
            args = self.call_args()
            node = Command(start.text, args, loc, "")
        else:
            self.error({"binding keyword", "command call"})
        end = self.expect(";")
        text = self.source[start.offset:end.offset + 1]
        return type(node)(**{**node.__dict__, "text": text})

    def call_args(self) -> tuple:
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.expr())
            while self.at(","):
                self.i += 1
                args.append(self.expr())
        self.expect(")")
        return tuple(args)

    def ring_literal(self) -> RingLit:
        loc = self.loc()
        self.expect("Fp")
        self.expect("(")
        prime = int(self.expect_kind("int", "prime").text)
        self.expect(")")
        self.expect("[")
        names = [self.expect_kind("name", "variable name").text]
        while self.at(","):
            self.i += 1
            names.append(self.expect_kind("name", "variable name").text)
        self.expect("]")
        defining = None
        if self.at("/"):
            self.i += 1
            defining = self.expr()
        return RingLit(prime, tuple(names), defining, loc)

    # --- expressions -------------------------------------------------------------

    def expr(self):
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.tok.text
            loc = self.loc()
            self.i += 1
            node = BinOp(op, node, self.term(), loc)
        return node

    def term(self):
        node = self.unary()
        while self.at("*"):
            loc = self.loc()
            self.i += 1
            node = BinOp("*", node, self.unary(), loc)
        return node

    def unary(self):
        if self.at("-"):
            loc = self.loc()
            self.i += 1
            return Neg(self.unary(), loc)
        return self.power()

    def power(self):
        node = self.atom()
        if self.at("^"):
            loc = self.loc()
            self.i += 1
            node = BinOp("^", node, self.unary(), loc)
        return node

    def atom(self):
        tok = self.tok
        loc = self.loc()
        if tok.kind == "int":
            self.i += 1
            return Num(int(tok.text), loc)
        if tok.kind == "string":
            self.i += 1
            return Str(tok.text[1:-1], loc)
        if tok.kind == "name":
            if tok.text == "Fp" and self.peek().text == "(":
                return self.ring_literal()
            self.i += 1
            if self.at("("):
                return Call(tok.text, self.call_args(), loc)
            return Name(tok.text, loc)
        if self.at("("):
            self.i += 1
            items = [self.expr()]
            while self.at(","):
                self.i += 1
                items.append(self.expr())
            self.expect(")")
            return items[0] if len(items) == 1 else TupleLit(tuple(items), loc)
        if self.at("["):
            self.i += 1
            items = []
            if not self.at("]"):
                items.append(self.expr())
                while self.at(","):
                    self.i += 1
                    items.append(self.expr())
            self.expect("]")
            return ListLit(tuple(items), loc)
        self.error({"number", "name", "'('", "'['", "'-'"})


def parse_program(source: str) -> Program:
    return Parser(source).program()


def parse_expression(source: str):
    parser = Parser(source)
    node = parser.expr()
    if parser.tok.kind != "eof":
        parser.error({"end of input", "operator"})
    return node
