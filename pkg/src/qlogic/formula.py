"""Propositional formula language: AST, parser, printer.

Grammar, precedence high to low (both ASCII and Unicode spellings):

    not:  !  or  the negation sign
    and:  &  or  the wedge
    xor:  ^  or  the circled xor
    or:   |  or  the vee

Binary connectives associate to the left; parentheses override; whitespace
is insignificant. Atom names match ``[A-Za-z][A-Za-z0-9_]*``. Parse errors
report the UTF-8 byte offset and the set of expected tokens.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import ParseError

__all__ = [
    "Atom",
    "Not",
    "And",
    "Or",
    "Xor",
    "Formula",
    "MAX_DEPTH",
    "parse_formula",
    "print_formula",
    "formula_depth",
    "formula_atoms",
]

MAX_DEPTH = 64

_ATOM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not _ATOM_RE.fullmatch(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Xor:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Not, And, Or, Xor]


def formula_depth(f: Formula) -> int:
    if isinstance(f, Atom):
        return 1
    if isinstance(f, Not):
        return 1 + formula_depth(f.operand)
    return 1 + max(formula_depth(f.left), formula_depth(f.right))


def formula_atoms(f: Formula) -> set[str]:
    """Names of all atoms occurring in the formula."""
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Not):
        return formula_atoms(f.operand)
    return formula_atoms(f.left) | formula_atoms(f.right)


_NOT_CHARS = {"!", "¬"}
_AND_CHARS = {"&", "∧"}
_XOR_CHARS = {"^", "⊻"}
_OR_CHARS = {"|", "∨"}


@dataclass(frozen=True)
class _Token:
    kind: str  # ATOM NOT AND XOR OR LPAREN RPAREN END
    text: str
    pos: int  # character position in the source


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _NOT_CHARS:
            tokens.append(_Token("NOT", ch, i))
        elif ch in _AND_CHARS:
            tokens.append(_Token("AND", ch, i))
        elif ch in _XOR_CHARS:
            tokens.append(_Token("XOR", ch, i))
        elif ch in _OR_CHARS:
            tokens.append(_Token("OR", ch, i))
        elif ch == "(":
            tokens.append(_Token("LPAREN", ch, i))
        elif ch == ")":
            tokens.append(_Token("RPAREN", ch, i))
        else:
            m = _ATOM_RE.match(text, i)
            if m is None:
                raise ParseError(
                    f"unexpected character {ch!r}",
                    _byte_offset(text, i),
                    ("atom", "'!'", "'('"),
                )
            tokens.append(_Token("ATOM", m.group(), i))
            i = m.end()
            continue
        i += 1
    tokens.append(_Token("END", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: tuple[str, ...]) -> ParseError:
        tok = self.peek()
        what = "end of input" if tok.kind == "END" else repr(tok.text)
        return ParseError(
            f"unexpected {what}", _byte_offset(self.text, tok.pos), expected
        )

    # or_expr := xor_expr (OR xor_expr)*
    def or_expr(self) -> Formula:
        node = self.xor_expr()
        while self.peek().kind == "OR":
            self.advance()
            node = Or(node, self.xor_expr())
        return node

    def xor_expr(self) -> Formula:
        node = self.and_expr()
        while self.peek().kind == "XOR":
            self.advance()
            node = Xor(node, self.and_expr())
        return node

    def and_expr(self) -> Formula:
        node = self.unary()
        while self.peek().kind == "AND":
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        if self.peek().kind == "NOT":
            self.advance()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "ATOM":
            self.advance()
            return Atom(tok.text)
        if tok.kind == "LPAREN":
            self.advance()
            node = self.or_expr()
            if self.peek().kind != "RPAREN":
                raise self.fail(("')'",))
            self.advance()
            return node
        raise self.fail(("atom", "'!'", "'('"))


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into a formula AST.

    Raises ParseError (with byte offset and expected-token set) on syntax
    errors, trailing input, or trees deeper than MAX_DEPTH.
    """
    parser = _Parser(text)
    node = parser.or_expr()
    if parser.peek().kind != "END":
        raise parser.fail(("'&'", "'^'", "'|'", "end of input"))
    if formula_depth(node) > MAX_DEPTH:
        raise ParseError(f"formula deeper than {MAX_DEPTH}", 0, ())
    return node


_PRECEDENCE = {Or: 1, Xor: 2, And: 3, Not: 4, Atom: 5}

_OP_TEXT = {Or: "|", Xor: "^", And: "&"}


def print_formula(f: Formula) -> str:
    """Render with ASCII connectives and minimal parentheses.

    Output reparses to the identical AST: binary connectives are printed
    left-associated, with parentheses around any child that binds less
    tightly (or a right child at the same level).
    """
    return _print(f)


def _print(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = _print(f.operand)
        if _PRECEDENCE[type(f.operand)] < _PRECEDENCE[Not]:
            inner = f"({inner})"
        return "!" + inner
    prec = _PRECEDENCE[type(f)]
    left = _print(f.left)
    if _PRECEDENCE[type(f.left)] < prec:
        left = f"({left})"
    right = _print(f.right)
    if _PRECEDENCE[type(f.right)] <= prec:
        right = f"({right})"
    return f"{left} {_OP_TEXT[type(f)]} {right}"
