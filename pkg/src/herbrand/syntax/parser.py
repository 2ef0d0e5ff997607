"""Recursive-descent parser for the ASCII formula language.

Precedence, tightest first: ``~`` and quantifier prefixes, ``/\\``, ``\\/``,
``->`` (right associative, sugar for ``~A \\/ B``).  A quantifier's scope is
the next complete unary operand, so ``forall x. P(x) \\/ Q`` is
``(forall x. P(x)) \\/ Q``.  ``a < b`` is sugar for the binary predicate
``lt``.  ``#`` starts a comment when it begins a token.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .formula import (
    BULLET, SKOLEM_PREFIX, And, App, Atom, Formula, Not, Or, Symbol, Var, quantifier,
    rectify,
)

LT = "lt"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ArityError(ParseError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<pseudo>\{[^{}\n]*\})
  | (?P<ident>[A-Za-z_][A-Za-z0-9_#$']*)
  | (?P<op>/\\|\\/|->|[~().,<])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.arities: dict[tuple[str, str], int] = {}

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def take(self, text=None, kind=None) -> Token:
        tok = self.tok
        if text is not None and tok.text != text:
            raise self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        if kind is not None and tok.kind != kind:
            raise self.error(f"expected {kind}, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def at(self, text) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def note_arity(self, namespace, name, arity, tok):
        key = (namespace, name)
        seen = self.arities.setdefault(key, arity)
        if seen != arity:
            raise ArityError(f"{name!r} used with arity {arity}, earlier with {seen}", tok.line, tok.col)

    # formulas

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.take()
            right = self.formula()
            return Or(Not(left), right)
        return left

    def disjunction(self) -> Formula:
        out = self.conjunction()
        while self.at("\\/"):
            self.take()
            out = Or(out, self.conjunction())
        return out

    def conjunction(self) -> Formula:
        out = self.unary()
        while self.at("/\\"):
            self.take()
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.tok
        if self.at("~"):
            self.take()
            return Not(self.unary())
        if tok.kind == "ident" and tok.text in ("forall", "exists"):
            self.take()
            vtok = self.tok
            if vtok.kind == "ident" and vtok.text not in ("forall", "exists", "_dot") \
                    and not vtok.text.startswith(SKOLEM_PREFIX):
                name = vtok.text
            elif vtok.kind == "pseudo":
                name = vtok.text[1:-1]
            else:
                raise self.error("expected a variable after quantifier")
            self.take()
            self.note_arity("term", name, 0, vtok)
            self.take(".")
            return quantifier(tok.text, name, self.unary())
        if self.at("("):
            self.take()
            inner = self.formula()
            self.take(")")
            return inner
        return self.atom()

    def atom(self) -> Formula:
        tok = self.tok
        if tok.kind not in ("ident", "pseudo"):
            raise self.error(f"expected a formula, found {tok.text or 'end of input'!r}")
        if tok.kind == "ident" and not self._looks_like_infix():
            name = tok.text
            if name in ("forall", "exists"):
                raise self.error("misplaced quantifier")
            self.take()
            args = self.arguments() if self.at("(") else ()
            self.note_arity("pred", name, len(args), tok)
            return Atom(Symbol(name, len(args), "predicate"), args)
        left = self.term()
        optok = self.tok
        self.take("<")
        right = self.term()
        self.note_arity("pred", LT, 2, optok)
        return Atom(Symbol(LT, 2, "predicate"), (left, right))

    def _looks_like_infix(self) -> bool:
        # scan one term ahead for '<' without consuming
        j = self.i + 1
        if self.toks[j].text == "(":
            depth = 0
            while True:
                t = self.toks[j]
                if t.kind == "eof":
                    return False
                if t.text == "(":
                    depth += 1
                elif t.text == ")":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            j += 1
        return self.toks[j].text == "<"

    def arguments(self) -> tuple:
        self.take("(")
        args = [self.term()]
        while self.at(","):
            self.take()
            args.append(self.term())
        self.take(")")
        return tuple(args)

    def term(self):
        tok = self.tok
        if tok.kind == "pseudo":
            self.take()
            return Var(tok.text[1:-1])
        if tok.kind != "ident" or tok.text in ("forall", "exists"):
            raise self.error(f"expected a term, found {tok.text or 'end of input'!r}")
        self.take()
        name = tok.text
        if name == "_dot":
            return BULLET
        args = self.arguments() if self.at("(") else ()
        self.note_arity("term", name, len(args), tok)
        if name.startswith(SKOLEM_PREFIX):
            return App(Symbol(name, len(args), "skolem"), args)
        if not args:
            return Var(name)
        return App(Symbol(name, len(args), "function"), args)


def parse(text: str, rename_apart: bool = True) -> Formula:
    """Parse ``text`` into a formula.

    By default binders are renamed apart so the result is rectified;
    ``rename_apart=False`` keeps the names exactly as written.
    """
    p = _Parser(text)
    out = p.formula()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return rectify(out) if rename_apart else out


def parse_term(text: str):
    p = _Parser(text)
    out = p.term()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return out
