"""Text syntax for elements: a small parser and the canonical printer.

Grammar (whitespace-insensitive, left-associative)::

    expr    := ['-'] product (('+' | '-') product)*
    product := power (['*'] power)*
    power   := atom ['^' ['-'] int]
    atom    := number | 'q' | lambda | generator | '(' expr ')'

Numbers are ``12`` or ``3/4``.  ``l12`` (single-digit indices) or
``l{10,11}`` denotes lambda_ij.  A generator is a family letter followed by
a 1-based index, ``E1`` or ``E{12}``.  Negative powers are allowed on
scalars and torus monomials only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .algebra import AlgebraSpec, Element, NormalWord


class ParseError(SyntaxError):
    """Malformed expression; ``position`` is the 0-based column."""

    def __init__(self, message: str, position: int = 0, text: str = ""):
        super().__init__(f"{message} (at column {position + 1})")
        self.message = message
        self.position = position
        self.text = text


class UnknownGenerator(ParseError):
    pass


class IndexOutOfRank(ParseError):
    pass


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<lam>l(?:\{\s*\d+\s*,\s*\d+\s*\}|\d\d))
  | (?P<q>q)
  | (?P<gen>[A-Za-z](?:\{\s*\d+\s*\}|\d+))
  | (?P<op>[\^*+\-()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


# -- syntax tree ------------------------------------------------------------------
# nodes are tuples: ("num", Fraction) ("q",) ("lam", i, j) ("gen", letter, i)
# ("neg", a) ("add", a, b) ("sub", a, b) ("mul", a, b) ("pow", a, n); every node
# carries its source position last.


@dataclass(frozen=True)
class Expression:
    text: str
    tree: Any

    def evaluate(self, spec: AlgebraSpec) -> Element:
        return _Evaluator(spec, self.text).run(self.tree)


_TORUS_LETTERS = ("K", "Z")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.cur
        return ParseError(msg, tok.pos, self.text)

    def is_op(self, s: str) -> bool:
        return self.cur.kind == "op" and self.cur.text == s

    def parse(self):
        if self.cur.kind == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.cur.kind != "end":
            raise self.error(f"unexpected {self.cur.text!r}")
        return node

    def expr(self):
        if self.is_op("-"):
            pos = self.take().pos
            node = ("neg", self.product(), pos)
        else:
            node = self.product()
        while self.is_op("+") or self.is_op("-"):
            op = self.take()
            node = ("add" if op.text == "+" else "sub", node, self.product(), op.pos)
        return node

    def starts_atom(self) -> bool:
        return self.cur.kind in ("num", "lam", "q", "gen") or self.is_op("(")

    def product(self):
        node = self.power()
        while True:
            if self.is_op("*"):
                pos = self.take().pos
                if not self.starts_atom():
                    raise self.error("expected a factor after '*'")
                node = ("mul", node, self.power(), pos)
            elif self.starts_atom():
                node = ("mul", node, self.power(), self.cur.pos)
            else:
                return node

    def power(self):
        node = self.atom()
        if self.is_op("^"):
            caret = self.take()
            sign = 1
            if self.is_op("-"):
                self.take()
                sign = -1
            if self.cur.kind != "num" or "/" in self.cur.text:
                raise self.error("exponent must be an integer")
            n = sign * int(self.take().text)
            if n < 0 and node[0] == "gen" and node[1] not in _TORUS_LETTERS:
                raise ParseError("negative power of a non-torus generator", caret.pos, self.text)
            node = ("pow", node, n, caret.pos)
        return node

    def atom(self):
        tok = self.cur
        if tok.kind == "num":
            self.take()
            num, _, den = tok.text.partition("/")
            if den and int(den) == 0:
                raise self.error("zero denominator", tok)
            return ("num", Fraction(tok.text), tok.pos)
        if tok.kind == "q":
            self.take()
            return ("q", tok.pos)
        if tok.kind == "lam":
            self.take()
            body = tok.text[1:]
            if body.startswith("{"):
                i, j = (int(x) for x in body.strip("{}").split(","))
            else:
                i, j = int(body[0]), int(body[1])
            return ("lam", i - 1, j - 1, tok.pos)
        if tok.kind == "gen":
            self.take()
            letter = tok.text[0]
            idx = int(tok.text[1:].strip("{} "))
            return ("gen", letter, idx - 1, tok.pos)
        if self.is_op("("):
            self.take()
            node = self.expr()
            if not self.is_op(")"):
                raise self.error("expected ')'")
            self.take()
            return node
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")


class _Evaluator:
    def __init__(self, spec: AlgebraSpec, text: str):
        self.spec = spec
        self.text = text
        self.family = {name: fam for fam, name in zip("LUT", spec.names) if name}

    def scalar(self, c) -> Element:
        return Element(self.spec, {self.spec.unit_word(): Fraction(c)})

    def run(self, node) -> Element:
        kind = node[0]
        spec = self.spec
        if kind == "num":
            return self.scalar(node[1])
        if kind == "q":
            return self.scalar(spec.params.q)
        if kind == "lam":
            i, j, pos = node[1:]
            if not (0 <= i < spec.t and 0 <= j < spec.t):
                raise IndexOutOfRank(f"lambda index outside rank {spec.t}", pos, self.text)
            return self.scalar(spec.params.lam[i][j])
        if kind == "gen":
            letter, i, pos = node[1:]
            fam = self.family.get(letter)
            if fam is None:
                raise UnknownGenerator(f"{letter} is not a generator of {spec.kind}", pos, self.text)
            if not 0 <= i < spec.t:
                raise IndexOutOfRank(f"index {i + 1} outside rank {spec.t}", pos, self.text)
            if fam == "L":
                return spec.lower(i)
            if fam == "U":
                return spec.upper(i)
            return spec.torus(i, 1)
        if kind == "neg":
            return -self.run(node[1])
        if kind in ("add", "sub", "mul"):
            a, b = self.run(node[1]), self.run(node[2])
            return a + b if kind == "add" else a - b if kind == "sub" else a * b
        if kind == "pow":
            base, n, pos = node[1:]
            val = self.run(base)
            try:
                return val ** n
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"cannot raise to the power {n}: {exc}", pos, self.text) from None
        raise AssertionError(kind)


def parse(text: str) -> Expression:
    return Expression(text, _Parser(text).parse())


def parse_element(text: str, spec: AlgebraSpec) -> Element:
    """Parse and evaluate in ``spec`` (the result is in normal form)."""
    return parse(text).evaluate(spec)


# -- printing ---------------------------------------------------------------------


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _idx(i: int) -> str:
    n = i + 1
    return str(n) if n < 10 else f"{{{n}}}"


def _run_length(name: str, word: tuple[int, ...]) -> list[str]:
    out = []
    k = 0
    while k < len(word):
        m = k
        while m < len(word) and word[m] == word[k]:
            m += 1
        s = name + _idx(word[k])
        out.append(s if m - k == 1 else f"{s}^{m - k}")
        k = m
    return out


def format_word(w: NormalWord, spec: AlgebraSpec) -> str:
    """Monomial text; the unit word prints as ``1``."""
    low, up, tor = spec.names
    parts = []
    if w.lower:
        parts += _run_length(low, w.lower)
    if w.upper:
        parts += _run_length(up, w.upper)
    for i, g in enumerate(w.torus):
        if g:
            parts.append(tor + _idx(i) + ("" if g == 1 else f"^{g}"))
    return " ".join(parts) or "1"


def _join(terms: list[tuple[Fraction, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for k, (c, body) in enumerate(terms):
        neg = c < 0
        a = -c if neg else c
        if body == "1":
            text = format_scalar(a)
        elif a == 1:
            text = body
        else:
            text = f"{format_scalar(a)} {body}"
        if k == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append(("- " if neg else "+ ") + text)
    return " ".join(out)


def print_canonical(e: Element) -> str:
    """Deterministic text; ``parse_element(print_canonical(e), e.spec) == e``."""
    return _join([(c, format_word(w, e.spec)) for w, c in sorted(e.terms.items())])


def print_tensor(t) -> str:
    terms = []
    for key, c in sorted(t.terms.items()):
        terms.append((c, " (x) ".join(format_word(w, s) for w, s in zip(key, t.specs))))
    return _join(terms)


def word_record(w: NormalWord) -> dict:
    return {
        "lower": [i + 1 for i in w.lower],
        "upper": [i + 1 for i in w.upper],
        "torus": list(w.torus),
    }


def element_records(e: Element) -> list[dict]:
    """One JSON-ready record per term, in canonical order (1-based indices)."""
    return [
        {"num": c.numerator, "den": c.denominator, **word_record(w)}
        for w, c in sorted(e.terms.items())
    ]


def tensor_records(t) -> list[dict]:
    return [
        {"num": c.numerator, "den": c.denominator, "legs": [word_record(w) for w in key]}
        for key, c in sorted(t.terms.items())
    ]
