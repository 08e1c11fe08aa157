"""Tokenizer, LL(1) grammar and evaluator for element expressions.

Grammar:

    sum   := prod ('+' prod)*
    prod  := atom ('*' atom)*
    atom  := base ('^' nat)?
    base  := token | nat | '(' sum ')'

Tokens are the coefficient symbols r, t, th (with th optionally divided
as "th/(r^a t^b)" or "th/(r^a*t^b)"), projective generators a / b with an
optional ambient index ("a3", "b3"), rotation classes "B2" and
"B[i1,...]" with "B[0]" the unit, frame classes "[i1,...]" with "[0]"
the unit, plus bare names which each space may resolve (the sphere
generator "x").  The unicode spellings of rho, tau, theta and beta are
accepted as input aliases but never emitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .coeff import CoeffElement, ConeMonomial, ONE, RHO, TAU


class ParseError(ValueError):
    """Syntax error carrying the byte offset of the offending token."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


class UnknownGeneratorError(ValueError):
    """A token that does not resolve in the selected space."""

    def __init__(self, token: str, space: str, pos: int):
        super().__init__(f"unknown generator {token!r} in space {space} (at offset {pos})")
        self.token = token
        self.space = space
        self.pos = pos


# --- tokens ----------------------------------------------------------------


@dataclass
class Token:
    kind: str
    pos: int
    text: str
    value: object = None


_PUNCT = {"*": "STAR", "+": "PLUS", "^": "CARET", "(": "LPAREN", ")": "RPAREN"}


def _read_int(text: str, i: int) -> Tuple[int, int]:
    j = i
    while j < len(text) and text[j].isdigit():
        j += 1
    if j == i:
        raise ParseError("expected a number", i)
    return int(text[i:j]), j


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i] in " \t":
        i += 1
    return i


def _read_bracket_list(text: str, i: int, opener_pos: int) -> Tuple[Tuple[int, ...], int]:
    """Parse "i1,i2,...]" starting just after '['; "[0]" denotes the unit."""
    items: List[int] = []
    i = _skip_ws(text, i)
    if i < len(text) and text[i] == "]":
        raise ParseError("empty bracket class; use [0] for the unit", opener_pos)
    while True:
        i = _skip_ws(text, i)
        value, i = _read_int(text, i)
        items.append(value)
        i = _skip_ws(text, i)
        if i < len(text) and text[i] == ",":
            i += 1
            continue
        if i < len(text) and text[i] == "]":
            i += 1
            break
        raise ParseError("expected ',' or ']' in bracket class", i)
    if items == [0]:
        return (), i
    if 0 in items:
        raise ParseError("0 may only appear alone in a bracket class", opener_pos)
    return tuple(items), i


def _read_theta(text: str, i: int, start: int) -> Tuple[ConeMonomial, int]:
    """Parse the optional "/(r^a t^b)" divisor after "th"."""
    if i >= len(text) or text[i] != "/":
        return ConeMonomial.bot(0, 0), i
    i += 1
    if i >= len(text) or text[i] != "(":
        raise ParseError("expected '(' after 'th/'", i)
    i += 1
    a = b = 0
    while True:
        i = _skip_ws(text, i)
        if i >= len(text):
            raise ParseError("unterminated 'th/(' divisor", start)
        ch = text[i]
        if ch == ")":
            i += 1
            break
        if ch == "*":
            i += 1
            continue
        if ch in ("r", "ρ"):
            i += 1
            e = 1
            if i < len(text) and text[i] == "^":
                e, i = _read_int(text, i + 1)
            a += e
            continue
        if ch in ("t", "τ"):
            i += 1
            e = 1
            if i < len(text) and text[i] == "^":
                e, i = _read_int(text, i + 1)
            b += e
            continue
        raise ParseError(f"unexpected {ch!r} in 'th/(...)' divisor", i)
    if a == 0 and b == 0:
        raise ParseError("empty 'th/(...)' divisor", start)
    return ConeMonomial.bot(a, b), i


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        start = i
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], start, ch))
            i += 1
            continue
        if ch.isdigit():
            value, i = _read_int(text, i)
            tokens.append(Token("NUM", start, text[start:i], value))
            continue
        if ch == "[":
            seq, i = _read_bracket_list(text, i + 1, start)
            tokens.append(Token("FRAME", start, text[start:i], seq))
            continue
        if ch in ("B", "β"):
            i += 1
            if i < n and text[i] == "[":
                seq, i = _read_bracket_list(text, i + 1, start)
                tokens.append(Token("BCLASS", start, text[start:i], seq))
                continue
            if i < n and text[i].isdigit():
                value, i = _read_int(text, i)
                tokens.append(Token("BGEN", start, text[start:i], value))
                continue
            raise ParseError("expected an index or '[' after 'B'", start)
        if ch == "θ":
            mono, i = _read_theta(text, i + 1, start)
            tokens.append(Token("THETA", start, text[start:i], mono))
            continue
        if ch == "ρ":
            tokens.append(Token("RHO", start, ch))
            i += 1
            continue
        if ch == "τ":
            tokens.append(Token("TAU", start, ch))
            i += 1
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word.startswith("th"):
                mono, i = _read_theta(text, i + 2, start)
                if i < j and len(word) > 2:
                    raise ParseError(f"unknown token {word!r}", start)
                tokens.append(Token("THETA", start, text[start:i], mono))
                continue
            if word == "t":
                tokens.append(Token("TAU", start, word))
                i = j
                continue
            if word == "r":
                tokens.append(Token("RHO", start, word))
                i = j
                continue
            if word in ("a", "b") and j < n and text[j].isdigit():
                value, i = _read_int(text, j)
                tokens.append(Token("PGEN", start, text[start:i], (word, value)))
                continue
            if word in ("a", "b"):
                tokens.append(Token("PGEN", start, word, (word, None)))
                i = j
                continue
            tokens.append(Token("NAME", start, word, word))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", start)
    tokens.append(Token("END", n, ""))
    return tokens


# --- syntax tree -------------------------------------------------------------


@dataclass
class Leaf:
    token: Token


@dataclass
class Power:
    base: "Node"
    exponent: int


@dataclass
class Product:
    factors: List["Node"]


@dataclass
class Sum:
    terms: List["Node"]


Node = Union[Leaf, Power, Product, Sum]


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text or 'end of input'!r}", tok.pos)
        return self.next()

    def parse_sum(self) -> Node:
        terms = [self.parse_prod()]
        while self.peek().kind == "PLUS":
            self.next()
            terms.append(self.parse_prod())
        return terms[0] if len(terms) == 1 else Sum(terms)

    def parse_prod(self) -> Node:
        factors = [self.parse_atom()]
        while self.peek().kind == "STAR":
            self.next()
            factors.append(self.parse_atom())
        return factors[0] if len(factors) == 1 else Product(factors)

    def parse_atom(self) -> Node:
        tok = self.peek()
        if tok.kind == "LPAREN":
            self.next()
            inner = self.parse_sum()
            self.expect("RPAREN")
            node: Node = inner
        elif tok.kind in ("NUM", "RHO", "TAU", "THETA", "PGEN", "BGEN", "BCLASS", "FRAME", "NAME"):
            self.next()
            node = Leaf(tok)
        else:
            raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)
        if self.peek().kind == "CARET":
            self.next()
            exp_tok = self.expect("NUM")
            node = Power(node, exp_tok.value)
        return node


def parse_expr(text: str) -> Node:
    """Parse an expression; raises ParseError with a byte offset."""
    parser = _Parser(tokenize(text))
    node = parser.parse_sum()
    tok = parser.peek()
    if tok.kind != "END":
        raise ParseError(f"trailing input {tok.text!r}", tok.pos)
    return node


def evaluate(node: Node, space) -> object:
    """Evaluate a parse tree in a space (see eqcohom.spaces)."""
    if isinstance(node, Leaf):
        tok = node.token
        if tok.kind == "NUM":
            unit = space.unit()
            return unit if tok.value % 2 else unit.scale(CoeffElement())
        if tok.kind == "RHO":
            return space.unit().scale(RHO)
        if tok.kind == "TAU":
            return space.unit().scale(TAU)
        if tok.kind == "THETA":
            return space.unit().scale(CoeffElement([tok.value]))
        return space.atom(tok)
    if isinstance(node, Power):
        return evaluate(node.base, space) ** node.exponent
    if isinstance(node, Product):
        result = evaluate(node.factors[0], space)
        for factor in node.factors[1:]:
            result = result * evaluate(factor, space)
        return result
    if isinstance(node, Sum):
        result = evaluate(node.terms[0], space)
        for term in node.terms[1:]:
            result = result + evaluate(term, space)
        return result
    raise TypeError(f"unexpected node {node!r}")


def evaluate_expr(text: str, space) -> object:
    return evaluate(parse_expr(text), space)
