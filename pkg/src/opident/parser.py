"""Concrete syntax for operator expressions.

Grammar, loosest to tightest binding::

    expr  :=  ["-"] term { ("+" | "-") term }
    term  :=  comp { "*" comp }                  scalar-by-operator product
    comp  :=  power { ("o" | "@") power }        operator composition
    power :=  atom [ "^" integer ]
    atom  :=  "D" | "L" | generator | rational | "(" expr ")"

The unicode forms for composition and lambda are accepted alongside the
ASCII ``o`` and ``L``.  Juxtaposition is never multiplication: ``2u`` is a
syntax error, write ``2*u``.  The names ``D``, ``L`` and ``o`` are reserved
and cannot be generators.

``str(OperatorElem)`` emits text in this same grammar, so rendering and
re-parsing an operator is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diffalg import AlgebraSignature
from .exactnum import LambdaPoly
from .opring import OperatorElem

COMPOSE_WORDS = {"o", "∘"}  # "o" and the ring operator sign
LAMBDA_WORDS = {"L", "λ"}  # "L" and the Greek letter
RESERVED = {"D"} | COMPOSE_WORDS | LAMBDA_WORDS


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class ElaborationError(ValueError):
    pass


# -- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class DerivativeSym:
    pass


@dataclass(frozen=True)
class GeneratorSym:
    name: str


@dataclass(frozen=True)
class LambdaSym:
    pass


@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class Neg:
    child: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Compose:
    left: object
    right: object


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


@dataclass(frozen=True)
class Group:
    child: object


# -- tokenizer ------------------------------------------------------------------

_PUNCT = {"+", "-", "*", "^", "/", "(", ")"}


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch == "∘":
            tokens.append(("o", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_" or ch == "λ":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in COMPOSE_WORDS:
                tokens.append(("o", word, i))
            else:
                tokens.append(("name", word, i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("eof", "", n))
    return tokens


# -- recursive descent -------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}" if tok[0] != "eof"
                             else f"expected {kind!r}, found end of input", tok[2])
        return self.advance()

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected trailing {tok[1]!r}", tok[2])
        return node

    def expr(self):
        negate = False
        if self.peek()[0] == "-":
            self.advance()
            negate = True
        node = self.term()
        if negate:
            node = Neg(node)
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            node = Add(node, Neg(rhs) if op == "-" else rhs)
        return node

    def term(self):
        node = self.comp()
        while self.peek()[0] == "*":
            self.advance()
            node = Mul(node, self.comp())
        return node

    def comp(self):
        node = self.power()
        while self.peek()[0] == "o":
            self.advance()
            node = Compose(node, self.power())
        return node

    def power(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("int")
            node = Power(node, int(tok[1]))
        return node

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.advance()
            value = Fraction(int(tok[1]))
            if self.peek()[0] == "/":
                self.advance()
                den = self.expect("int")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2])
                value = value / int(den[1])
            return RationalLit(value)
        if tok[0] == "name":
            self.advance()
            if tok[1] == "D":
                return DerivativeSym()
            if tok[1] in LAMBDA_WORDS:
                return LambdaSym()
            return GeneratorSym(tok[1])
        if tok[0] == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return Group(inner)
        if tok[0] == "eof":
            raise ParseError("unexpected end of input", tok[2])
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])


def parse_expression(text: str):
    """Text -> AST, or ParseError with the offending offset."""
    if not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text).parse()


# -- elaboration --------------------------------------------------------------------

def elaborate(node, sig: AlgebraSignature) -> OperatorElem:
    """AST -> normal-form operator over the given signature."""
    if isinstance(node, DerivativeSym):
        return OperatorElem.derivative(sig)
    if isinstance(node, GeneratorSym):
        try:
            gen = sig.gen(node.name)
        except KeyError:
            raise ElaborationError(
                f"unknown generator {node.name!r}; signature has {', '.join(sig.names)}"
            ) from None
        return OperatorElem.multiplication(gen)
    if isinstance(node, LambdaSym):
        return OperatorElem.identity(sig) * LambdaPoly.lam()
    if isinstance(node, RationalLit):
        return OperatorElem.identity(sig) * node.value
    if isinstance(node, Neg):
        return -elaborate(node.child, sig)
    if isinstance(node, Add):
        return elaborate(node.left, sig) + elaborate(node.right, sig)
    if isinstance(node, Mul):
        left = elaborate(node.left, sig)
        right = elaborate(node.right, sig)
        if left.order <= 0:
            return right * left.coeff(0)
        if right.order <= 0:
            return left * right.coeff(0)
        raise ElaborationError(
            "'*' multiplies by a scalar (D-degree 0); compose operators with 'o'"
        )
    if isinstance(node, Compose):
        return elaborate(node.left, sig).compose(elaborate(node.right, sig))
    if isinstance(node, Power):
        return elaborate(node.base, sig).compose_power(node.exponent)
    if isinstance(node, Group):
        return elaborate(node.child, sig)
    raise TypeError(f"not an AST node: {node!r}")


def parse_operator(text: str, sig: AlgebraSignature) -> OperatorElem:
    """Parse and elaborate in one step."""
    return elaborate(parse_expression(text), sig)
