"""Text format of ring elements.

Grammar (whitespace is ignored, '*' is mandatory between factors):

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := rational | name ['^' exponent]
    exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
    rational := integer ['/' integer]

Names are ASCII identifiers declared in the RingContext. Fractional exponents
must be parenthesized; x^-2 and x^(-2) are the same factor.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, NamedTuple

from .laurent import LaurentPolynomial
from .polycore import Polynomial
from .posy import Posynomial
from .utils import PosyringError, format_rational

if TYPE_CHECKING:
    from collections.abc import Iterable

    from .models import RingContext
    from .polycore import TermAlgebra

_SYMBOLS = frozenset("+-*/^()")


class ParseError(PosyringError):
    """Syntax or admissibility error at a character offset of the input."""

    def __init__(self, message: str, position: int) -> None:
        self.message = message
        self.position = position
        super().__init__(f"{message} (position {position})")


class Token(NamedTuple):
    kind: str  # "number", "name", "symbol" or "end"
    text: str
    position: int


def _is_digit(char: str) -> bool:
    return "0" <= char <= "9"


def _is_letter(char: str) -> bool:
    return "a" <= char <= "z" or "A" <= char <= "Z"


def tokenize(text: str, offset: int = 0) -> list[Token]:
    tokens: list[Token] = []
    index = 0
    while index < len(text):
        char = text[index]
        if char in " \t\r\n":
            index += 1
        elif _is_digit(char):
            start = index
            while index < len(text) and _is_digit(text[index]):
                index += 1
            tokens.append(Token("number", text[start:index], offset + start))
        elif _is_letter(char):
            start = index
            while index < len(text) and (
                _is_letter(text[index]) or _is_digit(text[index])
            ):
                index += 1
            tokens.append(Token("name", text[start:index], offset + start))
        elif char in _SYMBOLS:
            tokens.append(Token("symbol", char, offset + index))
            index += 1
        else:
            raise ParseError(f"Unexpected character {char!r}", offset + index)
    tokens.append(Token("end", "", offset + len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], ctx: RingContext) -> None:
        self.tokens = tokens
        self.index = 0
        self.ctx = ctx
        self.positions = {name: index for index, name in enumerate(ctx.variables)}

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def accept(self, symbol: str) -> bool:
        if self.current.kind == "symbol" and self.current.text == symbol:
            self.index += 1
            return True
        return False

    def expect(self, symbol: str) -> Token:
        token = self.current
        if not self.accept(symbol):
            raise ParseError(
                f"Expected {symbol!r}, found {_describe(token)}", token.position
            )
        return token

    def integer(self) -> tuple[int, Token]:
        token = self.current
        if token.kind != "number":
            raise ParseError(
                f"Expected an integer, found {_describe(token)}", token.position
            )
        self.index += 1
        try:
            return int(token.text), token
        except ValueError as exc:
            raise ParseError("Integer literal is too long", token.position) from exc

    def denominator(self) -> int:
        value, token = self.integer()
        if value == 0:
            raise ParseError("Division by zero", token.position)
        return value

    def expression(self) -> list[tuple[Fraction, list[Fraction]]]:
        if self.current.kind == "end":
            raise ParseError("Empty expression", self.current.position)
        terms = []
        sign = -1 if self.accept("-") else 1
        while True:
            coefficient, exponents = self.term()
            terms.append((sign * coefficient, exponents))
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        token = self.current
        if token.kind != "end":
            raise ParseError(f"Unexpected {_describe(token)}", token.position)
        return terms

    def term(self) -> tuple[Fraction, list[Fraction]]:
        coefficient = Fraction(1)
        exponents = [Fraction(0)] * self.ctx.arity
        while True:
            token = self.current
            if token.kind == "number":
                numerator, _ = self.integer()
                value = Fraction(numerator)
                if self.accept("/"):
                    value /= self.denominator()
                coefficient *= value
            elif token.kind == "name":
                self.index += 1
                if token.text not in self.positions:
                    raise ParseError(f"Unknown variable {token.text!r}", token.position)
                exponent = Fraction(1)
                if self.accept("^"):
                    exponent = self.exponent()
                exponents[self.positions[token.text]] += exponent
            else:
                raise ParseError(
                    f"Expected a number or variable, found {_describe(token)}",
                    token.position,
                )
            if not self.accept("*"):
                return coefficient, exponents

    def exponent(self) -> Fraction:
        start = self.current.position
        if self.accept("("):
            sign = -1 if self.accept("-") else 1
            numerator, _ = self.integer()
            value = Fraction(sign * numerator)
            if self.accept("/"):
                value /= self.denominator()
            self.expect(")")
        else:
            sign = -1 if self.accept("-") else 1
            numerator, _ = self.integer()
            value = Fraction(sign * numerator)
            if self.accept("/"):
                raise ParseError(
                    "Fractional exponents must be parenthesized", start
                )
        self._check_admissible(value, start)
        return value

    def _check_admissible(self, value: Fraction, position: int) -> None:
        kind = self.ctx.ring_kind
        if kind == "posy":
            return
        if value.denominator != 1:
            raise ParseError(
                f"Non-integer exponent {format_rational(value)} in {kind} ring",
                position,
            )
        if kind == "polynomial" and value < 0:
            raise ParseError(
                f"Negative exponent {format_rational(value)} in polynomial ring",
                position,
            )


def _describe(token: Token) -> str:
    if token.kind == "end":
        return "end of input"
    return repr(token.text)


def _element_class(ctx: RingContext) -> type[TermAlgebra]:
    return {
        "polynomial": Polynomial,
        "laurent": LaurentPolynomial,
        "posy": Posynomial,
    }[ctx.ring_kind]


def _parse_segment(text: str, ctx: RingContext, offset: int) -> TermAlgebra:
    terms = _Parser(tokenize(text, offset), ctx).expression()
    return _element_class(ctx)(
        ((tuple(exponents), coefficient) for coefficient, exponents in terms),
        ctx.arity,
    )


def parse(text: str, ctx: RingContext) -> TermAlgebra:
    """Parse one expression into the element class of ``ctx.ring_kind``.

    Raises:
        ParseError: With the offending character offset.
    """
    return _parse_segment(text, ctx, 0)


def parse_generators(text: str, ctx: RingContext) -> list[TermAlgebra]:
    """Parse a ';'-separated list; positions refer to the whole text."""
    elements: list[TermAlgebra] = []
    offset = 0
    for segment in text.split(";"):
        elements.append(_parse_segment(segment, ctx, offset))
        offset += len(segment) + 1
    return elements


def infer_variables(texts: Iterable[str], default: str = "x") -> tuple[str, ...]:
    """Variable names in order of first appearance, or ``(default,)``.

    Each text may be a ';'-separated generator list.
    """
    seen: list[str] = []
    for text in texts:
        offset = 0
        for segment in text.split(";"):
            for token in tokenize(segment, offset):
                if token.kind == "name" and token.text not in seen:
                    seen.append(token.text)
            offset += len(segment) + 1
    return tuple(seen) or (default,)


def _format_exponent(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"({format_rational(value)})"


def _format_monomial(exponents: tuple, variables: tuple[str, ...]) -> str:
    factors = []
    for name, value in zip(variables, exponents, strict=True):
        if value == 0:
            continue
        if value == 1:
            factors.append(name)
        else:
            factors.append(f"{name}^{_format_exponent(Fraction(value))}")
    return "*".join(factors)


def format_element(f: TermAlgebra, variables: Iterable[str]) -> str:
    """Canonical rendering; ``parse`` of the result gives back ``f``."""
    names = tuple(variables)
    if len(names) != f.arity:
        raise PosyringError(
            f"Expected {f.arity} variable names, got {len(names)}"
        )
    if f.is_zero:
        return "0"
    pieces: list[str] = []
    for exponents, coefficient in f.terms.items():
        monomial = _format_monomial(exponents, names)
        magnitude = abs(coefficient)
        if not monomial:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{format_rational(magnitude)}*{monomial}"
        if not pieces:
            pieces.append(f"-{body}" if coefficient < 0 else body)
        else:
            pieces.append(f" - {body}" if coefficient < 0 else f" + {body}")
    return "".join(pieces)
