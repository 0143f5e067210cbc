"""Parser for the CLI polynomial grammar.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := sign* ( integer | var | var '^' signed-integer | '(' expr ')' )
    var    := 'x' | 'y'

Whitespace is ignored.  Implicit multiplication is not allowed (except that a
sign directly prefixes a factor), coefficients must be integers, and variable
exponents are limited to |e| <= 64.
"""

from __future__ import annotations

from .errors import BadExponent, NonIntegerCoeff, PolyParseError
from .measure import MAX_EXPONENT, LaurentPoly2


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def tokens(self):
        text = self.text
        n = len(text)
        i = 0
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                if j < n and text[j] == ".":
                    raise NonIntegerCoeff("coefficients must be integers", position=i)
                yield ("int", int(text[i:j]), i)
                i = j
                continue
            if ch in "xy":
                yield ("var", ch, i)
                i += 1
                continue
            if ch in "+-*^()":
                yield (ch, ch, i)
                i += 1
                continue
            raise PolyParseError(f"unexpected character {ch!r}", position=i)
        yield ("end", None, n)


class _Parser:
    def __init__(self, text: str):
        self.toks = list(_Tokenizer(text).tokens())
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def eat(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise PolyParseError(f"expected {kind!r}, found {tok[1]!r}", position=tok[2])
        self.i += 1
        return tok

    def parse(self) -> LaurentPoly2:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolyParseError(f"trailing input {tok[1]!r}", position=tok[2])
        return value

    def expr(self) -> LaurentPoly2:
        value = self.term()
        while self.peek()[0] in "+-":
            op = self.eat()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> LaurentPoly2:
        value = self.factor()
        while self.peek()[0] == "*":
            self.eat()
            value = value * self.factor()
        return value

    def factor(self) -> LaurentPoly2:
        sign = 1
        while self.peek()[0] in "+-":
            if self.eat()[0] == "-":
                sign = -sign
        kind, val, pos = self.peek()
        if kind == "int":
            self.eat()
            return LaurentPoly2.constant(sign * val)
        if kind == "var":
            self.eat()
            exponent = 1
            if self.peek()[0] == "^":
                self.eat()
                exponent = self._signed_int()
            if exponent == 0:
                return LaurentPoly2.constant(sign)
            i, j = (exponent, 0) if val == "x" else (0, exponent)
            return LaurentPoly2.monomial(i, j, sign)
        if kind == "(":
            self.eat()
            inner = self.expr()
            self.eat(")")
            return sign * inner
        raise PolyParseError(f"expected a factor, found {val!r}", position=pos)

    def _signed_int(self) -> int:
        sign = 1
        kind, val, pos = self.peek()
        if kind in "+-":
            self.eat()
            if kind == "-":
                sign = -1
            kind, val, pos = self.peek()
        if kind != "int":
            raise PolyParseError("expected an integer exponent", position=pos)
        self.eat()
        exponent = sign * val
        if abs(exponent) > MAX_EXPONENT:
            raise BadExponent(f"|exponent| > {MAX_EXPONENT}", position=pos)
        return exponent


def parse_poly(text: str) -> LaurentPoly2:
    """Parse the grammar above into a Laurent polynomial."""
    return _Parser(text).parse()


def parse_line_function(text: str):
    """Parse a polynomial and require it to be of the form a + b*x + c*y."""
    from fractions import Fraction

    from .divisors import LineFunction

    poly = parse_poly(text)
    a = b = c = 0
    for (i, j), v in poly.items():
        if (i, j) == (0, 0):
            a = v
        elif (i, j) == (1, 0):
            b = v
        elif (i, j) == (0, 1):
            c = v
        else:
            raise PolyParseError(f"{text!r} is not a line function a + b*x + c*y")
    return LineFunction(Fraction(a), Fraction(b), Fraction(c))
