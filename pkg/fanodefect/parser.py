"""Recursive-descent parser for polynomial text.

Grammar (see docs/grammar.md):

    expr   := ['+' | '-'] term {('+' | '-') term}
    term   := factor {'*' factor}
    factor := atom ['^' INT]
    atom   := INT ['/' INT ['^' INT]] | NAME | '(' expr ')'

Names resolve to ring variables first, then to named generators of the coefficient
field (e.g. u in QQ[u]/(u^2 + u + 1)). Juxtaposition is never multiplication.
"""

from dataclasses import dataclass
from fractions import Fraction
import re

from fanodefect.exceptions import FieldMapError, ParseError, UnknownVariableError

_TOKEN_RE = re.compile(r'\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*^/()]))')

@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'name', 'op' or 'end'
    text: str
    position: int

def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    length = len(text)
    while pos < length:
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ParseError(f"Unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token('end', '', length))
    return tokens

class _Parser:
    def __init__(self, text, ring):
        self.ring = ring
        self.field = ring.field
        self.generators = self.field.generators()
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def at_op(self, *ops) -> bool:
        token = self.current
        return token.kind == 'op' and token.text in ops

    def expect_op(self, op):
        token = self.current
        if not (token.kind == 'op' and token.text == op):
            raise ParseError(f"Expected {op!r}, found {self._describe(token)}", token.position)
        self.advance()

    @staticmethod
    def _describe(token):
        return 'end of input' if token.kind == 'end' else repr(token.text)

    def parse(self):
        if self.current.kind == 'end':
            raise ParseError("Empty polynomial", 0)
        result = self.expr()
        token = self.current
        if token.kind != 'end':
            self._reject_trailing(token)
        return result

    def _reject_trailing(self, token):
        if token.kind in ('int', 'name') or (token.kind == 'op' and token.text == '('):
            raise ParseError("Implicit multiplication is not accepted; use '*'", token.position)
        if token.kind == 'op' and token.text == '/':
            raise ParseError("Division is only allowed between integer literals", token.position)
        raise ParseError(f"Unexpected {self._describe(token)}", token.position)

    def expr(self):
        negate = False
        if self.at_op('+', '-'):
            negate = self.advance().text == '-'
        result = self.term()
        if negate:
            result = -result
        while self.at_op('+', '-'):
            op = self.advance().text
            rhs = self.term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def term(self):
        result = self.factor()
        while self.at_op('*'):
            self.advance()
            result = result * self.factor()
        token = self.current
        if token.kind in ('int', 'name') or (token.kind == 'op' and token.text in '(/'):
            self._reject_trailing(token)
        return result

    def factor(self):
        base = self.atom()
        if self.at_op('^'):
            base = base ** self._exponent()
        return base

    def _exponent(self):
        self.advance()
        token = self.current
        if token.kind != 'int':
            raise ParseError("Exponent must be a non-negative integer literal", token.position)
        self.advance()
        return int(token.text)

    def atom(self):
        token = self.current
        if token.kind == 'int':
            self.advance()
            value = Fraction(int(token.text))
            if self.at_op('/'):
                self.advance()
                denominator = self.current
                if denominator.kind != 'int':
                    raise ParseError("Division is only allowed between integer literals", denominator.position)
                self.advance()
                denominator_value = int(denominator.text)
                if self.at_op('^'):
                    # 2/3^2 is 2/9
                    denominator_value **= self._exponent()
                if denominator_value == 0:
                    raise ParseError("Division by zero", denominator.position)
                value /= denominator_value
            try:
                return self.ring.constant(self.field.from_fraction(value))
            except FieldMapError as exc:
                raise ParseError(str(exc), token.position) from exc
        if token.kind == 'name':
            self.advance()
            if token.text in self.ring.names:
                return self.ring.gen(token.text)
            if token.text in self.generators:
                return self.ring.constant(self.generators[token.text])
            raise UnknownVariableError(
                f"Unknown variable {token.text!r}; ring variables are {', '.join(self.ring.names)}",
                token.position)
        if self.at_op('('):
            self.advance()
            inner = self.expr()
            self.expect_op(')')
            return inner
        if self.at_op('/'):
            raise ParseError("Division is only allowed between integer literals", token.position)
        raise ParseError(f"Unexpected {self._describe(token)}", token.position)

def parse(text: str, ring):
    """Parse <text> into a canonical Polynomial of <ring>"""
    return _Parser(text, ring).parse()

def parse_univariate(text: str, name: str, field) -> list:
    """Parse a polynomial in the single variable <name> into dense coefficients (lowest first)"""
    from fanodefect.polycore import PolyRing  # pylint: disable=import-outside-toplevel
    poly = parse(text, PolyRing([name], field))
    if poly.is_zero():
        return []
    coeffs = [field.zero] * (max(exp[0] for exp in poly.terms) + 1)
    for exp, c in poly.terms.items():
        coeffs[exp[0]] = c
    return coeffs
