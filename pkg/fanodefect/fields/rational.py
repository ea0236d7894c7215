from fractions import Fraction

from fanodefect.fields.basefield import BaseField
from fanodefect import univariate

class RationalField(BaseField):
    """The rational numbers, with elements stored as normalized Fractions"""
    KIND = 'Rational'

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def from_fraction(self, value):
        return Fraction(value)

    def coerce(self, source, element):
        if source == self:
            return element
        return self._no_map(source)

    def random_element(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))

    def render(self, element):
        if element.denominator == 1:
            return str(element.numerator)
        return f'{element.numerator}/{element.denominator}'

    def split_sign(self, element):
        return element < 0, abs(element)

    def describe(self):
        return 'QQ'

    def factor(self, coeffs):
        return univariate.rational_factor(self, univariate.trim(self, coeffs))

QQ = RationalField()
