from fractions import Fraction

import sympy

from fanodefect.exceptions import FieldMapError, InputError
from fanodefect.fields.basefield import BaseField
from fanodefect.fields.rational import RationalField
from fanodefect import univariate

class PrimeField(BaseField):
    """The prime field F_p for an odd prime p; elements are ints in [0, p)"""
    KIND = 'PrimeField'

    def __init__(self, p: int):
        p = int(p)
        if p <= 2 or not sympy.isprime(p):
            raise InputError(f"{p} is not an odd prime")
        self.p = p
        self.characteristic = p

    zero = 0
    one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def from_fraction(self, value):
        value = Fraction(value)
        if value.denominator % self.p == 0:
            raise FieldMapError(f"Denominator of {value} is divisible by {self.p}")
        return value.numerator * pow(value.denominator, -1, self.p) % self.p

    def coerce(self, source, element):
        if source == self:
            return element
        if isinstance(source, RationalField):
            return self.from_fraction(element)
        return self._no_map(source)

    def random_element(self, rng):
        return rng.randrange(self.p)

    def render(self, element):
        return str(element)

    @property
    def order(self):
        return self.p

    def describe(self):
        return f'GF({self.p})'

    def factor(self, coeffs):
        return univariate.prime_factor(self, univariate.trim(self, coeffs))
