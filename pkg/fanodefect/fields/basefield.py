"""Base class for coefficient fields"""

from abc import ABC, abstractmethod
from fractions import Fraction
import random
from typing import Any, TypeAlias

from fanodefect.exceptions import FieldMapError

# Elements are plain immutable Python values owned by their field:
# Fraction for Q, int in [0, p) for F_p, tuples of base elements for extensions
Element: TypeAlias = Any
# Dense univariate polynomial over a field, lowest degree first
Coefficients: TypeAlias = list

class BaseField(ABC):
    """Base class for exact coefficient fields.

    Field objects are immutable values compared by their description; all element
    arithmetic goes through the field so polynomials never need to know how elements
    are represented."""
    KIND = None
    characteristic = 0

    @property
    @abstractmethod
    def zero(self) -> Element:
        """Additive identity"""

    @property
    @abstractmethod
    def one(self) -> Element:
        """Multiplicative identity"""

    @abstractmethod
    def add(self, a, b) -> Element:
        """a + b"""

    @abstractmethod
    def sub(self, a, b) -> Element:
        """a - b"""

    @abstractmethod
    def mul(self, a, b) -> Element:
        """a * b"""

    @abstractmethod
    def neg(self, a) -> Element:
        """-a"""

    @abstractmethod
    def inv(self, a) -> Element:
        """Multiplicative inverse; raises ZeroDivisionError on zero"""

    @abstractmethod
    def from_fraction(self, value: Fraction) -> Element:
        """Image of a rational number. Raises FieldMapError when the denominator vanishes"""

    @abstractmethod
    def coerce(self, source: 'BaseField', element) -> Element:
        """Canonical image of an element of <source>, raising FieldMapError if there is none"""

    @abstractmethod
    def random_element(self, rng: random.Random) -> Element:
        """A random element (small height over Q)"""

    @abstractmethod
    def render(self, element) -> str:
        """Text form of an element, parseable by the polynomial parser"""

    @abstractmethod
    def describe(self) -> str:
        """Text form of the field itself, e.g. QQ or GF(7)[u]/(u^2 + 1)"""

    @abstractmethod
    def factor(self, coeffs: Coefficients) -> list[tuple[Coefficients, int]]:
        """Factor a nonzero univariate polynomial into monic irreducibles with multiplicities"""

    def div(self, a, b) -> Element:
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_one(self, a) -> bool:
        return a == self.one

    def from_int(self, value: int) -> Element:
        return self.from_fraction(Fraction(value))

    def split_sign(self, element) -> tuple[bool, Element]:
        """Return (negative, magnitude) for rendering; fields without an order never report negative"""
        return False, element

    def sort_key(self, element):
        """Deterministic ordering key for elements"""
        return element

    def generators(self) -> dict:
        """Named generators of the field tower, for the parser"""
        return {}

    @property
    def order(self) -> int | None:
        """Number of elements, or None for infinite fields"""
        return None

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    @property
    def absolute_degree(self) -> int:
        """Degree over the prime field"""
        return 1

    def pow(self, a, n: int) -> Element:
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def roots(self, coeffs: Coefficients) -> list:
        """Distinct roots in this field of a nonzero univariate polynomial, in sort_key order"""
        found = []
        for factor, _mult in self.factor(coeffs):
            if len(factor) == 2:
                found.append(self.neg(factor[0]))
        return sorted(found, key=self.sort_key)

    def sqrt(self, element) -> Element | None:
        """A square root of <element> in this field, or None"""
        if self.is_zero(element):
            return self.zero
        roots = self.roots([self.neg(element), self.zero, self.one])
        return roots[0] if roots else None

    def _no_map(self, source):
        raise FieldMapError(f"No canonical map from {source.describe()} to {self.describe()}")

    def __str__(self):
        return self.describe()

    def __repr__(self):
        return f'{self.__class__.__name__}({self.describe()})'

    def __eq__(self, other):
        return isinstance(other, BaseField) and self.describe() == other.describe()

    def __hash__(self):
        return hash(self.describe())
