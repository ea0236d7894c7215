"""Simple algebraic extensions K[u]/(m(u)) of a base field"""

import re

from fanodefect.exceptions import InputError, UnsupportedFieldError
from fanodefect.fields.basefield import BaseField
from fanodefect.fields.rational import RationalField
from fanodefect.log import logger
from fanodefect import univariate

_NAME_RE = re.compile(r'^[A-Za-z][A-Za-z0-9]*$')

class ExtensionField(BaseField):
    """K[u]/(m) for a monic irreducible m of degree >= 2 over the base field K.

    Elements are tuples of base elements of length deg(m), lowest power first. The base
    may itself be an extension, which gives the towers used when splitting residual
    quadrics over a parameter field.
    """

    def __init__(self, base: BaseField, modulus, name='u', check=True):
        modulus = univariate.trim(base, modulus)
        if len(modulus) < 3:
            raise InputError("Minimal polynomial must have degree >= 2")
        if not base.is_one(modulus[-1]):
            raise InputError("Minimal polynomial must be monic")
        if not _NAME_RE.match(name):
            raise InputError(f"Invalid generator name {name!r}")
        if name in base.generators():
            raise InputError(f"Generator name {name!r} is already used in {base.describe()}")
        self.base = base
        self.modulus = tuple(modulus)
        self.name = name
        self.degree = len(modulus) - 1
        self.characteristic = base.characteristic
        self.KIND = 'RationalExtension' if self.characteristic == 0 else 'PrimeExtension'
        self._zero = (base.zero,) * self.degree
        self._one = (base.one,) + (base.zero,) * (self.degree - 1)
        self._description = f'{base.describe()}[{name}]/({self._render_poly(self.modulus, name)})'
        if check:
            self._check_irreducible()

    def _check_irreducible(self):
        base = self.base
        m = list(self.modulus)
        if base.is_finite:
            irreducible = univariate.is_irreducible_finite(base, m)
        else:
            try:
                factors = base.factor(m)
            except UnsupportedFieldError:
                logger.warning("Cannot verify irreducibility of %s; trusting input", self._description)
                return
            irreducible = len(factors) == 1 and factors[0][1] == 1
        if not irreducible:
            raise InputError(f"Minimal polynomial of {self._description} is reducible")

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    @property
    def generator(self):
        base = self.base
        return (base.zero, base.one) + (base.zero,) * (self.degree - 2)

    def generators(self):
        names = {name: self.coerce(self.base, value) for name, value in self.base.generators().items()}
        names[self.name] = self.generator
        return names

    def _pack(self, coeffs):
        coeffs = list(coeffs) + [self.base.zero] * (self.degree - len(coeffs))
        return tuple(coeffs)

    def _reduce(self, coeffs):
        base = self.base
        coeffs = list(coeffs)
        m = self.modulus
        k = self.degree
        for top in range(len(coeffs) - 1, k - 1, -1):
            c = coeffs[top]
            if base.is_zero(c):
                continue
            for j in range(k):
                coeffs[top - k + j] = base.sub(coeffs[top - k + j], base.mul(c, m[j]))
            coeffs[top] = base.zero
        return self._pack(coeffs[:k])

    def add(self, a, b):
        add = self.base.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sub = self.base.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.base.neg
        return tuple(neg(x) for x in a)

    def mul(self, a, b):
        base = self.base
        out = [base.zero] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if base.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = base.add(out[i + j], base.mul(x, y))
        return self._reduce(out)

    def inv(self, a):
        if a == self._zero:
            raise ZeroDivisionError("inverse of zero")
        s, _t, d = univariate.gcdex(self.base, univariate.trim(self.base, a), list(self.modulus))
        assert len(d) == 1, "modulus is not irreducible"
        return self._pack(s)

    def embed(self, base_element):
        """Image of a base element"""
        return self._pack([base_element])

    def from_fraction(self, value):
        return self.embed(self.base.from_fraction(value))

    def from_coefficients(self, coeffs):
        """The element sum c_i u^i, lowest power first"""
        return self._reduce(coeffs)

    def coerce(self, source, element):
        if source == self:
            return element
        return self.embed(self.base.coerce(source, element))

    def random_element(self, rng):
        return tuple(self.base.random_element(rng) for _ in range(self.degree))

    def sort_key(self, element):
        return tuple(self.base.sort_key(c) for c in reversed(element))

    def split_sign(self, element):
        nonzero = [i for i, c in enumerate(element) if not self.base.is_zero(c)]
        if len(nonzero) == 1:
            i = nonzero[0]
            negative, magnitude = self.base.split_sign(element[i])
            if negative:
                return True, self._pack([self.base.zero] * i + [magnitude])
        return False, element

    def _render_poly(self, coeffs, name):
        base = self.base
        parts = []
        for i in range(len(coeffs) - 1, -1, -1):
            c = coeffs[i]
            if base.is_zero(c):
                continue
            negative, magnitude = base.split_sign(c)
            if i == 0:
                text = base.render(magnitude)
            else:
                mono = name if i == 1 else f'{name}^{i}'
                if base.is_one(magnitude):
                    text = mono
                else:
                    ctext = base.render(magnitude)
                    if ' ' in ctext:
                        ctext = f'({ctext})'
                    text = f'{ctext}*{mono}'
            if not parts:
                parts.append(f'-{text}' if negative else text)
            else:
                parts.append(f'- {text}' if negative else f'+ {text}')
        return ' '.join(parts) if parts else '0'

    def render(self, element):
        return self._render_poly(element, self.name)

    @property
    def order(self):
        base_order = self.base.order
        return None if base_order is None else base_order ** self.degree

    @property
    def absolute_degree(self):
        return self.degree * self.base.absolute_degree

    def describe(self):
        return self._description

    def factor(self, coeffs):
        coeffs = univariate.trim(self, coeffs)
        if self.is_finite:
            return univariate.finite_factor(self, coeffs)
        if isinstance(self.base, RationalField):
            return univariate.number_field_factor(self, coeffs)
        return univariate.unsupported_factor(self, coeffs)
