"""Sparse multivariate polynomials over a pluggable coefficient field"""

from fractions import Fraction
import functools
import math
import re

from fanodefect import linalg
from fanodefect.exceptions import (
    FieldMapError,
    InputError,
    RingMismatchError,
    SingularMatrixError,
    UnknownVariableError,
)
from fanodefect.fields.basefield import BaseField

_NAME_RE = re.compile(r'^[A-Za-z][A-Za-z0-9]*$')

@functools.lru_cache(maxsize=None)
def grevlex_key(exp: tuple) -> tuple:
    """Sort key for graded reverse lexicographic order (larger key = larger monomial)"""
    return (sum(exp), tuple(-e for e in reversed(exp)))

class PolyRing:
    """An ordered list of variable names over a coefficient field"""
    __slots__ = ('names', 'field', '_index')

    def __init__(self, names, field: BaseField):
        names = tuple(names)
        for name in names:
            if not _NAME_RE.match(name):
                raise InputError(f"Invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise InputError(f"Duplicate variable names in {names}")
        if clash := set(names) & set(field.generators()):
            raise InputError(f"Variable names {sorted(clash)} clash with field generators of {field}")
        self.names = names
        self.field = field
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def ngens(self) -> int:
        return len(self.names)

    def index(self, name) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"Unknown variable {name!r}; ring variables are {self.names}") from None

    def gen(self, name) -> 'Polynomial':
        exp = [0] * self.ngens
        exp[self.index(name)] = 1
        return Polynomial(self, {tuple(exp): self.field.one})

    def gens(self) -> tuple:
        return tuple(self.gen(name) for name in self.names)

    def zero(self) -> 'Polynomial':
        return Polynomial(self, {})

    def one(self) -> 'Polynomial':
        return self.constant(self.field.one)

    def constant(self, value) -> 'Polynomial':
        """Constant polynomial from a field element"""
        return Polynomial(self, {(0,) * self.ngens: value})

    def scalar(self, value) -> 'Polynomial':
        """Constant polynomial from an int or Fraction"""
        return self.constant(self.field.from_fraction(Fraction(value)))

    def monomial(self, exp, coeff=None) -> 'Polynomial':
        return Polynomial(self, {tuple(exp): self.field.one if coeff is None else coeff})

    def parse(self, text) -> 'Polynomial':
        from fanodefect.parser import parse  # pylint: disable=import-outside-toplevel
        return parse(text, self)

    def with_field(self, field) -> 'PolyRing':
        return PolyRing(self.names, field)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f'PolyRing({", ".join(self.names)} over {self.field})'

class Polynomial:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero coefficients"""
    __slots__ = ('ring', 'terms')

    def __init__(self, ring: PolyRing, terms=None):
        field = ring.field
        self.ring = ring
        self.terms = {exp: c for exp, c in (terms or {}).items() if not field.is_zero(c)}

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    @property
    def field(self) -> BaseField:
        return self.ring.field

    def _check(self, other):
        if not isinstance(other, Polynomial):
            raise TypeError(f"Expected a Polynomial, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError(f"Ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        self._check(other)
        return other

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        field = self.field
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            if exp in terms:
                value = field.add(terms[exp], c)
                if field.is_zero(value):
                    del terms[exp]
                else:
                    terms[exp] = value
            else:
                terms[exp] = c
        return Polynomial._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return Polynomial._raw(self.ring, {exp: neg(c) for exp, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        field = self.field
        add, mul, is_zero = field.add, field.mul, field.is_zero
        terms = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                value = mul(ca, cb)
                if exp in terms:
                    terms[exp] = add(terms[exp], value)
                else:
                    terms[exp] = value
        return Polynomial._raw(self.ring, {e: c for e, c in terms.items() if not is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise InputError(f"Exponent must be a non-negative integer, got {n!r}")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> 'Polynomial':
        """Multiply by a field element"""
        field = self.field
        if field.is_zero(c):
            return self.ring.zero()
        return Polynomial._raw(self.ring, {exp: field.mul(c, v) for exp, v in self.terms.items()})

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), self.field.zero)

    def monomials(self) -> list:
        """Exponent tuples in descending grevlex order"""
        return sorted(self.terms, key=grevlex_key, reverse=True)

    def leading_term(self, key=grevlex_key):
        exp = max(self.terms, key=key)
        return exp, self.terms[exp]

    def total_degree(self) -> int | None:
        if not self.terms:
            return None
        return max(sum(exp) for exp in self.terms)

    def homogeneous_degree(self) -> int | None:
        return homogeneous_degree(self)

    def support(self) -> set:
        """Indices of variables that occur"""
        return {i for exp in self.terms for i, e in enumerate(exp) if e}

    def is_constant(self) -> bool:
        return all(not any(exp) for exp in self.terms)

    def monic(self) -> 'Polynomial':
        """Scale so the grevlex leading coefficient is one"""
        if not self.terms:
            return self
        _, lc = self.leading_term()
        return self.scale(self.field.inv(lc))

    def render(self) -> str:
        if not self.terms:
            return '0'
        field = self.field
        parts = []
        for exp in self.monomials():
            negative, magnitude = field.split_sign(self.terms[exp])
            mono = '*'.join(
                name if e == 1 else f'{name}^{e}'
                for name, e in zip(self.ring.names, exp) if e)
            if not mono:
                text = field.render(magnitude)
            elif field.is_one(magnitude):
                text = mono
            else:
                ctext = field.render(magnitude)
                if ' ' in ctext or ctext.startswith('-'):
                    ctext = f'({ctext})'
                text = f'{ctext}*{mono}'
            if not parts:
                parts.append(f'-{text}' if negative else text)
            else:
                parts.append(f'- {text}' if negative else f'+ {text}')
        return ' '.join(parts)

    __str__ = render

    def __repr__(self):
        return f'Polynomial({self.render()!r}, {self.ring!r})'

    def __reduce__(self):
        return (Polynomial, (self.ring, self.terms))

def _same_ring(*polys):
    ring = polys[0].ring
    for p in polys[1:]:
        if p.ring != ring:
            raise RingMismatchError(f"Ring mismatch: {ring} vs {p.ring}")
    return ring

def parse(text: str, ring: PolyRing) -> Polynomial:
    """Parse polynomial text over <ring>"""
    return ring.parse(text)

def add(a: Polynomial, b: Polynomial) -> Polynomial:
    _same_ring(a, b)
    return a + b

def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    _same_ring(a, b)
    return a * b

def power(a: Polynomial, n: int) -> Polynomial:
    return a ** n

def homogeneous_degree(p: Polynomial) -> int | None:
    """Common total degree of all terms; None for zero or mixed-degree polynomials"""
    degrees = {sum(exp) for exp in p.terms}
    return degrees.pop() if len(degrees) == 1 else None

def bihomogeneous_degrees(p: Polynomial, split) -> tuple[int, int] | None:
    """Common (degree in first group, degree in second group), or None"""
    first, second = ([p.ring.index(name) for name in group] for group in split)
    if sorted(first + second) != list(range(p.ring.ngens)):
        raise InputError("Variable split must partition the ring variables")
    degrees = {(sum(exp[i] for i in first), sum(exp[i] for i in second)) for exp in p.terms}
    return degrees.pop() if len(degrees) == 1 else None

def partial(p: Polynomial, variable: str) -> Polynomial:
    idx = p.ring.index(variable)
    field = p.field
    terms = {}
    for exp, c in p.terms.items():
        e = exp[idx]
        if e:
            new_exp = exp[:idx] + (e - 1,) + exp[idx + 1:]
            terms[new_exp] = field.mul(field.from_int(e), c)
    return Polynomial(p.ring, terms)

def substitute(p: Polynomial, images: dict, target: PolyRing | None = None) -> Polynomial:
    """Ring homomorphism sending each variable named in <images> to its image.

    Variables without an image map to the variable of the same name in the target ring.
    """
    rings = {img.ring for img in images.values()}
    if target is None:
        if len(rings) > 1:
            raise RingMismatchError("Substitution images live in different rings")
        target = rings.pop() if rings else p.ring
    elif rings - {target}:
        raise RingMismatchError(f"Substitution images do not live in {target}")
    if target.field != p.field:
        raise RingMismatchError(f"Substitution changes the field: {p.field} vs {target.field}")
    for name in images:
        p.ring.index(name)
    columns = []
    for name in p.ring.names:
        if name in images:
            columns.append(images[name])
        else:
            try:
                columns.append(target.gen(name))
            except UnknownVariableError:
                raise RingMismatchError(f"Variable {name!r} has no image in {target}") from None
    power_cache = [{0: target.one(), 1: img} for img in columns]

    def image_power(i, e):
        cache = power_cache[i]
        if e not in cache:
            cache[e] = image_power(i, e - 1) * columns[i]
        return cache[e]

    result = target.zero()
    for exp, c in p.terms.items():
        term = target.constant(c)
        for i, e in enumerate(exp):
            if e:
                term = term * image_power(i, e)
        result = result + term
    return result

def map_field(p: Polynomial, target: BaseField) -> Polynomial:
    """Coefficient-wise canonical image in another field"""
    source = p.field
    if source == target:
        return p
    ring = p.ring.with_field(target)
    return Polynomial(ring, {exp: target.coerce(source, c) for exp, c in p.terms.items()})

def divide_exact(p: Polynomial, d: Polynomial) -> Polynomial:
    """Quotient of p by d, raising InputError if d does not divide p"""
    _same_ring(p, d)
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    field = p.field
    lead, lc = d.leading_term()
    lc_inv = field.inv(lc)
    remainder = dict(p.terms)
    quotient = {}
    while remainder:
        exp = max(remainder, key=grevlex_key)
        shift = tuple(x - y for x, y in zip(exp, lead))
        if any(s < 0 for s in shift):
            raise InputError(f"{d} does not divide {p}")
        c = field.mul(remainder[exp], lc_inv)
        quotient[shift] = c
        for e, v in d.terms.items():
            target = tuple(x + y for x, y in zip(e, shift))
            value = field.sub(remainder.get(target, field.zero), field.mul(c, v))
            if field.is_zero(value):
                remainder.pop(target, None)
            else:
                remainder[target] = value
    return Polynomial(p.ring, quotient)

def coefficients_in(p: Polynomial, names, coefficient_ring: PolyRing) -> dict:
    """Split p as a polynomial in the variables <names> with coefficients in the others.

    Returns a map from exponent tuples (over <names>) to polynomials in <coefficient_ring>,
    which must consist of exactly the remaining variables in order."""
    ring = p.ring
    selected = [ring.index(name) for name in names]
    rest = [i for i in range(ring.ngens) if i not in selected]
    if tuple(ring.names[i] for i in rest) != coefficient_ring.names:
        raise RingMismatchError("Coefficient ring must hold exactly the remaining variables")
    grouped = {}
    for exp, c in p.terms.items():
        outer = tuple(exp[i] for i in selected)
        inner = tuple(exp[i] for i in rest)
        grouped.setdefault(outer, {})[inner] = c
    return {outer: Polynomial(coefficient_ring, terms) for outer, terms in grouped.items()}

def normalize_scalar(p: Polynomial) -> Polynomial:
    """Canonical scalar multiple: primitive integer content with positive leading coefficient over Q,
    monic otherwise"""
    if p.is_zero():
        return p
    if p.field.KIND != 'Rational':
        return p.monic()
    lcm = 1
    for c in p.terms.values():
        lcm = math.lcm(lcm, c.denominator)
    scaled = p.scale(Fraction(lcm))
    content = math.gcd(*(int(c) for c in scaled.terms.values()))
    _, lc = p.leading_term()
    return scaled.scale(Fraction(-1 if lc < 0 else 1, content))

def proportional(p: Polynomial, q: Polynomial) -> bool:
    """True if p = c*q for a nonzero field element c"""
    _same_ring(p, q)
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    return p.monic() == q.monic()

class LinearChange:
    """Invertible linear substitution x_i -> sum_j T[i][j] x_j"""
    __slots__ = ('field', 'matrix')

    def __init__(self, matrix, field: BaseField):
        matrix = tuple(tuple(row) for row in matrix)
        n = len(matrix)
        if any(len(row) != n for row in matrix):
            raise InputError("Linear change matrix must be square")
        if linalg.rank(matrix, field) != n:
            raise SingularMatrixError("Linear change matrix is singular")
        self.field = field
        self.matrix = matrix

    @classmethod
    def identity(cls, n, field):
        return cls([[field.one if i == j else field.zero for j in range(n)] for i in range(n)], field)

    @classmethod
    def permutation(cls, perm, field):
        """x_i -> x_perm[i]"""
        n = len(perm)
        return cls([[field.one if j == perm[i] else field.zero for j in range(n)] for i in range(n)], field)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def inverse(self) -> 'LinearChange':
        return LinearChange(linalg.inverse(self.matrix, self.field), self.field)

    def is_identity(self) -> bool:
        return self == LinearChange.identity(self.size, self.field)

    def __eq__(self, other):
        return isinstance(other, LinearChange) and self.field == other.field and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.field, self.matrix))

    def __repr__(self):
        rows = '; '.join(' '.join(self.field.render(c) for c in row) for row in self.matrix)
        return f'LinearChange([{rows}] over {self.field})'

def apply_change(p: Polynomial, change: LinearChange) -> Polynomial:
    """Substitute x_i -> sum_j T[i][j] x_j"""
    ring = p.ring
    if change.size != ring.ngens:
        raise InputError(f"Linear change of size {change.size} does not match {ring.ngens} variables")
    if change.field != p.field:
        raise FieldMapError(f"Linear change is over {change.field}, polynomial over {p.field}")
    gens = ring.gens()
    images = {}
    for name, row in zip(ring.names, change.matrix):
        image = ring.zero()
        for gen, c in zip(gens, row):
            image = image + gen.scale(c)
        images[name] = image
    return substitute(p, images, ring)
