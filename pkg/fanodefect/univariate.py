"""Dense univariate polynomials over a field.

Polynomials are lists of field elements, lowest degree first, with no trailing zeros
(the zero polynomial is the empty list). These helpers back the field tower: extension
arithmetic, root finding and factorization over finite fields and number fields.
"""

from fractions import Fraction
import random

import sympy

from fanodefect.exceptions import UnsupportedFieldError

def trim(field, f):
    f = list(f)
    while f and field.is_zero(f[-1]):
        f.pop()
    return f

def degree(f) -> int:
    """Degree, with -1 for the zero polynomial (internal convention only)"""
    return len(f) - 1

def add(field, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else field.zero
        b = g[i] if i < len(g) else field.zero
        out.append(field.add(a, b))
    return trim(field, out)

def sub(field, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else field.zero
        b = g[i] if i < len(g) else field.zero
        out.append(field.sub(a, b))
    return trim(field, out)

def scale(field, f, c):
    return trim(field, [field.mul(c, a) for a in f])

def mul(field, f, g):
    if not f or not g:
        return []
    out = [field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if field.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = field.add(out[i + j], field.mul(a, b))
    return trim(field, out)

def divmod_(field, f, g):
    """Quotient and remainder of f by nonzero g"""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    dg = len(g) - 1
    lead_inv = field.inv(g[-1])
    quot = [field.zero] * max(len(f) - dg, 0)
    while len(rem) - 1 >= dg and rem:
        shift = len(rem) - 1 - dg
        c = field.mul(rem[-1], lead_inv)
        quot[shift] = c
        for j, b in enumerate(g):
            rem[shift + j] = field.sub(rem[shift + j], field.mul(c, b))
        rem = trim(field, rem)
    return trim(field, quot), rem

def rem(field, f, g):
    return divmod_(field, f, g)[1]

def monic(field, f):
    if not f:
        return []
    return scale(field, f, field.inv(f[-1]))

def gcd(field, f, g):
    """Monic greatest common divisor"""
    while g:
        f, g = g, rem(field, f, g)
    return monic(field, f)

def gcdex(field, f, g):
    """Return (s, t, d) with s*f + t*g = d = gcd(f, g), d monic"""
    r0, r1 = list(f), list(g)
    s0, s1 = [field.one], []
    t0, t1 = [], [field.one]
    while r1:
        q, r = divmod_(field, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(field, s0, mul(field, q, s1))
        t0, t1 = t1, sub(field, t0, mul(field, q, t1))
    if not r0:
        return [], [], []
    lead_inv = field.inv(r0[-1])
    return scale(field, s0, lead_inv), scale(field, t0, lead_inv), scale(field, r0, lead_inv)

def powmod(field, f, exponent, modulus):
    result = [field.one]
    base = rem(field, f, modulus)
    while exponent:
        if exponent & 1:
            result = rem(field, mul(field, result, base), modulus)
        base = rem(field, mul(field, base, base), modulus)
        exponent >>= 1
    return result

def derivative(field, f):
    return trim(field, [field.mul(field.from_int(i), a) for i, a in enumerate(f)][1:])

def squarefree_decomposition(field, f):
    """Return [(g, multiplicity)] with f = lc * prod g^m, each g monic square-free"""
    f = monic(field, f)
    if len(f) <= 1:
        return []
    p = field.characteristic
    dfdz = derivative(field, f)
    if not dfdz:
        # f(z) = h(z^p) in characteristic p
        return [(g, m * p) for g, m in squarefree_decomposition(field, _pth_root(field, f))]
    out = []
    a = gcd(field, f, dfdz)
    b = divmod_(field, f, a)[0]
    mult = 1
    while len(b) > 1:
        c = gcd(field, a, b)
        factor = divmod_(field, b, c)[0]
        if len(factor) > 1:
            out.append((factor, mult))
        a = divmod_(field, a, c)[0]
        b = c
        mult += 1
    if len(a) > 1:
        # remaining part is a p-th power
        out.extend((g, m * p) for g, m in squarefree_decomposition(field, _pth_root(field, a)))
    return out

def _pth_root(field, f):
    p = field.characteristic
    q = field.order
    coeffs = []
    for i in range(0, len(f), p):
        # x^(1/p) = x^(q/p) in F_q
        coeffs.append(field.pow(f[i], q // p))
    return trim(field, coeffs)

def is_irreducible_finite(field, f) -> bool:
    """Rabin-style test: no factor of degree <= deg/2 via gcd(f, z^(q^i) - z)"""
    f = monic(field, f)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    q = field.order
    z = [field.zero, field.one]
    power = z
    for _ in range(n // 2):
        power = powmod(field, power, q, f)
        if len(gcd(field, f, sub(field, power, z))) > 1:
            return False
    return True

def _distinct_degree(field, f):
    q = field.order
    z = [field.zero, field.one]
    out = []
    power = z
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        power = powmod(field, power, q, f)
        g = gcd(field, f, sub(field, power, z))
        if len(g) > 1:
            out.append((g, i))
            f = divmod_(field, f, g)[0]
            power = rem(field, power, f)
    if len(f) > 1:
        out.append((monic(field, f), len(f) - 1))
    return out

def _equal_degree(field, f, d, rng):
    """Split a product of distinct irreducibles of degree d (odd characteristic)"""
    n = len(f) - 1
    if n == d:
        return [f]
    q = field.order
    exponent = (q ** d - 1) // 2
    while True:
        a = trim(field, [field.random_element(rng) for _ in range(n)])
        if len(a) <= 1:
            continue
        g = gcd(field, f, a)
        if 1 < len(g) < len(f):
            break
        b = sub(field, powmod(field, a, exponent, f), [field.one])
        g = gcd(field, f, b)
        if 1 < len(g) < len(f):
            break
    h = divmod_(field, f, g)[0]
    return _equal_degree(field, g, d, rng) + _equal_degree(field, monic(field, h), d, rng)

def finite_factor(field, f, seed=0):
    """Factor over a finite field of odd characteristic (Cantor-Zassenhaus)"""
    rng = random.Random(seed)
    out = []
    for part, mult in squarefree_decomposition(field, f):
        for block, d in _distinct_degree(field, part):
            for g in _equal_degree(field, block, d, rng):
                out.append((monic(field, g), mult))
    return _sorted_factors(field, out)

def _sorted_factors(field, factors):
    return sorted(factors, key=lambda fm: (len(fm[0]), [field.sort_key(c) for c in fm[0]], fm[1]))

# Conversions to sympy for Q-based factoring

_Z = sympy.Symbol('z')
_U = sympy.Symbol('u')

def _to_rational(value):
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    return sympy.Integer(value)

def _from_rational(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))

def rational_factor(field, f):
    """Factor over Q with sympy"""
    poly = sympy.Poly([_to_rational(c) for c in reversed(f)], _Z, domain='QQ')
    out = []
    for factor, mult in poly.factor_list()[1]:
        coeffs = [_from_rational(c) for c in reversed(factor.all_coeffs())]
        out.append((monic(field, coeffs), mult))
    return _sorted_factors(field, out)

def prime_factor(field, f):
    """Factor over F_p with sympy"""
    p = field.characteristic
    poly = sympy.Poly([int(c) for c in reversed(f)], _Z, modulus=p)
    out = []
    for factor, mult in poly.factor_list()[1]:
        coeffs = [int(c) % p for c in reversed(factor.all_coeffs())]
        out.append((monic(field, coeffs), mult))
    return _sorted_factors(field, out)

def number_field_factor(field, f):
    """Factor over a simple extension Q[u]/(m) in sympy's algebraic field of a root of m"""
    base = field.base
    root = sympy.CRootOf(sum(_to_rational(c) * _U ** i for i, c in enumerate(field.modulus)), _U, 0)
    domain = sympy.QQ.algebraic_field(root)
    coeffs = [domain.from_sympy(_element_expr(c).subs(_U, root)) for c in reversed(trim(field, f))]
    out = []
    for factor, mult in sympy.Poly(coeffs, _Z, domain=domain).factor_list()[1]:
        # Each coefficient is a polynomial in the root, highest power first
        g = [field.from_coefficients([base.from_fraction(_from_rational(domain.dom.to_sympy(q)))
                                      for q in reversed(c.to_list())])
             for c in reversed(factor.rep.to_list())]
        out.append((monic(field, g), mult))
    return _sorted_factors(field, out)

def _element_expr(element):
    return sum(_to_rational(c) * _U ** i for i, c in enumerate(element))

def unsupported_factor(field, f):
    """Factor when only linear factors are recognizable (towers over Q)"""
    f = trim(field, f)
    if len(f) == 2:
        return [(monic(field, f), 1)]
    raise UnsupportedFieldError(f"Univariate factorization over {field.describe()} is not supported")
