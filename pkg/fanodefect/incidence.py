"""Incidence systems for linear factors of cubic forms.

A linear form L = v + sum c_w w (normalized so the pivot variable v has coefficient 1)
divides a form C exactly when C vanishes identically after substituting
v = -sum c_w w. The coefficients of that substitution, as a polynomial in the remaining
variables, are the incidence equations in the unknowns c_w (plus any parameters of C).
Eliminating the residual quadric's coefficients linearly is equivalent to this and gives
the same ideal with fewer unknowns.
"""

from dataclasses import dataclass, field

from fanodefect.exceptions import InvariantViolation, NotZeroDimensionalError
from fanodefect.ideals import GREVLEX, LEX, GroebnerBudget, buchberger, eliminate, krull_dimension
from fanodefect.log import logger
from fanodefect.polycore import PolyRing, Polynomial, coefficients_in, substitute
from fanodefect import univariate

@dataclass(frozen=True)
class LinearFactorSystem:
    """Incidence equations for linear factors with a fixed pivot variable"""
    pivot: str
    others: tuple
    unknowns: tuple
    ring: PolyRing
    equations: tuple

    def linear_form(self, values, fibre_ring: PolyRing) -> Polynomial:
        """The linear form pivot + sum c_w w for a solution of the unknowns"""
        form = fibre_ring.gen(self.pivot)
        for name, value in zip(self.others, values):
            form = form + fibre_ring.gen(name).scale(value)
        return form

@dataclass
class LinearFactorSearch:
    """Outcome of looking for a linear factor over the coefficient field"""
    # A linear factor defined over the field, made monic
    factor: Polynomial | None
    # True if some linear factor exists over the algebraic closure
    geometric: bool
    # Irreducible polynomials (dense, over the field) whose roots would define one
    obstructions: list = field(default_factory=list)

def _unknown_names(taken, count):
    prefix = 'c'
    while any(f'{prefix}{i}' in taken for i in range(1, count + 1)):
        prefix += 'c'
    return tuple(f'{prefix}{i}' for i in range(1, count + 1))

def linear_factor_system(form: Polynomial, fibre_vars, pivot: str, params=()) -> LinearFactorSystem:
    """Equations in the coefficients c_w (and <params>) for pivot + sum c_w w to divide <form>"""
    ring = form.ring
    K = ring.field
    params = tuple(params)
    others = tuple(v for v in fibre_vars if v != pivot)
    unknowns = _unknown_names(set(ring.names) | set(K.generators()), len(others))
    big = PolyRing(unknowns + params + others, K)
    image = big.zero()
    for c, w in zip(unknowns, others):
        image = image - big.gen(c) * big.gen(w)
    images = {pivot: image}
    for name in params + others:
        images[name] = big.gen(name)
    restricted = substitute(form, images, big)
    coefficient_ring = PolyRing(unknowns + params, K)
    grouped = coefficients_in(restricted, others, coefficient_ring)
    equations = tuple(grouped[exp] for exp in sorted(grouped, reverse=True) if grouped[exp])
    return LinearFactorSystem(pivot, others, unknowns, coefficient_ring, equations)

def _univariate_at(p: Polynomial, index: int, values: dict) -> list:
    """Dense univariate in variable <index> after substituting <values> for the later variables"""
    K = p.field
    coeffs = {}
    for exp, c in p.terms.items():
        value = c
        for j, e in enumerate(exp):
            if e and j != index:
                value = K.mul(value, K.pow(values[j], e))
        degree = exp[index]
        coeffs[degree] = K.add(coeffs.get(degree, K.zero), value)
    if not coeffs:
        return []
    dense = [coeffs.get(i, K.zero) for i in range(max(coeffs) + 1)]
    return univariate.trim(K, dense)

def rational_points(equations, budget: GroebnerBudget | None = None):
    """Points over the coefficient field of a zero-dimensional system.

    Returns (points, obstructions): points as value tuples in ring variable order, sorted;
    obstructions are the irreducible non-linear factors met while back-substituting,
    whose roots would give further points over an extension.
    """
    equations = list(equations)
    ring = equations[0].ring
    K = ring.field
    gb = buchberger(equations, LEX, budget)
    if gb.is_unit():
        return [], []
    if krull_dimension(gb) > 0:
        raise NotZeroDimensionalError(f"Incidence system over {K} has positive dimension")
    n = ring.ngens
    points = []
    obstructions = []

    def extend(index, values):
        if index < 0:
            points.append(tuple(values[i] for i in range(n)))
            return
        later = set(range(index, n))
        common = []
        for g in gb.generators:
            if g.support() <= later:
                u = _univariate_at(g, index, values)
                if u:
                    common = univariate.gcd(K, common, u) if common else univariate.monic(K, u)
        if not common:
            raise InvariantViolation(f"Lex basis has no eliminant in {ring.names[index]}")
        if len(common) == 1:
            return
        for factor, _ in K.factor(common):
            if len(factor) == 2:
                extend(index - 1, {**values, index: K.neg(factor[0])})
            elif factor not in obstructions:
                obstructions.append(factor)

    extend(n - 1, {})
    points.sort(key=lambda point: [K.sort_key(v) for v in point])
    obstructions.sort(key=lambda f: (len(f), [K.sort_key(c) for c in f]))
    return points, obstructions

def has_linear_factor(form: Polynomial, fibre_vars=None, budget: GroebnerBudget | None = None) -> bool:
    """True if <form> has a linear factor over the algebraic closure of its field"""
    fibre_vars = tuple(fibre_vars or form.ring.names)
    if form.is_zero():
        return True
    for pivot in fibre_vars:
        system = linear_factor_system(form, fibre_vars, pivot)
        if not system.equations or not buchberger(system.equations, GREVLEX, budget).is_unit():
            return True
    return False

def find_linear_factor(form: Polynomial, budget: GroebnerBudget | None = None) -> LinearFactorSearch:
    """Look for a linear factor of <form> defined over its coefficient field.

    Pivots are tried in variable order and the first one with a rational solution wins.
    """
    fibre_vars = form.ring.names
    geometric = False
    obstructions = []
    for pivot in fibre_vars:
        system = linear_factor_system(form, fibre_vars, pivot)
        if not system.equations:
            return LinearFactorSearch(form.ring.gen(pivot), True)
        if buchberger(system.equations, GREVLEX, budget).is_unit():
            logger.debug("find_linear_factor: no factor with pivot %s", pivot)
            continue
        geometric = True
        points, found = rational_points(system.equations, budget)
        if points:
            factor = system.linear_form(points[0], form.ring).monic()
            logger.debug("find_linear_factor: pivot %s gives %s", pivot, factor)
            return LinearFactorSearch(factor, True)
        obstructions.extend(f for f in found if f not in obstructions)
    K = form.field
    obstructions.sort(key=lambda f: (len(f), [K.sort_key(c) for c in f]))
    return LinearFactorSearch(None, geometric, obstructions)

def pivot_eliminant(form: Polynomial, fibre_vars, pivot: str, param: str,
                    budget: GroebnerBudget | None = None) -> Polynomial | None:
    """Generator of the ideal of parameter values where <form> has a linear factor with this pivot.

    Returns None when the elimination ideal is zero (every parameter value works) and the
    constant 1 when no parameter value does.
    """
    system = linear_factor_system(form, fibre_vars, pivot, params=(param,))
    if not system.equations:
        return None
    kept = eliminate(system.equations, system.unknowns, (param,), budget)
    if not kept:
        return None
    # The elimination ideal in one variable is principal; its reduced basis has one element
    if len(kept) != 1:
        raise InvariantViolation(f"Elimination to {param} gave {len(kept)} generators")
    index = system.ring.index(param)
    line = PolyRing((param,), system.ring.field)
    return Polynomial(line, {(exp[index],): c for exp, c in kept[0].terms.items()})
