"""Blowing up a plane in a quartic 3-fold: the cubic surface fibration and its reducible fibres.

A quartic containing the plane {x0 = x1 = 0} can be written x0*a3 + x1*b3. Blowing up
the plane gives the divisor

    t0*a3(t0*x, t1*x, x2, x3, x4) + t1*b3(t0*x, t1*x, x2, x3, x4) = 0

in P^1 x P^3, whose fibres over (t0:t1) are cubic surfaces. The class group rank of the
quartic is at most 8 + 2N + M, where N and M count the reducible fibres with three and
two components.
"""

import asyncio
from dataclasses import dataclass
from fractions import Fraction
import functools
import random

from fanodefect import linalg, univariate
from fanodefect.data import DefectBound, FibreComponent, FibreReport
from fanodefect.exceptions import (
    CharacteristicError,
    DependentPlaneError,
    GenericFibreReducibleError,
    InputError,
    InvariantViolation,
    NotHomogeneousError,
    NotInIdealError,
    PlaneNotContainedError,
    UnsupportedFieldError,
)
from fanodefect.fields import BaseField, ExtensionField
from fanodefect.ideals import GroebnerBudget, ideal_member
from fanodefect.incidence import find_linear_factor, has_linear_factor, pivot_eliminant
from fanodefect.log import logger
from fanodefect.polycore import (
    LinearChange,
    PolyRing,
    Polynomial,
    apply_change,
    divide_exact,
    homogeneous_degree,
    map_field,
    normalize_scalar,
    proportional,
    substitute,
)

QUARTIC_VARIABLES = ('x0', 'x1', 'x2', 'x3', 'x4')
FIBRATION_VARIABLES = ('t0', 't1', 'x', 'x2', 'x3', 'x4')
FIBRE_VARIABLES = ('x', 'x2', 'x3', 'x4')
CHART_PARAMETER = 't'

def quartic_ring(field: BaseField) -> PolyRing:
    return PolyRing(QUARTIC_VARIABLES, field)

def fibration_ring(field: BaseField) -> PolyRing:
    return PolyRing(FIBRATION_VARIABLES, field)

def fibre_ring(field: BaseField) -> PolyRing:
    return PolyRing(FIBRE_VARIABLES, field)

def _linear_coefficients(form: Polynomial) -> list:
    field = form.field
    n = form.ring.ngens
    coeffs = [field.zero] * n
    for exp, c in form.terms.items():
        if sum(exp) != 1:
            raise NotHomogeneousError(f"{form} is not a linear form")
        coeffs[exp.index(1)] = c
    return coeffs

@dataclass(frozen=True)
class PlaneInP4:
    """The plane {l1 = l2 = 0} for independent linear forms l1, l2"""
    l1: Polynomial
    l2: Polynomial

    def __post_init__(self):
        rows = [_linear_coefficients(self.l1), _linear_coefficients(self.l2)]
        if linalg.rank(rows, self.l1.field) < 2:
            raise DependentPlaneError(f"Linear forms {self.l1} and {self.l2} are dependent")

    @classmethod
    def coordinate(cls, ring: PolyRing) -> 'PlaneInP4':
        """The plane {x0 = x1 = 0}"""
        return cls(ring.gen(ring.names[0]), ring.gen(ring.names[1]))

    @classmethod
    def parse(cls, text: str, ring: PolyRing) -> 'PlaneInP4':
        """Parse 'l1; l2'"""
        parts = [part.strip() for part in text.split(';')]
        if len(parts) != 2:
            raise InputError(f"A plane is given as two linear forms separated by ';', got {text!r}")
        return cls(ring.parse(parts[0]), ring.parse(parts[1]))

    def render(self) -> tuple[str, str]:
        return (self.l1.render(), self.l2.render())

    def __str__(self):
        return '{%s = %s = 0}' % self.render()

def _check_quartic(quartic: Polynomial):
    if quartic.ring.ngens != 5 or homogeneous_degree(quartic) != 4:
        raise NotHomogeneousError(f"Expected a homogeneous quartic in 5 variables, got {quartic}")

def contains_plane(quartic: Polynomial, plane: PlaneInP4, budget: GroebnerBudget | None = None) -> bool:
    """True iff the quartic lies in the ideal of the plane"""
    _check_quartic(quartic)
    return ideal_member(quartic, [plane.l1, plane.l2], budget)

def normalize_plane(quartic: Polynomial, plane: PlaneInP4,
                    budget: GroebnerBudget | None = None) -> tuple[Polynomial, LinearChange]:
    """Change coordinates so the plane becomes {x0 = x1 = 0}.

    Returns (quartic', T) with quartic' = apply_change(quartic, T). The rows l1, l2 are
    completed to a basis by coordinate vectors in order; T is the inverse of that basis.
    """
    if not contains_plane(quartic, plane, budget):
        raise PlaneNotContainedError(f"The quartic does not contain the plane {plane}")
    field = quartic.field
    n = quartic.ring.ngens
    rows = [_linear_coefficients(plane.l1), _linear_coefficients(plane.l2)]
    for i in range(n):
        unit = [field.one if j == i else field.zero for j in range(n)]
        if linalg.rank(rows + [unit], field) == len(rows) + 1:
            rows.append(unit)
        if len(rows) == n:
            break
    change = LinearChange(linalg.inverse(rows, field), field)
    normalized = apply_change(quartic, change)
    logger.debug("normalize_plane: %s -> %s", plane, normalized)
    return normalized, change

def split_ab(quartic: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Canonical split quartic' = x0*a3 + x1*b3: b3 takes exactly the x0-free terms"""
    ring = quartic.ring
    a_terms, b_terms = {}, {}
    for exp, c in quartic.terms.items():
        if exp[0]:
            a_terms[(exp[0] - 1,) + exp[1:]] = c
        elif exp[1]:
            b_terms[(0, exp[1] - 1) + exp[2:]] = c
        else:
            raise NotInIdealError(f"{quartic} is not in the ideal (x0, x1)")
    return Polynomial(ring, a_terms), Polynomial(ring, b_terms)

@dataclass(frozen=True)
class CubicFibration:
    """The blown-up quartic as a form in (t0, t1) x (x, x2, x3, x4)"""
    total_form: Polynomial
    a3: Polynomial
    b3: Polynomial
    # Originating quartic and the coordinate change that normalized its plane
    quartic: Polynomial | None = None
    change: LinearChange | None = None

    @property
    def field(self) -> BaseField:
        return self.total_form.field

def build_fibration(a3: Polynomial, b3: Polynomial, quartic: Polynomial | None = None,
                    change: LinearChange | None = None) -> CubicFibration:
    """Total form t0*a3(t0 x, t1 x, ...) + t1*b3(t0 x, t1 x, ...)"""
    for name, form in (('a3', a3), ('b3', b3)):
        if not form.is_zero() and homogeneous_degree(form) != 3:
            raise NotHomogeneousError(f"{name} must be a homogeneous cubic or zero, got {form}")
    ring = fibration_ring(a3.field)
    t0, t1, x = ring.gen('t0'), ring.gen('t1'), ring.gen('x')
    names = a3.ring.names
    images = {names[0]: t0 * x, names[1]: t1 * x}
    for source, target in zip(names[2:], FIBRE_VARIABLES[1:]):
        images[source] = ring.gen(target)
    total = t0 * substitute(a3, images, ring) + t1 * substitute(b3, images, ring)
    return CubicFibration(total, a3, b3, quartic, change)

def fibre_at(fib: CubicFibration, param) -> Polynomial:
    """The fibre cubic over (t0:t1) = param, with param coordinates in any field containing the base"""
    field, t0, t1 = _param_coordinates(fib, param)
    if field.is_zero(t0) and field.is_zero(t1):
        raise InputError("(0:0) is not a point of P^1")
    total = map_field(fib.total_form, field)
    target = fibre_ring(field)
    images = {'t0': target.constant(t0), 't1': target.constant(t1)}
    return normalize_scalar(substitute(total, images, target))

def _param_coordinates(fib, param):
    if isinstance(param, FibreParameter):
        return param.field, param.t0, param.t1
    field = fib.field
    t0, t1 = (field.from_fraction(Fraction(value)) for value in param)
    return field, t0, t1

@dataclass(frozen=True)
class FibreParameter:
    """A point (t0:t1) with coordinates in <field>"""
    field: BaseField
    t0: object
    t1: object

    def __iter__(self):
        return iter((self.t0, self.t1))

@dataclass(frozen=True)
class LocusPoint:
    """Conjugate parameters where fibres are reducible: the roots of an irreducible polynomial in one chart.

    In chart 't1=1' the roots are values of t0/t1; in chart 't0=1' they are values of t1/t0.
    """
    base: BaseField
    # Monic irreducible polynomial over the base, dense, lowest degree first
    minimal_polynomial: tuple
    chart: str = 't1=1'

    @property
    def degree(self) -> int:
        return len(self.minimal_polynomial) - 1

    def parameter_field(self, name='u') -> BaseField:
        if self.degree == 1:
            return self.base
        return ExtensionField(self.base, list(self.minimal_polynomial), name)

    def parameter(self, name='u') -> FibreParameter:
        """A representative point over the parameter field"""
        field = self.parameter_field(name)
        if self.degree == 1:
            root = self.base.neg(self.minimal_polynomial[0])
        else:
            root = field.generator
        if self.chart == 't1=1':
            return FibreParameter(field, root, field.one)
        return FibreParameter(field, field.one, root)

    def render_polynomial(self) -> str:
        variable = 't0/t1' if self.chart == 't1=1' else 't1/t0'
        ring = PolyRing([CHART_PARAMETER], self.base)
        poly = Polynomial(ring, {(i,): c for i, c in enumerate(self.minimal_polynomial)})
        return f'{poly.render()} (t = {variable})'

    def __str__(self):
        if self.degree == 1:
            t0, t1 = self.parameter()
            return f'({self.base.render(t0)}:{self.base.render(t1)})'
        return f'roots of {self.render_polynomial()}'

    def to_dict(self):
        return {
            'minimal_polynomial': [self.base.render(c) for c in self.minimal_polynomial],
            'chart': self.chart,
            'degree': self.degree,
            'point': str(self),
        }

def _chart_form(fib: CubicFibration) -> Polynomial:
    """The total form in the chart t1 = 1 with t0 = t"""
    ring = PolyRing((CHART_PARAMETER,) + FIBRE_VARIABLES, fib.field)
    images = {'t0': ring.gen(CHART_PARAMETER), 't1': ring.one()}
    return substitute(fib.total_form, images, ring)

def _dense(p: Polynomial) -> list:
    field = p.field
    coeffs = {exp[0]: c for exp, c in p.terms.items()}
    return univariate.trim(field, [coeffs.get(i, field.zero) for i in range(max(coeffs, default=-1) + 1)])

def _random_parameter(field, rng):
    value = field.random_element(rng)
    return FibreParameter(field, value, field.one)

def check_generic_fibre(fib: CubicFibration, budget: GroebnerBudget | None = None,
                        seed: int = 0, attempts: int = 3):
    """Raise GenericFibreReducibleError unless a random fibre has no linear factor"""
    rng = random.Random(seed)
    for _ in range(attempts):
        param = _random_parameter(fib.field, rng)
        if not has_linear_factor(fibre_at(fib, param), budget=budget):
            return
        logger.debug("check_generic_fibre: fibre at %s is reducible, retrying", param)
    raise GenericFibreReducibleError(f"Every sampled fibre is reducible after {attempts} attempts")

def reducibility_locus(fib: CubicFibration, budget: GroebnerBudget | None = None,
                       seed: int = 0) -> list[LocusPoint]:
    """Parameters of P^1 over which the fibre has a linear factor over the algebraic closure"""
    base = fib.field
    if base.KIND not in ('Rational', 'PrimeField'):
        raise UnsupportedFieldError(f"Reducibility locus needs QQ or a prime field, got {base}")
    check_generic_fibre(fib, budget, seed)
    form = _chart_form(fib)
    factors = []
    for pivot in FIBRE_VARIABLES:
        eliminant = pivot_eliminant(form, FIBRE_VARIABLES, pivot, CHART_PARAMETER, budget)
        if eliminant is None:
            raise GenericFibreReducibleError(f"Fibres with pivot {pivot} are reducible for every parameter")
        dense = _dense(eliminant)
        logger.debug("reducibility_locus: pivot %s gives eliminant %s", pivot, eliminant)
        if len(dense) <= 1:
            continue
        for factor, _ in base.factor(dense):
            factor = tuple(factor)
            if factor not in factors:
                factors.append(factor)
    ring = PolyRing([CHART_PARAMETER], base)
    factors.sort(key=lambda f: (len(f), Polynomial(ring, {(i,): c for i, c in enumerate(f)}).render()))
    points = [LocusPoint(base, f, 't1=1') for f in factors]
    infinity = FibreParameter(base, base.one, base.zero)
    if has_linear_factor(fibre_at(fib, infinity), budget=budget):
        points.append(LocusPoint(base, (base.zero, base.one), 't0=1'))
    logger.info("Reducible fibres over %s", ', '.join(str(p) for p in points) or 'no parameters')
    return points

def _fresh_name(field: BaseField, taken=()):
    used = set(field.generators()) | set(taken)
    for name in ('u', 'v', 'w', 'r', 's'):
        if name not in used:
            return name
    k = 1
    while f'u{k}' in used:
        k += 1
    return f'u{k}'

def gram_matrix(quadric: Polynomial) -> list[list]:
    """Symmetric matrix G with quadric(v) = v^T G v (characteristic not 2)"""
    field = quadric.field
    n = quadric.ring.ngens
    half = field.inv(field.from_int(2))
    matrix = [[field.zero] * n for _ in range(n)]
    for exp, c in quadric.terms.items():
        if sum(exp) != 2:
            raise NotHomogeneousError(f"{quadric} is not a quadratic form")
        support = [i for i, e in enumerate(exp) for _ in range(e)]
        i, j = support
        if i == j:
            matrix[i][i] = c
        else:
            matrix[i][j] = matrix[j][i] = field.mul(c, half)
    return matrix

def _form_from_row(ring, row):
    form = ring.zero()
    for name, c in zip(ring.names, row):
        form = form + ring.gen(name).scale(c)
    return form

def _split_rank_two(quadric: Polynomial, gram):
    """Write a rank-2 quadric as c * M1 * M2 over at most a quadratic extension"""
    field = quadric.field
    ring = quadric.ring
    n = ring.ngens
    minor = next((i, j) for i in range(n) for j in range(i + 1, n)
                 if not field.is_zero(linalg.determinant(
                     [[gram[i][i], gram[i][j]], [gram[j][i], gram[j][j]]], field)))
    block = [[gram[a][b] for b in minor] for a in minor]
    rest = [k for k in range(n) if k not in minor]
    coupling = [[gram[a][k] for k in rest] for a in minor]
    solved = linalg.matmul(linalg.inverse(block, field), coupling, field)
    w = []
    for row_index, a in enumerate(minor):
        row = [field.zero] * n
        row[a] = field.one
        for col, k in enumerate(rest):
            row[k] = solved[row_index][col]
        w.append(_form_from_row(ring, row))
    (alpha, beta), (_, gamma) = block
    if field.is_zero(alpha) and field.is_zero(gamma):
        return [w[0], w[1]]
    if field.is_zero(alpha):
        alpha, gamma = gamma, alpha
        w = [w[1], w[0]]
    disc = field.sub(field.mul(beta, beta), field.mul(alpha, gamma))
    try:
        root = field.sqrt(disc)
    except UnsupportedFieldError:
        root = None
    if root is None:
        field = ExtensionField(field, [field.neg(disc), field.zero, field.one], _fresh_name(field, ring.names))
        logger.debug("Splitting rank-2 quadric over %s", field)
        w = [map_field(form, field) for form in w]
        alpha, beta = field.coerce(quadric.field, alpha), field.coerce(quadric.field, beta)
        root = field.generator
    first = w[0].scale(alpha) + w[1].scale(field.add(beta, root))
    second = w[0].scale(alpha) + w[1].scale(field.sub(beta, root))
    return [first, second]

def _split_rank_one(quadric: Polynomial, gram):
    field = quadric.field
    n = quadric.ring.ngens
    i = next(k for k in range(n) if not field.is_zero(gram[k][k]))
    inv = field.inv(gram[i][i])
    return _form_from_row(quadric.ring, [field.mul(gram[i][k], inv) for k in range(n)])

def _component_key(component):
    return (component.degree, component.form.render())

def _lift(form, field):
    return form if form.field == field else map_field(form, field)

def classify_fibre(cubic: Polynomial, budget: GroebnerBudget | None = None,
                   max_extension_depth: int = 2) -> FibreReport:
    """Count the irreducible components of a cubic surface and find them over a splitting field.

    A linear factor L is searched over the coefficient field, extending the field by a root
    of an obstruction polynomial when a factor exists only geometrically. The residual
    quadric Q = cubic / L then decides the rest by the rank of its Gram matrix:
    rank >= 3 gives 2 components, rank 2 gives 3 (or a double plane when L divides Q) and
    rank 1 gives a non-reduced fibre.
    """
    field = cubic.field
    if field.characteristic in (2, 3, 5):
        raise CharacteristicError(f"Fibre classification needs characteristic 0 or > 5, got {field}")
    if cubic.is_zero() or homogeneous_degree(cubic) != 3 or cubic.ring.ngens != 4:
        raise NotHomogeneousError(f"Expected a nonzero cubic form in 4 variables, got {cubic}")
    original = cubic
    depth = 0
    while True:
        search = find_linear_factor(cubic, budget)
        if search.factor is not None or not search.geometric:
            break
        if depth >= max_extension_depth or not search.obstructions:
            raise UnsupportedFieldError(
                f"No linear factor of {original} found within {max_extension_depth} field extensions")
        extension = ExtensionField(cubic.field, search.obstructions[0], _fresh_name(cubic.field, cubic.ring.names))
        logger.debug("classify_fibre: extending to %s", extension)
        cubic = map_field(cubic, extension)
        depth += 1

    if search.factor is None:
        return FibreReport(None, 1, cubic.field, 1, True, [FibreComponent(normalize_scalar(cubic))], None)

    linear = search.factor
    quadric = divide_exact(cubic, linear)
    gram = gram_matrix(quadric)
    rank = linalg.rank(gram, quadric.field)
    if rank >= 3:
        components = [FibreComponent(linear), FibreComponent(normalize_scalar(quadric))]
        count, reduced = 2, True
    elif rank == 2:
        first, second = (f.monic() for f in _split_rank_two(quadric, gram))
        splitting = first.field
        linear = _lift(linear, splitting)
        if proportional(linear, first) or proportional(linear, second):
            other = second if proportional(linear, first) else first
            components = [FibreComponent(linear, 2), FibreComponent(other)]
            count, reduced = 2, False
        else:
            components = [FibreComponent(linear), FibreComponent(first), FibreComponent(second)]
            count, reduced = 3, True
    elif rank == 1:
        square = _split_rank_one(quadric, gram).monic()
        if proportional(linear, square):
            components = [FibreComponent(linear, 3)]
            count, reduced = 1, False
        else:
            components = [FibreComponent(linear), FibreComponent(square, 2)]
            count, reduced = 2, False
    else:
        raise InvariantViolation(f"Residual quadric of {original} vanishes")

    splitting = components[0].form.field
    _check_product(original, components, splitting)
    components.sort(key=_component_key)
    return FibreReport(None, 1, splitting, count, reduced, components, rank)

def _check_product(cubic, components, field):
    product = None
    for component in components:
        factor = _lift(component.form, field) ** component.multiplicity
        product = factor if product is None else product * factor
    if not proportional(product, _lift(cubic, field)):
        raise InvariantViolation(f"Components of {cubic} do not multiply back to it")

def classify_point(fib: CubicFibration, point: LocusPoint, budget: GroebnerBudget | None = None,
                   max_extension_depth: int = 2) -> FibreReport:
    """Classify the fibre over one representative of a locus point"""
    param = point.parameter()
    report = classify_fibre(fibre_at(fib, param), budget, max_extension_depth)
    report.point = point
    report.conjugates = point.degree
    report.parameter = (report.field.coerce(param.field, param.t0), report.field.coerce(param.field, param.t1))
    if not report.reduced:
        logger.warning("Fibre over %s is non-reduced; the quartic is likely not terminal", point)
    return report

def classify_locus(fib: CubicFibration, points, budget: GroebnerBudget | None = None,
                   max_extension_depth: int = 2) -> list[FibreReport]:
    """Classify the fibres over each locus point, in order"""
    return [classify_point(fib, point, budget, max_extension_depth) for point in points]

async def classify_locus_async(fib: CubicFibration, points, budget: GroebnerBudget | None = None,
                               max_extension_depth: int = 2, executor=None) -> list[FibreReport]:
    """Classify the fibres over each locus point concurrently, one task per point"""
    loop = asyncio.get_running_loop()
    tasks = [
        loop.run_in_executor(executor, functools.partial(classify_point, fib, point, budget, max_extension_depth))
        for point in points
    ]
    return list(await asyncio.gather(*tasks))

def defect_bound(fib: CubicFibration, reports: list[FibreReport] | None = None,
                 budget: GroebnerBudget | None = None, seed: int = 0) -> DefectBound:
    """The bound 8 + 2N + M, with non-reduced fibres left out of N and M"""
    if reports is None:
        reports = classify_locus(fib, reducibility_locus(fib, budget, seed), budget)
    n_three = n_two = non_reduced = 0
    for report in reports:
        if not report.reduced:
            non_reduced += report.conjugates
        elif report.component_count == 3:
            n_three += report.conjugates
        elif report.component_count == 2:
            n_two += report.conjugates
    if non_reduced:
        logger.warning("%d non-reduced fibres left out of the bound", non_reduced)
    return DefectBound.from_counts(n_three, n_two, non_reduced)
