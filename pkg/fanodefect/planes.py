"""Planes met by reducible fibres, and the combinatorial checks they must pass.

For a terminal quartic containing the plane P = {x0 = x1 = 0}:

- no other plane of a reducible fibre is the tangency case {x = 0};
- the planes of different fibres meet P in distinct lines;
- no three such lines from three different fibres pass through one point outside
  the base locus {a3 = b3 = 0};
- so there are at most four reducible fibres.

Fibres are defined over different number fields, so lines are compared after embedding
every splitting field into one prime field F_q in which all of them split completely.
"""

import functools
import itertools

import sympy

from fanodefect import linalg
from fanodefect.data import CheckReport, FibreReport, PlaneComponent
from fanodefect.exceptions import (
    FieldMapError,
    InvariantViolation,
    NotZeroDimensionalError,
    UnsupportedFieldError,
    ZeroIdealError,
)
from fanodefect.fibration import FIBRE_VARIABLES, QUARTIC_VARIABLES, quartic_ring, split_ab
from fanodefect.fields import BaseField, PrimeField
from fanodefect.ideals import GroebnerBudget, projective_point_count
from fanodefect.log import logger
from fanodefect.polycore import PolyRing, Polynomial, partial, substitute

COMPARISON_PRIME_START = 10007
MAX_COMPARISON_PRIMES = 2000

def _extension_image(base_map, root, target, element):
    acc = target.zero
    for c in reversed(element):
        acc = target.add(target.mul(acc, root), base_map(c))
    return acc

def _identity(element):
    return element

def embeddings(field: BaseField, q: int) -> list:
    """All field homomorphisms from <field> into F_q, as callables on elements"""
    target = PrimeField(q)
    if field.KIND == 'Rational':
        return [target.from_fraction]
    if field.KIND == 'PrimeField':
        return [_identity] if field.order == q else []
    out = []
    for base_map in embeddings(field.base, q):
        modulus = [base_map(c) for c in field.modulus]
        for root in target.roots(modulus):
            out.append(functools.partial(_extension_image, base_map, root, target))
    return out

def choose_comparison_prime(fields, start: int = COMPARISON_PRIME_START) -> int:
    """Smallest prime q >= start such that every field embeds into F_q in all possible ways"""
    fields = list(fields)
    finite = {f.characteristic for f in fields if f.characteristic}
    if finite:
        q = finite.pop()
        if finite or any(len(embeddings(f, q)) != f.absolute_degree for f in fields):
            raise UnsupportedFieldError("Fields over a prime field must not be proper extensions for line checks")
        return q
    q = start if sympy.isprime(start) else sympy.nextprime(start)
    for _ in range(MAX_COMPARISON_PRIMES):
        try:
            if all(len(embeddings(f, q)) == f.absolute_degree for f in fields):
                return q
        except FieldMapError:
            # a denominator divisible by q
            logger.debug("choose_comparison_prime: %d divides a denominator", q)
        q = sympy.nextprime(q)
    raise InvariantViolation(f"No prime below {q} splits all of {', '.join(map(str, fields))}")

def fibre_planes(report: FibreReport) -> list[PlaneComponent]:
    """Planes in P^4 corresponding to the linear components of a fibre.

    A component a*x + l(x2, x3, x4) of the fibre over (t0:t1) is the plane
    {t1*x0 - t0*x1 = 0, a*x0 + t0*l = 0} (or {x0 = 0, a*x1 + t1*l = 0} when t0 = 0),
    whose trace on {x0 = x1 = 0} is the line {l = 0}.
    """
    if report.parameter is None:
        raise InvariantViolation("Fibre report carries no parameter")
    field = report.field
    t0, t1 = report.parameter
    ring = quartic_ring(field)
    x0, x1 = ring.gen('x0'), ring.gen('x1')
    images = dict(zip(FIBRE_VARIABLES[1:], QUARTIC_VARIABLES[2:]))
    planes = []
    for component in report.components:
        if component.degree != 1:
            continue
        form = component.form
        a = form.coefficient((1, 0, 0, 0))
        trace = ring.zero()
        for exp, c in form.terms.items():
            if not exp[0]:
                trace = trace + ring.gen(images[FIBRE_VARIABLES[exp.index(1)]]).scale(c)
        if field.is_zero(t0):
            equations = (x0, x1.scale(a) + trace.scale(t1))
        else:
            equations = (x0.scale(t1) - x1.scale(t0), x0.scale(a) + trace.scale(t0))
        planes.append(PlaneComponent(form, tuple(e.monic() for e in equations), trace))
    return planes

def _normalized(vector, q):
    lead = next((c for c in vector if c % q), None)
    if lead is None:
        return None
    inv = pow(lead, -1, q)
    return tuple(c * inv % q for c in vector)

def _trace_vector(plane: PlaneComponent):
    return [plane.trace.coefficient((0, 0, 1, 0, 0)),
            plane.trace.coefficient((0, 0, 0, 1, 0)),
            plane.trace.coefficient((0, 0, 0, 0, 1))]

def embedded_lines(reports, q: int) -> list[list[tuple]]:
    """Trace lines per geometric fibre, as normalized vectors over F_q"""
    fibres = []
    for report in reports:
        planes = [p for p in fibre_planes(report) if not p.tangent]
        t0, t1 = report.parameter
        seen = set()
        for embedding in embeddings(report.field, q):
            image = _normalized([embedding(t0), embedding(t1)], q)
            if image in seen:
                continue
            seen.add(image)
            fibres.append([_normalized([embedding(c) for c in _trace_vector(p)], q) for p in planes])
        if len(seen) != report.conjugates:
            logger.warning("Fibre %s has %d conjugates but %d images in F_%d",
                           report.point, report.conjugates, len(seen), q)
    return fibres

def base_points(quartic: Polynomial, budget: GroebnerBudget | None = None) -> tuple[int | None, bool]:
    """Degree of {x0 = x1 = a3 = b3 = 0} and whether a3, b3 meet transversally on the plane"""
    a3, b3 = split_ab(quartic)
    field = quartic.field
    plane = PolyRing(QUARTIC_VARIABLES[2:], field)
    images = {'x0': plane.zero(), 'x1': plane.zero()}
    for name in QUARTIC_VARIABLES[2:]:
        images[name] = plane.gen(name)
    a, b = substitute(a3, images, plane), substitute(b3, images, plane)
    try:
        degree = projective_point_count([a, b], budget=budget)
    except (NotZeroDimensionalError, ZeroIdealError):
        return None, False
    minors = [partial(a, u) * partial(b, v) - partial(a, v) * partial(b, u)
              for u, v in itertools.combinations(plane.names, 2)]
    transversal = projective_point_count([a, b] + minors, budget=budget, general_position=False) == 0
    return degree, transversal

def _meeting_point(lines, q):
    """Common point of concurrent lines over F_q, as the cross product of two distinct ones"""
    for (a, b, c), (d, e, f) in itertools.combinations(lines, 2):
        point = ((b * f - c * e) % q, (c * d - a * f) % q, (a * e - b * d) % q)
        if any(point):
            return point
    return None

def _on_base_locus(cubics, point, embed, q) -> bool:
    """Whether <point> of the base plane lies on {a3 = b3 = 0}"""
    for cubic in cubics:
        total = 0
        for exp, c in cubic.terms.items():
            if exp[0] or exp[1]:
                continue
            term = embed(c)
            for e, v in zip(exp[2:], point):
                term = term * pow(v, e, q) % q
            total += term
        if total % q:
            return False
    return True

def theorem14_checks(quartic: Polynomial, reports, budget: GroebnerBudget | None = None) -> CheckReport:
    """Check the planes of the reducible fibres of a normalized quartic.

    Three trace lines through a base point {a3 = b3 = 0} of P are expected (every plane
    of a fibre passes through the base points on its trace), so only concurrencies away
    from the base locus count against the quartic. Non-reduced fibres are skipped; they
    are flagged separately by the fibre reports.
    """
    reducible = [r for r in reports if r.reducible and r.reduced]
    fibre_count = sum(r.conjugates for r in reports if r.reducible)
    no_tangent = not any(p.tangent for r in reducible for p in fibre_planes(r))
    distinct = not_concurrent = True
    q = None
    if reducible:
        q = choose_comparison_prime([quartic.field] + [r.field for r in reducible])
        fibres = embedded_lines(reducible, q)
        for first, second in itertools.combinations(fibres, 2):
            if set(first) & set(second):
                distinct = False
        field = PrimeField(q)
        cubics = split_ab(quartic)
        embed = embeddings(quartic.field, q)[0]
        for triple in itertools.combinations(fibres, 3):
            for lines in itertools.product(*triple):
                if not field.is_zero(linalg.determinant([list(line) for line in lines], field)):
                    continue
                point = _meeting_point(lines, q)
                if point is not None and _on_base_locus(cubics, point, embed, q):
                    logger.debug("Lines %s meet at the base point %s", lines, point)
                    continue
                not_concurrent = False
                break
            if not not_concurrent:
                break
    degree, transversal = base_points(quartic, budget)
    report = CheckReport(no_tangent, distinct, not_concurrent, fibre_count, fibre_count <= 4,
                         degree, transversal, q)
    logger.info("Plane checks: %s", report)
    return report
