"""Groebner bases and the ideal-theoretic queries built on them"""

from dataclasses import dataclass
import functools
import heapq
import itertools
import random

from fanodefect.exceptions import (
    BudgetExceededError,
    InputError,
    InvariantViolation,
    NotHomogeneousError,
    NotZeroDimensionalError,
    PositiveDimensionalError,
    RingMismatchError,
    ZeroIdealError,
)
from fanodefect.log import logger
from fanodefect.polycore import (
    LinearChange,
    PolyRing,
    Polynomial,
    apply_change,
    grevlex_key,
    homogeneous_degree,
    map_field,
    substitute,
)

@functools.lru_cache(maxsize=None)
def _block_key(block: tuple, exp: tuple) -> tuple:
    inner = tuple(e for i, e in enumerate(exp) if i in block)
    outer = tuple(e for i, e in enumerate(exp) if i not in block)
    return (grevlex_key(inner), grevlex_key(outer))

def _lex_key(exp: tuple) -> tuple:
    return exp

@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: grevlex, lex, or a block order eliminating the variables in <block> first.

    Block orders compare the eliminated variables by grevlex, then the rest by grevlex."""
    kind: str
    block: tuple = ()

    def __post_init__(self):
        if self.kind not in ('grevlex', 'lex', 'block'):
            raise InputError(f"Unknown monomial order {self.kind!r}")

    @classmethod
    def elimination(cls, ring: PolyRing, drop) -> 'MonomialOrder':
        return cls('block', tuple(sorted(ring.index(name) for name in drop)))

    @property
    def key(self):
        if self.kind == 'grevlex':
            return grevlex_key
        if self.kind == 'lex':
            return _lex_key
        return functools.partial(_block_key, self.block)

    def __str__(self):
        if self.kind == 'block':
            return f'block{list(self.block)}'
        return self.kind

GREVLEX = MonomialOrder('grevlex')
LEX = MonomialOrder('lex')

@dataclass(frozen=True)
class GroebnerBudget:
    """Resource limits for one Buchberger run"""
    pairs: int = 2_000_000
    degree: int = 40

DEFAULT_BUDGET = GroebnerBudget()

@dataclass(frozen=True)
class GroebnerBasis:
    """A Groebner basis of an ideal with respect to <order>"""
    ring: PolyRing
    generators: tuple
    order: MonomialOrder
    reduced: bool = True

    def is_unit(self) -> bool:
        """True if the ideal is the whole ring"""
        return any(g.is_constant() for g in self.generators)

    def leading_monomials(self) -> list:
        key = self.order.key
        return [max(g.terms, key=key) for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def render(self) -> list[str]:
        return [g.render() for g in self.generators]

def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))

def _lcm(a, b) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))

def _monic_terms(terms, key, field):
    lead = max(terms, key=key)
    inv = field.inv(terms[lead])
    if field.is_one(inv):
        return lead, dict(terms)
    return lead, {e: field.mul(inv, c) for e, c in terms.items()}

def _subtract_multiple(target, c, shift, terms, field):
    """target -= c * x^shift * terms, in place"""
    sub, mul, is_zero = field.sub, field.mul, field.is_zero
    zero = field.zero
    for e, v in terms.items():
        exp = tuple(x + y for x, y in zip(e, shift))
        value = sub(target.get(exp, zero), mul(c, v))
        if is_zero(value):
            target.pop(exp, None)
        else:
            target[exp] = value

def _reduce(terms, basis, key, field, skip=None):
    """Full reduction of a term map by monic (lead, terms) pairs; returns the remainder"""
    p = dict(terms)
    remainder = {}
    while p:
        lead = max(p, key=key)
        c = p[lead]
        for idx, (g_lead, g_terms) in enumerate(basis):
            if idx == skip or not _divides(g_lead, lead):
                continue
            shift = tuple(x - y for x, y in zip(lead, g_lead))
            _subtract_multiple(p, c, shift, g_terms, field)
            break
        else:
            remainder[lead] = c
            del p[lead]
    return remainder

def _s_polynomial(f, g, field):
    (f_lead, f_terms), (g_lead, g_terms) = f, g
    lcm = _lcm(f_lead, g_lead)
    s = {}
    _subtract_multiple(s, field.neg(field.one), tuple(x - y for x, y in zip(lcm, f_lead)), f_terms, field)
    _subtract_multiple(s, field.one, tuple(x - y for x, y in zip(lcm, g_lead)), g_terms, field)
    return s

def _common_ring(polys) -> PolyRing:
    if not polys:
        raise ZeroIdealError("zero ideal input")
    ring = polys[0].ring
    for p in polys[1:]:
        if p.ring != ring:
            raise RingMismatchError(f"Generators live in different rings: {ring} vs {p.ring}")
    return ring

def buchberger(gens, order: MonomialOrder = GREVLEX, budget: GroebnerBudget | None = None,
               verify: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by <gens>.

    Pairs are processed smallest lcm first, skipping pairs with coprime leading monomials
    and pairs covered by the chain criterion. The result is monic, interreduced and sorted
    by increasing leading monomial, so it depends only on the ideal and the order.
    """
    gens = list(gens)
    ring = _common_ring(gens)
    budget = budget or DEFAULT_BUDGET
    field = ring.field
    key = order.key
    basis = []
    pending = set()
    heap = []
    processed = 0

    def check_degree(terms):
        degree = max(sum(e) for e in terms)
        if degree > budget.degree:
            raise BudgetExceededError('gb_degree_cap', budget.degree)

    def insert(terms):
        lead, monic = _monic_terms(terms, key, field)
        index = len(basis)
        basis.append((lead, monic))
        for i in range(index):
            pair = (i, index)
            pending.add(pair)
            heapq.heappush(heap, (key(_lcm(basis[i][0], lead)), i, index))
        return lead

    for g in gens:
        if g.is_zero():
            continue
        remainder = _reduce(g.terms, basis, key, field)
        if remainder:
            check_degree(remainder)
            insert(remainder)
    if not basis:
        raise ZeroIdealError("zero ideal input")

    unit = any(not any(lead) for lead, _ in basis)
    while heap and not unit:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        lead_i, lead_j = basis[i][0], basis[j][0]
        if all(not (x and y) for x, y in zip(lead_i, lead_j)):
            continue
        lcm = _lcm(lead_i, lead_j)
        if any(k not in (i, j)
               and _divides(basis[k][0], lcm)
               and (min(i, k), max(i, k)) not in pending
               and (min(j, k), max(j, k)) not in pending
               for k in range(len(basis))):
            continue
        processed += 1
        if processed > budget.pairs:
            raise BudgetExceededError('gb_pair_budget', budget.pairs)
        s = _s_polynomial(basis[i], basis[j], field)
        remainder = _reduce(s, basis, key, field)
        if remainder:
            check_degree(remainder)
            lead = insert(remainder)
            unit = not any(lead)
            logger.debug("buchberger: pair (%d, %d) gave new element %d of degree %d",
                         i, j, len(basis) - 1, sum(lead))
    logger.debug("buchberger: %d pairs reduced, %d elements before interreduction", processed, len(basis))

    if unit:
        result = (ring.one(),)
    else:
        result = _interreduce(basis, key, field, ring)
    gb = GroebnerBasis(ring, result, order, reduced=True)
    if verify and not is_groebner(gb):
        raise InvariantViolation("Computed basis has an S-polynomial that does not reduce to zero")
    return gb

def _interreduce(basis, key, field, ring):
    minimal = []
    for idx, (lead, terms) in enumerate(basis):
        if any(_divides(other, lead) and (other != lead or jdx < idx)
               for jdx, (other, _) in enumerate(basis) if jdx != idx):
            continue
        minimal.append((lead, terms))
    reduced = []
    for idx, (lead, terms) in enumerate(minimal):
        tail = dict(terms)
        c = tail.pop(lead)
        tail = _reduce(tail, minimal, key, field, skip=idx)
        tail[lead] = c
        reduced.append((lead, tail))
    reduced.sort(key=lambda item: key(item[0]))
    return tuple(Polynomial(ring, terms) for _, terms in reduced)

def is_groebner(gb: GroebnerBasis) -> bool:
    """Check that every S-polynomial of the basis reduces to zero"""
    field = gb.ring.field
    key = gb.order.key
    basis = [_monic_terms(g.terms, key, field) for g in gb.generators if g]
    for i, j in itertools.combinations(range(len(basis)), 2):
        if all(not (x and y) for x, y in zip(basis[i][0], basis[j][0])):
            continue
        if _reduce(_s_polynomial(basis[i], basis[j], field), basis, key, field):
            return False
    return True

def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of <p> on full division by <gb>"""
    if p.ring != gb.ring:
        raise RingMismatchError(f"Ring mismatch: {p.ring} vs {gb.ring}")
    field = gb.ring.field
    key = gb.order.key
    basis = [_monic_terms(g.terms, key, field) for g in gb.generators]
    return Polynomial(p.ring, _reduce(p.terms, basis, key, field))

def ideal_member(p: Polynomial, gens, budget: GroebnerBudget | None = None) -> bool:
    """True iff <p> lies in the ideal generated by <gens>"""
    gens = list(gens)
    ring = _common_ring(gens)
    if p.ring != ring:
        raise RingMismatchError(f"Ring mismatch: {p.ring} vs {ring}")
    if all(g.is_zero() for g in gens):
        return p.is_zero()
    return normal_form(p, buchberger(gens, GREVLEX, budget)).is_zero()

def eliminate(gens, drop, keep, budget: GroebnerBudget | None = None) -> list[Polynomial]:
    """Generators of the elimination ideal in the variables <keep>, via a block order"""
    gens = list(gens)
    ring = _common_ring(gens)
    drop, keep = set(drop), set(keep)
    if drop & keep or drop | keep != set(ring.names):
        raise InputError("Eliminated and kept variables must partition the ring variables")
    if not drop:
        return list(buchberger(gens, GREVLEX, budget).generators)
    order = MonomialOrder.elimination(ring, drop)
    gb = buchberger(gens, order, budget)
    dropped = set(order.block)
    kept = [g for g in gb.generators if not g.support() & dropped]
    logger.debug("eliminate: %d of %d basis elements survive", len(kept), len(gb))
    return kept

def _independent(subset, leads) -> bool:
    return not any(all(i in subset for i, e in enumerate(lead) if e) for lead in leads)

def krull_dimension(gb: GroebnerBasis) -> int:
    """Dimension of the affine variety of the ideal; -1 for the unit ideal"""
    if gb.is_unit():
        return -1
    n = gb.ring.ngens
    leads = gb.leading_monomials()
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            if _independent(set(subset), leads):
                return size
    return 0

def standard_monomials(gb: GroebnerBasis) -> list[tuple]:
    """Monomials outside the leading-term ideal of a zero-dimensional ideal"""
    if krull_dimension(gb) > 0:
        raise NotZeroDimensionalError("Ideal is not zero-dimensional")
    if gb.is_unit():
        return []
    leads = gb.leading_monomials()
    n = gb.ring.ngens
    start = (0,) * n
    seen = {start}
    queue = [start]
    while queue:
        exp = queue.pop()
        for i in range(n):
            nxt = exp[:i] + (exp[i] + 1,) + exp[i + 1:]
            if nxt in seen or any(_divides(lead, nxt) for lead in leads):
                continue
            seen.add(nxt)
            queue.append(nxt)
    return sorted(seen, key=grevlex_key)

def zero_dim_degree(gb: GroebnerBasis) -> int:
    """Number of points, counted with multiplicity, of a zero-dimensional ideal"""
    return len(standard_monomials(gb))

def _dehomogenize(gens, cell):
    """Restrict to the affine cell {x_cell = 1, x_j = 0 for j < cell}"""
    ring = gens[0].ring
    field = ring.field
    target = PolyRing(ring.names[cell + 1:], field)
    images = {name: target.zero() for name in ring.names[:cell]}
    images[ring.names[cell]] = target.one()
    return target, [substitute(g, images, target) for g in gens]

def projective_cells(gens, budget: GroebnerBudget | None = None) -> list[int]:
    """Degree of the projective scheme of homogeneous <gens> in each affine cell"""
    gens = list(gens)
    ring = _common_ring(gens)
    for g in gens:
        if not g.is_zero() and homogeneous_degree(g) is None:
            raise NotHomogeneousError(f"Generator {g} is not homogeneous")
    degrees = []
    for cell in range(ring.ngens):
        target, local = _dehomogenize(gens, cell)
        local = [g for g in local if g]
        if not local:
            if target.ngens:
                raise PositiveDimensionalError(cell, target.ngens)
            degrees.append(1)
            continue
        if target.ngens == 0:
            degrees.append(0)
            continue
        gb = buchberger(local, GREVLEX, budget)
        dimension = krull_dimension(gb)
        if dimension > 0:
            raise PositiveDimensionalError(cell, dimension)
        degrees.append(zero_dim_degree(gb))
        logger.debug("projective_cells: cell %d has degree %d", cell, degrees[-1])
    return degrees

def _shear(ring, rng):
    field = ring.field
    n = ring.ngens
    matrix = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    for j in range(1, n):
        matrix[0][j] = field.random_element(rng)
    return LinearChange(matrix, field)

def projective_point_count(gens, field=None, budget: GroebnerBudget | None = None,
                           general_position: bool = True, seed: int = 0, attempts: int = 3) -> int:
    """Degree of the zero-dimensional projective scheme cut out by homogeneous <gens>.

    In general position mode (the default) the coordinates are first sheared
    (x0 -> x0 + sum r_j x_j) so every point lands in the first cell; the remaining cells
    must then be empty, which certifies that multiplicity at points on the cell boundaries
    was not lost. This is the exact count.

    With general_position=False the result is the plain sum of the affine cell degrees.
    A point in cell i is counted with the multiplicity of the scheme restricted to
    {x_j = 0 for j < i}, so non-reduced structure transverse to that subspace is lost.
    It is exact for reduced schemes and always decides emptiness.
    """
    gens = list(gens)
    ring = _common_ring(gens)
    if field is not None and field != ring.field:
        gens = [map_field(g, field) for g in gens]
        ring = gens[0].ring
    if not general_position or ring.ngens < 2:
        return sum(projective_cells(gens, budget))
    rng = random.Random(seed)
    for attempt in range(attempts):
        change = _shear(ring, rng)
        degrees = projective_cells([apply_change(g, change) for g in gens], budget)
        if not any(degrees[1:]):
            return degrees[0]
        logger.debug("projective_point_count: shear attempt %d left points at infinity %s", attempt, degrees)
    logger.warning("Could not move all points into one affine cell after %d shears; "
                   "multiplicities at cell boundaries may be undercounted", attempts)
    return sum(degrees)
