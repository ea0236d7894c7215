"""Singular points of a quartic 3-fold, counted modulo several primes"""

import asyncio
from collections import Counter
import functools

from fanodefect.data import PrimeScan, SingularScanReport
from fanodefect.exceptions import CharacteristicError, NotHomogeneousError, PositiveDimensionalError
from fanodefect.fields import PrimeField
from fanodefect.ideals import GroebnerBudget, projective_point_count
from fanodefect.log import logger
from fanodefect.polycore import Polynomial, homogeneous_degree, map_field, partial

DEFAULT_PRIMES = (10007, 10009, 10037)

def jacobian_ideal(form: Polynomial) -> list[Polynomial]:
    """The partial derivatives of <form>"""
    return [partial(form, name) for name in form.ring.names]

def scan_prime(quartic: Polynomial, prime: int, budget: GroebnerBudget | None = None, seed: int = 0) -> PrimeScan:
    """Singular scheme of the quartic reduced modulo <prime>"""
    if homogeneous_degree(quartic) != 4:
        raise NotHomogeneousError(f"Expected a homogeneous quartic, got {quartic}")
    if 4 % prime == 0:
        raise CharacteristicError(f"Characteristic {prime} divides the degree 4")
    field = PrimeField(prime)
    reduced = map_field(quartic, field)
    if reduced.is_zero():
        raise CharacteristicError(f"The quartic vanishes modulo {prime}")
    try:
        degree = projective_point_count(jacobian_ideal(reduced), budget=budget, seed=seed)
    except PositiveDimensionalError as exc:
        logger.info("p=%d: singular locus has dimension %d in cell %d", prime, exc.dimension, exc.cell)
        return PrimeScan(prime, False, None, exc.dimension)
    logger.info("p=%d: singular scheme of degree %d", prime, degree)
    return PrimeScan(prime, True, degree)

def _summarize(scans) -> SingularScanReport:
    isolated = Counter(scan.isolated for scan in scans)
    majority_isolated = isolated[True] >= isolated[False]
    if not majority_isolated:
        return SingularScanReport(list(scans), False, None, isolated[False])
    degrees = Counter(scan.degree for scan in scans if scan.isolated)
    # Most common degree, smallest on ties
    degree, agreeing = min(degrees.items(), key=lambda item: (-item[1], item[0]))
    if agreeing != len(scans):
        logger.warning("Primes disagree on the singular locus (%s); unlucky prime suspected",
                       ', '.join(scan.format() for scan in scans))
    return SingularScanReport(list(scans), True, degree, agreeing)

def singular_scan(quartic: Polynomial, primes=DEFAULT_PRIMES, budget: GroebnerBudget | None = None,
                  seed: int = 0) -> SingularScanReport:
    """Projective degree of the singular scheme at each prime, with a majority verdict"""
    return _summarize([scan_prime(quartic, p, budget, seed) for p in primes])

async def singular_scan_async(quartic: Polynomial, primes=DEFAULT_PRIMES, budget: GroebnerBudget | None = None,
                              seed: int = 0, executor=None) -> SingularScanReport:
    """Like singular_scan, with one task per prime run on <executor>"""
    loop = asyncio.get_running_loop()
    tasks = [loop.run_in_executor(executor, functools.partial(scan_prime, quartic, p, budget, seed))
             for p in primes]
    return _summarize(await asyncio.gather(*tasks))
