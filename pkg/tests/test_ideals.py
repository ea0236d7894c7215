#!/usr/bin/env python3
"""Tests for the Groebner basis engine"""
from fractions import Fraction
import itertools
import os
import random
import unittest

import sympy

from fanodefect.exceptions import (
    BudgetExceededError,
    NotHomogeneousError,
    NotZeroDimensionalError,
    PositiveDimensionalError,
    RingMismatchError,
    ZeroIdealError,
)
from fanodefect.fields import QQ, PrimeField
from fanodefect.ideals import (
    GREVLEX,
    LEX,
    GroebnerBudget,
    buchberger,
    eliminate,
    ideal_member,
    is_groebner,
    krull_dimension,
    normal_form,
    projective_cells,
    projective_point_count,
    standard_monomials,
    zero_dim_degree,
)
from fanodefect.polycore import PolyRing, partial, substitute

SEED = int(os.environ.get('FANODEFECT_TEST_SEED', 0))

# pylint: disable=missing-function-docstring

def _value(poly, point, p):
    total = 0
    for exp, c in poly.terms.items():
        term = c
        for e, v in zip(exp, point):
            term = term * pow(v, e, p)
        total += term
    return total % p

def _jacobian_at(gens, point, p):
    """Jacobian determinant of three polynomials at <point>, mod p"""
    rows = [[_value(partial(g, name), point, p) for name in g.ring.names] for g in gens]
    (a, b, c), (d, e, f), (g, h, i) = rows
    return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % p

def _monic(text, symbols):
    return sympy.Poly(sympy.sympify(text), *symbols, domain='QQ').monic()

class TestBuchberger(unittest.TestCase):
    def setUp(self):
        self.ring = PolyRing(('x0', 'x1', 'x2'), QQ)
        self.cubic = [self.ring.parse('x0^2 - x1'), self.ring.parse('x0^3 - x2')]

    def test_twisted_cubic_lex(self):
        gb = buchberger(self.cubic, LEX)
        expected = ['x0^2 - x1', 'x0*x1 - x2', 'x0*x2 - x1^2', 'x1^3 - x2^2']
        self.assertEqual(set(gb.generators), {self.ring.parse(text) for text in expected})
        self.assertTrue(is_groebner(gb))

    def test_reduced_basis_is_canonical(self):
        # Same ideal, different generators
        other = [self.cubic[0], self.ring.parse('x0*x1 - x2')]
        self.assertEqual(buchberger(self.cubic).generators, buchberger(other).generators)

    def test_matches_sympy(self):
        rng = random.Random(SEED)
        symbols = sympy.symbols('x0 x1 x2')
        monomials = [e for e in itertools.product(range(3), repeat=3) if sum(e) == 2]
        for _ in range(5):
            gens = []
            for _ in range(3):
                p = self.ring.zero()
                for exp in rng.sample(monomials, 3):
                    p = p + self.ring.monomial(exp, Fraction(rng.randint(-3, 3)))
                gens.append(p)
            if all(g.is_zero() for g in gens):
                continue
            ours = buchberger(gens, GREVLEX)
            theirs = sympy.groebner([sympy.sympify(g.render()) for g in gens if g], *symbols, order='grevlex')
            self.assertEqual(len(ours), len(theirs.exprs))
            self.assertEqual({_monic(g, symbols) for g in ours.render()},
                             {_monic(g, symbols) for g in theirs.exprs})

    def test_unit_ideal(self):
        gb = buchberger([self.ring.parse('x0'), self.ring.parse('x0 - 1')])
        self.assertTrue(gb.is_unit())
        self.assertEqual(gb.render(), ['1'])
        self.assertEqual(krull_dimension(gb), -1)

    def test_zero_ideal(self):
        with self.assertRaises(ZeroIdealError):
            buchberger([self.ring.zero()])
        with self.assertRaises(ZeroIdealError):
            buchberger([])

    def test_ring_mismatch(self):
        other = PolyRing(('x0', 'x1', 'x2'), PrimeField(7))
        with self.assertRaises(RingMismatchError):
            buchberger([self.cubic[0], other.gen('x0')])

    def test_pair_budget(self):
        with self.assertRaises(BudgetExceededError) as cm:
            buchberger(self.cubic, LEX, GroebnerBudget(pairs=1))
        self.assertEqual(cm.exception.budget, 'gb_pair_budget')
        self.assertEqual(cm.exception.exit_code, 3)

    def test_degree_cap(self):
        with self.assertRaises(BudgetExceededError) as cm:
            buchberger(self.cubic, LEX, GroebnerBudget(degree=2))
        self.assertEqual(cm.exception.budget, 'gb_degree_cap')

class TestIdealQueries(unittest.TestCase):
    def setUp(self):
        self.ring = PolyRing(('x0', 'x1', 'x2'), QQ)
        self.cubic = [self.ring.parse('x0^2 - x1'), self.ring.parse('x0^3 - x2')]

    def test_normal_form(self):
        gb = buchberger(self.cubic, LEX)
        self.assertTrue(normal_form(self.ring.parse('x1^3 - x2^2'), gb).is_zero())
        self.assertEqual(normal_form(self.ring.parse('x0^4'), gb), self.ring.parse('x1^2'))
        with self.assertRaises(RingMismatchError):
            normal_form(PolyRing(('a',), QQ).gen('a'), gb)

    def test_ideal_member(self):
        self.assertTrue(ideal_member(self.ring.parse('x1^3 - x2^2'), self.cubic))
        self.assertFalse(ideal_member(self.ring.parse('x1'), self.cubic))
        self.assertTrue(ideal_member(self.ring.zero(), [self.ring.zero()]))
        self.assertFalse(ideal_member(self.ring.one(), [self.ring.zero()]))

    def test_eliminate(self):
        ring = PolyRing(('t', 'x1', 'x2'), QQ)
        gens = [ring.parse('x1 - t^2'), ring.parse('x2 - t^3')]
        kept = eliminate(gens, ['t'], ['x1', 'x2'])
        self.assertTrue(kept)
        self.assertTrue(all(0 not in g.support() for g in kept))
        self.assertTrue(ideal_member(ring.parse('x1^3 - x2^2'), kept))

    def test_dimension(self):
        self.assertEqual(krull_dimension(buchberger(self.cubic)), 1)
        self.assertEqual(krull_dimension(buchberger([self.ring.parse('x0*x1')])), 2)
        gb = buchberger([self.ring.parse('x0^2 - 1'), self.ring.parse('x1^2 - 4'), self.ring.parse('x2 - x0')])
        self.assertEqual(krull_dimension(gb), 0)
        self.assertEqual(zero_dim_degree(gb), 4)
        with self.assertRaises(NotZeroDimensionalError):
            standard_monomials(buchberger(self.cubic))

    def test_degree_counts_multiplicity(self):
        gb = buchberger([self.ring.parse('x0^2'), self.ring.parse('x1'), self.ring.parse('x2^3')])
        self.assertEqual(zero_dim_degree(gb), 6)

    def test_degree_matches_point_count(self):
        F = PrimeField(7)
        ring = PolyRing(('x', 'y'), F)
        gens = [ring.parse('x^2 - 1'), ring.parse('y^3 - y')]
        points = [(a, b) for a in range(7) for b in range(7)
                  if all(substitute(g, {'x': ring.scalar(a), 'y': ring.scalar(b)}).is_zero() for g in gens)]
        self.assertEqual(zero_dim_degree(buchberger(gens)), len(points))

    def test_random_degrees_against_point_count(self):
        # Triangular systems whose solutions are all rational over GF(7)
        p = 7
        F = PrimeField(p)
        ring = PolyRing(('x', 'y', 'z'), F)
        x, y, z = (ring.gen(name) for name in ring.names)
        rng = random.Random(SEED)
        for _ in range(50):
            f = ring.one()
            for _ in range(rng.randint(1, 3)):
                f = f * (x - ring.scalar(rng.randrange(p)))
            h = ring.one()
            for _ in range(rng.randint(1, 2)):
                h = h * (y - ring.scalar(rng.randrange(p)) - x.scale(rng.randrange(p)))
            g = z - (x * y).scale(rng.randrange(p)) - ring.scalar(rng.randrange(p))
            gens = [f, h, g]
            points = [point for point in itertools.product(range(p), repeat=3)
                      if all(_value(gen, point, p) == 0 for gen in gens)]
            degree = zero_dim_degree(buchberger(gens))
            with self.subTest(gens=[gen.render() for gen in gens]):
                self.assertGreaterEqual(degree, len(points))
                if all(_jacobian_at(gens, point, p) for point in points):
                    self.assertEqual(degree, len(points))

class TestProjective(unittest.TestCase):
    def setUp(self):
        self.ring = PolyRing(('x0', 'x1', 'x2'), QQ)

    def test_double_point(self):
        gens = [self.ring.parse('x0*x1'), self.ring.parse('x0 + x1')]
        self.assertEqual(projective_point_count(gens), 2)
        # The plain cell sum finds the point (0:0:1) but sets x0 = x1 = 0 there
        self.assertEqual(projective_cells(gens), [0, 0, 1])
        self.assertEqual(projective_point_count(gens, general_position=False), 1)

    def test_reduced_points_without_shear(self):
        gens = [self.ring.parse('x0*x1'), self.ring.parse('x2')]
        self.assertEqual(projective_point_count(gens, general_position=False), 2)
        self.assertEqual(projective_point_count(gens), 2)

    def test_conic_and_line(self):
        gens = [self.ring.parse('x0^2 + x1^2 + x2^2'), self.ring.parse('x0')]
        self.assertEqual(projective_point_count(gens), 2)
        self.assertEqual(projective_point_count(gens, field=PrimeField(10007)), 2)

    def test_cells(self):
        gens = [self.ring.parse('x0*x1'), self.ring.parse('x2')]
        # (1:0:0) and (0:1:0)
        self.assertEqual(projective_cells(gens), [1, 1, 0])

    def test_not_homogeneous(self):
        with self.assertRaises(NotHomogeneousError):
            projective_cells([self.ring.parse('x0^2 - x1')])

    def test_positive_dimensional(self):
        with self.assertRaises(PositiveDimensionalError):
            projective_point_count([self.ring.parse('x0')])

if __name__ == '__main__':
    unittest.main()
