#!/usr/bin/env python3
"""Tests for the singular point counts modulo primes"""
import os
import unittest

from fanodefect.data import PrimeScan
from fanodefect.exceptions import CharacteristicError, NotHomogeneousError
from fanodefect.fibration import quartic_ring
from fanodefect.fields import QQ
from fanodefect.singular import DEFAULT_PRIMES, _summarize, jacobian_ideal, scan_prime, singular_scan, singular_scan_async

BURKHARDT = 'x0^4 - x0*(x1^3 + x2^3 + x3^3 + x4^3) + 3*x1*x2*x3*x4'
FERMAT = 'x0^4 + x1^4 + x2^4 + x3^4 + x4^4'

# pylint: disable=missing-function-docstring,protected-access

class TestSingularScan(unittest.TestCase):
    def setUp(self):
        self.ring = quartic_ring(QQ)

    def test_jacobian(self):
        partials = jacobian_ideal(self.ring.parse(FERMAT))
        self.assertEqual(partials[2], self.ring.parse('4*x2^3'))
        self.assertEqual(len(partials), 5)

    def test_smooth(self):
        report = singular_scan(self.ring.parse(FERMAT), primes=(10007,))
        self.assertTrue(report.isolated)
        self.assertEqual(report.degree, 0)

    def test_cone_is_not_isolated(self):
        # Singular along the line {x0 = x1 = x2 = 0}
        scan = scan_prime(self.ring.parse('x0^4 + x1^4 + x2^4'), 10007)
        self.assertFalse(scan.isolated)
        self.assertIsNone(scan.degree)

    def test_burkhardt_one_prime(self):
        scan = scan_prime(self.ring.parse(BURKHARDT), 10007)
        self.assertEqual(scan.degree, 45)
        self.assertEqual(scan.format(), 'p=10007: isolated, degree 45')

    @unittest.skipUnless(os.environ.get('FANODEFECT_SLOW_TESTS'), 'set FANODEFECT_SLOW_TESTS=1 to run')
    def test_burkhardt_all_primes(self):
        report = singular_scan(self.ring.parse(BURKHARDT), DEFAULT_PRIMES)
        self.assertEqual(report.degree, 45)
        self.assertTrue(report.agree)
        self.assertEqual(report.primes, list(DEFAULT_PRIMES))

    def test_bad_primes(self):
        with self.assertRaises(CharacteristicError):
            scan_prime(self.ring.parse(FERMAT), 2)
        with self.assertRaises(CharacteristicError):
            scan_prime(self.ring.parse('10007*x0^4'), 10007)
        with self.assertRaises(NotHomogeneousError):
            scan_prime(self.ring.parse('x0^3'), 10007)

    def test_majority(self):
        scans = [PrimeScan(10007, True, 45), PrimeScan(10009, True, 44), PrimeScan(10037, True, 45)]
        report = _summarize(scans)
        self.assertEqual((report.degree, report.agreeing), (45, 2))
        self.assertFalse(report.agree)
        self.assertEqual(report.format(), 'isolated, degree 45 (2/3 primes agree)')
        report = _summarize([PrimeScan(10007, False, None, 1), PrimeScan(10009, False, None, 1),
                             PrimeScan(10037, True, 3)])
        self.assertFalse(report.isolated)
        self.assertEqual(report.to_dict()['primes'], [10007, 10009, 10037])

class TestSingularScanAsync(unittest.IsolatedAsyncioTestCase):
    async def test_smooth(self):
        quartic = quartic_ring(QQ).parse(FERMAT)
        report = await singular_scan_async(quartic, primes=(10007, 10009))
        self.assertEqual(report.degree, 0)
        self.assertEqual(report.agreeing, 2)

if __name__ == '__main__':
    unittest.main()
