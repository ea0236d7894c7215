#!/usr/bin/env python3
"""End-to-end tests of the analyze pipeline on the Burkhardt quartic"""
import concurrent.futures
import dataclasses
import json
import logging
import os
import typing
import unittest

from fanodefect.analysis import QuarticAnalysis, analyze
from fanodefect.config import Config
from fanodefect.fibration import PlaneInP4, quartic_ring
from fanodefect.fields import QQ
import fanodefect.data

SLOW_TESTS = os.environ.get('FANODEFECT_SLOW_TESTS')
BURKHARDT = 'x0^4 - x0*(x1^3 + x2^3 + x3^3 + x4^3) + 3*x1*x2*x3*x4'

logger = logging.getLogger('fanodefect.test_integration')

class BaseTestCase:
    # This is defined at a different level to prevent unittest from running the base class
    # https://stackoverflow.com/a/25695512
    class IntegrationTestBase(unittest.IsolatedAsyncioTestCase):
        primes = (10007,)

        def setUp(self):
            self.quartic = quartic_ring(QQ).parse(BURKHARDT)
            self.config = Config(primes=self.primes, jobs=1)

        def _type_check(self, data, expected_type=None):
            if expected_type:
                self.assertIsInstance(data, expected_type)
            for attr, expected_attr_type in data.__annotations__.items():
                value = getattr(data, attr)
                if isinstance(expected_attr_type, typing.GenericAlias):
                    type_args = typing.get_args(expected_attr_type)
                    if typing.get_origin(expected_attr_type) is tuple:
                        self.assertEqual(len(value), len(type_args))
                        for subvalue, subtype in zip(value, type_args):
                            self.assertIsInstance(subvalue, subtype)
                        continue
                    assert len(type_args) == 1, f"Type check not implemented for {type(value)}"
                    for subvalue in value:
                        self._type_check(subvalue, type_args[0])
                    continue

                self.assertIsInstance(value, expected_attr_type,
                    f"Attribute {attr!r} has unexpected type {type(value)}")
                if dataclasses.is_dataclass(value):
                    self._type_check(value)

        def _check_report(self, report):
            """Run the checks every complete Burkhardt analysis must pass"""
            logger.debug("Analysis output: %s", report)
            self.assertTrue(report.complete, report.error)
            self.assertEqual(report.exit_code, 0)
            self.assertTrue(report.contains_plane)
            self.assertEqual(len(report.locus), 3)
            self.assertEqual([f.component_count for f in report.fibres], [3, 3, 3])
            self.assertTrue(report.checks.passed)
            self.assertEqual(report.checks.base_point_count, 9)
            self.assertEqual(report.nodes, 45)
            self.assertFalse(report.few_nodes)
            self.assertEqual(report.warnings, [])
            self.assertEqual(report.bound.cl_rank_bound, 16)
            self.assertEqual(report.bound.defect_bound, 15)
            self.assertIn('bound: N=4, M=0: Cl rank <= 16, defect <= 15', report.format())
            json.dumps(report.to_dict())
            self._type_check(report, expected_type=fanodefect.data.AnalysisReport)

        def test_integration_sync(self):
            """Test the blocking run_sync path"""
            analysis = QuarticAnalysis(self.quartic, config=self.config)
            self._check_report(analysis.run_sync())
            self.assertIsNone(analysis.failure)

        async def test_integration_async(self):
            """Test the asynchronous run path on the default executor"""
            report = await QuarticAnalysis(self.quartic, config=self.config).run()
            self._check_report(report)

        def test_other_plane(self):
            """{x0 = x2 = 0} gives an isomorphic fibration and the same bound"""
            plane = PlaneInP4.parse('x0; x2', self.quartic.ring)
            report = analyze(self.quartic, plane, self.config)
            self.assertTrue(report.complete, report.error)
            self.assertEqual(report.bound.cl_rank_bound, 16)

class TestBurkhardtOnePrime(BaseTestCase.IntegrationTestBase):
    pass

@unittest.skipUnless(SLOW_TESTS, "FANODEFECT_SLOW_TESTS env var not set")
class TestBurkhardtAllPrimes(BaseTestCase.IntegrationTestBase):
    primes = (10007, 10009, 10037)

    async def test_integration_process_pool(self):
        """Fibres and primes processed in worker processes"""
        with concurrent.futures.ProcessPoolExecutor(max_workers=2) as executor:
            report = await QuarticAnalysis(self.quartic, config=self.config).run(executor)
        self._check_report(report)
        self.assertTrue(report.singular.agree)

class TestFailures(unittest.TestCase):
    def test_stage_failure_keeps_earlier_results(self):
        ring = quartic_ring(QQ)
        analysis = QuarticAnalysis(ring.parse('x0*x2^3 + x1*x3^3'), config=Config(primes=(10007,), jobs=1))
        report = analysis.run_sync()
        self.assertFalse(report.complete)
        self.assertEqual(report.failed_stage, 'reducibility_locus')
        self.assertIsNotNone(report.total_form)
        self.assertEqual(analysis.failure.stage, 'reducibility_locus')
        self.assertEqual(analysis.failure.exit_code, 2)

if __name__ == '__main__':
    unittest.main()
