#!/usr/bin/env python3
"""Tests for configuration loading"""
import os
import tempfile
import unittest
from unittest import mock

from fanodefect.config import CONFIG_ENV, Config, load_config, parse_config, parse_primes
from fanodefect.exceptions import ConfigError
from fanodefect.ideals import GroebnerBudget

# pylint: disable=missing-function-docstring

class TestConfig(unittest.TestCase):
    def setUp(self):
        patcher = mock.patch.dict(os.environ)
        patcher.start()
        self.addCleanup(patcher.stop)
        os.environ.pop(CONFIG_ENV, None)

    def _write(self, text):
        with tempfile.NamedTemporaryFile('w', suffix='.cfg', delete=False, encoding='utf-8') as f:
            f.write(text)
        self.addCleanup(os.unlink, f.name)
        return f.name

    def test_defaults(self):
        config = load_config()
        self.assertEqual(config.primes, (10007, 10009, 10037))
        self.assertEqual(config.seed, 0)
        self.assertEqual(config.budget(), GroebnerBudget(2_000_000, 40))

    def test_parse(self):
        values = parse_config("# budgets\ngb_pair_budget = 1_000\nprimes = 10007, 10009  # two primes\n")
        self.assertEqual(values, {'gb_pair_budget': 1000, 'primes': (10007, 10009)})

    def test_unknown_key(self):
        with self.assertRaises(ConfigError):
            parse_config('colour = blue')

    def test_bad_value(self):
        with self.assertRaises(ConfigError):
            parse_config('seed = many')

    def test_invalid_primes(self):
        for primes in ((), (10007, 10007), (5,), (10005,)):
            with self.subTest(primes=primes):
                with self.assertRaises(ConfigError):
                    Config(primes=primes)
        with self.assertRaises(ConfigError):
            parse_primes('10007, x')

    def test_invalid_budget(self):
        with self.assertRaises(ConfigError):
            Config(gb_pair_budget=0)
        with self.assertRaises(ConfigError):
            Config(max_extension_depth=-1)

    def test_file(self):
        path = self._write('seed = 7\ne1_pa_cap = 5\n')
        config = load_config(path)
        self.assertEqual((config.seed, config.e1_pa_cap), (7, 5))

    def test_environment(self):
        os.environ[CONFIG_ENV] = self._write('primes = 10039\n')
        self.assertEqual(load_config().primes, (10039,))

    def test_overrides_win(self):
        path = self._write('seed = 7\njobs = 3\n')
        config = load_config(path, seed=11, jobs=None)
        self.assertEqual((config.seed, config.jobs), (11, 3))
        self.assertEqual(config.updated(seed=None, gb_degree_cap=12).gb_degree_cap, 12)

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            load_config('/nonexistent/fanodefect.cfg')

if __name__ == '__main__':
    unittest.main()
