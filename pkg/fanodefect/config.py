"""Run configuration: primes, Groebner basis budgets and search caps"""

import configparser
from dataclasses import dataclass, fields, replace
import os

import sympy

from fanodefect.exceptions import ConfigError
from fanodefect.ideals import GroebnerBudget
from fanodefect.log import logger

CONFIG_ENV = 'FANODEFECT_CONFIG'
_SECTION = 'fanodefect'

# pylint: disable=too-many-instance-attributes
@dataclass(frozen=True)
class Config:
    """Settings shared by every command"""
    primes: tuple = (10007, 10009, 10037)
    gb_pair_budget: int = 2_000_000
    gb_degree_cap: int = 40
    e1_pa_cap: int = 20
    e1_deg_cap: int = 40
    jobs: int = os.cpu_count() or 1
    seed: int = 0
    max_extension_depth: int = 2

    def __post_init__(self):
        primes = tuple(self.primes)
        object.__setattr__(self, 'primes', primes)
        if not primes:
            raise ConfigError("At least one prime is required")
        if len(set(primes)) != len(primes):
            raise ConfigError(f"Primes must be distinct, got {primes}")
        for p in primes:
            if not isinstance(p, int) or p <= 5 or not sympy.isprime(p):
                raise ConfigError(f"{p!r} is not a prime greater than 5")
        for name in ('gb_pair_budget', 'gb_degree_cap', 'e1_pa_cap', 'e1_deg_cap', 'jobs'):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if self.max_extension_depth < 0:
            raise ConfigError(f"max_extension_depth must be non-negative, got {self.max_extension_depth}")

    def budget(self) -> GroebnerBudget:
        return GroebnerBudget(self.gb_pair_budget, self.gb_degree_cap)

    def updated(self, **overrides):
        """Copy with the given settings replaced; None values are ignored"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

def parse_primes(text: str) -> tuple:
    try:
        return tuple(int(p) for p in text.replace(',', ' ').split())
    except ValueError as exc:
        raise ConfigError(f"Invalid prime list {text!r}") from exc

def _convert(name, raw):
    if name == 'primes':
        return parse_primes(raw)
    try:
        return int(raw.replace('_', ''))
    except ValueError as exc:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from exc

def parse_config(text: str, source: str = '<string>') -> dict:
    """Settings from 'key = value' lines; # starts a comment"""
    parser = configparser.ConfigParser(comment_prefixes=('#',), inline_comment_prefixes=('#',))
    try:
        parser.read_string(f'[{_SECTION}]\n{text}', source=source)
    except configparser.Error as exc:
        raise ConfigError(f"Cannot parse {source}: {exc}") from exc
    known = {f.name for f in fields(Config)}
    values = {}
    for key, raw in parser.items(_SECTION):
        if key not in known:
            raise ConfigError(f"Unknown setting {key!r} in {source}")
        values[key] = _convert(key, raw)
    return values

def load_config(path: str | None = None, **overrides) -> Config:
    """Defaults, then the file at <path> (or $FANODEFECT_CONFIG), then <overrides>"""
    path = path or os.environ.get(CONFIG_ENV)
    values = {}
    if path:
        try:
            with open(path, encoding='utf-8') as f:
                values = parse_config(f.read(), path)
        except OSError as exc:
            raise ConfigError(f"Cannot read config file {path}: {exc}") from exc
        logger.debug("Loaded settings %s from %s", sorted(values), path)
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Config(**values)
