"""Command-line front end"""

import argparse
import asyncio
import concurrent.futures
import json
import sys

from fanodefect.analysis import QuarticAnalysis
from fanodefect.config import Config, load_config, parse_primes
from fanodefect.data import AnalysisReport, SingularScanReport
from fanodefect.exceptions import FanoDefectError, InputError
from fanodefect.fibration import (
    FibreParameter,
    build_fibration,
    classify_fibre,
    classify_locus,
    defect_bound,
    fibre_at,
    normalize_plane,
    reducibility_locus,
    split_ab,
)
from fanodefect.fixtures import load_fixture
from fanodefect.ideals import GREVLEX, LEX, buchberger, krull_dimension, zero_dim_degree
from fanodefect import log
from fanodefect.log import logger
from fanodefect import mmp
from fanodefect.singular import singular_scan
from fanodefect.version import __version__

ORDERS = {'grevlex': GREVLEX, 'lex': LEX}
# Fano index -> h^3 to A^3 factor
INDEX_CUBES = {1: 1, 2: 8, 3: 27, 4: 64}

class CommandResult:
    """Text and machine-readable output of a command"""
    def __init__(self, text: str, document, exit_code: int = 0):
        self.text = text
        self.document = document
        self.exit_code = exit_code

def cmd_analyze(fixture_path: str, config: Config, plane: str | None = None) -> AnalysisReport:
    """Run the whole analysis on a fixture's quartic; stage failures are recorded in the report"""
    fixture = load_fixture(fixture_path)
    analysis = QuarticAnalysis(fixture.require_quartic(), fixture.plane_or_default(plane), config)
    if config.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=config.jobs) as executor:
            report = asyncio.run(analysis.run(executor))
    else:
        report = analysis.run_sync()
    if analysis.failure is not None:
        report.exit_code = analysis.failure.exit_code
    return report

def cmd_mmp_bound(config: Config, genus=None, index=None, degree=None, no_quadric=False, cap='auto',
                  gen_degree_1=False, contains_plane=False) -> mmp.BoundCertificate:
    """Certificate for a start given by genus, or by Fano index and h^3"""
    if index is not None and degree is not None:
        if index not in INDEX_CUBES:
            raise InputError(f"Fano index must be one of {tuple(INDEX_CUBES)}, got {index}")
        degree = degree * INDEX_CUBES[index]
    return mmp.enumerate_bound(genus, index, degree, no_plane=not contains_plane, no_quadric=no_quadric,
                               cap=cap, gen_degree_1=gen_degree_1,
                               pa_cap=config.e1_pa_cap, deg_cap=config.e1_deg_cap)

def cmd_gb(fixture_path: str, config: Config, order: str = 'grevlex') -> CommandResult:
    """Reduced Groebner basis of a fixture's generators"""
    fixture = load_fixture(fixture_path)
    gb = buchberger(fixture.require_generators(), ORDERS[order], config.budget())
    dimension = krull_dimension(gb)
    document = {
        'field': fixture.field.describe(),
        'ring': list(fixture.ring.names),
        'order': order,
        'basis': gb.render(),
        'dimension': dimension,
    }
    lines = gb.render()
    if dimension == 0:
        document['degree'] = zero_dim_degree(gb)
        lines.append(f"# dimension 0, degree {document['degree']}")
    else:
        lines.append(f"# dimension {dimension}")
    return CommandResult('\n'.join(lines), document)

def cmd_singular(fixture_path: str, config: Config) -> SingularScanReport:
    """Singular locus of a fixture's quartic at each configured prime"""
    fixture = load_fixture(fixture_path)
    return singular_scan(fixture.require_quartic(), config.primes, config.budget(), config.seed)

def _parse_point(text, ring):
    parts = [part.strip() for part in text.split(':')]
    if len(parts) != 2:
        raise InputError(f"A point of P^1 is given as 'a:b', got {text!r}")
    values = []
    for part in parts:
        value = ring.parse(part)
        if not value.is_constant():
            raise InputError(f"Point coordinates must be constants, got {part!r}")
        values.append(value.coefficient((0,) * ring.ngens))
    return values

def cmd_fibre_scan(fixture_path: str, config: Config, plane: str | None = None, at: str | None = None) -> CommandResult:
    """Reducible fibres of the fibration given by the plane, or the fibre over one point"""
    fixture = load_fixture(fixture_path)
    budget = config.budget()
    normalized, _change = normalize_plane(fixture.require_quartic(), fixture.plane_or_default(plane), budget)
    fib = build_fibration(*split_ab(normalized), normalized)
    if at is not None:
        t0, t1 = _parse_point(at, fixture.ring)
        report = classify_fibre(fibre_at(fib, FibreParameter(fib.field, t0, t1)), budget,
                                config.max_extension_depth)
        report.point = f'({fib.field.render(t0)}:{fib.field.render(t1)})'
        return CommandResult(report.format(), report.to_dict())
    reports = classify_locus(fib, reducibility_locus(fib, budget, config.seed), budget, config.max_extension_depth)
    bound = defect_bound(fib, reports, budget, config.seed)
    lines = [report.format() for report in reports] + [bound.format()]
    document = {'fibres': [report.to_dict() for report in reports], 'bound': bound.to_dict()}
    return CommandResult('\n'.join(lines), document)

def _reference_result() -> CommandResult:
    table = mmp.reference_table()
    lines = []
    for genus, entry in sorted(table.items()):
        bound = '-' if entry['bound'] is None else entry['bound']
        lines.append(f"g={genus}: defect <= {bound} ({entry['status']})")
    return CommandResult('\n'.join(lines), {str(genus): entry for genus, entry in sorted(table.items())})

def _add_common(parser):
    parser.add_argument('--json', action='store_true', help='Print the machine-readable document')
    parser.add_argument('--jobs', type=int, help='Worker processes for per-fibre and per-prime work')
    parser.add_argument('--seed', type=int, help='Seed for randomized steps (default 0)')
    parser.add_argument('--gb-budget', type=int, dest='gb_pair_budget',
                        help='Maximum number of S-pairs per Groebner basis')
    parser.add_argument('--config', help='Config file (default: $FANODEFECT_CONFIG)')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for progress, -vv for debug output')

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='fanodefect', description='Exact bounds on the defect of Fano 3-folds')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    commands = parser.add_subparsers(dest='command', required=True)

    analyze = commands.add_parser('analyze', help='Bound the defect of a quartic containing a plane')
    analyze.add_argument('fixture')
    analyze.add_argument('--plane', help="Plane as two linear forms 'l1; l2' (default: fixture plane or x0; x1)")
    analyze.add_argument('--primes', help='Primes for the singular scan, comma separated')

    bound = commands.add_parser('mmp-bound', help='Longest MMP chain from a Fano 3-fold without planes')
    start = bound.add_mutually_exclusive_group()
    start.add_argument('--genus', type=int)
    start.add_argument('--index', type=int)
    start.add_argument('--table', action='store_true', help='Print the reference bounds for quartics with planes')
    bound.add_argument('--degree', type=int, help='h^3 for the given index')
    bound.add_argument('--no-quadric', action='store_true', help='The Fano contains no quadric surface')
    bound.add_argument('--cap', default='auto', help="Number of quadric contractions allowed (default 'auto')")
    bound.add_argument('--gen-degree-1', action='store_true',
                       help='Contraction chain may end on del Pezzo fibrations of degree 3 or more')
    bound.add_argument('--contains-plane', action='store_true',
                       help='The Fano contains a plane (not covered by the chain enumeration)')

    gb = commands.add_parser('gb', help="Groebner basis of a fixture's 'gen:' lines")
    gb.add_argument('fixture')
    gb.add_argument('--order', choices=sorted(ORDERS), default='grevlex')

    singular = commands.add_parser('singular', help="Singular locus of a fixture's quartic")
    singular.add_argument('fixture')
    singular.add_argument('--primes', help='Primes, comma separated')

    scan = commands.add_parser('fibre-scan', help='Reducible fibres of the fibration given by a plane')
    scan.add_argument('fixture')
    scan.add_argument('--plane', help="Plane as two linear forms 'l1; l2'")
    scan.add_argument('--at', help="Classify the fibre over one point 'a:b' only")

    for subparser in commands.choices.values():
        _add_common(subparser)
    return parser

def _dispatch(args, config) -> CommandResult:
    if args.command == 'analyze':
        report = cmd_analyze(args.fixture, config, args.plane)
        return CommandResult(report.format(), report.to_dict(), report.exit_code)
    if args.command == 'mmp-bound':
        if args.table:
            return _reference_result()
        if args.genus is None and args.index is None:
            raise InputError("Give --genus, or --index with --degree")
        if args.index is not None and args.degree is None:
            raise InputError("--index needs --degree")
        cap = args.cap if args.cap == 'auto' else _int_arg('--cap', args.cap)
        certificate = cmd_mmp_bound(config, args.genus, args.index, args.degree, args.no_quadric, cap,
                                    args.gen_degree_1, args.contains_plane)
        return CommandResult(certificate.format(), certificate.to_dict())
    if args.command == 'gb':
        return cmd_gb(args.fixture, config, args.order)
    if args.command == 'singular':
        report = cmd_singular(args.fixture, config)
        return CommandResult(report.format(), report.to_dict())
    return cmd_fibre_scan(args.fixture, config, args.plane, args.at)

def _int_arg(name, value):
    try:
        return int(value)
    except ValueError:
        raise InputError(f"{name} must be an integer or 'auto', got {value!r}") from None

def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    log.configure(args.verbose)
    try:
        primes = getattr(args, 'primes', None)
        config = load_config(args.config, primes=parse_primes(primes) if primes else None,
                             jobs=args.jobs, seed=args.seed, gb_pair_budget=args.gb_pair_budget)
        result = _dispatch(args, config)
    except FanoDefectError as exc:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.json:
        print(json.dumps(result.document, indent=2))
    else:
        print(result.text)
    return result.exit_code

def console_main():
    sys.exit(main())
