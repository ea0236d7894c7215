"""The analyze pipeline: from a quartic containing a plane to a bound on its defect"""

import asyncio
import contextlib

from fanodefect.config import Config
from fanodefect.data import AnalysisReport
from fanodefect.exceptions import FanoDefectError, InvariantViolation, PlaneNotContainedError, StageError
from fanodefect.fibration import (
    PlaneInP4,
    build_fibration,
    classify_locus,
    classify_locus_async,
    contains_plane,
    defect_bound,
    normalize_plane,
    reducibility_locus,
    split_ab,
)
from fanodefect.log import logger
from fanodefect.planes import theorem14_checks
from fanodefect.polycore import Polynomial
from fanodefect.singular import singular_scan, singular_scan_async

STAGES = (
    'contains_plane',
    'normalize_plane',
    'split_ab',
    'build_fibration',
    'reducibility_locus',
    'classify_fibre',
    'theorem14_checks',
    'singular_scan',
    'defect_bound',
)
MAX_TERMINAL_CL_RANK = 16
FEW_NODES = 8

class QuarticAnalysis:
    """Runs every stage of the analysis on one quartic and collects the results.

    A failing stage stops the run; the report keeps what earlier stages found and names
    the stage that failed. The wrapped error is kept in <failure>.
    """

    def __init__(self, quartic: Polynomial, plane: PlaneInP4 | None = None, config: Config | None = None):
        self.quartic = quartic
        self.plane = plane or PlaneInP4.coordinate(quartic.ring)
        self.config = config or Config()
        self.budget = self.config.budget()
        self.report = AnalysisReport(quartic.render(), self.plane.render())
        self.failure: StageError | None = None
        # Intermediate values shared between stages
        self._normalized = None
        self._fibration = None
        self._locus = None

    @contextlib.contextmanager
    def _stage(self, name):
        logger.info("Stage %s", name)
        try:
            yield
        except FanoDefectError as exc:
            self.report.failed_stage = name
            self.report.error = str(exc)
            logger.error("Stage %s failed: %s", name, exc)
            raise StageError(name, exc) from exc

    def _prepare(self):
        report = self.report
        with self._stage('contains_plane'):
            report.contains_plane = contains_plane(self.quartic, self.plane, self.budget)
            if not report.contains_plane:
                raise PlaneNotContainedError(f"The quartic does not contain the plane {self.plane}")
        with self._stage('normalize_plane'):
            self._normalized, _change = normalize_plane(self.quartic, self.plane, self.budget)
            report.normalized = self._normalized.render()
        with self._stage('split_ab'):
            a3, b3 = split_ab(self._normalized)
            report.a3, report.b3 = a3.render(), b3.render()
        with self._stage('build_fibration'):
            self._fibration = build_fibration(a3, b3, self._normalized)
            report.total_form = self._fibration.total_form.render()
        with self._stage('reducibility_locus'):
            self._locus = reducibility_locus(self._fibration, self.budget, self.config.seed)
            report.locus = list(self._locus)

    def _finish(self):
        report = self.report
        with self._stage('theorem14_checks'):
            report.checks = theorem14_checks(self._normalized, report.fibres, self.budget)
            if not report.checks.passed:
                report.warnings.append("plane checks failed: the quartic is likely not terminal")
        if report.singular is not None:
            report.nodes = report.singular.degree
            report.few_nodes = report.nodes is not None and report.nodes <= FEW_NODES
            if not report.singular.isolated:
                report.warnings.append("singular locus is not isolated: the quartic is not terminal")
            elif not report.singular.agree:
                report.warnings.append("primes disagree on the singular locus")
        with self._stage('defect_bound'):
            report.bound = defect_bound(self._fibration, report.fibres, self.budget, self.config.seed)
            if report.checks.passed and report.bound.cl_rank_bound > MAX_TERMINAL_CL_RANK:
                raise InvariantViolation(
                    f"Class group rank bound {report.bound.cl_rank_bound} exceeds {MAX_TERMINAL_CL_RANK}")

    def _note_fibres(self):
        for fibre in self.report.fibres:
            if not fibre.reduced:
                self.report.warnings.append(f"non-reduced fibre over {fibre.point}: the quartic is likely not terminal")

    def run_sync(self) -> AnalysisReport:
        """Run the stages one after another (blocking)"""
        try:
            self._prepare()
            with self._stage('classify_fibre'):
                self.report.fibres = classify_locus(self._fibration, self._locus, self.budget,
                                                    self.config.max_extension_depth)
                self._note_fibres()
            with self._stage('singular_scan'):
                self.report.singular = singular_scan(self.quartic, self.config.primes, self.budget, self.config.seed)
            self._finish()
        except StageError as exc:
            self.failure = exc
        return self.report

    async def run(self, executor=None) -> AnalysisReport:
        """Run the stages, classifying fibres and scanning primes concurrently on <executor>"""
        try:
            self._prepare()
            with self._stage('classify_fibre'):
                fibres_task = classify_locus_async(self._fibration, self._locus, self.budget,
                                                   self.config.max_extension_depth, executor)
                scan_task = singular_scan_async(self.quartic, self.config.primes, self.budget,
                                                self.config.seed, executor)
                fibres, scan = await asyncio.gather(fibres_task, scan_task, return_exceptions=True)
                if isinstance(fibres, BaseException):
                    raise fibres
                self.report.fibres = fibres
                self._note_fibres()
            with self._stage('singular_scan'):
                if isinstance(scan, BaseException):
                    raise scan
                self.report.singular = scan
            self._finish()
        except StageError as exc:
            self.failure = exc
        return self.report

def analyze(quartic: Polynomial, plane: PlaneInP4 | None = None, config: Config | None = None) -> AnalysisReport:
    """Analyze <quartic> (blocking); the report names the failed stage, if any"""
    return QuarticAnalysis(quartic, plane, config).run_sync()
