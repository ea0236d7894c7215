"""Data types to represent analysis results"""

from dataclasses import dataclass, field, fields
import string

from fanodefect.fields.basefield import BaseField
from fanodefect.polycore import Polynomial

def _plain(value):
    """JSON-safe form of a report value"""
    if isinstance(value, ReportUnit):
        return value.to_dict()
    if isinstance(value, Polynomial):
        return value.render()
    if isinstance(value, BaseField):
        return value.describe()
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value

def _text(value):
    if isinstance(value, (list, tuple)):
        return ', '.join(_text(v) for v in value)
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if value is None:
        return '-'
    return str(value)

class ReportUnit():
    _DEFAULT_TEMPLATE = None
    # Fields left out of the machine-readable document
    _PRIVATE = ()

    def _format_attrs(self):
        attrs = {f.name: _text(getattr(self, f.name)) for f in fields(self)}
        attrs.update(self._extra_attrs())
        return attrs

    def _extra_attrs(self):
        return {}

    def format(self, template_str=None):
        """
        Format the report using template_str (or the class' default template string).
        """
        if template_str is None:
            if self._DEFAULT_TEMPLATE is None:
                raise ValueError("Template string missing")
            template_str = self._DEFAULT_TEMPLATE
        tmpl = string.Template(template_str)
        return tmpl.substitute(self._format_attrs())

    __str__ = format

    def to_dict(self):
        return {f.name: _plain(getattr(self, f.name)) for f in fields(self) if f.name not in self._PRIVATE}

@dataclass
class FibreComponent(ReportUnit):
    """An irreducible component of a fibre, with its multiplicity"""
    form: Polynomial
    multiplicity: int = 1

    @property
    def degree(self) -> int:
        return self.form.total_degree()

    @property
    def _DEFAULT_TEMPLATE(self):  # pylint: disable=invalid-name
        if self.multiplicity == 1:
            return "(${form})"
        return "(${form})^${multiplicity}"

    def to_dict(self):
        return {'form': self.form.render(), 'degree': self.degree, 'multiplicity': self.multiplicity}

# pylint: disable=too-many-instance-attributes
@dataclass
class FibreReport(ReportUnit):
    """Classification of one fibre of the cubic fibration"""
    # Parameter point of P^1 (a LocusPoint), or None for a bare cubic
    point: object
    # Number of conjugate fibres this report stands for
    conjugates: int
    # Field over which the components are defined
    field: BaseField
    # Geometric number of irreducible components: 1, 2 or 3
    component_count: int
    # False iff a repeated factor occurs
    reduced: bool
    components: list[FibreComponent]
    # Rank of the residual quadric's Gram matrix, when a linear factor was split off
    quadric_rank: int | None
    # (t0, t1) over <field>, or None for a bare cubic
    parameter: tuple | None = None

    _DEFAULT_TEMPLATE = "${point}: ${component_count} components (${reducedness}) over ${field}: ${components}"
    _PRIVATE = ('parameter',)

    @property
    def reducible(self) -> bool:
        return self.component_count >= 2 or not self.reduced

    def _extra_attrs(self):
        return {
            'reducedness': 'reduced' if self.reduced else 'non-reduced',
            'components': ' * '.join(c.format() for c in self.components),
        }

@dataclass
class DefectBound(ReportUnit):
    """Rank bound 8 + 2N + M for the class group of a quartic containing a plane"""
    # N: reduced fibres with 3 components, counted with conjugates
    n_three: int
    # M: reduced fibres with 2 components, counted with conjugates
    n_two: int
    # Non-reduced fibres, reported separately and left out of N and M
    non_reduced: int
    cl_rank_bound: int
    defect_bound: int

    _DEFAULT_TEMPLATE = "N=${n_three}, M=${n_two}: Cl rank <= ${cl_rank_bound}, defect <= ${defect_bound}"

    @classmethod
    def from_counts(cls, n_three, n_two, non_reduced=0):
        cl_rank = 8 + 2 * n_three + n_two
        return cls(n_three, n_two, non_reduced, cl_rank, cl_rank - 1)

@dataclass
class PlaneComponent(ReportUnit):
    """A plane of the quartic found as a linear component of a reducible fibre"""
    # Linear form in the fibre variables (x, x2, x3, x4)
    fibre_form: Polynomial
    # The two linear forms cutting out the plane in P^4
    equations: tuple
    # Linear form in x2, x3, x4 cutting the trace line on the base plane; zero when the
    # plane is the base plane's tangent case
    trace: Polynomial

    _DEFAULT_TEMPLATE = "{${equations}}"

    @property
    def tangent(self) -> bool:
        return self.trace.is_zero()

    def _extra_attrs(self):
        return {'equations': ' = '.join(e.render() for e in self.equations) + ' = 0'}

@dataclass
class CheckReport(ReportUnit):
    """Combinatorial checks on the planes met by reducible fibres"""
    # No plane component is the tangency case x = 0
    no_tangent_plane: bool
    # Trace lines of planes from different fibres are distinct
    distinct_lines: bool
    # No three trace lines from three different fibres meet off the base locus
    not_concurrent: bool
    # Reducible fibres counted with conjugates
    fibre_count: int
    at_most_four: bool
    # Degree of {x0 = x1 = a3 = b3 = 0}, or None if it is not finite
    base_point_count: int | None
    # The two cubics on the base plane meet transversally
    transversal: bool
    # Prime field into which all splitting fields were embedded for the line checks
    comparison_prime: int | None = None

    _DEFAULT_TEMPLATE = ("tangency ${no_tangent_plane}, distinct lines ${distinct_lines}, "
                         "no concurrent triples ${not_concurrent}, ${fibre_count} reducible fibres, "
                         "base points ${base_point_count} (transversal ${transversal})")

    @property
    def passed(self) -> bool:
        return self.no_tangent_plane and self.distinct_lines and self.not_concurrent and self.at_most_four

@dataclass
class PrimeScan(ReportUnit):
    """Singular locus of a quartic reduced modulo one prime"""
    prime: int
    isolated: bool
    # Projective degree of the singular scheme, when isolated
    degree: int | None
    # Dimension of a positive-dimensional component, when not isolated
    dimension: int | None = None

    _DEFAULT_TEMPLATE = "p=${prime}: ${description}"

    def _extra_attrs(self):
        if self.isolated:
            return {'description': f'isolated, degree {self.degree}'}
        return {'description': f'not isolated (dimension {self.dimension})'}

@dataclass
class SingularScanReport(ReportUnit):
    """Singular locus of a quartic over several primes"""
    scans: list[PrimeScan]
    isolated: bool
    # Majority degree among primes with isolated singularities
    degree: int | None
    agreeing: int

    @property
    def primes(self) -> list[int]:
        return [scan.prime for scan in self.scans]

    @property
    def agree(self) -> bool:
        return self.agreeing == len(self.scans)

    @property
    def _DEFAULT_TEMPLATE(self):  # pylint: disable=invalid-name
        if self.isolated:
            return "isolated, degree ${degree} (${agreeing}/${total} primes agree)"
        return "not isolated (${agreeing}/${total} primes agree)"

    def _extra_attrs(self):
        return {'total': str(len(self.scans))}

    def to_dict(self):
        data = super().to_dict()
        data['primes'] = self.primes
        data['agree'] = self.agree
        return data

# pylint: disable=too-many-instance-attributes
@dataclass
class AnalysisReport(ReportUnit):
    """Everything the analyze pipeline found out about one quartic"""
    quartic: str
    plane: tuple[str, str]
    contains_plane: bool | None = None
    normalized: str | None = None
    a3: str | None = None
    b3: str | None = None
    total_form: str | None = None
    locus: list = field(default_factory=list)
    fibres: list[FibreReport] = field(default_factory=list)
    checks: CheckReport | None = None
    singular: SingularScanReport | None = None
    bound: DefectBound | None = None
    nodes: int | None = None
    few_nodes: bool | None = None
    warnings: list[str] = field(default_factory=list)
    failed_stage: str | None = None
    error: str | None = None
    exit_code: int = 0

    @property
    def complete(self) -> bool:
        return self.failed_stage is None and self.bound is not None

    @property
    def _DEFAULT_TEMPLATE(self):  # pylint: disable=invalid-name
        lines = ["quartic: ${quartic}", "plane: {${plane_text}}", "contains plane: ${contains_plane}"]
        if self.normalized is not None:
            lines.append("normalized: ${normalized}")
        if self.a3 is not None:
            lines += ["a3: ${a3}", "b3: ${b3}"]
        if self.total_form is not None:
            lines.append("fibration: ${total_form}")
        if self.fibres:
            lines.append("reducible fibres:\n${fibre_lines}")
        elif self.locus:
            lines.append("reducible fibres over: ${locus}")
        if self.checks is not None:
            lines.append("plane checks: ${checks}")
        if self.singular is not None:
            lines.append("singular locus: ${singular}")
        if self.nodes is not None:
            lines.append("nodes: ${nodes} (few nodes: ${few_nodes})")
        if self.bound is not None:
            lines.append("bound: ${bound}")
        if self.warnings:
            lines.append("${warning_lines}")
        if self.failed_stage is not None:
            lines.append("failed at ${failed_stage}: ${error}")
        return "\n".join(lines)

    def _extra_attrs(self):
        return {
            'plane_text': ' = '.join(self.plane) + ' = 0',
            'fibre_lines': '\n'.join(f'  {fibre}' for fibre in self.fibres),
            'warning_lines': '\n'.join(f'warning: {warning}' for warning in self.warnings),
        }

__all__ = [
    'AnalysisReport',
    'CheckReport',
    'DefectBound',
    'FibreComponent',
    'FibreReport',
    'PlaneComponent',
    'PrimeScan',
    'SingularScanReport',
]
