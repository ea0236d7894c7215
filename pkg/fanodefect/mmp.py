"""Numerics of MMP contraction chains for weak-star Fano 3-folds.

Running the MMP on a small factorialization of a terminal Gorenstein Fano 3-fold gives a
chain of divisorial contractions (and flops) through weak Fano 3-folds whose
anticanonical models have Picard rank 1. Each divisorial contraction raises the
anticanonical degree A^3, and the chain ends on a Mori fibre space. Counting divisorial
steps plus the Picard rank of the end bounds the Picard rank of the start, hence the rank
of the class group of the original Fano.

The enumerator walks every numerically admissible chain and returns the longest one as a
certificate.
"""

from dataclasses import dataclass
import functools

from fanodefect.consts import get_reference_bounds
from fanodefect.data import ReportUnit
from fanodefect.exceptions import InputError, InvalidStartError, InvariantViolation
from fanodefect.log import logger

# Anticanonical degrees of Picard rank 1 Fano 3-folds, by Fano index
FANO_DEGREES = {
    1: (2, 4, 6, 8, 10, 12, 14, 16, 18, 22),
    2: (8, 16, 24, 32, 40),
    3: (54,),
    4: (64,),
}
# Index-2 Fano 3-folds of higher Picard rank (the flag variety W6 at 48, V7 at 56) that
# can only end a chain
END_ONLY_DEGREES = {2: (48, 56)}
GENERA = (2, 3, 4, 5, 6, 7, 8, 9, 10, 12)
MAX_CHAIN_LENGTH = 16
E2_DELTA = 8

def genus_degree(genus: int) -> int:
    return 2 * genus - 2

def quadric_cap(genus: int) -> int:
    """Number of quadric contractions allowed for a genus-g start: min((g + 1) // 3, 10 - g), at least 0"""
    return max(0, min((genus + 1) // 3, 10 - genus))

@dataclass(frozen=True)
class MmpState(ReportUnit):
    """One anticanonical model along a chain"""
    degree: int
    index: int
    quadrics_remaining: int = 0
    gen_degree_1: bool = False
    # False for the higher Picard rank states that may only end a chain
    rank_one: bool = True

    _DEFAULT_TEMPLATE = "A^3=${degree} (index ${index})"

    def is_valid(self) -> bool:
        table = FANO_DEGREES if self.rank_one else END_ONLY_DEGREES
        return self.degree in table.get(self.index, ())

@dataclass(frozen=True)
class ContractionStep(ReportUnit):
    """A divisorial contraction (or flop) and the degree it adds"""
    kind: str
    delta: int
    a_gamma: int | None = None
    p_a: int | None = None

    KINDS = ('E1', 'E2', 'QuadricToPoint', 'QuadricToCurve', 'Flop')

    @property
    def divisorial(self) -> bool:
        return self.kind != 'Flop'

    @property
    def sort_key(self):
        return (self.KINDS.index(self.kind), self.delta, self.a_gamma or 0, self.p_a or 0)

    @property
    def _DEFAULT_TEMPLATE(self):  # pylint: disable=invalid-name
        if self.kind == 'E1':
            return "E1(A.G=${a_gamma}, pa=${p_a}, +${delta})"
        if self.kind == 'QuadricToCurve':
            return "QuadricToCurve(pa=${p_a}, +${delta})"
        return "${kind}(+${delta})"

    @classmethod
    def e1(cls, a_gamma, p_a):
        return cls('E1', 2 * a_gamma + 2 - 2 * p_a, a_gamma, p_a)

    @classmethod
    def e2(cls):
        return cls('E2', E2_DELTA)

    @classmethod
    def quadric_to_point(cls):
        return cls('QuadricToPoint', 2)

    @classmethod
    def quadric_to_curve(cls, p_a):
        return cls('QuadricToCurve', 2 * (p_a + 1), None, p_a)

    @classmethod
    def flop(cls):
        return cls('Flop', 0)

@dataclass(frozen=True)
class EndState(ReportUnit):
    """The Mori fibre space a chain ends on"""
    kind: str
    rho: int
    # Base surface of a conic bundle
    base: str | None = None
    # Degree of a del Pezzo fibration
    k: int | None = None

    @property
    def _DEFAULT_TEMPLATE(self):  # pylint: disable=invalid-name
        if self.kind == 'ConicBundle':
            return "conic bundle over ${base} (rho ${rho})"
        if self.kind == 'DelPezzoFibration':
            return "del Pezzo fibration of degree >= ${k} (rho ${rho})"
        return "${kind} (rho ${rho})"

# pylint: disable=too-many-instance-attributes
@dataclass(frozen=True)
class BoundCertificate(ReportUnit):
    """A witness chain and the rank bounds it gives"""
    start: MmpState
    chain: tuple
    end: EndState
    picard_rank_bound: int
    cl_rank_bound: int
    defect_bound: int
    # Closed-form value to compare against (defect for index 1, Picard rank for index 2)
    closed_form: int | None = None

    @property
    def final_state(self) -> MmpState:
        return self.chain[-1][1] if self.chain else self.start

    @property
    def divisorial_steps(self) -> int:
        return sum(1 for step, _ in self.chain if step.divisorial)

    @property
    def closed_form_agrees(self) -> bool | None:
        if self.closed_form is None:
            return None
        if self.start.index == 1:
            return self.closed_form == self.defect_bound
        return self.closed_form == self.picard_rank_bound

    def _extra_attrs(self):
        witness = ' -> '.join([self.start.format()] + [f'{step} -> {state}' for step, state in self.chain])
        if self.closed_form is None:
            comparison = 'no closed form'
        else:
            quantity = 'defect' if self.start.index == 1 else 'Picard rank'
            verdict = 'agrees' if self.closed_form_agrees else 'differs'
            comparison = f'{quantity} <= {self.closed_form} ({verdict})'
        return {'witness': witness, 'comparison': comparison}

    _DEFAULT_TEMPLATE = ("Picard rank <= ${picard_rank_bound}\nCl rank <= ${cl_rank_bound}\n"
                         "defect <= ${defect_bound}\nchain: ${witness}\nend: ${end}\n"
                         "closed form: ${comparison}")

    def to_dict(self):
        return {
            'start': self.start.to_dict(),
            'chain': [{'step': step.to_dict(), 'state': state.to_dict()} for step, state in self.chain],
            'end': self.end.to_dict(),
            'picard_rank_bound': self.picard_rank_bound,
            'cl_rank_bound': self.cl_rank_bound,
            'defect_bound': self.defect_bound,
            'closed_form': self.closed_form,
        }

def lemma11_profile(target_degree: int, a_gamma: int, p_a: int) -> tuple[int, int, int, int]:
    """Intersection numbers (A_X^3, A_X^2.E, A_X.E^2, E^3) for the blowup X of a curve.

    <target_degree> is A^3 of the blown-down 3-fold, <a_gamma> the anticanonical degree of
    the curve and <p_a> its arithmetic genus.
    """
    return (
        target_degree - 2 * a_gamma - 2 + 2 * p_a,
        a_gamma + 2 - 2 * p_a,
        -2 + 2 * p_a,
        -a_gamma + 2 - 2 * p_a,
    )

def e1_pairs(pa_cap: int = 20, deg_cap: int = 40):
    """(A.Gamma, p_a) pairs of curves an E1 contraction may blow down.

    The exceptional divisor must keep A^2.E >= 2. Every admissible increase is even and
    at least 4.
    """
    for p_a in range(pa_cap + 1):
        for a_gamma in range(1, deg_cap + 1):
            if lemma11_profile(0, a_gamma, p_a)[1] >= 2:
                yield a_gamma, p_a

@functools.lru_cache(maxsize=None)
def e1_menu(pa_cap: int = 20, deg_cap: int = 40) -> tuple:
    """One E1 witness per achievable degree increase, with the smallest genus then curve degree"""
    witnesses = {}
    for a_gamma, p_a in e1_pairs(pa_cap, deg_cap):
        step = ContractionStep.e1(a_gamma, p_a)
        witnesses.setdefault(step.delta, step)
    return tuple(witnesses[delta] for delta in sorted(witnesses))

def _targets(degree, indices):
    """(index, rank_one) pairs with <degree> in the table"""
    out = []
    for index in indices:
        if degree in FANO_DEGREES.get(index, ()):
            out.append((index, True))
        if degree in END_ONLY_DEGREES.get(index, ()):
            out.append((index, False))
    return out

def legal_steps(state: MmpState, no_quadric: bool = False, pa_cap: int = 20,
                deg_cap: int = 40) -> list[tuple[ContractionStep, MmpState]]:
    """All successor states reachable by one divisorial contraction.

    Index-1 models may contract to any index; index-2 models only by E2 and only to an
    index divisible by 2. Models of index >= 3 and the higher-rank end states have no
    divisorial successors. Quadric contractions come first: they keep index 1 and use up
    the quadric budget, and any other contraction ends the quadric phase.
    """
    if not state.rank_one or state.index >= 3:
        return []
    out = []
    if state.index == 1:
        if state.quadrics_remaining > 0 and not no_quadric:
            quadric_steps = [ContractionStep.quadric_to_point()]
            quadric_steps += [ContractionStep.quadric_to_curve(p_a) for p_a in range(1, pa_cap + 1)]
            for step in quadric_steps:
                degree = state.degree + step.delta
                if degree in FANO_DEGREES[1]:
                    out.append((step, MmpState(degree, 1, state.quadrics_remaining - 1, state.gen_degree_1)))
        steps = list(e1_menu(pa_cap, deg_cap)) + [ContractionStep.e2()]
        indices = (1, 2, 3, 4)
    else:
        steps = [ContractionStep.e2()]
        indices = (2, 4)
    for step in steps:
        degree = state.degree + step.delta
        for index, rank_one in _targets(degree, indices):
            out.append((step, MmpState(degree, index, 0, state.gen_degree_1, rank_one)))
    out.sort(key=lambda item: (item[0].sort_key, item[1].degree, item[1].index, not item[1].rank_one))
    return out

def end_states(state: MmpState) -> list[EndState]:
    """Mori fibre spaces a chain may end on at <state>, by decreasing Picard rank"""
    if not state.rank_one:
        return [EndState('FanoHigherRank', 2)]
    if state.index == 4:
        return [EndState('FanoRank1', 1)]
    if state.index == 3:
        return [EndState('DelPezzoFibration', 2, k=9), EndState('FanoRank1', 1)]
    if state.index == 2:
        return [EndState('DelPezzoFibration', 2, k=8), EndState('ConicBundle', 2, base='P2'),
                EndState('FanoRank1', 1)]
    k = 3 if state.gen_degree_1 else 2
    return [EndState('ConicBundle', 3, base='F0/F1'), EndState('DelPezzoFibration', 2, k=k),
            EndState('ConicBundle', 2, base='P2'), EndState('FanoRank1', 1)]

def _chain_key(rank, chain):
    return (-rank, len(chain), tuple(step.sort_key for step, _ in chain))

def start_state(genus: int | None = None, index: int | None = None, degree: int | None = None,
                no_quadric: bool = False, cap: int | str = 'auto', gen_degree_1: bool = False) -> MmpState:
    """Validate a start given by genus, or by Fano index and anticanonical degree"""
    if genus is not None:
        if genus not in GENERA:
            raise InvalidStartError(f"Genus must be one of {GENERA}, got {genus}")
        index, degree = 1, genus_degree(genus)
    if index is None or degree is None:
        raise InvalidStartError("Give a genus, or an index and a degree")
    if degree not in FANO_DEGREES.get(index, ()):
        raise InvalidStartError(f"A^3 = {degree} is not the degree of a rank 1 Fano 3-fold of index {index}")
    if no_quadric or index != 1:
        quadrics = 0
    elif cap == 'auto':
        quadrics = quadric_cap((degree + 2) // 2)
    else:
        quadrics = int(cap)
        if quadrics < 0:
            raise InvalidStartError(f"Quadric cap must be non-negative, got {cap}")
    return MmpState(degree, index, quadrics, gen_degree_1)

def enumerate_bound(genus: int | None = None, index: int | None = None, degree: int | None = None,
                    no_plane: bool = True, no_quadric: bool = False, cap: int | str = 'auto',
                    gen_degree_1: bool = False, pa_cap: int = 20, deg_cap: int = 40) -> BoundCertificate:
    """Longest admissible chain from the start, as a certificate.

    Chains are compared by Picard rank bound (larger first), then length (shorter first),
    then step kinds lexicographically.
    """
    if not no_plane:
        raise InputError("The chain enumeration applies only to Fano 3-folds containing no plane")
    start = start_state(genus, index, degree, no_quadric, cap, gen_degree_1)

    @functools.lru_cache(maxsize=None)
    def best(state):
        candidates = [(end.rho, (), end) for end in end_states(state)]
        for step, nxt in legal_steps(state, no_quadric, pa_cap, deg_cap):
            if nxt.degree <= state.degree:
                raise InvariantViolation(f"Step {step} does not increase the degree at {state}")
            rank, chain, end = best(nxt)
            candidates.append((rank + 1, ((step, nxt),) + chain, end))
        return min(candidates, key=lambda c: _chain_key(c[0], c[1]))

    rank, chain, end = best(start)
    if len(chain) > MAX_CHAIN_LENGTH:
        raise InvariantViolation(f"Chain of length {len(chain)} exceeds {MAX_CHAIN_LENGTH}")
    if start.index == 1:
        genus = (start.degree + 2) // 2
        variant = 'cor1' if start.quadrics_remaining == 0 else 'cor2'
        closed = closed_form(genus, variant) if genus in GENERA else None
    elif start.index == 2:
        closed = closed_form_index2(start.degree // 8)
    else:
        closed = None
    logger.debug("enumerate_bound: %s gives Picard rank %d in %d steps (%d states explored)",
                 start, rank, len(chain), best.cache_info().currsize)
    return BoundCertificate(start, chain, end, rank, rank, rank - 1, closed)

def closed_form(genus: int, variant: str = 'cor1') -> int:
    """Defect bound [(12 - g)/2] + 4 with no quadrics, [(12 - n - g)/2] + 4 + n with n quadrics"""
    if genus not in GENERA:
        raise InputError(f"Genus must be one of {GENERA}, got {genus}")
    if variant == 'cor1':
        return (12 - genus) // 2 + 4
    if variant == 'cor2':
        n = quadric_cap(genus)
        return (12 - n - genus) // 2 + 4 + n
    raise InputError(f"Unknown closed form {variant!r}")

def closed_form_index2(h3: int) -> int:
    """Picard rank bound 8 - h^3 for index-2 Fano 3-folds of degree h^3"""
    if h3 not in range(1, 6):
        raise InputError(f"Index-2 degree h^3 must be in 1..5, got {h3}")
    return 8 - h3

def max_disjoint_planes_index2(h3: int) -> int:
    """Most pairwise disjoint planes on an index-2 Fano 3-fold of degree h^3"""
    return closed_form_index2(h3) - 1

def defect_from_betti(b2_resolution: int, nodes: int, b2: int = 1) -> int:
    """Defect of a nodal Fano from the second Betti number of its small resolution"""
    return b2_resolution - nodes - b2

def quartic_class_bound(contains_plane: bool, contains_quadric: bool = True) -> int:
    """Class group rank bound for a terminal Gorenstein quartic 3-fold"""
    if contains_plane:
        return 16
    return enumerate_bound(genus=3, no_quadric=not contains_quadric).cl_rank_bound

def reference_table() -> dict:
    """Known defect bounds for Fano 3-folds containing planes, keyed by genus"""
    return get_reference_bounds()
