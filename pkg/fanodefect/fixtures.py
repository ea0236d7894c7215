"""Reading fixture files.

A fixture is a small text file of 'key: value' lines:

    # The Burkhardt quartic
    ring: x0 x1 x2 x3 x4
    field: QQ
    quartic: x0^4 - x0*(x1^3 + x2^3 + x3^3 + x4^3) + 3*x1*x2*x3*x4
    plane: x0; x1

'gen:' may be repeated to list ideal generators. Lines starting with whitespace continue
the previous value; '#' starts a comment line.
"""

from dataclasses import dataclass, field as dataclass_field

from fanodefect.exceptions import FixtureError, InputError
from fanodefect.fibration import QUARTIC_VARIABLES, PlaneInP4
from fanodefect.fields import QQ, BaseField
from fanodefect.polycore import PolyRing, Polynomial

KEYS = ('ring', 'field', 'quartic', 'plane', 'gen')

@dataclass
class Fixture:
    """Parsed fixture contents"""
    ring: PolyRing
    quartic: Polynomial | None = None
    plane: PlaneInP4 | None = None
    generators: list[Polynomial] = dataclass_field(default_factory=list)
    source: str = '<string>'

    @property
    def field(self) -> BaseField:
        return self.ring.field

    def require_quartic(self) -> Polynomial:
        if self.quartic is None:
            raise FixtureError(f"{self.source} has no 'quartic:' line")
        return self.quartic

    def require_generators(self) -> list[Polynomial]:
        if not self.generators:
            raise FixtureError(f"{self.source} has no 'gen:' lines")
        return self.generators

    def plane_or_default(self, text: str | None = None) -> PlaneInP4:
        """The plane given by <text>, else the fixture's plane, else {x0 = x1 = 0}"""
        if text:
            return PlaneInP4.parse(text, self.ring)
        return self.plane or PlaneInP4.coordinate(self.ring)

def _entries(text, source):
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith('#'):
            continue
        if line[0].isspace():
            if not entries:
                raise FixtureError(f"{source}:{lineno}: continuation line without a key")
            key, value, start = entries[-1]
            entries[-1] = (key, f'{value} {line.strip()}', start)
            continue
        key, sep, value = line.partition(':')
        key = key.strip().lower()
        if not sep or key not in KEYS:
            raise FixtureError(f"{source}:{lineno}: expected one of {', '.join(k + ':' for k in KEYS)}")
        entries.append((key, value.strip(), lineno))
    return entries

def parse_fixture(text: str, source: str = '<string>') -> Fixture:
    # pylint: disable=import-outside-toplevel
    from fanodefect import get_field_by_name
    values = {}
    gens = []
    for key, value, lineno in _entries(text, source):
        if key == 'gen':
            gens.append((value, lineno))
        elif key in values:
            raise FixtureError(f"{source}:{lineno}: duplicate '{key}:' line")
        else:
            values[key] = (value, lineno)

    def located(key, lineno, func, *args):
        try:
            return func(*args)
        except FixtureError:
            raise
        except InputError as exc:
            raise FixtureError(f"{source}:{lineno}: {key}: {exc}") from exc

    field = QQ
    if 'field' in values:
        text_value, lineno = values['field']
        field = located('field', lineno, get_field_by_name, text_value)
    if 'ring' in values:
        text_value, lineno = values['ring']
        ring = located('ring', lineno, PolyRing, text_value.replace(',', ' ').split(), field)
    elif 'quartic' in values:
        ring = PolyRing(QUARTIC_VARIABLES, field)
    else:
        raise FixtureError(f"{source}: a 'ring:' line is required")

    fixture = Fixture(ring, source=source)
    if 'quartic' in values:
        text_value, lineno = values['quartic']
        fixture.quartic = located('quartic', lineno, ring.parse, text_value)
    if 'plane' in values:
        text_value, lineno = values['plane']
        fixture.plane = located('plane', lineno, PlaneInP4.parse, text_value, ring)
    fixture.generators = [located('gen', lineno, ring.parse, text_value) for text_value, lineno in gens]
    return fixture

def load_fixture(path: str) -> Fixture:
    try:
        with open(path, encoding='utf-8') as f:
            text = f.read()
    except OSError as exc:
        raise FixtureError(f"Cannot read fixture {path}: {exc}") from exc
    return parse_fixture(text, path)
