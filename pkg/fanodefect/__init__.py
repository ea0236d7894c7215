import re

from .exceptions import FanoDefectError, InputError, UnknownFieldError
from .fields import QQ, BaseField, ExtensionField, PrimeField, RationalField
from .polycore import PolyRing, Polynomial
from .version import __version__

__all__ = [
    'BaseField',
    'ExtensionField',
    'FanoDefectError',
    'InputError',
    'PolyRing',
    'Polynomial',
    'PrimeField',
    'QQ',
    'RationalField',
    'UnknownFieldError',
]

FIELD_KINDS = {
    'QQ': RationalField,
    'GF': PrimeField,
}

_PRIME_FIELD_RE = re.compile(r'^GF\((\d+)\)$')
_EXTENSION_RE = re.compile(r'^(.+)\[([A-Za-z][A-Za-z0-9]*)\]/\((.+)\)$')

def get_field_by_name(name: str) -> BaseField:
    """Return a field from its description: QQ, GF(p) or BASE[u]/(m(u)), nested as needed.
    Raises UnknownFieldError if the description is not understood."""
    # pylint: disable=import-outside-toplevel
    from .parser import parse_univariate
    name = name.strip()
    if name == 'QQ':
        return QQ
    if match := _PRIME_FIELD_RE.match(name):
        try:
            return PrimeField(int(match.group(1)))
        except InputError as exc:
            raise UnknownFieldError(f"Unknown field {name!r}: {exc}") from exc
    if match := _EXTENSION_RE.match(name):
        base = get_field_by_name(match.group(1))
        generator = match.group(2)
        modulus = parse_univariate(match.group(3), generator, base)
        return ExtensionField(base, modulus, generator)
    raise UnknownFieldError(f"Unknown field {name!r}. Supported kinds are {tuple(FIELD_KINDS.keys())} "
                            "and extensions BASE[u]/(m(u))")
