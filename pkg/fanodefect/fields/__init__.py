from .basefield import BaseField
from .extension import ExtensionField
from .primefield import PrimeField
from .rational import QQ, RationalField

__all__ = [
    'BaseField',
    'ExtensionField',
    'PrimeField',
    'QQ',
    'RationalField',
]
