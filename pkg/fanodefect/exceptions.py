class FanoDefectError(Exception):
    """Generic class for fanodefect errors"""
    exit_code = 1

class InputError(FanoDefectError):
    """Invalid input or validation failure"""
    exit_code = 2

class ParseError(InputError):
    """Polynomial or fixture text could not be parsed"""
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position

class UnknownVariableError(ParseError):
    """A name that is not a ring variable or field generator"""

class RingMismatchError(InputError):
    """Operands live in different rings"""

class FieldMapError(InputError):
    """No canonical coefficient map between two fields"""

class UnknownFieldError(InputError):
    """Unknown field name"""

class UnsupportedFieldError(InputError):
    """The operation is not available over this field"""

class CharacteristicError(InputError):
    """Field characteristic too small for the operation"""

class SingularMatrixError(InputError):
    """Matrix is not invertible"""

class NotHomogeneousError(InputError):
    """Polynomial is not homogeneous of the expected degree"""

class ZeroIdealError(InputError):
    """All generators are zero"""

class NotInIdealError(InputError):
    """Polynomial is not in the expected ideal"""

class PlaneNotContainedError(NotInIdealError):
    """Quartic does not contain the given plane"""

class DependentPlaneError(InputError):
    """The two linear forms of a plane are dependent"""

class GenericFibreReducibleError(InputError):
    """Every fibre of the fibration is reducible"""

class InvalidStartError(InputError):
    """Start state is not in the Fano degree table"""

class ConfigError(InputError):
    """Invalid configuration value"""

class FixtureError(InputError):
    """Malformed fixture file"""

class BudgetExceededError(FanoDefectError):
    """A Groebner basis resource budget was exhausted"""
    exit_code = 3

    def __init__(self, budget, limit):
        super().__init__(f"Resource budget {budget} exceeded (limit {limit})")
        self.budget = budget
        self.limit = limit

class NotZeroDimensionalError(FanoDefectError):
    """Ideal is not zero-dimensional"""

class PositiveDimensionalError(NotZeroDimensionalError):
    """Projective locus has a positive-dimensional component"""
    def __init__(self, cell, dimension):
        super().__init__(f"Positive-dimensional locus (dimension {dimension}) in affine cell {cell}")
        self.cell = cell
        self.dimension = dimension

class InvariantViolation(FanoDefectError):
    """An internal consistency check failed"""
    exit_code = 4

class StageError(FanoDefectError):
    """A pipeline stage failed"""
    def __init__(self, stage, cause):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, 'exit_code', 1)
