"""Exception hierarchy.

Every error raised by the library derives from :class:`IsotorusError`. The
classes are grouped by the object whose invariant was violated, so callers can
catch e.g. ``ValidationError`` around input parsing without caring which
check tripped.
"""


class IsotorusError(Exception):
    """Base class for all library errors."""


class ValidationError(IsotorusError, ValueError):
    """An input object violates a structural invariant."""


# exact field

class InvalidGenerator(ValidationError):
    pass


class NotSquarefree(InvalidGenerator):
    pass


class NotCoprime(ValidationError):
    pass


class SpecMismatch(ValidationError):
    pass


class NotRational(IsotorusError, ArithmeticError):
    """A value predicted to be rational has irrational components."""


class PrecisionExhausted(IsotorusError, ArithmeticError):
    """Interval refinement hit the precision cap without deciding."""


# tori and endomorphisms

class DegenerateLattice(ValidationError):
    pass


class NotLatticePreserving(ValidationError):
    pass


class NotPrimitive(ValidationError):
    pass


class NotComplexClosed(ValidationError):
    pass


class NotStable(IsotorusError):
    pass


class NotIsogeny(IsotorusError):
    pass


# kernels

class NotPrime(ValidationError):
    pass


class CapExceeded(IsotorusError):
    pass


class PrimeDoesNotDivideDegree(IsotorusError):
    pass


# polarization

class NonNegativeDiscriminant(ValidationError):
    pass


class ZeroTrace(IsotorusError):
    pass


class NonRationalQ(IsotorusError):
    pass


# dynamics and certificates

class DimensionNotTwo(IsotorusError):
    pass


class RuleNotApplicable(IsotorusError):
    pass


class EmptyList(IsotorusError):
    pass


class NoSplitting(IsotorusError):
    pass


class ConflictingAssumptions(IsotorusError):
    pass


# problem files

class ParseError(IsotorusError):
    def __init__(self, msg, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(msg + where)
