"""Exception hierarchy for the charp library.

Three broad families:

* input/validation errors (bad shapes, zero denominators, syntax),
* domain-condition failures (a form is not closed, not exact, has no
  logarithmic witness on the given chart),
* internal-consistency errors that must never fire on valid input and
  therefore signal an implementation bug (e.g. a p-th root that is
  guaranteed to exist failing to exist).

The CLI maps these onto exit codes; see charp.cli.
"""


class CharpError(Exception):
    """Base class for all charp errors."""


# ---------------------------------------------------------------- arithmetic

class ZeroDivisor(CharpError):
    """Exact division by the zero polynomial."""


class DivisionNotExact(CharpError):
    """divexact called on a pair where the divisor does not divide."""


class IndexOutOfRange(CharpError):
    """Variable index outside the ambient context."""


class NotAPthPower(CharpError):
    """p-th root requested of something that is not a p-th power."""


class ZeroDenominator(CharpError):
    """Rational function with zero denominator."""


class InverseOfZero(CharpError):
    """Multiplicative inverse of zero."""


class ZeroArgument(CharpError):
    """dlog of the zero function."""


# ---------------------------------------------------------------- cartier

class NotClosed(CharpError):
    """Operation requires a closed 1-form."""


class NotExact(CharpError):
    """Antiderivative requested of a form with nonzero Cartier image."""


class NotCartierFixed(CharpError):
    """Logarithmic witness requested of a form that C does not fix."""


class NoWitnessOnChart(CharpError):
    """Exhaustive witness search failed on the supplied chart."""


class ChartTooLarge(CharpError):
    """Chart exceeds the hard generator limit for exhaustive search."""


# ---------------------------------------------------------------- connections

class SingularMatrix(CharpError):
    """Matrix inverse of a singular matrix."""


class ShapeViolation(CharpError):
    """Matrix does not respect the declared group shape."""


class NotAbelian(CharpError):
    """Abelian p-curvature formula called with a non-abelian group tag."""


class CharTwo(CharpError):
    """Characteristic 2 is outside the supported range."""


# ---------------------------------------------------------------- torsors

class ZeroUnit(CharpError):
    """Boundary construction needs a nonzero unit."""


class InconsistentWitnesses(CharpError):
    """Witnesses whose dlog values disagree."""


# ---------------------------------------------------------------- parsing

class ExprSyntaxError(CharpError):
    """Syntax error in an input expression, with offset and expectation."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class SortError(CharpError):
    """Expression combines scalars and forms in an unsupported way."""


class UnknownVariable(CharpError):
    """Variable or form atom outside the ambient variable count."""
