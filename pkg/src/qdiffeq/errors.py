"""Exception hierarchy shared by all qdiffeq modules.

Every error raised by the library derives from QDiffError so that callers
(and the CLI exit-code mapper) can distinguish library failures from bugs.
"""


class QDiffError(Exception):
    """Base class for all qdiffeq errors."""


class ZeroScalar(QDiffError):
    """An operation required a nonzero scalar."""


class ZeroDivisor(QDiffError):
    """Division by a (truncated) zero series or scalar."""


class ZeroOperator(QDiffError):
    """An operation required a nonzero skew operator."""


class PrecisionExhausted(QDiffError):
    """The tracked precision is insufficient to certify the result."""


class NonMonic(QDiffError):
    """A monic operator was required."""


class SingularConstantTerm(QDiffError):
    """The constant term of an operator must be invertible."""


class SingularGauge(QDiffError):
    """A gauge matrix is not invertible at the working precision."""


class NotRegularSingular(QDiffError):
    """The module is not pure of slope zero."""


class EigenvalueNotInField(QDiffError):
    """An eigenvalue does not lie in any reachable coefficient field."""


class ResonanceUnresolved(QDiffError):
    """Shearing failed to normalize eigenvalue valuations in the step bound."""


class UnsupportedShape(QDiffError):
    """The input falls outside the implemented shapes (documented non-goals)."""


class NonIntegralDimension(QDiffError):
    """A moduli dimension formula returned a non-integer."""


class WindowTooSmall(QDiffError):
    """A window-stability check failed; enlarge the window."""


class DomainViolation(QDiffError):
    """An argument violates a stated domain condition."""


class ParseError(QDiffError):
    """Syntax error in the expression grammar, with input position."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None
                         else f"{message} (at position {position})")
        self.position = position
