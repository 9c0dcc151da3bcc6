"""Exception hierarchy for the package.

Everything the library raises on purpose derives from :class:`QHError`,
so callers can catch broadly.  The CLI maps input problems to exit code 1
and negative mathematical verdicts to exit code 2.
"""


class QHError(Exception):
    """Base class for all library errors."""


class ShapeError(QHError):
    """Operands have incompatible or unsupported dimensions."""


class SymmetryViolation(QHError):
    """Complex matrix is not in the image of the adjoint embedding."""


class FrameError(QHError):
    """Imaginary units fail to form an orthonormal frame."""


class NotHermitian(QHError):
    """Matrix is not Hermitian within tolerance."""


class NoConvergence(QHError):
    """Eigenvalue sweeps did not reach the off-diagonal threshold."""


class NotPSD(QHError):
    """Matrix has an eigenvalue below the PSD tolerance."""


class BlockNotPSD(QHError):
    """A required block matrix is not positive semidefinite."""


class SupportExceeded(QHError):
    """Requested index lies outside the stored support of a sequence."""


class NotPD(QHError):
    """Sequence fails the positivity precondition."""


class CompletionFailure(QHError):
    """A positive completion step broke down numerically."""


class NotQPositive(QHError):
    """Measure fails the q-positivity conditions.

    The offending checks are attached as ``violations`` when available.
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class SupportOverlap(QHError):
    """Atom supports of a signed measure pair intersect."""


class NotJUnitary(QHError):
    """Matrix does not preserve the indefinite inner product."""


class NotCoisometry(QHError):
    """Matrix fails the coisometry identity V V* = I."""


class DegenerateSeed(QHError):
    """Random construction kept producing singular intermediates."""


class SpanDeficient(QHError):
    """Observability span does not fill the state space."""


class NoUnitaryAlignment(QHError):
    """No J-unitary intertwiner exists within tolerance."""


class OutOfDomain(QHError):
    """Evaluation point lies outside the certified convergence region."""


class InputError(QHError):
    """Malformed file or value handed to the command-line layer."""
