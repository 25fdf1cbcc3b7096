"""Exception hierarchy.

Everything derived from ComputationError maps to CLI exit code 2; SpecFileError
maps to exit code 1.  A verification mismatch is not an exception (exit 3 is
decided from the Report verdict).
"""


class QmcodesError(Exception):
    pass


class SpecFileError(QmcodesError):
    """Malformed or inconsistent code-spec file."""


class ComputationError(QmcodesError):
    """Base for errors raised while computing (CLI exit 2)."""


class NonPrimeNorm(ComputationError):
    """Modulus whose norm is not an odd prime."""


class PartitionFailure(ComputationError):
    """Unit orbits fail to partition the nonzero residues into 8-element sets."""


class InvalidParams(ComputationError):
    """Bad field construction parameters."""


class MixedOrder(ComputationError):
    """Arithmetic between cyclotomic integers with different root orders."""


class NotRational(ComputationError):
    """A cyclotomic value expected to be a rational integer is not.

    Carries the offending coefficient vector for diagnostics.
    """

    def __init__(self, message, coeffs=None):
        super().__init__(message)
        self.coeffs = tuple(coeffs) if coeffs is not None else None


class NoIndependentUnit(ComputationError):
    """No unit image generates the residue ring together with 1."""


class UnknownResidue(ComputationError):
    """A vector coordinate is not a canonical residue of the ring."""


class InexactDivision(ComputationError):
    """An enumerator coefficient is not divisible by the required cardinality."""


class NegativeCoefficient(ComputationError):
    """A transformed enumerator has a negative coefficient."""


class IntractableSize(ComputationError):
    """Brute-force search space exceeds the configured budget."""


class EmptyCode(ComputationError):
    """Minimum distance is undefined for the zero code."""
