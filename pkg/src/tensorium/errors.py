"""Exception types shared across the package.

Every precondition violation raises one of these, so callers (and the CLI)
can map failures to machine-readable diagnostics without string matching.
"""

from __future__ import annotations


class TensoriumError(Exception):
    """Base class for all input and precondition errors."""


class DenominatorDivisibleByP(TensoriumError):
    """A rational entry cannot be reduced mod p because p divides its denominator."""


class DimensionMismatch(TensoriumError):
    pass


class IndexOutOfRange(TensoriumError):
    pass


class InvalidPartition(TensoriumError):
    pass


class NonCubicalTensor(TensoriumError):
    pass


class NotSymmetric(TensoriumError):
    pass


class NotBinary(TensoriumError):
    """Operation requires a tensor with every mode of size 2."""


class ParameterShapeMismatch(TensoriumError):
    pass


class GeneratorNotRankOne(TensoriumError):
    pass


class GeneratorNotSymmetric(TensoriumError):
    pass


class SpanFailure(TensoriumError):
    """A required element is not in the span; names the first uncovered one."""


class InconsistentInputs(TensoriumError):
    pass


class LambdasNotDistinct(TensoriumError):
    pass


class SumMismatch(TensoriumError):
    pass


class DegreeMismatch(TensoriumError):
    pass


class OddDegree(TensoriumError):
    pass


class NTooSmall(TensoriumError):
    pass


class BadLength(TensoriumError):
    pass


class PatternViolated(TensoriumError):
    """An index pattern that must hit a zero coordinate failed to, for some generator.

    Raised only for internal consistency violations; certificate ops report
    pattern failures in the certificate verdict instead of raising.
    """


class CoefficientIdentityFails(TensoriumError):
    """A coefficient-level identity check failed; see PatternViolated for usage."""
