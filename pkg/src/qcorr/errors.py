"""Exception types shared across the package."""


class NotHermitianError(ValueError):
    """Matrix violates the Hermiticity tolerance required by an operation."""


class DimensionMismatchError(ValueError):
    """Operator and state (or two operators) have incompatible dimensions."""


class OutOfRangeError(ValueError):
    """An index, dimension, or parameter lies outside its supported range."""


class NoThresholdError(ValueError):
    """Witness value never changes sign on the noise interval [0, 1]."""


class BadPartitionError(ValueError):
    """Local-dimension list does not factor the total Hilbert-space dimension."""


class BadPivotError(ValueError):
    """Pivot site of a stabilizer word is out of range or an identity site."""


class TooFewSitesError(ValueError):
    """Stabilizer word has fewer than two non-identity sites."""


class TooManyObservablesError(ValueError):
    """A party uses more than two distinct observables in a dichotomic Bell sum."""


class UnknownWitnessError(KeyError):
    """Witness name is not in the registry."""
