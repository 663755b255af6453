"""Quantum-correlation criteria, entanglement witnesses, and a qudit Bell expression.

The package builds correlator operators for several entangled target states
(multi-qubit GHZ, the four-qubit singlet, a three-ququart GHZ state, and
maximally entangled qudit pairs), assembles detection witnesses from them,
certifies the witnesses against projector-based constructions, and checks
every quantity against independent brute-force oracles: exhaustive
deterministic local models, probability-level sums, and dense operator
algebra.
"""

from . import bell, claims, correlators, linalg, states, witnesses
from .claims import RunConfig, run_claims
from .errors import (
    BadPartitionError,
    BadPivotError,
    DimensionMismatchError,
    NoThresholdError,
    NotHermitianError,
    OutOfRangeError,
    TooFewSitesError,
    TooManyObservablesError,
    UnknownWitnessError,
)

__all__ = [
    "bell",
    "claims",
    "correlators",
    "linalg",
    "states",
    "witnesses",
    "RunConfig",
    "run_claims",
    "BadPartitionError",
    "BadPivotError",
    "DimensionMismatchError",
    "NoThresholdError",
    "NotHermitianError",
    "OutOfRangeError",
    "TooFewSitesError",
    "TooManyObservablesError",
    "UnknownWitnessError",
]

__version__ = "0.1.0"
