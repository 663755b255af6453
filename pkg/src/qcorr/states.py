"""Factories for the named entangled states, measurement bases, and noise mixing.

Composite basis indices put party 1 in the most significant digit, so for
qubits |0110> sits at index 6 and for three ququarts |klr> sits at
16k + 4l + r. Every state returned here is phase-normalized so that its
first nonzero amplitude is real and positive, which makes equality tests
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import OutOfRangeError


@dataclass(frozen=True)
class MeasurementBasis:
    """Orthonormal single-party basis; column l of `matrix` is the l-th outcome state."""

    dim: int
    matrix: np.ndarray
    label: str

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.dim, self.dim):
            raise OutOfRangeError(f"basis matrix shape {m.shape} != ({self.dim}, {self.dim})")
        defect = np.max(np.abs(m.conj().T @ m - np.eye(self.dim)))
        if defect > 1e-12:
            raise ValueError(f"basis is not unitary: defect {defect:.3e}")
        object.__setattr__(self, "matrix", m)

    def column(self, l: int) -> np.ndarray:
        return self.matrix[:, l]


@dataclass(frozen=True)
class NoiseModel:
    """White-noise fraction p of a depolarized mixture p*I/D + (1-p)|psi><psi|."""

    p: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise OutOfRangeError(f"noise fraction p={self.p} outside [0, 1]")


def _normalize_phase(vec: np.ndarray) -> np.ndarray:
    vec = np.asarray(vec, dtype=complex)
    nonzero = np.flatnonzero(np.abs(vec) > 1e-14)
    if nonzero.size:
        phase = vec[nonzero[0]] / abs(vec[nonzero[0]])
        vec = vec / phase
    return vec


def ghz_qubits(n: int) -> np.ndarray:
    """n-qubit GHZ state (|0...0> + |1...1>)/sqrt(2)."""
    if not 2 <= n <= 12:
        raise OutOfRangeError(f"GHZ qubit count n={n} outside 2..12")
    vec = np.zeros(2**n, dtype=complex)
    vec[0] = vec[-1] = 1 / np.sqrt(2)
    return vec


def four_qubit_singlet() -> np.ndarray:
    """Four-qubit singlet: (|0011> + |1100> - (|0110>+|1001>+|0101>+|1010>)/2)/sqrt(3).

    Superposition of two maximally entangled qubit pairs and a four-qubit
    GHZ component; invariant under identical local rotations on all four
    qubits.
    """
    vec = np.zeros(16, dtype=complex)
    vec[0b0011] = vec[0b1100] = 1 / np.sqrt(3)
    for idx in (0b0110, 0b1001, 0b0101, 0b1010):
        vec[idx] = -1 / (2 * np.sqrt(3))
    return vec


def ghz_4x3() -> np.ndarray:
    """Three-ququart GHZ state (1/2) sum_l |lll> on a 4x4x4 space."""
    vec = np.zeros(64, dtype=complex)
    for l in range(4):
        vec[l * 16 + l * 4 + l] = 0.5
    return vec


def max_entangled(d: int) -> np.ndarray:
    """Maximally entangled two-qudit state (1/sqrt(d)) sum_n |nn>."""
    if not 2 <= d <= 2048:
        raise OutOfRangeError(f"local dimension d={d} outside 2..2048")
    vec = np.zeros(d * d, dtype=complex)
    vec[np.arange(d) * (d + 1)] = 1 / np.sqrt(d)
    return vec


def linear_cluster(n: int) -> np.ndarray:
    """Linear cluster state: |+>^n entangled by controlled-phase on each edge.

    The result is the unique joint +1 eigenstate of the stabilizer
    generators Z_{i-1} X_i Z_{i+1} (boundary terms truncated).
    """
    if not 2 <= n <= 10:
        raise OutOfRangeError(f"cluster length n={n} outside 2..10")
    dim = 2**n
    indices = np.arange(dim)
    amplitudes = np.full(dim, 1 / np.sqrt(dim))
    for i in range(n - 1):
        # qubit i (0-based from the left) lives at bit position n-1-i
        bit_a = (indices >> (n - 1 - i)) & 1
        bit_b = (indices >> (n - 2 - i)) & 1
        amplitudes = amplitudes * np.where(bit_a & bit_b, -1.0, 1.0)
    return _normalize_phase(amplitudes.astype(complex))


def fourier_basis(d: int, offset: float) -> MeasurementBasis:
    """Phase-shifted Fourier basis: column l has entries e^{i 2 pi m (l+offset)/d}/sqrt(d).

    offset=0 at d=2 gives the Hadamard basis. The sign of the phase is part
    of the contract; do not fold this into `fourier_gate`.
    """
    if d < 2:
        raise OutOfRangeError(f"basis dimension d={d} must be >= 2")
    m = np.arange(d).reshape(-1, 1)
    l = np.arange(d).reshape(1, -1)
    matrix = np.exp(2j * np.pi * m * (l + offset) / d) / np.sqrt(d)
    return MeasurementBasis(dim=d, matrix=matrix, label=f"fourier[{offset:+g}]")


def fourier_gate(d: int) -> np.ndarray:
    """Plain Fourier gate with entries e^{i 2 pi h g / d}/sqrt(d).

    Kept separate from `fourier_basis` on purpose: the two constructions
    carry independent sign conventions and sign errors are the dominant bug
    class in this domain.
    """
    if d < 2:
        raise OutOfRangeError(f"gate dimension d={d} must be >= 2")
    h = np.arange(d).reshape(-1, 1)
    g = np.arange(d).reshape(1, -1)
    return np.exp(2j * np.pi * h * g / d) / np.sqrt(d)


def pauli_eigenbasis(letter: str) -> MeasurementBasis:
    """Qubit basis whose columns are the +1 and -1 eigenvectors of a Pauli letter."""
    matrices = {
        "Z": np.eye(2, dtype=complex),
        "X": linalg.HADAMARD,
        "Y": linalg.Y_EIGENBASIS,
    }
    if letter not in matrices:
        raise OutOfRangeError(f"unknown Pauli letter {letter!r}")
    return MeasurementBasis(dim=2, matrix=matrices[letter], label=letter.lower())


def white_noise_mix(state: np.ndarray, p: float) -> np.ndarray:
    """Density matrix p*I/D + (1-p)|psi><psi| for white-noise fraction p."""
    NoiseModel(p)
    vec = linalg.check_state_vector(state)
    dim = vec.shape[0]
    rho = p * np.eye(dim, dtype=complex) / dim + (1 - p) * linalg.projector(vec)
    return linalg.check_density_matrix(rho)


def state_to_dict(vec: np.ndarray) -> dict:
    """JSON-ready form {dim, amplitudes: [[re, im], ...]} in composite-index order."""
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    return {
        "dim": int(vec.shape[0]),
        "amplitudes": [[float(a.real), float(a.imag)] for a in vec],
    }


def basis_to_dict(basis: MeasurementBasis) -> dict:
    return {
        "dim": basis.dim,
        "label": basis.label,
        "columns": [state_to_dict(basis.column(l))["amplitudes"] for l in range(basis.dim)],
    }
