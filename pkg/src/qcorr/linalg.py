"""Dense complex linear algebra over small tensor-product Hilbert spaces.

States are 1-d complex numpy arrays, operators and density matrices square
2-d complex arrays. All dimensions in this project stay at or below ~256,
so dense direct methods suffice everywhere. Composite indices follow the
left-to-right ket convention: the first tensor factor occupies the most
significant digit.

All functions are pure; nothing here holds mutable state.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable

import numpy as np

from .errors import DimensionMismatchError, NotHermitianError

HERMITICITY_TOL = 1e-10
PSD_TOL = 1e-9

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
# Columns are the +1 and -1 eigenvectors of sigma_y; maps the z pattern
# onto y-basis measurements the same way HADAMARD does for x.
Y_EIGENBASIS = np.array([[-1j, 1j], [1, 1]], dtype=complex) / np.sqrt(2)

PAULI_BY_LETTER = {
    "I": IDENTITY_2,
    "X": PAULI_X,
    "Y": PAULI_Y,
    "Z": PAULI_Z,
}


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor as the most significant index."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_chain(factors: Iterable[np.ndarray]) -> np.ndarray:
    """Left-to-right Kronecker product of a sequence of matrices (or vectors)."""
    mats = [np.asarray(f, dtype=complex) for f in factors]
    if not mats:
        raise ValueError("kron_chain needs at least one factor")
    return reduce(np.kron, mats)


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m, dtype=complex).conj().T


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation of m from its own conjugate transpose."""
    m = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(m - m.conj().T)))


def assert_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitianError(f"Hermiticity defect {defect:.3e} exceeds tolerance {tol:.1e}")
    return m


def hermitian_eigenvalues(m: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted ascending."""
    m = assert_hermitian(m, tol)
    return np.linalg.eigvalsh(m)


def hermitian_eigensystem(
    m: np.ndarray, tol: float = HERMITICITY_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix.

    The spectral reconstruction V diag(w) V^dagger is checked against the
    input to within 1e-9 entrywise.
    """
    m = assert_hermitian(m, tol)
    vals, vecs = np.linalg.eigh(m)
    residual = np.max(np.abs(m - (vecs * vals) @ vecs.conj().T))
    if residual > 1e-9:
        raise ArithmeticError(f"eigendecomposition residual {residual:.3e} exceeds 1e-9")
    return vals, vecs


def is_psd(m: np.ndarray, tol: float = PSD_TOL) -> bool:
    """True iff the smallest eigenvalue of Hermitian m is at least -tol."""
    return bool(hermitian_eigenvalues(m)[0] >= -tol)


def projector(state: np.ndarray) -> np.ndarray:
    """Rank-1 projector |psi><psi| of a state vector."""
    vec = np.asarray(state, dtype=complex).reshape(-1)
    return np.outer(vec, vec.conj())


def expectation(op: np.ndarray, state: np.ndarray) -> float:
    """<psi|op|psi> for a vector, Tr[op rho] for a density matrix.

    The operator must be Hermitian and match the state dimension; any
    imaginary residual above 1e-10 is treated as an internal error.
    """
    op = assert_hermitian(op)
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        if state.shape[0] != op.shape[0]:
            raise DimensionMismatchError(
                f"operator dim {op.shape[0]} != state dim {state.shape[0]}"
            )
        value = complex(state.conj() @ op @ state)
    elif state.ndim == 2:
        if state.shape != op.shape:
            raise DimensionMismatchError(
                f"operator shape {op.shape} != density-matrix shape {state.shape}"
            )
        value = complex(np.trace(op @ state))
    else:
        raise DimensionMismatchError(f"state must be 1-d or 2-d, got ndim={state.ndim}")
    if abs(value.imag) > 1e-10:
        raise ArithmeticError(f"expectation has imaginary residual {value.imag:.3e}")
    return value.real


def check_state_vector(vec: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Validate unit norm and finiteness of a pure-state vector."""
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    if not np.all(np.isfinite(vec.view(float))):
        raise ValueError("state vector has non-finite entries")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state norm {norm} deviates from 1 by more than {tol:.1e}")
    return vec


def check_density_matrix(
    rho: np.ndarray,
    hermiticity_tol: float = 1e-12,
    trace_tol: float = 1e-12,
    eig_tol: float = 1e-10,
) -> np.ndarray:
    """Validate Hermiticity, unit trace, and positivity of a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    defect = hermiticity_defect(rho)
    if defect > hermiticity_tol:
        raise NotHermitianError(f"density matrix Hermiticity defect {defect:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace {tr} is not 1")
    min_eig = float(np.linalg.eigvalsh(rho)[0])
    if min_eig < -eig_tol:
        raise ValueError(f"density matrix has negative eigenvalue {min_eig:.3e}")
    return rho


def maximally_mixed(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim
