"""Correlator operator families and the product-positivity criterion.

Each family pairs a "0-type" operator with a "1-type" operator; a strictly
positive product of their expectation values certifies correlation between
the labelled subsystem and the rest. All operators built here are Hermitian
and traceless, which is asserted at construction.

Qubit parties are numbered 1..4 left to right (party 1 most significant);
the three-ququart family uses parties 1..3 on a 4x4x4 space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import linalg, states
from .errors import (
    BadPivotError,
    OutOfRangeError,
    TooFewSitesError,
)

FAMILY_GHZ_SINGLE = "ghz_single"
FAMILY_GHZ_PAIR = "ghz_pair"
FAMILY_GHZ_X_PARITY = "ghz_x_parity"
FAMILY_MERMIN = "mermin_words"
FAMILY_STABILIZER = "stabilizer"
FAMILY_SINGLET = "singlet4"
FAMILY_GHZ4X3_Z = "ghz4x3_z"
FAMILY_GHZ4X3_F = "ghz4x3_f"
FAMILY_BELL_QUDIT = "bell_qudit"

QC_EPSILON = 1e-12


@dataclass(frozen=True)
class CorrelatorSet:
    """A labelled list of correlator operators plus per-operator metadata."""

    family: str
    operators: tuple[np.ndarray, ...]
    metadata: tuple[dict, ...]

    def __post_init__(self) -> None:
        if len(self.operators) != len(self.metadata):
            raise ValueError("one metadata entry required per operator")
        for op in self.operators:
            defect = linalg.hermiticity_defect(op)
            if defect > 1e-12:
                raise ValueError(f"correlator is not Hermitian: defect {defect:.3e}")
            tr = abs(complex(np.trace(op)))
            if tr > 1e-9:
                raise ValueError(f"correlator is not traceless: |trace| = {tr:.3e}")

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "metadata": list(self.metadata),
            "operators": [
                [[[float(z.real), float(z.imag)] for z in row] for row in op]
                for op in self.operators
            ],
        }


@dataclass(frozen=True)
class Derangement4:
    """Fixed-point-free permutation of {0,1,2,3} with its 1-based lexicographic rank."""

    mapping: tuple[int, int, int, int]
    index: int

    def __call__(self, k: int) -> int:
        return self.mapping[k]


def derangements4() -> tuple[Derangement4, ...]:
    """The nine fixed-point-free permutations of {0,1,2,3} in lexicographic order."""
    found = [
        perm
        for perm in itertools.permutations(range(4))
        if all(perm[k] != k for k in range(4))
    ]
    return tuple(Derangement4(mapping=perm, index=i + 1) for i, perm in enumerate(found))


def _diag_op(dim: int, entries: dict[int, float]) -> np.ndarray:
    diag = np.zeros(dim)
    for idx, value in entries.items():
        diag[idx] += value
    return np.diag(diag).astype(complex)


def _bits_to_index(bits: Sequence[int]) -> int:
    idx = 0
    for b in bits:
        idx = (idx << 1) | b
    return idx


def ghz_single_party_correlators(n: int) -> CorrelatorSet:
    """Party-versus-rest correlators for the four-qubit GHZ state in the z basis.

    The 0-type operator is (|0><0| - |1><1|) on party n with |0><0| on the
    other three parties; the 1-type flips every role.
    """
    if n not in (1, 2, 3, 4):
        raise OutOfRangeError(f"party index n={n} outside 1..4")
    ops = []
    meta = []
    for v in (0, 1):
        entries: dict[int, float] = {}
        base = [v] * 4
        flipped = list(base)
        flipped[n - 1] ^= 1
        entries[_bits_to_index(base)] = 1.0
        entries[_bits_to_index(flipped)] = -1.0
        ops.append(_diag_op(16, entries))
        meta.append({"type": v, "party": n, "basis": "z"})
    return CorrelatorSet(FAMILY_GHZ_SINGLE, tuple(ops), tuple(meta))


def ghz_pair_correlators(n: int, m: int) -> CorrelatorSet:
    """Group-versus-rest correlators: parties {n, m} against the other two."""
    if n not in (1, 2, 3, 4) or m not in (1, 2, 3, 4):
        raise OutOfRangeError(f"party indices ({n}, {m}) outside 1..4")
    if n == m:
        raise OutOfRangeError("pair correlator needs two distinct parties")
    ops = []
    meta = []
    for v in (0, 1):
        base = [v] * 4
        flipped = list(base)
        flipped[n - 1] ^= 1
        flipped[m - 1] ^= 1
        entries = {_bits_to_index(base): 1.0, _bits_to_index(flipped): -1.0}
        ops.append(_diag_op(16, entries))
        meta.append({"type": v, "parties": (n, m), "basis": "z"})
    return CorrelatorSet(FAMILY_GHZ_PAIR, tuple(ops), tuple(meta))


def ghz_combined_z_correlator() -> np.ndarray:
    """Combined z-basis correlator 8(|0000><0000| + |1111><1111|) - 1.

    Also rebuilt as the sum of the four single-party and three pair
    correlator sets; the two constructions must agree entrywise to 1e-12.
    """
    closed = _diag_op(16, {0: 8.0, 15: 8.0}) - np.eye(16, dtype=complex)
    total = np.zeros((16, 16), dtype=complex)
    for n in (1, 2, 3, 4):
        for op in ghz_single_party_correlators(n).operators:
            total += op
    for m in (2, 3, 4):
        for op in ghz_pair_correlators(1, m).operators:
            total += op
    deviation = float(np.max(np.abs(total - closed)))
    if deviation > 1e-12:
        raise ArithmeticError(
            f"correlator-sum reconstruction deviates from closed form by {deviation:.3e}"
        )
    return closed


def mermin_words() -> tuple[tuple[int, str], ...]:
    """Signed four-qubit Pauli words whose sum is the Mermin-type Bell operator.

    Entry k-1 carries the k-th word: 4 XXXX, 4 YYYY, then the six XXYY
    placements with coefficient -4, ordered by the lexicographic rank of the
    Y-position pair: (3,4), (2,4), (2,3), (1,4), (1,3), (1,2).
    """
    words: list[tuple[int, str]] = [(4, "XXXX"), (4, "YYYY")]
    for positions in ((3, 4), (2, 4), (2, 3), (1, 4), (1, 3), (1, 2)):
        letters = ["X"] * 4
        for pos in positions:
            letters[pos - 1] = "Y"
        words.append((-4, "".join(letters)))
    return tuple(words)


def pauli_word_operator(word: str) -> np.ndarray:
    """Tensor product of single-qubit Pauli letters, e.g. 'IZXZ...'."""
    unknown = set(word) - set(linalg.PAULI_BY_LETTER)
    if unknown:
        raise OutOfRangeError(f"unknown Pauli letters {sorted(unknown)} in word {word!r}")
    return linalg.kron_chain(linalg.PAULI_BY_LETTER[c] for c in word)


def ghz_mermin_correlator(k: int) -> np.ndarray:
    """The k-th signed Pauli-word correlator (k=1..8) of the Mermin-type sum."""
    if k not in range(1, 9):
        raise OutOfRangeError(f"word index k={k} outside 1..8")
    coeff, word = mermin_words()[k - 1]
    return coeff * pauli_word_operator(word)


def ghz_x_parity_correlators(k: int) -> CorrelatorSet:
    """Party-versus-rest parity criteria read in the x eigenbasis.

    Returned in the computational pattern: the 0-type operator weights the
    pivot party (|0><0| - |1><1|) against the four even-parity projectors on
    the remaining three parties, the 1-type uses the odd-parity projectors
    with the pivot flipped. Conjugating the m-summed pattern by H^x4 and
    summing over k yields 4 XXXX.
    """
    if k not in (1, 2, 3, 4):
        raise OutOfRangeError(f"party index k={k} outside 1..4")
    ops = []
    meta = []
    others = [q for q in (1, 2, 3, 4) if q != k]
    for v in (0, 1):
        entries: dict[int, float] = {}
        for triple in itertools.product((0, 1), repeat=3):
            if sum(triple) % 2 != v:
                continue
            bits = [0] * 4
            for party, bit in zip(others, triple):
                bits[party - 1] = bit
            bits[k - 1] = v
            entries[_bits_to_index(bits)] = 1.0
            bits[k - 1] = v ^ 1
            entries[_bits_to_index(bits)] = -1.0
        ops.append(_diag_op(16, entries))
        meta.append({"type": v, "party": k, "basis": "x"})
    return CorrelatorSet(FAMILY_GHZ_X_PARITY, tuple(ops), tuple(meta))


def x_parity_reconstruction() -> np.ndarray:
    """H^x4-conjugated sum of all x-parity criteria; equals 4 XXXX entrywise."""
    h4 = linalg.kron_chain([linalg.HADAMARD] * 4)
    total = np.zeros((16, 16), dtype=complex)
    for k in (1, 2, 3, 4):
        for op in ghz_x_parity_correlators(k).operators:
            total += h4 @ op @ h4
    return total


def stabilizer_correlator_pair(word: str, pivot: int) -> CorrelatorSet:
    """Split a stabilizer word into a pivot-versus-parity correlator pair.

    Working in the local eigenbases of the word's letters (outcome 0 is the
    +1 eigenvector), the 0-type operator combines the pivot difference
    (|0><0| - |1><1|) with the even-parity projector sum over the other
    non-identity sites; the 1-type takes the flipped pivot with the
    odd-parity sum. Identity sites are untouched, and the two operators add
    up to the original word, which is asserted entrywise.
    """
    n = len(word)
    unknown = set(word) - set(linalg.PAULI_BY_LETTER)
    if unknown:
        raise OutOfRangeError(f"unknown Pauli letters {sorted(unknown)} in word {word!r}")
    sites = [i for i, c in enumerate(word) if c != "I"]
    if len(sites) < 2:
        raise TooFewSitesError(f"word {word!r} has fewer than 2 non-identity sites")
    if not 1 <= pivot <= n or word[pivot - 1] == "I":
        raise BadPivotError(f"pivot {pivot} is not a non-identity site of {word!r}")

    local_proj = {}
    for i in sites:
        basis = states.pauli_eigenbasis(word[i])
        local_proj[i] = (
            linalg.projector(basis.column(0)),
            linalg.projector(basis.column(1)),
        )
    spectators = [i for i in sites if i != pivot - 1]

    dim = 2**n
    ops = []
    meta = []
    for v in (0, 1):
        total = np.zeros((dim, dim), dtype=complex)
        for pattern in itertools.product((0, 1), repeat=len(spectators)):
            if sum(pattern) % 2 != v:
                continue
            factors = []
            for i in range(n):
                if i == pivot - 1:
                    p0, p1 = local_proj[i]
                    factors.append(p0 - p1 if v == 0 else p1 - p0)
                elif i in spectators:
                    factors.append(local_proj[i][pattern[spectators.index(i)]])
                else:
                    factors.append(linalg.IDENTITY_2)
            total += linalg.kron_chain(factors)
        ops.append(total)
        meta.append({"type": v, "word": word, "pivot": pivot})

    deviation = float(np.max(np.abs(ops[0] + ops[1] - pauli_word_operator(word))))
    if deviation > 1e-12:
        raise ArithmeticError(
            f"correlator pair does not reassemble the word {word!r}: deviation {deviation:.3e}"
        )
    return CorrelatorSet(FAMILY_STABILIZER, tuple(ops), tuple(meta))


def _singlet_pattern_operators() -> tuple[tuple[np.ndarray, dict], ...]:
    """The sixteen z-pattern operators of the four-qubit-singlet criteria."""
    result: list[tuple[np.ndarray, dict]] = []

    def flip(bits: Sequence[int], party: int) -> list[int]:
        out = list(bits)
        out[party - 1] ^= 1
        return out

    # Single-party type: reference patterns 0011 (type 0) and 1100 (type 1),
    # each minus its copy with party m flipped.
    for v, base in ((0, [0, 0, 1, 1]), (1, [1, 1, 0, 0])):
        for m in (1, 2, 3, 4):
            entries = {
                _bits_to_index(base): 1.0,
                _bits_to_index(flip(base, m)): -1.0,
            }
            result.append((_diag_op(16, entries), {"kind": "single", "type": v, "party": m}))

    # Pair type: parties (a, b) = (2n+1, 2n+2) carry the flipped difference,
    # the other two parties (mod-4 wrapped for n=1) carry the symmetric
    # 01 + 10 projector sum.
    for n in (0, 1):
        a, b = 2 * n + 1, 2 * n + 2
        c = (2 * n + 3 - 1) % 4 + 1
        e = (2 * n + 4 - 1) % 4 + 1
        for v in (0, 1):
            pair_bits = (v, v ^ 1)
            for k in (a, b):
                entries: dict[int, float] = {}
                for spect in ((0, 1), (1, 0)):
                    bits = [0] * 4
                    bits[a - 1], bits[b - 1] = pair_bits
                    bits[c - 1], bits[e - 1] = spect
                    entries[_bits_to_index(bits)] = entries.get(_bits_to_index(bits), 0.0) + 1.0
                    flipped = flip(bits, k)
                    entries[_bits_to_index(flipped)] = (
                        entries.get(_bits_to_index(flipped), 0.0) - 1.0
                    )
                result.append(
                    (
                        _diag_op(16, entries),
                        {"kind": "pair", "type": v, "group": n, "party": k},
                    )
                )
    return tuple(result)


SINGLET_BASIS_ROTATIONS = {
    "z": np.eye(2, dtype=complex),
    "x": linalg.HADAMARD,
    "y": linalg.Y_EIGENBASIS,
}


def singlet_correlators(basis: str) -> CorrelatorSet:
    """Sixteen correlators of the four-qubit singlet for one measurement basis.

    The z-pattern operators are conjugated once by U^x4 where U maps the
    computational basis onto the requested Pauli eigenbasis (U_z = 1).
    """
    if basis not in SINGLET_BASIS_ROTATIONS:
        raise OutOfRangeError(f"basis {basis!r} not one of x, y, z")
    u = SINGLET_BASIS_ROTATIONS[basis]
    u4 = linalg.kron_chain([u] * 4)
    u4_dag = u4.conj().T
    ops = []
    meta = []
    for pattern, info in _singlet_pattern_operators():
        ops.append(u4 @ pattern @ u4_dag)
        meta.append({**info, "basis": basis})
    return CorrelatorSet(FAMILY_SINGLET, tuple(ops), tuple(meta))


def _ghz4x3_index(digits: Sequence[int]) -> int:
    return digits[0] * 16 + digits[1] * 4 + digits[2]


def ghz4x3_correlator(basis: str, m: int, n: int) -> np.ndarray:
    """Party-versus-rest correlator for the three-ququart GHZ state.

    basis "z": sum_k (|k><k| - |s(k)><s(k)|)_m |k><k|_p |k><k|_q with s the
    n-th lexicographic derangement of {0,1,2,3}. basis "f": the analogous
    construction on the Fourier side, where the spectator projector pairs
    run over all (l, r) with (k+l+r) mod 4 = 0 and the whole operator is
    conjugated into the Fourier basis.
    """
    if basis not in ("z", "f"):
        raise OutOfRangeError(f"basis {basis!r} not one of z, f")
    if m not in (1, 2, 3):
        raise OutOfRangeError(f"party index m={m} outside 1..3")
    if n not in range(1, 10):
        raise OutOfRangeError(f"derangement index n={n} outside 1..9")
    s = derangements4()[n - 1]
    others = [q for q in (1, 2, 3) if q != m]

    diag: dict[int, float] = {}
    for k in range(4):
        if basis == "z":
            spectator_pairs = [(k, k)]
        else:
            spectator_pairs = [
                (l, r) for l in range(4) for r in range(4) if (k + l + r) % 4 == 0
            ]
        for l, r in spectator_pairs:
            digits = [0, 0, 0]
            digits[others[0] - 1] = l
            digits[others[1] - 1] = r
            digits[m - 1] = k
            diag[_ghz4x3_index(digits)] = diag.get(_ghz4x3_index(digits), 0.0) + 1.0
            digits[m - 1] = s(k)
            diag[_ghz4x3_index(digits)] = diag.get(_ghz4x3_index(digits), 0.0) - 1.0
    op = _diag_op(64, diag)
    if basis == "z":
        return op
    f3 = linalg.kron_chain([states.fourier_gate(4)] * 3)
    return f3.conj().T @ op @ f3


def ghz4x3_correlator_set(basis: str) -> CorrelatorSet:
    """All 27 ququart correlators (3 parties x 9 derangements) for one basis."""
    ops = []
    meta = []
    for m in (1, 2, 3):
        for n in range(1, 10):
            ops.append(ghz4x3_correlator(basis, m, n))
            meta.append({"party": m, "derangement": n, "basis": basis})
    family = FAMILY_GHZ4X3_Z if basis == "z" else FAMILY_GHZ4X3_F
    return CorrelatorSet(family, tuple(ops), tuple(meta))


def qc_criterion(pairs: Iterable[tuple[float, float]], eps: float = QC_EPSILON) -> bool:
    """Product-positivity test: every (c0, c1) pair must satisfy c0*c1 > eps."""
    checked = False
    for c0, c1 in pairs:
        if not (np.isfinite(c0) and np.isfinite(c1)):
            raise ValueError("correlator expectations must be finite")
        checked = True
        if not c0 * c1 > eps:
            return False
    if not checked:
        raise ValueError("qc_criterion needs at least one correlator pair")
    return True
