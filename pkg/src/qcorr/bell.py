"""Bipartite qudit Bell expression: quantum value, classical bound, noise limit.

Two parties each choose between two phase-shifted Fourier measurement bases
on the maximally entangled two-qudit state. Four correlator families, each a
difference of two joint probabilities per outcome shift m, add up to a Bell
quantity whose deterministic local-model maximum is 2 while the quantum
value exceeds 2 for every d and grows towards (16/(3 pi))^2.

The module keeps three independent evaluation routes on purpose: finite
probability sums, the cosecant closed form, and dense projector operators.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg, states
from .errors import OutOfRangeError, TooManyObservablesError

# Phase offsets n_k^(j): party k measuring with setting j shifts the
# Fourier basis by OFFSETS[k][j].
OFFSETS = {
    1: {1: 0.0, 2: 0.5},
    2: {1: 0.25, 2: -0.25},
}

SETTING_PAIRS = ((1, 1), (1, 2), (2, 1), (2, 2))

LHV_ENUMERATION_CAP = 24
OPERATOR_DIM_CAP = 32


@dataclass(frozen=True)
class BellScenario:
    """Local dimension plus the four measurement phase offsets."""

    d: int
    offsets: tuple[tuple[float, float], tuple[float, float]] = (
        (OFFSETS[1][1], OFFSETS[1][2]),
        (OFFSETS[2][1], OFFSETS[2][2]),
    )

    def __post_init__(self) -> None:
        if self.d < 2:
            raise OutOfRangeError(f"local dimension d={self.d} must be >= 2")

    def offset(self, party: int, setting: int) -> float:
        return self.offsets[party - 1][setting - 1]


@dataclass(frozen=True)
class BellExpression:
    """Signed joint-probability terms (setting1, setting2, outcome1, outcome2, sign)."""

    d: int
    terms: tuple[tuple[int, int, int, int, int], ...]

    def terms_per_setting_pair(self) -> dict[tuple[int, int], int]:
        counts: dict[tuple[int, int], int] = {pair: 0 for pair in SETTING_PAIRS}
        for j1, j2, _a, _b, _sign in self.terms:
            counts[(j1, j2)] += 1
        return counts


@dataclass(frozen=True)
class BipartiteAssignment:
    """Deterministic outcome table: outcomes[party-1][setting-1] in 0..d-1."""

    outcomes: tuple[tuple[int, int], tuple[int, int]]

    def outcome(self, party: int, setting: int) -> int:
        return self.outcomes[party - 1][setting - 1]


def _check_d(d: int) -> None:
    if d < 2:
        raise OutOfRangeError(f"local dimension d={d} must be >= 2")


def joint_probability(d: int, j1: int, j2: int, a: int, b: int) -> float:
    """P(a, b) for settings (j1, j2) on the maximally entangled state.

    Evaluated as the finite sum |sum_m e^{-i 2 pi m (a + b + n1 + n2)/d}|^2 / d^3,
    deliberately without the cosecant simplification so that it can serve as
    an independent check of the closed form.
    """
    _check_d(d)
    if j1 not in (1, 2) or j2 not in (1, 2):
        raise OutOfRangeError(f"settings ({j1}, {j2}) must be in {{1, 2}}")
    if not (0 <= a < d and 0 <= b < d):
        raise OutOfRangeError(f"outcomes ({a}, {b}) outside 0..{d - 1}")
    theta = a + b + OFFSETS[1][j1] + OFFSETS[2][j2]
    amp = np.exp(-2j * np.pi * np.arange(d) * theta / d).sum()
    return float(abs(amp) ** 2) / d**3


def correlator_terms(d: int, pair: tuple[int, int], m: int) -> tuple[
    tuple[int, int, int, int, int], tuple[int, int, int, int, int]
]:
    """The signed probability terms of one correlator, as printed residues.

    pair (1,2): +P(a = -m, b = m) - P(a = 1-m, b = m)
    pair (2,1): +P(a = d-m-1, b = m) - P(a = -m, b = m)
    pair (q,q): +P(a = -m, b = m) - P(a = d-m-1, b = m)
    with every outcome reduced mod d into 0..d-1.
    """
    _check_d(d)
    if m not in range(d):
        raise OutOfRangeError(f"shift m={m} outside 0..{d - 1}")
    j1, j2 = pair
    if pair == (1, 2):
        plus, minus = (-m) % d, (1 - m) % d
    elif pair == (2, 1):
        plus, minus = (d - m - 1) % d, (-m) % d
    elif pair in ((1, 1), (2, 2)):
        plus, minus = (-m) % d, (d - m - 1) % d
    else:
        raise OutOfRangeError(f"unknown setting pair {pair}")
    return (j1, j2, plus, m, 1), (j1, j2, minus, m, -1)


def correlator_value(d: int, pair: tuple[int, int], m: int) -> float:
    """One correlator evaluated from joint probabilities."""
    total = 0.0
    for j1, j2, a, b, sign in correlator_terms(d, pair, m):
        total += sign * joint_probability(d, j1, j2, a, b)
    return total


def correlator_closed_form(d: int) -> float:
    """Pure-state value of every single correlator: (csc^2(pi/4d) - csc^2(3pi/4d))/(2d^3)."""
    _check_d(d)
    csc = lambda x: 1.0 / math.sin(x)
    return (csc(math.pi / (4 * d)) ** 2 - csc(3 * math.pi / (4 * d)) ** 2) / (2 * d**3)


def bell_expression(d: int) -> BellExpression:
    """All 8d signed probability terms of the Bell quantity."""
    terms: list[tuple[int, int, int, int, int]] = []
    for pair in SETTING_PAIRS:
        for m in range(d):
            terms.extend(correlator_terms(d, pair, m))
    return BellExpression(d=d, terms=tuple(terms))


def bell_value_quantum(d: int) -> float:
    """Bell quantity from summed joint probabilities (no closed form)."""
    expr = bell_expression(d)
    return sum(
        sign * joint_probability(d, j1, j2, a, b) for j1, j2, a, b, sign in expr.terms
    )


def bell_value_analytic(d: int) -> float:
    """Closed-form Bell quantity 2(csc^2(pi/4d) - csc^2(3pi/4d))/d^2."""
    _check_d(d)
    csc = lambda x: 1.0 / math.sin(x)
    return 2 * (csc(math.pi / (4 * d)) ** 2 - csc(3 * math.pi / (4 * d)) ** 2) / d**2


def bell_limit_constant() -> float:
    """Large-d limit (16/(3 pi))^2 of the Bell quantity."""
    return (16 / (3 * math.pi)) ** 2


def lhv_value(d: int, assignment: BipartiteAssignment) -> int:
    """Deterministic Bell value of one assignment, via the eight delta terms.

    Exact integer arithmetic; every residue is reduced with
    ((x % d) + d) % d semantics (Python's % already does this).
    """
    _check_d(d)
    v11 = assignment.outcome(1, 1)
    v21 = assignment.outcome(2, 1)
    v12 = assignment.outcome(1, 2)
    v22 = assignment.outcome(2, 2)
    value = 0
    value += 1 if (v11 + v21) % d == 0 else 0
    value -= 1 if (-(v11 + v21)) % d == 1 else 0
    value += 1 if (v11 + v22) % d == 0 else 0
    value -= 1 if (v11 + v22) % d == 1 else 0
    value += 1 if (v12 + v22) % d == 0 else 0
    value -= 1 if (-(v12 + v22)) % d == 1 else 0
    value += 1 if (-(v12 + v21)) % d == 1 else 0
    value -= 1 if (v12 + v21) % d == 0 else 0
    return value


def lhv_value_from_expression(d: int, assignment: BipartiteAssignment) -> int:
    """Same deterministic value, evaluated term by term on the full expression.

    Serves as the independent oracle for `lhv_value`: a joint probability
    collapses to 1 exactly when both fixed outcomes match the term.
    """
    expr = bell_expression(d)
    total = 0
    for j1, j2, a, b, sign in expr.terms:
        hit = assignment.outcome(1, j1) == a and assignment.outcome(2, j2) == b
        total += sign if hit else 0
    return total


def lhv_max_bipartite(d: int) -> tuple[int, BipartiteAssignment]:
    """Exhaustive maximum of the deterministic Bell value over all d^4 assignments."""
    _check_d(d)
    if d > LHV_ENUMERATION_CAP:
        raise OutOfRangeError(
            f"d={d} exceeds the d^4 enumeration cap {LHV_ENUMERATION_CAP}"
        )
    v11, v21, v12, v22 = np.indices((d, d, d, d), dtype=np.int64)
    value = (
        ((v11 + v21) % d == 0).astype(np.int64)
        - ((-(v11 + v21)) % d == 1).astype(np.int64)
        + ((v11 + v22) % d == 0).astype(np.int64)
        - ((v11 + v22) % d == 1).astype(np.int64)
        + ((v12 + v22) % d == 0).astype(np.int64)
        - ((-(v12 + v22)) % d == 1).astype(np.int64)
        + ((-(v12 + v21)) % d == 1).astype(np.int64)
        - ((v12 + v21) % d == 0).astype(np.int64)
    )
    flat = int(np.argmax(value))
    best = np.unravel_index(flat, value.shape)
    assignment = BipartiteAssignment(
        outcomes=((int(best[0]), int(best[2])), (int(best[1]), int(best[3])))
    )
    return int(value[best]), assignment


def lhv_max_dichotomic(words: list[tuple[float, str]]) -> float:
    """Exhaustive maximum of a signed Pauli-word sum over +-1 assignments.

    Each party may use at most two distinct non-identity observables across
    the words; all 2^(2N) deterministic assignments are enumerated.
    """
    if not words:
        raise ValueError("need at least one signed word")
    n = len(words[0][1])
    if any(len(w) != n for _c, w in words):
        raise ValueError("all words must have the same number of parties")
    if n > 10:
        raise OutOfRangeError(f"party count {n} exceeds the enumeration cap 10")

    observables: list[list[str]] = [[] for _ in range(n)]
    for _coeff, word in words:
        for i, letter in enumerate(word):
            if letter == "I":
                continue
            if letter not in observables[i]:
                observables[i].append(letter)
            if len(observables[i]) > 2:
                raise TooManyObservablesError(
                    f"party {i + 1} uses more than two observables"
                )

    assignments = np.arange(2 ** (2 * n), dtype=np.int64)
    total = np.zeros(assignments.shape, dtype=float)
    for coeff, word in words:
        product = np.ones(assignments.shape, dtype=np.int64)
        for i, letter in enumerate(word):
            if letter == "I":
                continue
            slot = 2 * i + observables[i].index(letter)
            product = product * (1 - 2 * ((assignments >> slot) & 1))
        total += coeff * product
    return float(total.max())


def mixed_bell_value(d: int, p: float) -> float:
    """Bell quantity after white-noise mixing, from mixed joint probabilities.

    Every probability becomes p/d^2 + (1-p) P(a, b); the uniform part cancels
    inside each correlator difference, so this must equal (1-p) times the
    pure value. Kept as an explicit probability-level computation so the
    cancellation is verified rather than assumed.
    """
    if not 0.0 <= p <= 1.0:
        raise OutOfRangeError(f"noise fraction p={p} outside [0, 1]")
    expr = bell_expression(d)
    return sum(
        sign * (p / d**2 + (1 - p) * joint_probability(d, j1, j2, a, b))
        for j1, j2, a, b, sign in expr.terms
    )


def bell_noise_threshold(d: int) -> float:
    """Largest white-noise fraction keeping the Bell value above the bound 2."""
    return 1.0 - 2.0 / bell_value_analytic(d)


def bell_operator(d: int) -> np.ndarray:
    """Dense Hermitian Bell operator: signed sum of outcome-projector products."""
    _check_d(d)
    if d > OPERATOR_DIM_CAP:
        raise OutOfRangeError(f"d={d} exceeds the dense operator cap {OPERATOR_DIM_CAP}")
    bases = {
        (party, setting): states.fourier_basis(d, OFFSETS[party][setting])
        for party in (1, 2)
        for setting in (1, 2)
    }
    op = np.zeros((d * d, d * d), dtype=complex)
    for j1, j2, a, b, sign in bell_expression(d).terms:
        proj1 = linalg.projector(bases[(1, j1)].column(a))
        proj2 = linalg.projector(bases[(2, j2)].column(b))
        op += sign * linalg.kron(proj1, proj2)
    return op


def bell_correlator_set(d: int):
    """Export all 4d correlator operators (one per setting pair and shift)."""
    from .correlators import FAMILY_BELL_QUDIT, CorrelatorSet

    _check_d(d)
    if d > OPERATOR_DIM_CAP:
        raise OutOfRangeError(f"d={d} exceeds the dense operator cap {OPERATOR_DIM_CAP}")
    bases = {
        (party, setting): states.fourier_basis(d, OFFSETS[party][setting])
        for party in (1, 2)
        for setting in (1, 2)
    }
    ops = []
    meta = []
    for pair in SETTING_PAIRS:
        for m in range(d):
            op = np.zeros((d * d, d * d), dtype=complex)
            for j1, j2, a, b, sign in correlator_terms(d, pair, m):
                op += sign * linalg.kron(
                    linalg.projector(bases[(1, j1)].column(a)),
                    linalg.projector(bases[(2, j2)].column(b)),
                )
            ops.append(op)
            meta.append({"settings": list(pair), "shift": m, "d": d})
    return CorrelatorSet(FAMILY_BELL_QUDIT, tuple(ops), tuple(meta))


def mermin_combination(n: int) -> tuple[tuple[int, str], ...]:
    """Signed n-party Pauli words of the real part of prod_k (X_k + i Y_k).

    Words carry an even number of Y letters with sign (-1)^(#Y/2); for n=4
    and an overall factor 4 this is exactly the Mermin-type operator used by
    the eight-word witness.
    """
    if not 2 <= n <= 10:
        raise OutOfRangeError(f"party count n={n} outside 2..10")
    words = []
    for y_count in range(0, n + 1, 2):
        sign = (-1) ** (y_count // 2)
        for positions in itertools.combinations(range(n), y_count):
            letters = ["X"] * n
            for pos in positions:
                letters[pos] = "Y"
            words.append((sign, "".join(letters)))
    return tuple(words)


def scan_record(d: int) -> dict:
    """One machine-readable scan entry for dimension d."""
    record = {
        "d": d,
        "C_d_numeric": bell_value_quantum(d),
        "C_d_analytic": bell_value_analytic(d),
        "noise_threshold": bell_noise_threshold(d),
    }
    if d <= LHV_ENUMERATION_CAP:
        record["lhv_max"] = lhv_max_bipartite(d)[0]
    else:
        record["lhv_max"] = None
    return record
