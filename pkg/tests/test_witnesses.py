"""Witness-lab checks: assembly, thresholds, projector validation, gamma search."""

import numpy as np
import pytest

from qcorr import bell, linalg, states, witnesses
from qcorr.errors import (
    BadPartitionError,
    DimensionMismatchError,
    NoThresholdError,
    OutOfRangeError,
    UnknownWitnessError,
)


def random_local_unitary(rng: np.random.Generator, dims: tuple[int, ...]) -> np.ndarray:
    blocks = []
    for d in dims:
        m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        q, _ = np.linalg.qr(m)
        blocks.append(q)
    return linalg.kron_chain(blocks)


class TestAssembly:
    def test_target_expectations(self):
        expected = {
            "W_GHZ": 11.0,
            "W_2II": 8.0,
            "W_6II": 24.0,
            "W_8II": 32.0,
            "W_PSI4": 44.0,
            "W_GHZ4X3": 54.0,
        }
        for name, value in expected.items():
            w = witnesses.assemble(name)
            q = linalg.expectation(w.correlator_sum, witnesses.target_state(name))
            assert abs(q - value) <= 1e-8, name

    def test_bell_witness_matches_analytic_value(self):
        w = witnesses.assemble("W_PSI_D4")
        q = linalg.expectation(w.correlator_sum, witnesses.target_state("W_PSI_D4"))
        assert abs(q - bell.bell_value_analytic(4)) <= 1e-9

    def test_correlator_sums_traceless(self):
        for name in witnesses.WITNESS_NAMES:
            w = witnesses.assemble(name)
            assert abs(np.trace(w.correlator_sum)) <= 1e-9, name

    def test_unknown_name(self):
        with pytest.raises(UnknownWitnessError):
            witnesses.assemble("W_NOPE")

    def test_w2ii_needs_distinct_words(self):
        with pytest.raises(OutOfRangeError):
            witnesses.assemble("W_2II", word_pair=(3, 3))


class TestWitnessValue:
    def test_on_pure_target(self):
        w = witnesses.assemble("W_GHZ")
        assert abs(witnesses.witness_value(w, states.ghz_qubits(4)) + 4.0) <= 1e-10

    def test_on_maximally_mixed(self):
        w = witnesses.assemble("W_GHZ")
        assert abs(witnesses.witness_value(w, linalg.maximally_mixed(16)) - 7.0) <= 1e-12

    def test_ghz4x3_value(self):
        w = witnesses.assemble("W_GHZ4X3")
        assert abs(witnesses.witness_value(w, states.ghz_4x3()) + 19.87) <= 1e-9

    def test_dimension_mismatch(self):
        w = witnesses.assemble("W_GHZ")
        with pytest.raises(DimensionMismatchError):
            witnesses.witness_value(w, states.ghz_4x3())


class TestNoiseThreshold:
    def test_ghz_threshold_is_4_11(self):
        report = witnesses.noise_threshold(
            witnesses.assemble("W_GHZ"), states.ghz_qubits(4)
        )
        assert abs(report.p_star - 4 / 11) <= 1e-9
        assert abs(report.p_star_scan - report.p_star) <= 2e-6
        assert report.match is True

    def test_singlet_threshold_is_15_88(self):
        report = witnesses.noise_threshold(
            witnesses.assemble("W_PSI4"), states.four_qubit_singlet()
        )
        assert abs(report.p_star - 15 / 88) <= 1e-6
        assert report.match is True

    def test_ghz4x3_threshold(self):
        report = witnesses.noise_threshold(witnesses.assemble("W_GHZ4X3"), states.ghz_4x3())
        assert abs(report.p_star - 0.368) <= 5e-4
        assert report.match is True

    def test_bell_witness_threshold(self):
        report = witnesses.noise_threshold(
            witnesses.assemble("W_PSI_D4"), states.max_entangled(4)
        )
        assert abs(report.p_star - 0.2881) <= 5e-4
        assert report.match is True

    def test_dichotomic_witnesses_report_both_thresholds(self):
        ghz = states.ghz_qubits(4)
        r6 = witnesses.noise_threshold(witnesses.assemble("W_6II"), ghz)
        assert abs(r6.p_star - 0.8125) <= 1e-12
        assert r6.lhv_bound == 16.0
        assert abs(r6.lhv_violation_threshold - 1 / 3) <= 1e-12
        assert r6.match is True

        r8 = witnesses.noise_threshold(witnesses.assemble("W_8II"), ghz)
        assert abs(r8.p_star - 0.875) <= 1e-12
        assert abs(r8.lhv_violation_threshold - 0.5) <= 1e-12
        assert r8.match is True

    def test_no_threshold_when_never_negative(self):
        w = witnesses.assemble("W_GHZ")
        inflated = witnesses.Witness(
            name="inflated",
            tau=100.0,
            correlator_sum=w.correlator_sum,
            dim=w.dim,
            partition_dims=w.partition_dims,
        )
        with pytest.raises(NoThresholdError):
            witnesses.noise_threshold(inflated, states.ghz_qubits(4))

    @pytest.mark.parametrize("name", witnesses.WITNESS_NAMES)
    def test_value_affine_in_noise(self, name):
        w = witnesses.assemble(name)
        target = witnesses.target_state(name)
        value0 = witnesses.witness_value(w, states.white_noise_mix(target, 0.0))
        for p in (0.0, 0.3, 0.7, 1.0):
            rho = states.white_noise_mix(target, p)
            expected = p * w.tau + (1 - p) * value0
            assert abs(witnesses.witness_value(w, rho) - expected) <= 1e-10


class TestProjectorWitness:
    def test_ghz_alpha_half(self):
        pw = witnesses.projector_witness(states.ghz_qubits(4), (2, 2, 2, 2))
        assert abs(pw.alpha - 0.5) <= 1e-12

    def test_ghz4x3_alpha_quarter(self):
        pw = witnesses.projector_witness(states.ghz_4x3(), (4, 4, 4))
        assert abs(pw.alpha - 0.25) <= 1e-12

    def test_bell_pair_alpha_half(self):
        pw = witnesses.projector_witness(states.ghz_qubits(2), (2, 2))
        assert abs(pw.alpha - 0.5) <= 1e-12

    def test_singlet_alpha_three_quarters(self):
        # the dominant cut pairs qubits (1,4) against (2,3)
        pw = witnesses.projector_witness(states.four_qubit_singlet(), (2, 2, 2, 2))
        assert abs(pw.alpha - 0.75) <= 1e-12

    def test_alpha_matches_reduced_density_oracle(self):
        # independent route: largest eigenvalue of each reduced density matrix
        rng = np.random.default_rng(5)
        vec = rng.normal(size=16) + 1j * rng.normal(size=16)
        vec /= np.linalg.norm(vec)
        dims = (2, 2, 2, 2)
        best = 0.0
        tensor = vec.reshape(dims)
        import itertools as it

        for r in range(1, 4):
            for rest in it.combinations(range(1, 4), r - 1):
                left = (0,) + rest
                right = tuple(i for i in range(4) if i not in left)
                mat = np.moveaxis(tensor, left + right, range(4)).reshape(
                    2 ** len(left), 2 ** len(right)
                )
                rho = mat @ mat.conj().T
                best = max(best, float(np.linalg.eigvalsh(rho)[-1]))
        assert abs(witnesses.schmidt_alpha(vec, dims) - best) <= 1e-12

    def test_alpha_local_unitary_invariant(self):
        rng = np.random.default_rng(17)
        psi = states.four_qubit_singlet()
        base = witnesses.schmidt_alpha(psi, (2, 2, 2, 2))
        for _ in range(20):
            u = random_local_unitary(rng, (2, 2, 2, 2))
            rotated = u @ psi
            assert abs(witnesses.schmidt_alpha(rotated, (2, 2, 2, 2)) - base) <= 1e-9

    def test_bad_partition(self):
        with pytest.raises(BadPartitionError):
            witnesses.projector_witness(states.ghz_qubits(4), (2, 2, 3))


class TestValidate:
    def test_ghz_at_gamma_eight(self):
        w = witnesses.assemble("W_GHZ")
        pw = witnesses.projector_witness(states.ghz_qubits(4), (2, 2, 2, 2))
        assert witnesses.validate(w, pw, 8.0)
        margin = np.linalg.eigvalsh(w.operator() - 8.0 * pw.operator())[0]
        assert margin >= -1e-9

    def test_every_word_index_validates(self):
        pw = witnesses.projector_witness(states.ghz_qubits(4), (2, 2, 2, 2))
        for k in range(1, 9):
            assert witnesses.validate(witnesses.assemble("W_GHZ", word_index=k), pw, 8.0)

    def test_gamma_zero_reduces_to_psd(self):
        for name in witnesses.WITNESS_NAMES:
            w = witnesses.assemble(name)
            pw = witnesses.projector_witness(
                witnesses.target_state(name), w.partition_dims
            )
            assert witnesses.validate(w, pw, 0.0) == linalg.is_psd(w.operator())
            assert witnesses.validate(w, pw, 0.0) is False

    def test_singlet_at_gamma_thirty(self):
        w = witnesses.assemble("W_PSI4")
        pw = witnesses.projector_witness(states.four_qubit_singlet(), (2, 2, 2, 2))
        assert witnesses.validate(w, pw, 30.0)

    def test_dimension_mismatch(self):
        w = witnesses.assemble("W_GHZ")
        pw = witnesses.projector_witness(states.ghz_4x3(), (4, 4, 4))
        with pytest.raises(DimensionMismatchError):
            witnesses.validate(w, pw, 1.0)


class TestFindGamma:
    def test_ghz_valid_set_is_the_point_eight(self):
        w = witnesses.assemble("W_GHZ")
        pw = witnesses.projector_witness(states.ghz_qubits(4), (2, 2, 2, 2))
        gamma = witnesses.find_gamma(w, pw)
        assert gamma is not None
        assert abs(gamma - 8.0) <= 1e-5

    def test_singlet_upper_boundary_is_thirty(self):
        w = witnesses.assemble("W_PSI4")
        pw = witnesses.projector_witness(states.four_qubit_singlet(), (2, 2, 2, 2))
        gamma = witnesses.find_gamma(w, pw)
        assert gamma is not None
        assert abs(gamma - 30.0) <= 1e-3

    @pytest.mark.parametrize("tau", [2.0, 4.0, 4.5])
    def test_two_word_witness_has_none(self, tau):
        w = witnesses.assemble("W_2II", tau=tau)
        pw = witnesses.projector_witness(states.ghz_qubits(4), (2, 2, 2, 2))
        assert witnesses.find_gamma(w, pw) is None

    def test_interval_valued_case(self):
        # slack in tau widens the valid set: for tau=9 it is exactly [4, 12]
        base = witnesses.assemble("W_GHZ")
        slack = witnesses.Witness(
            name="slack",
            tau=9.0,
            correlator_sum=base.correlator_sum,
            dim=base.dim,
            partition_dims=base.partition_dims,
        )
        pw = witnesses.projector_witness(states.ghz_qubits(4), (2, 2, 2, 2))
        assert not witnesses.validate(slack, pw, 3.9)
        assert witnesses.validate(slack, pw, 4.0)
        assert witnesses.validate(slack, pw, 12.0)
        assert not witnesses.validate(slack, pw, 12.1)
        gamma = witnesses.find_gamma(slack, pw)
        assert abs(gamma - 12.0) <= 1e-5

    def test_valid_gammas_form_contiguous_grid_block(self):
        # PSD margin is concave in gamma, so grid validity cannot have holes
        base = witnesses.assemble("W_GHZ")
        slack = witnesses.Witness(
            name="slack",
            tau=9.0,
            correlator_sum=base.correlator_sum,
            dim=base.dim,
            partition_dims=base.partition_dims,
        )
        pw = witnesses.projector_witness(states.ghz_qubits(4), (2, 2, 2, 2))
        grid = np.logspace(-3, 3, 120)
        flags = [witnesses.validate(slack, pw, g) for g in grid]
        first = flags.index(True)
        last = len(flags) - 1 - flags[::-1].index(True)
        assert all(flags[first : last + 1])
