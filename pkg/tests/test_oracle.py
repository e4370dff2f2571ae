"""Tests for the dense state-vector oracle."""

import math

import numpy as np
import pytest

import dense_ref
from stabsim import circuit as c
from stabsim.circuit import gen_ghz, gen_random
from stabsim.engine import run
from stabsim.errors import ResourceLimitError
from stabsim.oracle import (
    CompareReport,
    compare,
    gate_matrix,
    sv_expectation,
    sv_prob_z,
    sv_run,
)
from stabsim.stabilizer import init_z


class TestGateMatrices:
    def test_all_gates_match_reference(self):
        rng = np.random.default_rng(1)
        for gate in ("H", "S", "X", "SX", "CX"):
            assert np.allclose(gate_matrix(gate), dense_ref.gate_unitary(gate))
        for gate in ("RX", "RY", "RZ"):
            for theta in rng.uniform(0, 2 * math.pi, size=8):
                assert np.allclose(gate_matrix(gate, theta), dense_ref.gate_unitary(gate, theta))

    def test_all_unitary(self):
        for gate in ("H", "S", "X", "SX", "RX", "RY", "RZ", "CX"):
            m = gate_matrix(gate, 0.7)
            assert np.allclose(m @ m.conj().T, np.eye(m.shape[0]), atol=1e-14)

    def test_unknown(self):
        with pytest.raises(ValueError):
            gate_matrix("T")


class TestSvRun:
    def test_empty_circuit(self):
        psi = sv_run([], 2)
        assert np.allclose(psi, [1, 0, 0, 0])

    def test_hadamard(self):
        psi = sv_run([c.h(0)], 1)
        assert np.allclose(psi, [1 / math.sqrt(2), 1 / math.sqrt(2)])

    def test_ghz3(self):
        psi = sv_run(gen_ghz(3), 3)
        assert psi[0] == pytest.approx(1 / math.sqrt(2))
        assert psi[7] == pytest.approx(1 / math.sqrt(2))
        assert np.allclose(psi[1:7], 0)

    def test_qubit0_most_significant(self):
        # X on qubit 0 must flip the high-order bit.
        psi = sv_run([c.x(0)], 2)
        assert np.allclose(psi, [0, 0, 1, 0])
        psi = sv_run([c.x(1)], 2)
        assert np.allclose(psi, [0, 1, 0, 0])

    def test_norm_preserved_random(self):
        rng = np.random.default_rng(10)
        for _ in range(10):
            n = int(rng.integers(1, 6))
            psi = sv_run(gen_random(n, 40, rng), n)
            assert abs(np.linalg.norm(psi) - 1.0) < 1e-12

    def test_self_inverses(self):
        rng = np.random.default_rng(20)
        n = 3
        prefix = gen_random(n, 10, rng)
        base = sv_run(prefix, n)
        assert np.allclose(sv_run(prefix + [c.cx(0, 2), c.cx(0, 2)], n), base, atol=1e-12)
        assert np.allclose(sv_run(prefix + [c.h(1)] * 2, n), base, atol=1e-12)
        assert np.allclose(sv_run(prefix + [c.s(2)] * 4, n), base, atol=1e-12)

    def test_matches_reference_unitary(self):
        rng = np.random.default_rng(30)
        for _ in range(8):
            n = int(rng.integers(1, 4))
            insts = gen_random(n, 12, rng)
            psi = sv_run(insts, n)
            u = dense_ref.circuit_unitary(insts, n)
            expected = u[:, 0]
            assert np.allclose(psi, expected, atol=1e-12)

    def test_qubit_cap(self):
        with pytest.raises(ResourceLimitError):
            sv_run([], 15)
        sv_run([], 15, max_qubits=15)  # explicit override works

    def test_wire_range(self):
        with pytest.raises(ValueError):
            sv_run([c.h(3)], 2)


class TestMeasurements:
    def test_prob_ground(self):
        psi = sv_run([], 3)
        assert all(sv_prob_z(psi, k) == 1.0 for k in range(3))

    def test_expectation_plus_state(self):
        psi = sv_run([c.h(0)], 1)
        assert sv_expectation(psi, 1) == pytest.approx(1.0)

    def test_rx_closed_form(self):
        for theta in (0.4, 2.2, 4.0):
            psi = sv_run([c.rx(0, theta)], 1)
            assert sv_expectation(psi, 3) == pytest.approx(math.cos(theta), abs=1e-12)
            assert sv_prob_z(psi, 0) == pytest.approx((1 + math.cos(theta)) / 2, abs=1e-12)

    def test_word_range(self):
        psi = sv_run([], 2)
        with pytest.raises(ValueError):
            sv_expectation(psi, 16)
        with pytest.raises(ValueError):
            sv_prob_z(psi, 2)


class TestCompare:
    def test_init_vs_empty_run(self):
        report = compare(init_z(3), sv_run([], 3))
        assert report.max_prob_deviation == 0.0
        assert report.max_expectation_deviation == 0.0

    def test_same_circuit_agrees(self):
        rng = np.random.default_rng(40)
        for _ in range(5):
            n = int(rng.integers(2, 6))
            insts = gen_random(n, 30, rng)
            final = run(insts, n, "v3").final
            report = compare(final, sv_run(insts, n))
            assert isinstance(report, CompareReport)
            assert report.max_prob_deviation < 1e-9
            assert report.max_expectation_deviation < 1e-9

    def test_mismatch_reported_not_raised(self):
        final = run([c.x(0)], 2, "v1").final
        report = compare(final, sv_run([], 2))
        assert report.max_prob_deviation == pytest.approx(1.0)
