"""Tests for the three-mode engine."""

import math

import numpy as np
import pytest

from stabsim import circuit as c
from stabsim import engine, stabilizer
from stabsim.circuit import gen_ghz, gen_graph, gen_random, gen_xyz_chain, ring_edges
from stabsim.engine import Mode, RunReport, compare_reports, run, run_all_modes
from stabsim.errors import NumericalCollapseError

MODES = ("v1", "v2", "v3")


class TestBasics:
    def test_empty_circuit_keeps_initial_generators(self):
        for mode in MODES:
            report = run([], 3, mode)
            assert report.rank_trace == [[1, 1, 1]]
            for g, expected in zip(report.final.generators, [48, 12, 3]):
                assert list(g.indices) == [expected]
                assert list(g.lambdas) == [1.0]

    def test_mode_coercion(self):
        assert Mode.coerce("V2") is Mode.V2
        assert Mode.coerce(Mode.V1) is Mode.V1
        with pytest.raises(ValueError):
            Mode.coerce("v9")

    def test_single_gate_modes_agree(self):
        reports, agreement = run_all_modes([c.sx(0)], 2)
        assert agreement.index_sets_equal
        assert agreement.max_lambda_deviation == 0.0


class TestWorkedCircuit:
    # SX(0), RZ(pi/3, 0), CX(0,1) on three qubits: generator 0 walks
    # Z -> -Y -> (sqrt3/2)X - (1/2)Y -> the CX image, generator 1 becomes ZZI,
    # generator 2 stays IIZ.
    def circuit(self):
        return [c.sx(0), c.rz(0, math.pi / 3), c.cx(0, 1)]

    @pytest.mark.parametrize("mode", MODES)
    def test_final_generators(self, mode):
        report = run(self.circuit(), 3, mode)
        g0, g1, g2 = report.final.generators
        assert list(g0.indices) == [20, 36]  # XXI, YXI
        assert np.allclose(g0.lambdas, [math.sqrt(3) / 2, -0.5], atol=1e-15)
        assert list(g1.indices) == [60]  # ZZI
        assert np.allclose(g1.lambdas, [1.0])
        assert list(g2.indices) == [3]  # IIZ
        assert np.allclose(g2.lambdas, [1.0])

    def test_modes_agree(self):
        _, agreement = run_all_modes(self.circuit(), 3)
        assert agreement.index_sets_equal
        assert agreement.max_lambda_deviation < 1e-15

    def test_rank_trace_granularity(self):
        report = run(self.circuit(), 3, "v3")
        # One entry per operator plus the initial snapshot: U0 then V0.
        assert report.order == [0, 1]
        assert len(report.rank_trace) == 3
        assert report.rank_trace[0] == [1, 1, 1]
        assert report.rank_trace[1] == [2, 1, 1]
        assert report.rank_trace[2] == [2, 1, 1]


class TestRankClaims:
    @pytest.mark.parametrize("n", [2, 5, 12, 20])
    def test_ghz_rank_stays_one(self, n):
        for mode in MODES:
            report = run(gen_ghz(n), n, mode)
            assert all(r == 1 for step in report.rank_trace for r in step)
            assert len(report.rank_trace) == report.k + report.k_prime + 1

    @pytest.mark.parametrize("n", [3, 6])
    def test_graph_rank_stays_one(self, n):
        report = run(gen_graph(n, ring_edges(n)), n, "v3")
        assert all(r == 1 for step in report.rank_trace for r in step)

    def test_xyz_chain_rank_growth(self):
        insts = gen_xyz_chain(4, layers=4, repeats=2, rng=1)
        report = run(insts, 4, "v3")
        assert report.max_rank > 64
        assert report.max_rank <= 256


class TestCounters:
    def test_operator_granularity(self):
        layers, repeats, n = 3, 5, 4
        insts = gen_xyz_chain(n, layers, repeats, rng=0)
        report = run(insts, n, "v3")
        assert report.counters["gates"] == layers * (3 * n * repeats + n - 1)
        assert report.counters["sub_flatten_ops"] == report.k == layers
        assert report.counters["cx_applications"] == layers * (n - 1)
        assert report.k + report.k_prime == 2 * layers

    def test_cx_skipped_when_absent(self):
        report = run([c.h(0), c.s(0)], 1, "v2")
        assert report.counters["cx_applications"] == 0
        assert report.counters["sub_flatten_ops"] == 1


class TestModeAgreement:
    def test_random_campaign(self):
        rng = np.random.default_rng(100)
        for _ in range(30):
            n = int(rng.integers(2, 6))
            insts = gen_random(n, int(rng.integers(1, 50)), rng)
            _, agreement = run_all_modes(insts, n)
            assert agreement.index_sets_equal
            assert agreement.max_lambda_deviation < 1e-10

    def test_clifford_only_exact(self):
        rng = np.random.default_rng(200)
        for _ in range(15):
            n = int(rng.integers(2, 6))
            insts = gen_random(n, int(rng.integers(1, 60)), rng,
                               gates=("H", "S", "X", "SX", "CX"))
            _, agreement = run_all_modes(insts, n)
            assert agreement.index_sets_equal
            assert agreement.max_lambda_deviation == 0.0

    def test_compare_reports_flags_mismatch(self):
        a = run([c.h(0)], 1, "v1")
        b = run([c.s(0)], 1, "v1")
        agreement = compare_reports([a, b])
        assert not agreement.index_sets_equal
        assert agreement.max_lambda_deviation == float("inf")


class TestDeterminism:
    def test_repeat_runs_identical(self):
        insts = gen_xyz_chain(3, 2, 3, rng=7)
        for mode in MODES:
            a = run(insts, 3, mode)
            b = run(insts, 3, mode)
            for ga, gb in zip(a.final.generators, b.final.generators):
                assert list(ga.indices) == list(gb.indices)
                assert np.array_equal(ga.lambdas, gb.lambdas)


class TestCollapseGuard:
    def test_degenerate_flatten_raises(self, monkeypatch):
        def fake_flatten(cg, eps=0.0, canonical=True):
            return stabilizer.SimpleGenerator(cg.n, [], [])

        monkeypatch.setattr(engine, "flatten", fake_flatten)
        with pytest.raises(NumericalCollapseError, match="generator 0"):
            run([c.h(0)], 2, "v3")

    def test_report_properties(self):
        report = run(gen_ghz(3), 3, "v1")
        assert isinstance(report, RunReport)
        assert report.mean_rank == 1.0
        assert report.max_rank == 1
