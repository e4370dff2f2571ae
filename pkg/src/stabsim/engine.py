"""Simulation engine: runs a circuit in one of three modes.

* v1 -- sequential baseline: every gate is applied directly to the simple
  forms, splitting a term in two whenever a rotation mixes axes.
* v2 -- operator pipeline over the dense complex-form layout.
* v3 -- operator pipeline over the ragged complex-form layout.

The operator pipeline partitions the circuit once, builds the per-operator
lookup tensor, and then walks the alternating operator chain: a single-qubit
operator is one substitute-and-flatten per generator (regardless of how many
gates it groups), a two-qubit operator is one table lookup per CX.  The chain
itself is inherently sequential (each operator consumes the previous output);
parallelism lives inside the array operations.

Results are deterministic: identical inputs and mode produce identical
canonical generator sets.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from . import lut as _lut
from .circuit import Instruction, divide_instruction
from .errors import NumericalCollapseError
from .stabilizer import (
    DEFAULT_EPS,
    GeneratorSet,
    SimpleGenerator,
    apply_cx,
    canonicalize,
    flatten,
    index_dtype,
    init_z,
    rank_stats,
    sub,
)


class Mode(Enum):
    V1 = "v1"
    V2 = "v2"
    V3 = "v3"

    @classmethod
    def coerce(cls, value) -> "Mode":
        if isinstance(value, Mode):
            return value
        return cls(str(value).lower())


@dataclass
class RunReport:
    """Everything a run produced: final state, rank trace, timings, counters."""

    mode: Mode
    n: int
    final: GeneratorSet
    rank_trace: list[list[int]]
    timings: dict[str, float]
    counters: dict[str, int]
    k: int
    k_prime: int
    order: list[int] = field(default_factory=list)

    @property
    def mean_rank(self) -> float:
        counts, mean = rank_stats(self.final)
        return mean

    @property
    def max_rank(self) -> int:
        return max(max(step) for step in self.rank_trace)


@dataclass
class AgreementReport:
    """Pairwise comparison of the canonical outputs of several runs."""

    index_sets_equal: bool
    max_lambda_deviation: float


def run(instructions: Sequence[Instruction], n: int, mode, eps: float = DEFAULT_EPS) -> RunReport:
    """Simulate a circuit and return its canonical final generator set."""
    mode = Mode.coerce(mode)
    timings = {"partition": 0.0, "lut": 0.0, "sub_flatten": 0.0, "cx": 0.0}
    counters = {"gates": len(instructions), "sub_flatten_ops": 0, "cx_applications": 0}

    t0 = time.perf_counter()
    partition = divide_instruction(instructions, n)
    timings["partition"] = time.perf_counter() - t0

    gens = init_z(n).generators
    trace = [[g.rank for g in gens]]

    if mode is Mode.V1:
        _run_v1(instructions, partition, gens, trace, timings, counters, eps)
    else:
        layout = "dense" if mode is Mode.V2 else "ragged"
        t0 = time.perf_counter()
        lut = _lut.create_lut_1q(partition)
        timings["lut"] = time.perf_counter() - t0
        ui = vi = 0
        for step, bit in enumerate(partition.order):
            if bit == 0:
                t0 = time.perf_counter()
                for gi in range(n):
                    new = flatten(sub(gens[gi], lut[ui], layout), eps)
                    _check_collapse(new, gi, step)
                    gens[gi] = new
                counters["sub_flatten_ops"] += 1
                ui += 1
                timings["sub_flatten"] += time.perf_counter() - t0
            else:
                t0 = time.perf_counter()
                for inst in partition.v_groups[vi]:
                    c, t = inst.wires
                    for gi in range(n):
                        gens[gi] = apply_cx(gens[gi], c, t)
                    counters["cx_applications"] += 1
                for gi in range(n):
                    gens[gi] = canonicalize(gens[gi], eps)
                    _check_collapse(gens[gi], gi, step)
                vi += 1
                timings["cx"] += time.perf_counter() - t0
            trace.append([g.rank for g in gens])

    counters["operators"] = partition.k + partition.k_prime
    return RunReport(
        mode=mode,
        n=n,
        final=GeneratorSet(n, gens),
        rank_trace=trace,
        timings=timings,
        counters=counters,
        k=partition.k,
        k_prime=partition.k_prime,
        order=list(partition.order),
    )


def _check_collapse(g: SimpleGenerator, gi: int, step: int):
    if g.is_degenerate:
        raise NumericalCollapseError(
            f"all terms of generator {gi} dropped at operator step {step}"
        )


def _run_v1(instructions, partition, gens, trace, timings, counters, eps):
    """Gate-by-gate evolution of the simple forms (no grouping, no LUT).

    Rank snapshots are still taken at operator boundaries so traces are
    comparable across modes.
    """
    n = len(gens)
    boundaries = set(np.cumsum(partition.operator_sizes()).tolist())
    for pos, inst in enumerate(instructions, start=1):
        if inst.is_two_qubit:
            t0 = time.perf_counter()
            c, t = inst.wires
            for gi in range(n):
                gens[gi] = canonicalize(apply_cx(gens[gi], c, t), eps)
                _check_collapse(gens[gi], gi, pos - 1)
            counters["cx_applications"] += 1
            timings["cx"] += time.perf_counter() - t0
        else:
            t0 = time.perf_counter()
            for gi in range(n):
                gens[gi] = _apply_1q_terms(gens[gi], inst, eps)
                _check_collapse(gens[gi], gi, pos - 1)
            counters["v1_gate_applications"] = counters.get("v1_gate_applications", 0) + 1
            timings["sub_flatten"] += time.perf_counter() - t0
        if pos in boundaries:
            trace.append([g.rank for g in gens])


def _apply_1q_terms(g: SimpleGenerator, inst: Instruction, eps: float) -> SimpleGenerator:
    """Conjugate every term of a simple form by one single-qubit gate.

    Each non-identity axis maps to at most two axes, so a term splits into at
    most two; the result is canonicalized immediately.
    """
    n, q = g.n, inst.wires[0]
    m = _lut.axis_map(inst.gate, inst.theta)
    # Per input digit d: first branch (axis, weight) and optional second branch.
    a1 = np.zeros(4, dtype=np.int64)
    w1 = np.zeros(4)
    a2 = np.zeros(4, dtype=np.int64)
    w2 = np.zeros(4)
    w1[0] = 1.0
    for d in (1, 2, 3):
        col = m[:, d - 1]
        hot = np.nonzero(col)[0]
        a1[d], w1[d] = hot[0] + 1, col[hot[0]]
        if len(hot) > 1:
            a2[d], w2[d] = hot[1] + 1, col[hot[1]]
    place = 4 ** (n - 1 - q)
    d = ((g.indices // place) % 4).astype(np.int64)
    if index_dtype(n) is object:
        idx1 = g.indices + (a1[d] - d).astype(object) * place
        idx2 = g.indices + (a2[d] - d).astype(object) * place
    else:
        idx1 = g.indices + (a1[d] - d) * place
        idx2 = g.indices + (a2[d] - d) * place
    lam1 = g.lambdas * w1[d]
    second = w2[d] != 0.0
    raw = SimpleGenerator(
        n,
        np.concatenate([lam1, g.lambdas[second] * w2[d][second]]),
        np.concatenate([idx1, idx2[second]]),
    )
    return canonicalize(raw, eps)


def run_all_modes(
    instructions: Sequence[Instruction], n: int, eps: float = DEFAULT_EPS
) -> tuple[dict[Mode, RunReport], AgreementReport]:
    """Run every mode on the same circuit and compare the canonical outputs."""
    reports = {mode: run(instructions, n, mode, eps) for mode in Mode}
    return reports, compare_reports(list(reports.values()))


def compare_reports(reports: Sequence[RunReport]) -> AgreementReport:
    """Pairwise index-set equality and max coefficient deviation."""
    equal = True
    max_dev = 0.0
    for i in range(len(reports)):
        for j in range(i + 1, len(reports)):
            for ga, gb in zip(reports[i].final.generators, reports[j].final.generators):
                if list(ga.indices) != list(gb.indices):
                    equal = False
                    continue
                if ga.rank:
                    max_dev = max(max_dev, float(np.max(np.abs(ga.lambdas - gb.lambdas))))
    if not equal:
        max_dev = float("inf")
    return AgreementReport(index_sets_equal=equal, max_lambda_deviation=max_dev)
