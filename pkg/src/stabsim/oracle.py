"""Dense state-vector reference simulator for differential testing.

Amplitudes are indexed with qubit 0 as the most significant bit, matching
the base-4 word digit order, so probabilities and expectations from the two
pipelines compare without any index permutation.  This simulator is the
ground truth at small n; it makes no attempt to compete on speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import Instruction
from .errors import ConsistencyError, ResourceLimitError
from .measure import density_expansion, expectation, prob_z
from .stabilizer import GeneratorSet, index_dtype

SV_MAX_QUBITS = 14

_SQ2 = 1.0 / math.sqrt(2.0)
_PAULI_MATS = (
    np.eye(2, dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


def gate_matrix(gate: str, theta: float = 0.0) -> np.ndarray:
    """Unitary of one gate; rotations use R_a(theta) = exp(-i*theta*a/2)."""
    if gate == "H":
        return np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=np.complex128)
    if gate == "S":
        return np.array([[1, 0], [0, 1j]], dtype=np.complex128)
    if gate == "X":
        return _PAULI_MATS[1].copy()
    if gate == "SX":
        return 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=np.complex128)
    if gate in ("RX", "RY", "RZ"):
        axis = _PAULI_MATS["IXYZ".index(gate[1])]
        return math.cos(theta / 2) * np.eye(2) - 1j * math.sin(theta / 2) * axis
    if gate == "CX":
        return np.array(
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
            dtype=np.complex128,
        )
    raise ValueError(f"unknown gate {gate!r}")


def _apply_1q(psi: np.ndarray, mat: np.ndarray, q: int, n: int) -> np.ndarray:
    t = np.moveaxis(psi.reshape((2,) * n), q, 0)
    t = np.tensordot(mat, t, axes=([1], [0]))
    return np.moveaxis(t, 0, q).reshape(-1)

def _apply_2q(psi: np.ndarray, mat: np.ndarray, a: int, b: int, n: int) -> np.ndarray:
    t = np.moveaxis(psi.reshape((2,) * n), (a, b), (0, 1))
    t = np.tensordot(mat.reshape(2, 2, 2, 2), t, axes=([2, 3], [0, 1]))
    return np.moveaxis(t, (0, 1), (a, b)).reshape(-1)


def sv_run(
    instructions: Sequence[Instruction], n: int, max_qubits: int = SV_MAX_QUBITS
) -> np.ndarray:
    """Run a circuit on |0...0> and return the 2^n amplitudes."""
    if n > max_qubits:
        raise ResourceLimitError(f"state vector capped at {max_qubits} qubits, got {n}")
    psi = np.zeros(2**n, dtype=np.complex128)
    psi[0] = 1.0
    for inst in instructions:
        if any(w >= n for w in inst.wires):
            raise ValueError(f"wire out of range for n={n}: {inst}")
        mat = gate_matrix(inst.gate, inst.theta)
        if inst.is_two_qubit:
            psi = _apply_2q(psi, mat, inst.wires[0], inst.wires[1], n)
        else:
            psi = _apply_1q(psi, mat, inst.wires[0], n)
        norm = float(np.linalg.norm(psi))
        if abs(norm - 1.0) > 1e-12:
            raise ConsistencyError(f"state norm drifted to {norm} after {inst}")
    return psi


def sv_prob_z(psi: np.ndarray, k: int) -> float:
    """Probability of outcome 0 when measuring qubit k."""
    n = int(round(math.log2(len(psi))))
    if not 0 <= k < n:
        raise ValueError(f"qubit {k} out of range for n={n}")
    probs = np.abs(np.moveaxis(psi.reshape((2,) * n), k, 0).reshape(2, -1)) ** 2
    return float(probs[0].sum())


def sv_expectation(psi: np.ndarray, word: int) -> float:
    """<psi| P |psi> for a Pauli word given as a base-4 index."""
    n = int(round(math.log2(len(psi))))
    if not 0 <= word < 4**n:
        raise ValueError(f"word index {word} out of range [0, 4**{n})")
    phi = psi
    for j in range(n):
        d = (word >> (2 * (n - 1 - j))) & 3
        if d:
            phi = _apply_1q(phi, _PAULI_MATS[d], j, n)
    val = complex(np.vdot(psi, phi))
    if abs(val.imag) > 1e-10:
        raise ConsistencyError(f"expectation of word {word} came out complex: {val}")
    return val.real


@dataclass
class CompareReport:
    """Worst-case deviations between the stabilizer pipeline and the oracle."""

    max_prob_deviation: float
    max_expectation_deviation: float


def compare(
    gs: GeneratorSet,
    psi: np.ndarray,
    words: Sequence[int] | None = None,
    seed: int = 0,
    sample_words: int = 16,
) -> CompareReport:
    """Diagnostic comparison; reports deviations, never raises on mismatch."""
    n = gs.n
    expansion = density_expansion(gs)
    prob_dev = 0.0
    for k in range(n):
        p0, _ = prob_z(gs, k, expansion)
        prob_dev = max(prob_dev, abs(p0 - sv_prob_z(psi, k)))
    if words is None:
        rng = np.random.default_rng(seed)
        sampled = rng.integers(0, 4**n, size=sample_words) if index_dtype(n) is not object else []
        words = [3 * 4 ** (n - 1 - k) for k in range(n)] + [int(w) for w in sampled]
    exp_dev = 0.0
    for w in words:
        exp_dev = max(exp_dev, abs(expectation(gs, w, expansion) - sv_expectation(psi, w)))
    return CompareReport(prob_dev, exp_dev)
