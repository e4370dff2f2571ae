"""Density-operator Pauli expansion and single-qubit Z measurement.

For an n-qubit pure state with generator set {P_j}, the density operator is
(1/2^n) * prod_j (I + P_j).  Expanding that product over all generator
subsets gives a sparse map from Pauli words to real coefficients; the
probability of measuring 0 on qubit k is then read off the coefficient of
the word with a single Z at k.

Only the all-identity word has nonzero trace, which is what makes the sparse
coefficient map sufficient for expectations.  The expansion is exact and
exponential in n by construction -- it is the desk-scale verification path,
guarded by a qubit cap and a term budget.
"""

from __future__ import annotations

import numpy as np

from .errors import ConsistencyError, ResourceLimitError
from .pauli import AXIS_PRODUCT, PHASE_EXP, PHASE_VALUES_NP
from .stabilizer import GeneratorSet, indices_to_digits

DENSITY_MAX_QUBITS = 12
DEFAULT_TERM_BUDGET = 2_000_000
_IMAG_TOL = 1e-10


class PauliExpansion:
    """Sparse Pauli-basis expansion of a density operator."""

    def __init__(self, n: int, coeffs: dict[int, float]):
        self.n = n
        self.coeffs = coeffs

    def coeff(self, index: int) -> float:
        """Coefficient of one Pauli word (0.0 if absent)."""
        return self.coeffs.get(int(index), 0.0)


def density_expansion(
    gs: GeneratorSet,
    max_qubits: int = DENSITY_MAX_QUBITS,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> PauliExpansion:
    """Expand (1/2^n) * prod_j (I + P_j) into Pauli-word coefficients."""
    n = gs.n
    if n > max_qubits:
        raise ResourceLimitError(f"density expansion capped at {max_qubits} qubits, got {n}")
    acc_digits = np.zeros((1, n), dtype=np.uint8)
    acc_coeff = np.ones(1, dtype=np.complex128)
    for g in gs.generators:
        g_digits = indices_to_digits(g.indices, n).astype(np.uint8)
        prod = AXIS_PRODUCT[acc_digits[:, None, :], g_digits[None, :, :]]
        exps = PHASE_EXP[acc_digits[:, None, :], g_digits[None, :, :]].astype(np.int64)
        phase = PHASE_VALUES_NP[exps.sum(axis=2) % 4]
        coeff = acc_coeff[:, None] * g.lambdas[None, :] * phase
        acc_digits = np.concatenate([acc_digits, prod.reshape(-1, n)])
        acc_coeff = np.concatenate([acc_coeff, coeff.ravel()])
        if len(acc_coeff) > term_budget:
            raise ResourceLimitError(
                f"density expansion exceeded the term budget ({term_budget})"
            )
        acc_digits, acc_coeff = _merge(acc_digits, acc_coeff, n)
    worst_imag = float(np.max(np.abs(acc_coeff.imag)))
    if worst_imag > _IMAG_TOL:
        raise ConsistencyError(
            f"density expansion produced a non-real coefficient (imag {worst_imag:.3e})"
        )
    scale = 0.5**n
    codes = _pack(acc_digits, n)
    return PauliExpansion(
        n, {int(c): float(v.real) * scale for c, v in zip(codes, acc_coeff)}
    )


def _pack(digits: np.ndarray, n: int) -> np.ndarray:
    places = np.array([4 ** (n - 1 - j) for j in range(n)], dtype=np.int64)
    return digits.astype(np.int64) @ places


def _merge(digits: np.ndarray, coeff: np.ndarray, n: int):
    codes = _pack(digits, n)
    unique, inverse = np.unique(codes, return_inverse=True)
    sums = np.zeros(len(unique), dtype=np.complex128)
    np.add.at(sums, inverse, coeff)
    keep = sums != 0.0
    unique = unique[keep]
    out_digits = np.empty((len(unique), n), dtype=np.uint8)
    for j in range(n):
        out_digits[:, j] = (unique // 4 ** (n - 1 - j)) % 4
    return out_digits, sums[keep]


def prob_z(
    gs: GeneratorSet, k: int, expansion: PauliExpansion | None = None
) -> tuple[float, float]:
    """Probabilities (p0, p1) of measuring qubit k in the computational basis.

    p0 = 1/2 + 2^(n-1) * (expansion coefficient of the single-Z word at k).
    Pass a precomputed expansion to avoid rebuilding it per qubit.
    """
    n = gs.n
    if not 0 <= k < n:
        raise ValueError(f"qubit {k} out of range for n={n}")
    if expansion is None:
        expansion = density_expansion(gs)
    p0 = 0.5 + 2.0 ** (n - 1) * expansion.coeff(3 * 4 ** (n - 1 - k))
    if not -1e-10 <= p0 <= 1.0 + 1e-10:
        raise ConsistencyError(f"probability {p0} for qubit {k} outside [0, 1]")
    p0 = min(1.0, max(0.0, p0))
    return p0, 1.0 - p0


def expectation(
    gs: GeneratorSet, word: int, expansion: PauliExpansion | None = None
) -> float:
    """Expectation value of an n-qubit Pauli word given as a base-4 index."""
    n = gs.n
    if not 0 <= word < 4**n:
        raise ValueError(f"word index {word} out of range [0, 4**{n})")
    if expansion is None:
        expansion = density_expansion(gs)
    return 2.0**n * expansion.coeff(word)
