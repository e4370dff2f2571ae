"""Independent dense-matrix reference used by the tests.

Everything here is built from explicit 2x2/4x4 matrices and Kronecker
products only, on purpose: it shares no code path with the package, so any
agreement between the two is meaningful.  Rotations follow the same
convention as the package, R_a(theta) = exp(-i*theta*a/2).
"""

import numpy as np

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, X2, Y2, Z2)


def gate_unitary(gate: str, theta: float = 0.0) -> np.ndarray:
    if gate == "H":
        return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    if gate == "S":
        return np.diag([1, 1j]).astype(complex)
    if gate == "X":
        return X2
    if gate == "SX":
        return (np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex)) / 2
    if gate == "RX":
        return np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * X2
    if gate == "RY":
        return np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * Y2
    if gate == "RZ":
        return np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * Z2
    if gate == "CX":
        return np.array(
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
        )
    raise ValueError(gate)


def word_matrix(digits) -> np.ndarray:
    """Kronecker product of single-qubit Paulis, qubit 0 leftmost."""
    m = np.array([[1.0 + 0j]])
    for d in digits:
        m = np.kron(m, PAULIS[int(d)])
    return m


def index_digits(index: int, n: int):
    return [(index >> (2 * (n - 1 - j))) & 3 for j in range(n)]


def conjugated_weights(gate: str, theta: float, axis: int) -> np.ndarray:
    """(X, Y, Z) components of U p U^dagger via trace projection."""
    u = gate_unitary(gate, theta)
    conj = u @ PAULIS[axis] @ u.conj().T
    return np.array([np.trace(conj @ PAULIS[a]).real / 2 for a in (1, 2, 3)])


def embed_1q(mat: np.ndarray, q: int, n: int) -> np.ndarray:
    full = np.array([[1.0 + 0j]])
    for j in range(n):
        full = np.kron(full, mat if j == q else I2)
    return full


def embed_cx(c: int, t: int, n: int) -> np.ndarray:
    """CX embedded in n qubits via the projector decomposition."""
    p0 = (I2 + Z2) / 2
    p1 = (I2 - Z2) / 2
    term0 = np.array([[1.0 + 0j]])
    term1 = np.array([[1.0 + 0j]])
    for j in range(n):
        term0 = np.kron(term0, p0 if j == c else I2)
        term1 = np.kron(term1, p1 if j == c else (X2 if j == t else I2))
    return term0 + term1


def circuit_unitary(instructions, n: int) -> np.ndarray:
    u = np.eye(2**n, dtype=complex)
    for inst in instructions:
        if inst.gate == "CX":
            g = embed_cx(inst.wires[0], inst.wires[1], n)
        else:
            g = embed_1q(gate_unitary(inst.gate, inst.theta), inst.wires[0], n)
        u = g @ u
    return u


def simple_generator_matrix(g) -> np.ndarray:
    """Dense operator of a simple-form generator."""
    total = np.zeros((2**g.n, 2**g.n), dtype=complex)
    for lam, idx in zip(g.lambdas, g.indices):
        total += lam * word_matrix(index_digits(int(idx), g.n))
    return total


def complex_generator_matrix(n, lambdas, per_qubit_terms) -> np.ndarray:
    """Dense operator of a complex form given per-string, per-qubit terms.

    per_qubit_terms[s][j] is a list of (axis, weight) pairs.
    """
    total = np.zeros((2**n, 2**n), dtype=complex)
    for lam, qubits in zip(lambdas, per_qubit_terms):
        m = np.array([[complex(lam)]])
        for terms in qubits:
            site = np.zeros((2, 2), dtype=complex)
            for axis, w in terms:
                site += w * PAULIS[int(axis)]
            m = np.kron(m, site)
        total += m
    return total


def pauli_coeffs(op: np.ndarray, n: int) -> dict:
    """Decompose a 2^n x 2^n operator over Pauli words: Tr(P op) / 2^n."""
    coeffs = {}
    for idx in range(4**n):
        c = np.trace(word_matrix(index_digits(idx, n)) @ op) / 2**n
        if abs(c) > 1e-13:
            coeffs[idx] = c
    return coeffs
