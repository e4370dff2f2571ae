"""Heisenberg conjugation rules and composed per-operator lookup tables.

Conjugating a Pauli axis by any gate of the supported single-qubit set maps
the (X, Y, Z) weight vector by a fixed orthogonal 3x3 matrix (a rotation of
the Bloch frame); the identity axis is always fixed, so it never enters the
tables.  A whole single-qubit operator U_{k,j} composes into one 3x3 block,
and all gates of an operator are then applied to a generator with a single
substitution regardless of how many gates the operator contains.

CX conjugation is a signed permutation of (control, target) axis pairs and
is kept as three 4x4 integer tables indexed [control, target].

Rotation gates use the convention R_a(theta) = exp(-i*theta*a/2).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .circuit import OperatorPartition

WORKERS_ENV_VAR = "STABSIM_WORKERS"

# Weight-vector action of the fixed gates: new_w = M @ w with w = (wX, wY, wZ).
_FIXED_MAPS = {
    # H: X<->Z, Y -> -Y
    "H": np.array([[0.0, 0.0, 1.0], [0.0, -1.0, 0.0], [1.0, 0.0, 0.0]]),
    # S: X -> Y, Y -> -X
    "S": np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
    # X: Y -> -Y, Z -> -Z
    "X": np.array([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]),
    # SX: Y -> Z, Z -> -Y
    "SX": np.array([[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]]),
}


def axis_map(gate: str, theta: float = 0.0) -> np.ndarray:
    """Return the 3x3 matrix sending an (X,Y,Z) weight vector through `gate`."""
    if gate in _FIXED_MAPS:
        return _FIXED_MAPS[gate].copy()
    c, s = math.cos(theta), math.sin(theta)
    if gate == "RX":
        return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])
    if gate == "RY":
        return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    if gate == "RZ":
        return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    raise ValueError(f"no single-qubit conjugation rule for gate {gate!r}")


def conjugate_axis(gate: str, theta: float, w) -> np.ndarray:
    """Conjugate an (X, Y, Z) weight row by one gate.

    The identity component never appears: conjugation fixes I, and no
    non-identity axis acquires an I part under a unitary.
    """
    w = np.asarray(w, dtype=float)
    if w.shape != (3,):
        raise ValueError(f"weight row must have 3 components, got shape {w.shape}")
    return axis_map(gate, theta) @ w


def _compose_block(gates) -> np.ndarray:
    """Fold a gate list into one LUT block; rows are images of X, Y, Z."""
    total = np.eye(3)
    for inst in gates:
        total = axis_map(inst.gate, inst.theta) @ total
    # Row p of the block is the evolved weight row of basis axis p, i.e. the
    # p-th column of the composed matrix.
    return total.T.copy()


def create_lut_1q(partition: OperatorPartition, workers: int | None = None) -> np.ndarray:
    """Build the (K, n, 3, 3) lookup tensor for all single-qubit operators.

    Block [k, j] maps an input axis row (X, Y or Z) on qubit j to its weight
    row after every gate of U_{k,j} in circuit order; an empty U_{k,j} is the
    identity.  Cells are independent, so they may be computed by any number
    of workers (default: the STABSIM_WORKERS environment variable, else 1)
    with bit-identical results.
    """
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV_VAR, "1"))
    k, n = partition.k, partition.n
    lut = np.empty((k, n, 3, 3))
    cells = [(ki, j) for ki in range(k) for j in range(n)]

    def fill(cell):
        ki, j = cell
        return ki, j, _compose_block(partition.u_groups[ki].get(j, ()))

    if workers > 1 and cells:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fill, cells))
    else:
        results = [fill(c) for c in cells]
    for ki, j, block in results:
        lut[ki, j] = block
    return lut


# CX conjugation tables indexed [control axis, target axis]: the new control
# axis, new target axis, and sign.  E.g. (X,I) -> (X,X,+1), (X,Z) -> -(Y,Y).
LUT_C = np.array(
    [
        [0, 0, 3, 3],
        [1, 1, 2, 2],
        [2, 2, 1, 1],
        [3, 3, 0, 0],
    ],
    dtype=np.int64,
)
LUT_T = np.array(
    [
        [0, 1, 2, 3],
        [1, 0, 3, 2],
        [1, 0, 3, 2],
        [0, 1, 2, 3],
    ],
    dtype=np.int64,
)
LUT_SIGN = np.array(
    [
        [1, 1, 1, 1],
        [1, 1, 1, -1],
        [1, 1, -1, 1],
        [1, 1, 1, 1],
    ],
    dtype=np.int64,
)


def cx_lookup(c: int, t: int) -> tuple[int, int, int]:
    """Conjugate the (control, target) axis pair by CX: returns (c', t', sign)."""
    return int(LUT_C[c, t]), int(LUT_T[c, t]), int(LUT_SIGN[c, t])


def lut_to_json(lut: np.ndarray) -> list:
    """Nested-list form of a LUT tensor for the CLI debug dump."""
    return lut.tolist()
