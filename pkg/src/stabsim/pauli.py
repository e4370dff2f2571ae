"""Pauli axis and Pauli word encodings with exact phase-tracked multiplication.

Conventions used throughout the package:

* Single-qubit Paulis ("axes") are coded I=0, X=1, Y=2, Z=3.
* An n-qubit Pauli word packs its per-qubit axis codes into one base-4
  integer with qubit 0 as the most significant digit, so the word XYZ
  becomes 1*16 + 2*4 + 3 = 27.  Index 0 is the all-identity word and
  4**n - 1 is Z on every qubit.
* Phases are powers of i stored as the exponent modulo 4 (0,1,2,3 for
  +1,+i,-1,-i), which keeps Pauli algebra exact integer arithmetic.

All functions here are pure and safe to call concurrently.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Sequence

import numpy as np


class Axis(IntEnum):
    """Single-qubit Pauli operator, coded to match base-4 word digits."""

    I = 0
    X = 1
    Y = 2
    Z = 3


AXIS_CHARS = "IXYZ"

# a . b = i**PHASE_EXP[a, b] * AXIS_PRODUCT[a, b]; the base-4 codes multiply
# by XOR (X.Y = Z, X.Z = Y, Y.Z = X, a.a = I).
AXIS_PRODUCT = np.array([[a ^ b for b in range(4)] for a in range(4)], dtype=np.uint8)
PHASE_EXP = np.array(
    [
        [0, 0, 0, 0],
        [0, 0, 1, 3],
        [0, 3, 0, 1],
        [0, 1, 3, 0],
    ],
    dtype=np.uint8,
)

PHASE_VALUES = (1 + 0j, 1j, -1 + 0j, -1j)
PHASE_VALUES_NP = np.array(PHASE_VALUES, dtype=np.complex128)


def phase_value(exponent: int) -> complex:
    """Return the complex number i**exponent."""
    return PHASE_VALUES[exponent % 4]


def axis_to_index(p: Axis | int) -> int:
    """Return the integer code of a Pauli axis."""
    return int(Axis(p))


def index_to_axis(i: int) -> Axis:
    """Return the Pauli axis for an integer code in {0, 1, 2, 3}."""
    return Axis(i)


def word_to_index(digits: Sequence[int]) -> int:
    """Pack per-qubit axis codes (qubit 0 first) into a base-4 integer."""
    index = 0
    for d in digits:
        if not 0 <= int(d) <= 3:
            raise ValueError(f"axis code {d} out of range [0, 3]")
        index = index * 4 + int(d)
    return index


def index_to_word(index: int, n: int) -> list[Axis]:
    """Unpack a base-4 word index into n axis codes, qubit 0 first."""
    if n < 1:
        raise ValueError(f"qubit count must be positive, got {n}")
    if not 0 <= index < 4**n:
        raise ValueError(f"word index {index} out of range [0, 4**{n})")
    digits = []
    for j in range(n):
        digits.append(Axis((index >> (2 * (n - 1 - j))) & 3))
    return digits


def word_to_str(index: int, n: int) -> str:
    """Render a word index as a Pauli string, e.g. 27 with n=3 -> "XYZ"."""
    return "".join(AXIS_CHARS[d] for d in index_to_word(index, n))


def str_to_word(s: str) -> int:
    """Parse a Pauli string like "XYZ" into its word index."""
    try:
        return word_to_index([AXIS_CHARS.index(c) for c in s.upper()])
    except ValueError:
        raise ValueError(f"invalid Pauli string {s!r}") from None


def axis_to_weight(p: Axis | int) -> np.ndarray:
    """Return the one-hot 4-vector (I, X, Y, Z components) for an axis."""
    w = np.zeros(4)
    w[Axis(p)] = 1.0
    return w


def weight_to_axis(w: Sequence[float]) -> Axis:
    """Invert axis_to_weight; the input must be exactly one-hot."""
    w = np.asarray(w, dtype=float)
    if w.shape != (4,):
        raise ValueError(f"weight vector must have 4 components, got shape {w.shape}")
    hot = np.nonzero(w)[0]
    if len(hot) != 1 or w[hot[0]] != 1.0:
        raise ValueError(f"weight vector {w.tolist()} is not one-hot")
    return Axis(int(hot[0]))


def axis_mul(a: Axis | int, b: Axis | int) -> tuple[int, Axis]:
    """Multiply two Pauli axes: a.b = i**k c. Returns (k, c)."""
    a, b = Axis(a), Axis(b)
    return int(PHASE_EXP[a, b]), Axis(int(AXIS_PRODUCT[a, b]))


def word_mul(p: int, q: int, n: int) -> tuple[int, int]:
    """Multiply two n-qubit Pauli words given as base-4 indices.

    Returns (phase exponent k, product word index r) with p.q = i**k r.
    """
    if not 0 <= p < 4**n:
        raise ValueError(f"word index {p} out of range [0, 4**{n})")
    if not 0 <= q < 4**n:
        raise ValueError(f"word index {q} out of range [0, 4**{n})")
    exponent = 0
    result = 0
    for j in range(n):
        shift = 2 * (n - 1 - j)
        a = (p >> shift) & 3
        b = (q >> shift) & 3
        exponent += int(PHASE_EXP[a, b])
        result |= int(AXIS_PRODUCT[a, b]) << shift
    return exponent % 4, result
