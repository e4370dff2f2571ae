"""Generator representations and the operations that evolve them.

A generator is tracked in one of two forms:

* simple form -- a weighted sum of Pauli words, stored as parallel arrays of
  coefficients and base-4 word indices (the number of terms is the
  generator's stabilizer rank);
* complex form -- the intermediate produced by substituting a single-qubit
  operator's lookup rows into a simple form: per source string and per qubit,
  a small linear combination of axes that still has to be expanded
  ("flattened") back into plain Pauli words.

The complex form comes in two layouts with identical semantics: a dense
zero-padded (strings, qubits, 4) weight tensor, and a ragged layout that
stores only the nonzero weights next to their axis codes (flat value/axis
arrays plus per-cell counts).  Dense trades memory for uniform-shape array
math; ragged skips zeros, so identity-heavy strings expand into exponentially
fewer branches.

Word indices are int64 for n <= 31 qubits and arbitrary-precision Python
integers (object arrays) beyond, so Clifford circuits keep working at
hundreds of qubits.

All operations are pure: they return new generators and never mutate their
inputs.  Array math is data-parallel over strings; results do not depend on
how the work is partitioned.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import lut as _lut
from .errors import ResourceLimitError

DEFAULT_EPS = 1e-12

# Widest index dtype still exact in int64: 4**31 - 1 < 2**63.
_INT64_MAX_QUBITS = 31

# Element budget for dense flattening work buffers (the dense layout expands
# every string over all 4**n words unless every row is one-hot).
DENSE_FLATTEN_BUDGET = 4**10


def index_dtype(n: int):
    return np.int64 if n <= _INT64_MAX_QUBITS else object


def make_index_array(values, n: int) -> np.ndarray:
    """Coerce word indices to the canonical dtype for n qubits."""
    if index_dtype(n) is object:
        arr = np.empty(len(values), dtype=object)
        for i, v in enumerate(values):
            arr[i] = int(v)
        return arr
    return np.asarray(values, dtype=np.int64)


def indices_to_digits(indices: np.ndarray, n: int) -> np.ndarray:
    """Expand packed word indices into an (S, n) array of axis codes."""
    out = np.empty((len(indices), n), dtype=np.int64)
    for j in range(n):
        place = 4 ** (n - 1 - j)
        col = (indices // place) % 4
        out[:, j] = col.astype(np.int64)
    return out


def digits_to_indices(digits: np.ndarray, n: int) -> np.ndarray:
    """Pack an (S, n) array of axis codes into word indices."""
    if index_dtype(n) is object:
        acc = np.zeros(len(digits), dtype=object)
        for j in range(n):
            acc = acc * 4 + digits[:, j].astype(object)
        return acc
    places = np.array([4 ** (n - 1 - j) for j in range(n)], dtype=np.int64)
    return digits.astype(np.int64) @ places


@dataclass(eq=False)
class SimpleGenerator:
    """A generator as a weighted sum of Pauli words (its simple form)."""

    n: int
    lambdas: np.ndarray
    indices: np.ndarray

    def __post_init__(self):
        self.lambdas = np.asarray(self.lambdas, dtype=np.float64)
        if not isinstance(self.indices, np.ndarray) or self.indices.dtype != index_dtype(self.n):
            self.indices = make_index_array(self.indices, self.n)
        if len(self.lambdas) != len(self.indices):
            raise ValueError("lambdas and indices must have equal length")

    @property
    def rank(self) -> int:
        """Number of weighted Pauli words (the stabilizer rank)."""
        return len(self.lambdas)

    @property
    def is_degenerate(self) -> bool:
        """True when every term was dropped (numerical collapse)."""
        return self.rank == 0

    def copy(self) -> "SimpleGenerator":
        return SimpleGenerator(self.n, self.lambdas.copy(), self.indices.copy())


@dataclass(eq=False)
class DenseComplexGenerator:
    """Complex form in the dense layout: (S, n, 4) zero-padded weights."""

    n: int
    lambdas: np.ndarray
    weights: np.ndarray

    layout = "dense"


@dataclass(eq=False)
class RaggedComplexGenerator:
    """Complex form in the ragged layout.

    ``values``/``axes`` hold the nonzero weights and their axis codes for all
    (string, qubit) cells concatenated in C order; ``counts[s, j]`` is how
    many entries cell (s, j) owns.  Within a cell, entries are sorted by axis
    code, every cell is nonempty, and no zero weight is stored.
    """

    n: int
    lambdas: np.ndarray
    values: np.ndarray
    axes: np.ndarray
    counts: np.ndarray
    _offsets: np.ndarray = field(default=None, repr=False)

    layout = "ragged"

    @property
    def offsets(self) -> np.ndarray:
        if self._offsets is None:
            flat = self.counts.astype(np.int64).ravel()
            starts = np.concatenate([[0], np.cumsum(flat)[:-1]])
            self._offsets = starts.reshape(self.counts.shape)
        return self._offsets

    def entries(self, s: int, j: int) -> tuple[np.ndarray, np.ndarray]:
        """Axis codes and weights stored for string s, qubit j."""
        start = self.offsets[s, j]
        stop = start + self.counts[s, j]
        return self.axes[start:stop], self.values[start:stop]


@dataclass
class GeneratorSet:
    """The n generators describing an n-qubit state."""

    n: int
    generators: list

    def __post_init__(self):
        if len(self.generators) != self.n:
            raise ValueError(f"expected exactly {self.n} generators, got {len(self.generators)}")


def init_z(n: int) -> GeneratorSet:
    """Generators of |0...0>: Z on each qubit with coefficient 1."""
    if n < 1:
        raise ValueError(f"qubit count must be positive, got {n}")
    gens = [SimpleGenerator(n, [1.0], [3 * 4 ** (n - 1 - j)]) for j in range(n)]
    return GeneratorSet(n, gens)


def _substitution_rows(block: np.ndarray, n: int) -> np.ndarray:
    """Per-qubit axis -> 4-weight substitution table: (n, 4, 4).

    Row 0 keeps the identity one-hot; rows 1..3 embed the LUT weight rows
    with a zero identity component.
    """
    rows = np.zeros((n, 4, 4))
    rows[:, 0, 0] = 1.0
    rows[:, 1:, 1:] = block
    return rows


def sub(g: SimpleGenerator, block: np.ndarray, layout: str = "ragged"):
    """Substitute a single-qubit operator's LUT block into a simple form.

    ``block`` is the (n, 3, 3) slice for one operator.  Every non-identity
    axis of every string is replaced by its conjugated (X, Y, Z) weight row;
    identity axes stay one-hot.  Coefficients pass through unchanged.
    """
    n = g.n
    if block.shape != (n, 3, 3):
        raise ValueError(f"expected block shape ({n}, 3, 3), got {block.shape}")
    digits = indices_to_digits(g.indices, n)
    rows = _substitution_rows(block, n)
    weights = rows[np.arange(n)[None, :], digits]
    if layout == "dense":
        return DenseComplexGenerator(n, g.lambdas.copy(), weights)
    if layout == "ragged":
        return _ragged_from_weights(n, g.lambdas.copy(), weights)
    raise ValueError(f"unknown layout {layout!r}")


def _ragged_from_weights(n: int, lambdas: np.ndarray, weights: np.ndarray) -> RaggedComplexGenerator:
    nz = weights != 0.0
    counts = nz.sum(axis=2).astype(np.uint8)
    axes = np.nonzero(nz)[2].astype(np.uint8)
    values = weights[nz]
    return RaggedComplexGenerator(n, lambdas, values, axes, counts)


def to_ragged(g: DenseComplexGenerator) -> RaggedComplexGenerator:
    """Convert the dense layout to the ragged layout (same semantics)."""
    return _ragged_from_weights(g.n, g.lambdas.copy(), g.weights)


def to_dense(g: RaggedComplexGenerator) -> DenseComplexGenerator:
    """Convert the ragged layout to the dense layout (same semantics)."""
    s = len(g.lambdas)
    weights = np.zeros((s, g.n, 4))
    rows = np.repeat(np.arange(s), g.counts.astype(np.int64).sum(axis=1))
    cols = np.repeat(np.tile(np.arange(g.n), s), g.counts.ravel().astype(np.int64))
    weights[rows, cols, g.axes.astype(np.int64)] = g.values
    return DenseComplexGenerator(g.n, g.lambdas.copy(), weights)


def branch_counts(g) -> np.ndarray:
    """Expansion branches each string contributes when flattened."""
    if isinstance(g, RaggedComplexGenerator):
        return g.counts.astype(np.int64).prod(axis=1)
    nz = g.weights != 0.0
    return nz.sum(axis=2).astype(np.int64).prod(axis=1)


def flatten(g, eps: float = DEFAULT_EPS, canonical: bool = True) -> SimpleGenerator:
    """Expand a complex form back into a simple form.

    Every combination of one stored axis per qubit contributes the product of
    its weights times the string's coefficient; cells holding a single entry
    (identity axes in particular) never branch.  The result is canonicalized
    (duplicates merged, |coefficient| < eps dropped, indices ascending) unless
    ``canonical`` is False, which returns the raw branch list for inspection.
    """
    if isinstance(g, RaggedComplexGenerator):
        raw = _flatten_ragged(g)
        return canonicalize(raw, eps) if canonical else raw
    if isinstance(g, DenseComplexGenerator):
        if not canonical:
            return _flatten_ragged(to_ragged(g))
        return _flatten_dense(g, eps)
    raise TypeError(f"cannot flatten {type(g).__name__}")


def _flatten_dense(g: DenseComplexGenerator, eps: float) -> SimpleGenerator:
    s, n = len(g.lambdas), g.n
    if s == 0:
        return SimpleGenerator(n, [], [])
    nz = g.weights != 0.0
    if nz.sum(axis=2).max(initial=1) == 1:
        # Signed-permutation case (Clifford blocks): no branching at all.
        axes = np.argmax(nz, axis=2)
        vals = np.take_along_axis(g.weights, axes[:, :, None], axis=2)[:, :, 0]
        lambdas = g.lambdas * vals.prod(axis=1)
        raw = SimpleGenerator(n, lambdas, digits_to_indices(axes, n))
        return canonicalize(raw, eps)
    size = 4**n
    if size > DENSE_FLATTEN_BUDGET:
        raise ResourceLimitError(
            f"dense flatten needs a 4**{n}-element buffer (> {DENSE_FLATTEN_BUDGET}); "
            "use the ragged layout for circuits of this size"
        )
    out = np.zeros(size)
    chunk = max(1, DENSE_FLATTEN_BUDGET // size)
    for lo in range(0, s, chunk):
        hi = min(s, lo + chunk)
        acc = g.lambdas[lo:hi, None].copy()
        for j in range(n):
            acc = (acc[:, :, None] * g.weights[lo:hi, j, None, :]).reshape(hi - lo, -1)
        out += acc.sum(axis=0)
    keep = np.abs(out) >= eps
    return SimpleGenerator(n, out[keep], np.nonzero(keep)[0].astype(np.int64))


def _flatten_ragged(g: RaggedComplexGenerator) -> SimpleGenerator:
    s, n = len(g.lambdas), g.n
    if s == 0:
        return SimpleGenerator(n, [], [])
    big = index_dtype(n) is object
    widths_all, inverse = np.unique(g.counts, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    order = np.argsort(inverse, kind="stable")
    group_sizes = np.bincount(inverse, minlength=len(widths_all))
    bounds = np.concatenate([[0], np.cumsum(group_sizes)])
    offsets = g.offsets
    idx_chunks = []
    lam_chunks = []
    for gi, widths in enumerate(widths_all):
        rows = order[bounds[gi] : bounds[gi + 1]]
        if len(rows) == 0:
            continue
        acc_l = g.lambdas[rows, None].copy()
        if big:
            acc_i = np.zeros((len(rows), 1), dtype=object)
        else:
            acc_i = np.zeros((len(rows), 1), dtype=np.int64)
        for j in range(n):
            w = int(widths[j])
            cols = offsets[rows, j][:, None] + np.arange(w)[None, :]
            vmat = g.values[cols]
            amat = g.axes[cols].astype(np.int64)
            if big:
                amat = amat.astype(object)
            acc_l = (acc_l[:, :, None] * vmat[:, None, :]).reshape(len(rows), -1)
            acc_i = (acc_i[:, :, None] * 4 + amat[:, None, :]).reshape(len(rows), -1)
        idx_chunks.append(acc_i.ravel())
        lam_chunks.append(acc_l.ravel())
    return SimpleGenerator(n, np.concatenate(lam_chunks), np.concatenate(idx_chunks))


def canonicalize(g: SimpleGenerator, eps: float = DEFAULT_EPS) -> SimpleGenerator:
    """Merge duplicate words, drop |coefficient| < eps, sort by index.

    A result with zero terms is the degenerate generator; callers decide
    whether that is an error (the engine treats it as numerical collapse).
    """
    if g.rank == 0:
        return g.copy()
    unique, inverse = np.unique(g.indices, return_inverse=True)
    sums = np.zeros(len(unique))
    np.add.at(sums, inverse, g.lambdas)
    keep = np.abs(sums) >= eps
    return SimpleGenerator(g.n, sums[keep], unique[keep])


def apply_cx(g: SimpleGenerator, c: int, t: int) -> SimpleGenerator:
    """Conjugate every word of a simple form by CX(control=c, target=t).

    Only the digits at c and t change (via the CX tables); signs fold into
    the coefficients.  The term count is unchanged; the result is generally
    no longer sorted, so callers canonicalize when they need that.
    """
    n = g.n
    if c == t:
        raise ValueError(f"control and target must differ, got {c}")
    if not (0 <= c < n and 0 <= t < n):
        raise ValueError(f"wires ({c}, {t}) out of range for n={n}")
    pc = 4 ** (n - 1 - c)
    pt = 4 ** (n - 1 - t)
    dc = ((g.indices // pc) % 4).astype(np.int64)
    dt = ((g.indices // pt) % 4).astype(np.int64)
    nc = _lut.LUT_C[dc, dt]
    nt = _lut.LUT_T[dc, dt]
    sign = _lut.LUT_SIGN[dc, dt]
    if index_dtype(n) is object:
        shift = (nc - dc).astype(object) * pc + (nt - dt).astype(object) * pt
    else:
        shift = (nc - dc) * pc + (nt - dt) * pt
    return SimpleGenerator(n, g.lambdas * sign, g.indices + shift)


def rank_stats(gs: GeneratorSet) -> tuple[list[int], float]:
    """Per-generator term counts and their mean."""
    counts = [g.rank for g in gs.generators]
    return counts, sum(counts) / len(counts)


def generator_set_to_dict(gs: GeneratorSet) -> dict:
    """JSON-ready dump: per generator, parallel "lambda" and "index" arrays."""
    return {
        "n": gs.n,
        "generators": [
            {
                "lambda": [float(v) for v in g.lambdas],
                "index": [int(v) for v in g.indices],
            }
            for g in gs.generators
        ],
    }
