"""Extended stabilizer-formalism quantum circuit simulator.

Tracks stabilizer generators as weighted sums of base-4-encoded Pauli words.
Clifford gates permute words via lookup tables; rotation gates grow each
generator into a linear combination whose rank is bounded by 4**n.  Circuits
are partitioned into alternating single-/two-qubit operators so the cost
scales with the operator count rather than the gate count, and the
single-qubit side runs in one of three modes: a sequential gate-by-gate
baseline (v1), a dense one-hot tensor pipeline (v2), and a ragged sparse
tensor pipeline (v3).

A dense state-vector oracle is included for differential verification at
small qubit counts.
"""

from .circuit import Instruction, divide_instruction, gen_ghz, gen_graph, gen_xyz_chain, parse_circuit, serialize_circuit
from .engine import Mode, RunReport, run, run_all_modes
from .errors import ConsistencyError, NumericalCollapseError, ResourceLimitError
from .measure import density_expansion, expectation, prob_z
from .oracle import compare, sv_expectation, sv_prob_z, sv_run
from .pauli import Axis
from .stabilizer import GeneratorSet, SimpleGenerator, init_z, rank_stats

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "ConsistencyError",
    "GeneratorSet",
    "Instruction",
    "Mode",
    "NumericalCollapseError",
    "ResourceLimitError",
    "RunReport",
    "SimpleGenerator",
    "compare",
    "density_expansion",
    "divide_instruction",
    "expectation",
    "gen_ghz",
    "gen_graph",
    "gen_xyz_chain",
    "init_z",
    "parse_circuit",
    "prob_z",
    "rank_stats",
    "run",
    "run_all_modes",
    "serialize_circuit",
    "sv_expectation",
    "sv_prob_z",
    "sv_run",
]
