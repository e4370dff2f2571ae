"""Instruction model, operator partitioning, circuit generators and file I/O.

A circuit is a flat list of :class:`Instruction` tuples (gate name, wires,
angle).  Before simulation the list is partitioned into maximal runs of
single-qubit gates (``U_k``, bucketed per wire) interleaved with runs of
two-qubit gates (``V_k``); the runs strictly alternate, so the whole circuit
is replayed as K + K' operator applications instead of one application per
gate.

Circuit files are plain text, one instruction per line::

    # comment
    h 0
    rz 0 1.0471975511965976
    cx 0 1

A JSON array of {"gate": ..., "wires": [...], "theta": ...} objects is also
accepted by :func:`parse_circuit`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

GATES_1Q = ("H", "S", "X", "SX", "RX", "RY", "RZ")
GATES_2Q = ("CX",)
PARAMETRIC_GATES = ("RX", "RY", "RZ")
ALL_GATES = GATES_1Q + GATES_2Q


class CircuitParseError(ValueError):
    """Raised on malformed circuit text; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Instruction:
    """One gate application: name, wires, and angle (0.0 if not parametric)."""

    gate: str
    wires: tuple[int, ...]
    theta: float = 0.0

    def __post_init__(self):
        if self.gate not in ALL_GATES:
            raise ValueError(f"unknown gate {self.gate!r}; supported: {ALL_GATES}")
        arity = 2 if self.gate in GATES_2Q else 1
        if len(self.wires) != arity:
            raise ValueError(f"{self.gate} takes {arity} wire(s), got {self.wires}")
        if any(w < 0 for w in self.wires):
            raise ValueError(f"negative wire in {self.wires}")
        if arity == 2 and self.wires[0] == self.wires[1]:
            raise ValueError(f"{self.gate} wires must be distinct, got {self.wires}")
        if self.gate not in PARAMETRIC_GATES and self.theta != 0.0:
            raise ValueError(f"{self.gate} takes no angle, got theta={self.theta}")

    @property
    def is_two_qubit(self) -> bool:
        return self.gate in GATES_2Q


def h(q: int) -> Instruction:
    return Instruction("H", (q,))


def s(q: int) -> Instruction:
    return Instruction("S", (q,))


def x(q: int) -> Instruction:
    return Instruction("X", (q,))


def sx(q: int) -> Instruction:
    return Instruction("SX", (q,))


def rx(q: int, theta: float) -> Instruction:
    return Instruction("RX", (q,), float(theta))


def ry(q: int, theta: float) -> Instruction:
    return Instruction("RY", (q,), float(theta))


def rz(q: int, theta: float) -> Instruction:
    return Instruction("RZ", (q,), float(theta))


def cx(control: int, target: int) -> Instruction:
    return Instruction("CX", (control, target))


@dataclass
class OperatorPartition:
    """A circuit split into alternating single- and two-qubit operators.

    ``u_groups[k]`` maps wire -> ordered instructions of the k-th single-qubit
    operator; ``v_groups[k]`` is the ordered CX list of the k-th two-qubit
    operator.  ``order`` walks the operators in circuit order (0 = single,
    1 = two-qubit).
    """

    n: int
    u_groups: list[dict[int, list[Instruction]]] = field(default_factory=list)
    v_groups: list[list[Instruction]] = field(default_factory=list)
    order: list[int] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.u_groups)

    @property
    def k_prime(self) -> int:
        return len(self.v_groups)

    def operator_sizes(self) -> list[int]:
        """Gate counts per operator in chain order."""
        sizes = []
        ui = vi = 0
        for bit in self.order:
            if bit == 0:
                sizes.append(sum(len(g) for g in self.u_groups[ui].values()))
                ui += 1
            else:
                sizes.append(len(self.v_groups[vi]))
                vi += 1
        return sizes

    def replay(self) -> list[Instruction]:
        """Flatten back to an instruction list in chain order.

        Within a single-qubit operator the per-wire buckets are emitted in
        ascending wire order, which only reorders gates acting on distinct
        qubits (they commute).
        """
        out: list[Instruction] = []
        ui = vi = 0
        for bit in self.order:
            if bit == 0:
                for wire in sorted(self.u_groups[ui]):
                    out.extend(self.u_groups[ui][wire])
                ui += 1
            else:
                out.extend(self.v_groups[vi])
                vi += 1
        return out


def divide_instruction(instructions: Sequence[Instruction], n: int) -> OperatorPartition:
    """Group a circuit into maximal alternating single-/two-qubit operators.

    A new operator starts exactly when the gate arity changes; within a
    single-qubit operator, gates are bucketed by wire preserving order.
    """
    part = OperatorPartition(n=n)
    for inst in instructions:
        if any(w >= n for w in inst.wires):
            raise ValueError(f"wire out of range for n={n}: {inst}")
        two = inst.is_two_qubit
        if not part.order or part.order[-1] != int(two):
            part.order.append(int(two))
            if two:
                part.v_groups.append([])
            else:
                part.u_groups.append({})
        if two:
            part.v_groups[-1].append(inst)
        else:
            part.u_groups[-1].setdefault(inst.wires[0], []).append(inst)
    if part.order:
        expected = create_chain(part.k, part.k_prime, first_is_single=part.order[0] == 0)
        assert part.order == expected
    return part


def create_chain(k: int, k_prime: int, first_is_single: bool) -> list[int]:
    """Build the alternating operator order, e.g. (2, 1, True) -> [0, 1, 0].

    Raises ValueError when no strict alternation of k single-qubit and
    k_prime two-qubit operators can start with the requested kind.
    """
    if abs(k - k_prime) > 1:
        raise ValueError(f"|K - K'| must be <= 1, got K={k}, K'={k_prime}")
    total = k + k_prime
    if total == 0:
        return []
    first = 0 if first_is_single else 1
    chain = [(first + i) % 2 for i in range(total)]
    if chain.count(0) != k or chain.count(1) != k_prime:
        raise ValueError(
            f"no alternating chain with K={k}, K'={k_prime} starting with "
            f"{'a single-qubit' if first_is_single else 'a two-qubit'} operator"
        )
    return chain


def gen_ghz(n: int) -> list[Instruction]:
    """H on qubit 0 followed by a CX chain: prepares (|0..0> + |1..1>)/sqrt(2)."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got {n}")
    return [h(0)] + [cx(i, i + 1) for i in range(n - 1)]


def gen_graph(n: int, edges: Iterable[tuple[int, int]]) -> list[Instruction]:
    """Graph state: H everywhere, then CZ per edge realized as H-CX-H."""
    insts = [h(q) for q in range(n)]
    for a, b in edges:
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"bad edge ({a}, {b}) for n={n}")
        insts += [h(b), cx(a, b), h(b)]
    return insts


def ring_edges(n: int) -> list[tuple[int, int]]:
    """Cycle graph edges (0,1), (1,2), ..., (n-1,0)."""
    if n < 2:
        return []
    edges = [(i, i + 1) for i in range(n - 1)]
    if n > 2:
        edges.append((n - 1, 0))
    return edges


def gen_xyz_chain(
    n: int,
    layers: int,
    repeats: int,
    rng: int | np.random.Generator | None = None,
) -> list[Instruction]:
    """Layered ansatz: repeated RX/RY/RZ columns followed by a linear CX chain.

    Each layer applies `repeats` rounds of one RX, RY and RZ per qubit (fresh
    angles each), then CX(j, j+1) for j = 0..n-2.  Angles are drawn uniformly
    from (0, 2*pi) using the given seed or generator, so circuits are
    reproducible.  Gate count is layers * (3*n*repeats + n - 1).
    """
    if n < 2:
        raise ValueError(f"chain needs at least 2 qubits, got {n}")
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    insts: list[Instruction] = []
    for _ in range(layers):
        for _ in range(repeats):
            for maker in (rx, ry, rz):
                for q in range(n):
                    insts.append(maker(q, gen.uniform(0.0, 2.0 * math.pi)))
        insts += [cx(j, j + 1) for j in range(n - 1)]
    return insts


def gen_random(
    n: int,
    m: int,
    rng: int | np.random.Generator | None = None,
    gates: Sequence[str] = ALL_GATES,
) -> list[Instruction]:
    """Seeded random circuit of m gates drawn uniformly from `gates`."""
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    pool = [g for g in gates if g != "CX" or n >= 2]
    insts = []
    for _ in range(m):
        gate = pool[int(gen.integers(len(pool)))]
        if gate == "CX":
            c, t = gen.choice(n, size=2, replace=False)
            insts.append(cx(int(c), int(t)))
        elif gate in PARAMETRIC_GATES:
            insts.append(Instruction(gate, (int(gen.integers(n)),), gen.uniform(0.0, 2.0 * math.pi)))
        else:
            insts.append(Instruction(gate, (int(gen.integers(n)),)))
    return insts


def serialize_circuit(instructions: Sequence[Instruction]) -> str:
    """Render instructions in the text file format (lossless round trip)."""
    lines = []
    for inst in instructions:
        parts = [inst.gate.lower()] + [str(w) for w in inst.wires]
        if inst.gate in PARAMETRIC_GATES:
            parts.append(repr(inst.theta))
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_circuit(text: str) -> list[Instruction]:
    """Parse circuit text (or a JSON instruction array) into instructions."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        return _parse_json(stripped)
    instructions = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        instructions.append(_parse_line(line_no, line))
    return instructions


def _parse_line(line_no: int, line: str) -> Instruction:
    tokens = line.split()
    gate = tokens[0].upper()
    if gate not in ALL_GATES:
        raise CircuitParseError(line_no, f"unknown gate {tokens[0]!r}")
    arity = 2 if gate in GATES_2Q else 1
    wire_toks = tokens[1 : 1 + arity]
    rest = tokens[1 + arity :]
    try:
        wires = tuple(int(t) for t in wire_toks)
    except ValueError:
        raise CircuitParseError(line_no, f"malformed wires {wire_toks}") from None
    if len(wires) != arity:
        raise CircuitParseError(line_no, f"{gate} takes {arity} wire(s)")
    theta = 0.0
    if gate in PARAMETRIC_GATES:
        if len(rest) != 1:
            raise CircuitParseError(line_no, f"{gate} requires exactly one angle")
        try:
            theta = float(rest[0])
        except ValueError:
            raise CircuitParseError(line_no, f"malformed angle {rest[0]!r}") from None
    elif rest:
        raise CircuitParseError(line_no, f"{gate} takes no angle, got {rest}")
    try:
        return Instruction(gate, wires, theta)
    except ValueError as exc:
        raise CircuitParseError(line_no, str(exc)) from None


def _parse_json(text: str) -> list[Instruction]:
    try:
        items = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitParseError(exc.lineno, f"invalid JSON: {exc.msg}") from None
    instructions = []
    for i, item in enumerate(items, start=1):
        if not isinstance(item, dict) or "gate" not in item or "wires" not in item:
            raise CircuitParseError(i, "each entry needs 'gate' and 'wires'")
        gate = str(item["gate"]).upper()
        wires = tuple(int(w) for w in item["wires"])
        theta = float(item.get("theta", 0.0))
        try:
            instructions.append(Instruction(gate, wires, theta))
        except ValueError as exc:
            raise CircuitParseError(i, str(exc)) from None
    return instructions
