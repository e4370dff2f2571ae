"""Command-line interface: run circuits, benchmark, trace ranks, verify.

Subcommands
-----------
run     simulate one circuit, dump the final generators (JSON or CSV)
bench   sweep circuit families / sizes / modes, emit timing CSV
rank    emit the per-operator stabilizer-rank trace as CSV
verify  differential campaign: all modes against the state-vector oracle

Outputs are deterministic for a given --seed; wall-clock timing fields are
the one exception and are only emitted by `bench`, by `run --out csv`, and
by `run --timings`.

Exit codes: 0 success, 2 usage error, 3 numerical/resource error,
4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

import numpy as np

from . import circuit as circ
from . import engine as _engine
from . import measure
from . import oracle
from .engine import Mode, run as engine_run
from .errors import ConsistencyError, NumericalCollapseError, ResourceLimitError
from .lut import create_lut_1q, lut_to_json
from .stabilizer import generator_set_to_dict

FAMILIES = ("ghz", "graph", "xyz_chain")
BENCH_HEADER = "family,n,layers,repeats,mode,seed,phase,seconds,mean_rank,max_rank"
PHASES = ("partition", "lut", "sub_flatten", "cx", "total")
VERIFY_PROB_TOL = 1e-9
VERIFY_LAMBDA_TOL = 1e-10


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad qubit range {text!r}")
    return lo, hi


def _parse_edges(text: str) -> list[tuple[int, int]]:
    edges = []
    for part in text.split(","):
        a, b = part.split("-", 1)
        edges.append((int(a), int(b)))
    return edges


def build_circuit(name: str, n: int, layers: int, repeats: int, seed: int, edges=None):
    """Resolve a family name or circuit file into an instruction list."""
    if name == "ghz":
        return circ.gen_ghz(n)
    if name == "graph":
        return circ.gen_graph(n, circ.ring_edges(n) if edges is None else edges)
    if name == "xyz_chain":
        return circ.gen_xyz_chain(n, layers, repeats, seed)
    with open(name, encoding="utf-8") as fh:
        return circ.parse_circuit(fh.read())


def _family_label(name: str) -> str:
    return name if name in FAMILIES else name.rsplit("/", 1)[-1]


def _bench_rows(family, n, layers, repeats, mode, seed, timings, mean_rank, max_rank):
    total = sum(timings.values())
    rows = []
    for phase in PHASES:
        seconds = total if phase == "total" else timings.get(phase, 0.0)
        rows.append(
            [family, n, layers, repeats, mode, seed, phase,
             f"{seconds:.9f}", f"{mean_rank:.6g}", max_rank]
        )
    return rows


def _write_csv(rows, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(BENCH_HEADER.split(","))
    writer.writerows(rows)


def cmd_run(args) -> int:
    instructions = build_circuit(
        args.circuit, args.qubits, args.layers, args.repeats, args.seed, args.edges
    )
    report = engine_run(instructions, args.qubits, args.mode)
    probs = None
    try:
        if args.qubits <= measure.DENSITY_MAX_QUBITS:
            expansion = measure.density_expansion(report.final)
            probs = [list(measure.prob_z(report.final, k, expansion)) for k in range(args.qubits)]
    except ResourceLimitError:
        probs = None
    family = _family_label(args.circuit)
    if args.out == "csv":
        _write_csv(
            _bench_rows(family, args.qubits, args.layers, args.repeats, args.mode,
                        args.seed, report.timings, report.mean_rank, report.max_rank),
            sys.stdout,
        )
        return 0
    payload = {
        "family": family,
        "n": args.qubits,
        "mode": args.mode,
        "seed": args.seed,
        "layers": args.layers,
        "repeats": args.repeats,
        "k": report.k,
        "k_prime": report.k_prime,
        "counters": report.counters,
        "rank_trace": report.rank_trace,
        "mean_rank": report.mean_rank,
        "max_rank": report.max_rank,
        "generators": generator_set_to_dict(report.final),
        "prob_z": probs,
    }
    if args.timings:
        payload["timings"] = report.timings
    if args.dump_lut:
        partition = circ.divide_instruction(instructions, args.qubits)
        payload["lut"] = lut_to_json(create_lut_1q(partition))
    json.dump(payload, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return 0


def cmd_bench(args) -> int:
    lo, hi = args.qubits
    rows = []
    for n in range(lo, hi + 1):
        for repeats in args.repeats:
            instructions = build_circuit(args.circuit, n, args.layers, repeats, args.seed)
            for mode in args.modes:
                acc = {phase: 0.0 for phase in PHASES if phase != "total"}
                mean_rank = max_rank = 0
                for _ in range(args.iters):
                    report = engine_run(instructions, n, mode)
                    for phase, seconds in report.timings.items():
                        acc[phase] += seconds
                    mean_rank, max_rank = report.mean_rank, report.max_rank
                mean_timings = {p: s / args.iters for p, s in acc.items()}
                rows.extend(
                    _bench_rows(args.circuit, n, args.layers, repeats, mode,
                                args.seed, mean_timings, mean_rank, max_rank)
                )
    if args.out == "-":
        _write_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            _write_csv(rows, fh)
    return 0


def cmd_rank(args) -> int:
    instructions = build_circuit(
        args.circuit, args.qubits, args.layers, args.repeats, args.seed, args.edges
    )
    report = engine_run(instructions, args.qubits, args.mode)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(
        ["step", "kind", "mean_rank", "max_rank"]
        + [f"rank_{j}" for j in range(args.qubits)]
    )
    kinds = ["init"] + ["u" if bit == 0 else "v" for bit in report.order]
    for step, (kind, ranks) in enumerate(zip(kinds, report.rank_trace)):
        mean = sum(ranks) / len(ranks)
        writer.writerow([step, kind, f"{mean:.6g}", max(ranks)] + list(ranks))
    return 0


def verify_campaign(
    qubits: tuple[int, int],
    count: int,
    seed: int,
    max_gates: int,
    gates: Sequence[str] = circ.ALL_GATES,
) -> dict:
    """Run the differential campaign; returns a summary dict with failures."""
    lo, hi = qubits
    failures = []
    max_prob_dev = 0.0
    max_lambda_dev = 0.0
    for case in range(count):
        rng = np.random.default_rng([seed, case])
        n = int(rng.integers(lo, hi + 1))
        m = int(rng.integers(1, max_gates + 1))
        instructions = circ.gen_random(n, m, rng, gates)
        try:
            reports, agreement = _engine.run_all_modes(instructions, n)
        except (NumericalCollapseError, ResourceLimitError, ConsistencyError) as exc:
            failures.append({"case": case, "n": n, "m": m, "reason": str(exc)})
            continue
        if not agreement.index_sets_equal:
            failures.append({"case": case, "n": n, "m": m, "reason": "mode index sets differ"})
            continue
        max_lambda_dev = max(max_lambda_dev, agreement.max_lambda_deviation)
        if agreement.max_lambda_deviation >= VERIFY_LAMBDA_TOL:
            failures.append(
                {"case": case, "n": n, "m": m,
                 "reason": f"mode coefficient deviation {agreement.max_lambda_deviation:.3e}"}
            )
            continue
        psi = oracle.sv_run(instructions, n)
        final = reports[Mode.V3].final
        try:
            expansion = measure.density_expansion(final)
            for k in range(n):
                p0, _ = measure.prob_z(final, k, expansion)
                dev = abs(p0 - oracle.sv_prob_z(psi, k))
                max_prob_dev = max(max_prob_dev, dev)
                if dev >= VERIFY_PROB_TOL:
                    failures.append(
                        {"case": case, "n": n, "m": m,
                         "reason": f"oracle probability deviation {dev:.3e} on qubit {k}"}
                    )
                    break
        except (ConsistencyError, ResourceLimitError) as exc:
            failures.append({"case": case, "n": n, "m": m, "reason": str(exc)})
    return {
        "count": count,
        "qubits": list(qubits),
        "seed": seed,
        "max_gates": max_gates,
        "max_prob_deviation": max_prob_dev,
        "max_lambda_deviation": max_lambda_dev,
        "failures": failures,
    }


def cmd_verify(args) -> int:
    gates = tuple(g.upper() for g in args.gates.split(",")) if args.gates else circ.ALL_GATES
    summary = verify_campaign(args.qubits, args.count, args.seed, args.max_gates, gates)
    json.dump(summary, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    if summary["failures"]:
        for failure in summary["failures"]:
            print(
                f"FAIL case={failure['case']} seed={args.seed} "
                f"n={failure['n']} m={failure['m']}: {failure['reason']}",
                file=sys.stderr,
            )
        return 4
    return 0


def _add_circuit_args(p, include_mode=True):
    p.add_argument("--circuit", required=True,
                   help=f"circuit family {FAMILIES} or a circuit file path")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--layers", type=int, default=1)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--edges", type=_parse_edges, default=None,
                   help="graph family edges as 'a-b,c-d' (default: ring)")
    if include_mode:
        p.add_argument("--mode", choices=["v1", "v2", "v3"], default="v3")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabsim",
        description="Extended stabilizer-formalism circuit simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one circuit")
    _add_circuit_args(p_run)
    p_run.add_argument("--out", choices=["json", "csv"], default="json")
    p_run.add_argument("--timings", action="store_true",
                       help="include wall-clock timings in the JSON output")
    p_run.add_argument("--dump-lut", action="store_true",
                       help="include the single-qubit LUT tensor in the JSON output")
    p_run.set_defaults(func=cmd_run)

    p_bench = sub.add_parser("bench", help="benchmark sweep, CSV output")
    p_bench.add_argument("--circuit", required=True, choices=FAMILIES)
    p_bench.add_argument("--qubits", type=_parse_range, required=True,
                         help="qubit count or range a..b")
    p_bench.add_argument("--repeats", type=lambda s: [int(x) for x in s.split(",")],
                         default=[1], help="comma-separated repeat counts")
    p_bench.add_argument("--layers", type=int, default=1)
    p_bench.add_argument("--modes", type=lambda s: s.lower().split(","),
                         default=["v1", "v2", "v3"])
    p_bench.add_argument("--iters", type=int, default=10,
                         help="runs per configuration; timings are averaged")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", default="-", help="output CSV path or - for stdout")
    p_bench.set_defaults(func=cmd_bench)

    p_rank = sub.add_parser("rank", help="per-operator rank trace, CSV output")
    _add_circuit_args(p_rank)
    p_rank.set_defaults(func=cmd_rank)

    p_verify = sub.add_parser("verify", help="differential verification campaign")
    p_verify.add_argument("--qubits", type=_parse_range, default=(2, 5))
    p_verify.add_argument("--count", type=int, default=200)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--max-gates", type=int, default=60)
    p_verify.add_argument("--gates", default=None,
                          help="comma-separated gate subset (default: all)")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NumericalCollapseError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (circ.CircuitParseError, ValueError, OSError) as exc:
        parser.exit(2, f"error: {exc}\n")


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
