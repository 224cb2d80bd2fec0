"""Command line interface.

Subcommands:

* gen     write an instance file (random, network-based, or the demo)
* encode  emit the DIMACS reachability formula plus a layout sidecar
* synth   decide reachability and print a verified witness
* verify  replay a witness file against an instance
* oracle  breadth-first reference search (independent of the SAT pipeline)
* bench   run a family of instances and print a result table

Exit codes for synth/oracle: 0 reachable, 1 unreachable, 2 unknown.  verify
exits 0 when the witness checks out and 1 when it does not.  Bad inputs exit
with the usage code 64.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence, Tuple

from .driver import Limits, SynthesisOutcome, Verdict, completeness_threshold, synthesize
from .encoding import SynthesisInstance, encode_bmc, layout_to_text
from .generators import (
    builtin_network_14,
    erdos_renyi,
    ghz_target,
    network_graph,
    random_D,
    read_instance,
    secret_sharing_demo,
    write_instance,
)
from .cnf import write_dimacs
from .oracle import StateCapExceeded, DEFAULT_STATE_CAP, reachable_bfs
from .solvers import SOLVER_ENV_VAR, resolve_backend
from .witness import operations_from_text, replay_verify, witness_from_operations, witness_to_text

EXIT_REACHABLE = 0
EXIT_UNREACHABLE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64

_VERDICT_EXIT = {
    Verdict.REACHABLE: EXIT_REACHABLE,
    Verdict.UNREACHABLE: EXIT_UNREACHABLE,
    Verdict.UNKNOWN: EXIT_UNKNOWN,
}


def _read_instance_file(path: str) -> Tuple[SynthesisInstance, Dict[str, str]]:
    try:
        with open(path) as fh:
            return read_instance(fh.read())
    except OSError as exc:
        raise SystemExit(f"gssynth: cannot read {path}: {exc.strerror}") from exc
    except ValueError as exc:
        raise SystemExit(f"gssynth: bad instance file {path}: {exc}") from exc


def _write_output(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _parse_int_list(text: str) -> List[int]:
    return [int(tok) for tok in text.replace(",", " ").split()]


# --- gen -------------------------------------------------------------------------


def _build_instance(
    family: str,
    n: int,
    p: float,
    seed: int,
    d_size: int,
    parties: Optional[Sequence[int]],
) -> Tuple[SynthesisInstance, Dict[str, str]]:
    if family == "er":
        source = erdos_renyi(n, p, seed)
        chosen = tuple(parties) if parties else tuple(range(min(4, n)))
        target = ghz_target(n, chosen)
        meta = {"family": "er", "n": str(n), "p": str(p), "seed": str(seed)}
    elif family == "network":
        topo = builtin_network_14()
        n = topo.n
        source = network_graph(topo, p, seed)
        chosen = tuple(parties) if parties else topo.end_nodes
        target = ghz_target(n, chosen)
        meta = {"family": "network", "p": str(p), "seed": str(seed)}
    elif family == "demo":
        inst = secret_sharing_demo()
        return inst, {"family": "demo"}
    else:
        raise SystemExit(f"gssynth: unknown family {family!r}")
    designated = random_D(n, d_size, seed + 1) if d_size else ()
    if d_size:
        meta["d_size"] = str(d_size)
    return SynthesisInstance(source, target, designated), meta


def cmd_gen(args: argparse.Namespace) -> int:
    parties = _parse_int_list(args.parties) if args.parties else None
    try:
        inst, meta = _build_instance(
            args.family, args.n, args.p, args.seed, args.d_size, parties
        )
    except ValueError as exc:
        raise SystemExit(f"gssynth: {exc}") from exc
    _write_output(write_instance(inst, meta), args.out)
    return 0


# --- encode ----------------------------------------------------------------------


def cmd_encode(args: argparse.Namespace) -> int:
    inst, _ = _read_instance_file(args.instance)
    if args.states < 1:
        raise SystemExit("gssynth: --states must be at least 1")
    formula, layout = encode_bmc(inst, args.states)
    _write_output(write_dimacs(formula), args.out_prefix + ".cnf")
    _write_output(layout_to_text(layout), args.out_prefix + ".layout")
    print(f"wrote {args.out_prefix}.cnf ({formula.num_vars} vars, "
          f"{len(formula.clauses)} clauses) and {args.out_prefix}.layout")
    return 0


# --- synth -----------------------------------------------------------------------


def _print_outcome(inst: SynthesisInstance, outcome: SynthesisOutcome) -> None:
    print("states  vars  clauses  status   seconds")
    for probe in outcome.probes:
        print(
            f"{probe.num_states:<7} {probe.num_vars:<5} {probe.num_clauses:<8} "
            f"{probe.status.value:<8} {probe.seconds:.3f}"
        )
    print(f"verdict {outcome.verdict.value}")
    if outcome.reason:
        print(f"reason {outcome.reason}")
    print(f"threshold {outcome.threshold.max_transitions}"
          f" (sound {str(outcome.threshold.sound).lower()})")
    print(f"solver_seconds {outcome.solver_seconds:.3f}")
    if outcome.witness is not None:
        print(f"operations {len(outcome.witness.operations)}")
        for line in witness_to_text(outcome.witness, inst.designated).splitlines():
            print(f"op {line}")


def cmd_synth(args: argparse.Namespace) -> int:
    inst, _ = _read_instance_file(args.instance)
    backend = resolve_backend(args.solver)
    limits = Limits(
        solve_seconds=args.solve_timeout,
        total_seconds=args.budget,
        max_operations=args.max_ops,
    )
    outcome = synthesize(inst, backend, limits)
    _print_outcome(inst, outcome)
    if args.witness_out and outcome.witness is not None:
        _write_output(witness_to_text(outcome.witness, inst.designated), args.witness_out)
    return _VERDICT_EXIT[outcome.verdict]


# --- verify ----------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    inst, _ = _read_instance_file(args.instance)
    try:
        with open(args.witness) as fh:
            operations = operations_from_text(fh.read(), inst.designated)
    except OSError as exc:
        raise SystemExit(f"gssynth: cannot read {args.witness}: {exc.strerror}") from exc
    except ValueError as exc:
        raise SystemExit(f"gssynth: bad witness file: {exc}") from exc
    try:
        witness = witness_from_operations(inst, operations)
    except ValueError as exc:
        print(f"witness invalid: {exc}")
        return 1
    report = replay_verify(inst, witness)
    if report.ok:
        print(f"witness ok ({len(operations)} operations)")
        return 0
    print(f"witness invalid: {report.message}")
    return 1


# --- oracle ----------------------------------------------------------------------


def cmd_oracle(args: argparse.Namespace) -> int:
    inst, _ = _read_instance_file(args.instance)
    try:
        result = reachable_bfs(inst, state_cap=args.state_cap)
    except StateCapExceeded as exc:
        print(f"verdict unknown\nreason {exc}")
        return EXIT_UNKNOWN
    if not result.reachable:
        print(f"verdict unreachable\nexplored {result.explored}")
        return EXIT_UNREACHABLE
    print(f"verdict reachable\noperations {result.shortest_length}")
    witness = witness_from_operations(inst, result.shortest)
    for line in witness_to_text(witness, inst.designated).splitlines():
        print(f"op {line}")
    return EXIT_REACHABLE


# --- bench -----------------------------------------------------------------------


def _bench_one(task: Tuple) -> List[str]:
    family, n, p, seed, d_size, solver_spec, solve_timeout, budget, max_ops, timing = task
    inst, _ = _build_instance(family, n, p, seed, d_size, None)
    backend = resolve_backend(solver_spec)
    outcome = synthesize(
        inst,
        backend,
        Limits(solve_seconds=solve_timeout, total_seconds=budget, max_operations=max_ops),
    )
    ops = "" if outcome.witness is None else str(len(outcome.witness.operations))
    row = [
        family,
        str(inst.n),
        str(p),
        str(seed),
        str(d_size),
        outcome.verdict.value,
        ops,
        str(len(outcome.probes)),
    ]
    if timing:
        row.append(f"{outcome.solver_seconds:.3f}")
    return row


def cmd_bench(args: argparse.Namespace) -> int:
    if args.family == "demo":
        raise SystemExit("gssynth: bench needs a parameterized family (er or network)")
    sizes = _parse_int_list(args.sizes) if args.family == "er" else [builtin_network_14().n]
    probabilities = [float(tok) for tok in args.p.replace(",", " ").split()]
    seeds = list(range(args.seeds))
    timing = not args.no_timing
    solver_spec = args.solver if args.solver is not None else os.environ.get(SOLVER_ENV_VAR)
    tasks = [
        (args.family, n, p, seed, args.d_size, solver_spec,
         args.solve_timeout, args.budget, args.max_ops, timing)
        for n in sizes
        for p in probabilities
        for seed in seeds
    ]
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            rows = pool.map(_bench_one, tasks)
    else:
        rows = [_bench_one(task) for task in tasks]
    header = ["family", "n", "p", "seed", "d_size", "verdict", "operations", "probes"]
    if timing:
        header.append("solver_seconds")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _write_output(buffer.getvalue(), args.out)
    return 0


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gssynth",
        description="Synthesize transformations between graph states with SAT.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen.add_argument("--family", choices=("er", "network", "demo"), required=True)
    gen.add_argument("--n", type=int, default=10, help="vertex count (er family)")
    gen.add_argument("--p", type=float, default=0.8, help="edge/link probability")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--d-size", type=int, default=0,
                     help="number of designated pairs (drawn with seed+1)")
    gen.add_argument("--parties",
                     help="comma separated party vertices for the target "
                          "(default: first min(4, n) vertices, or the end nodes "
                          "for the network family)")
    gen.add_argument("--out", help="output file (default stdout)")
    gen.set_defaults(func=cmd_gen)

    enc = sub.add_parser("encode", help="emit DIMACS and a layout sidecar")
    enc.add_argument("instance")
    enc.add_argument("--states", type=int, required=True,
                     help="states in the unrolling (operations + 1)")
    enc.add_argument("--out-prefix", required=True)
    enc.set_defaults(func=cmd_encode)

    syn = sub.add_parser("synth", help="decide reachability and print a witness")
    syn.add_argument("instance")
    syn.add_argument("--solver",
                     help=f"solver command, or 'builtin' (default: ${SOLVER_ENV_VAR}, "
                          "then a known solver on PATH, then builtin)")
    syn.add_argument("--solve-timeout", type=float, help="seconds per solver call")
    syn.add_argument("--budget", type=float, help="seconds for the whole search")
    syn.add_argument("--max-ops", type=int, help="override the depth cap")
    syn.add_argument("--witness-out", help="write the witness to this file")
    syn.set_defaults(func=cmd_synth)

    ver = sub.add_parser("verify", help="replay a witness file")
    ver.add_argument("instance")
    ver.add_argument("witness")
    ver.set_defaults(func=cmd_verify)

    orc = sub.add_parser("oracle", help="breadth-first reference search")
    orc.add_argument("instance")
    orc.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
    orc.set_defaults(func=cmd_oracle)

    ben = sub.add_parser("bench", help="run an instance family and tabulate results")
    ben.add_argument("--family", choices=("er", "network"), required=True)
    ben.add_argument("--sizes", default="10", help="comma separated n values (er)")
    ben.add_argument("--p", default="0.8", help="comma separated probabilities")
    ben.add_argument("--seeds", type=int, default=3, help="seeds 0..k-1")
    ben.add_argument("--d-size", type=int, default=0)
    ben.add_argument("--solver")
    ben.add_argument("--solve-timeout", type=float)
    ben.add_argument("--budget", type=float)
    ben.add_argument("--max-ops", type=int)
    ben.add_argument("--jobs", type=int, default=1)
    ben.add_argument("--no-timing", action="store_true",
                     help="omit the seconds column for byte-reproducible output")
    ben.add_argument("--out", help="output file (default stdout)")
    ben.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return EXIT_USAGE
        raise


if __name__ == "__main__":
    sys.exit(main())
