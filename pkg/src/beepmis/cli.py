"""Command-line entry point: single runs, batch experiments, presets, verification.

Exit codes: 0 success, 1 usage or parse error, 2 run hit the round cap,
3 verification failure.  All experiment output is reproducible from the
master seed; the environment variable BEEPMIS_SEED is used when --seed is
not given.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import isqrt
from typing import Callable

from . import engine
from .errors import BeepMISError, InvalidParameter
from .graph import (
    Graph,
    clique_family,
    complete_graph,
    erdos_renyi,
    grid_graph,
    parse_edge_list,
    path_graph,
)
from .metrics import (
    TrialRecord,
    filter_terminated,
    format_float,
    record_from_run,
    reference_curves,
    summarize,
    write_records,
)
from .policy import parse_policy
from .seeding import graph_seed, run_seed, stable_mix
from .verify import check_mis

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_TERMINATED = 2
EXIT_VERIFY_FAILED = 3

SEED_ENV_VAR = "BEEPMIS_SEED"

# Reproduction presets sample powers of two; the trial counts are fixed.
FIG3_N_VALUES = (16, 32, 64, 128, 256, 512, 1024)
FIG3_TRIALS = 100
FIG5_TRIALS = 200


class _UsageError(BeepMISError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we want exit 1
        raise _UsageError(message)


@dataclass(frozen=True)
class ExperimentSpec:
    """Declarative batch experiment: one policy, one graph family, many sizes.

    The per-trial seed is stable_mix(master_seed, n, trial_index) with n the
    requested size value, so trials are independent of execution order.
    """

    policy: str
    graph: str
    n_values: tuple[int, ...]
    trials: int
    master_seed: int
    max_rounds: int | None = None
    output: str | None = None


@dataclass(frozen=True)
class GraphFamily:
    """A graph family parameterized by the experiment size value n."""

    name: str
    build: Callable[[int, int], Graph]  # (n, seed) -> Graph
    param: Callable[[int], str]         # n -> CSV param column


def _int_field(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InvalidParameter(f"{what} must be an integer, got {text!r}") from None


def _float_field(text: str, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise InvalidParameter(f"{what} must be a number, got {text!r}") from None


def _grid_side(n: int) -> int:
    side = isqrt(n)
    if side * side < n:
        side += 1
    return side


def parse_graph_family(spec: str) -> GraphFamily:
    """Parse the n-parametric graph grammar used by experiments.

    Grammar: ``er:<p>`` | ``grid`` | ``clique`` | ``cliquefam`` | ``path`` |
    ``file:<path>``.  The experiment's n value supplies the size: node count
    for er and path, clique size, family parameter m, or the side of the
    smallest square grid with at least n nodes.  For ``file:`` the graph is
    fixed and n is ignored.
    """
    head, sep, rest = spec.partition(":")
    if head == "er" and sep:
        p = _float_field(rest, "edge probability")
        return GraphFamily("er", lambda n, seed: erdos_renyi(n, p, seed), lambda n: format_float(p))
    if spec == "grid":
        return GraphFamily(
            "grid",
            lambda n, seed: grid_graph(_grid_side(n), _grid_side(n)),
            lambda n: f"{_grid_side(n)}x{_grid_side(n)}",
        )
    if spec == "clique":
        return GraphFamily("clique", lambda n, seed: complete_graph(n), lambda n: str(n))
    if spec == "cliquefam":
        return GraphFamily("cliquefam", lambda n, seed: clique_family(n), lambda n: str(n))
    if spec == "path":
        return GraphFamily("path", lambda n, seed: path_graph(n), lambda n: "")
    if head == "file" and sep:
        return GraphFamily("file", lambda n, seed: _load_graph_file(rest), lambda n: os.path.basename(rest))
    raise InvalidParameter(f"unknown graph family {spec!r}")


def _load_graph_file(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as f:
        return parse_edge_list(f.read())


def build_run_graph(spec: str, master_seed: int) -> Graph:
    """Parse the fully instantiated graph grammar used by single runs.

    Grammar: ``er:<n>,<p>`` | ``grid:<r>,<c>`` | ``clique:<d>`` |
    ``cliquefam:<m>`` | ``path:<n>`` | ``file:<path>``.  Random families draw
    from a sub-seed of the master seed.
    """
    head, sep, rest = spec.partition(":")
    if head == "er" and sep:
        parts = rest.split(",")
        if len(parts) != 2:
            raise InvalidParameter(f"er takes n,p, got {rest!r}")
        n = _int_field(parts[0], "er node count")
        p = _float_field(parts[1], "er edge probability")
        return erdos_renyi(n, p, graph_seed(master_seed))
    if head == "grid" and sep:
        parts = rest.split(",")
        if len(parts) != 2:
            raise InvalidParameter(f"grid takes rows,cols, got {rest!r}")
        return grid_graph(_int_field(parts[0], "rows"), _int_field(parts[1], "cols"))
    if head == "clique" and sep:
        return complete_graph(_int_field(rest, "clique size"))
    if head == "cliquefam" and sep:
        return clique_family(_int_field(rest, "family parameter"))
    if head == "path" and sep:
        return path_graph(_int_field(rest, "path length"))
    if head == "file" and sep:
        return _load_graph_file(rest)
    raise InvalidParameter(f"unknown graph spec {spec!r}")


def run_trial(spec: ExperimentSpec, n: int, trial: int) -> TrialRecord:
    """Execute one trial of an experiment; pure function of the arguments."""
    family = parse_graph_family(spec.graph)
    policy = parse_policy(spec.policy)
    trial_seed = stable_mix(spec.master_seed, n, trial)
    g = family.build(n, graph_seed(trial_seed))
    result = engine.run(g, policy, run_seed(trial_seed), spec.max_rounds)
    return record_from_run(policy.name, family.name, family.param(n), trial, trial_seed, result)


def _run_trial_task(task: tuple[ExperimentSpec, int, int]) -> TrialRecord:
    spec, n, trial = task
    return run_trial(spec, n, trial)


def run_experiment(spec: ExperimentSpec, jobs: int = 1) -> list[TrialRecord]:
    """Run trials x |n_values| runs; rows come back sorted by (n, trial).

    Trials may execute in parallel; the sort (stable, so families that map
    several requested sizes to one node count keep spec order) makes the
    result independent of scheduling.
    """
    if spec.trials < 1:
        raise InvalidParameter(f"trials must be >= 1, got {spec.trials}")
    for n in spec.n_values:
        if n < 1:
            raise InvalidParameter(f"n values must be >= 1, got {n}")
    parse_graph_family(spec.graph)  # fail fast on bad grammar
    parse_policy(spec.policy)
    tasks = [(spec, n, trial) for n in spec.n_values for trial in range(spec.trials)]
    if jobs <= 1:
        records = [run_trial(spec, n, trial) for _, n, trial in tasks]
    else:
        chunk = max(1, len(tasks) // (jobs * 8))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_trial_task, tasks, chunksize=chunk))
    records.sort(key=lambda r: (r.n, r.trial))
    return records


def _group_keys(records: list[TrialRecord]) -> list[tuple[str, str, int]]:
    keys = []
    seen = set()
    for r in records:
        key = (r.policy, r.graph, r.n)
        if key not in seen:
            seen.add(key)
            keys.append(key)
    return keys


def print_summaries(records: list[TrialRecord]) -> None:
    """One line of summary statistics per (policy, graph, n) group."""
    for policy, graph_name, n in _group_keys(records):
        batch = [r for r in records if (r.policy, r.graph, r.n) == (policy, graph_name, n)]
        done = filter_terminated(batch)
        prefix = f"policy={policy} graph={graph_name} n={n} trials={len(batch)} terminated={len(done)}"
        if not done:
            print(f"{prefix} (no terminated trials)")
            continue
        rounds = summarize(done, "rounds")
        beeps = summarize(done, "beeps_per_node")
        mis = summarize(done, "mis_size")
        print(
            f"{prefix} rounds mean={rounds.mean:.2f} sd={rounds.stddev:.2f}"
            f" beeps/node mean={beeps.mean:.3f} mis mean={mis.mean:.1f}"
        )


def _resolve_seed(arg_seed: int | None) -> int:
    if arg_seed is not None:
        return arg_seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from None
    return 0


def cmd_run(args) -> int:
    master = _resolve_seed(args.seed)
    g = build_run_graph(args.graph, master)
    policy = parse_policy(args.policy)
    result = engine.run(g, policy, run_seed(master), args.max_rounds, keep_trace=args.trace)
    beeps_per_node = result.total_beeps / g.node_count if g.node_count else 0.0
    print(
        f"policy={policy.name} graph={args.graph} n={g.node_count} seed={master}"
        f" terminated={'true' if result.terminated else 'false'} rounds={result.rounds}"
        f" total_beeps={result.total_beeps} beeps_per_node={format_float(beeps_per_node)}"
        f" mis_size={len(result.mis)}"
    )
    if args.show_mis:
        print("mis=" + " ".join(str(v) for v in sorted(result.mis)))
    if args.trace and result.trace:
        for i, outcome in enumerate(result.trace, start=1):
            print(
                f"round {i}: beeped={sorted(outcome.beeped)}"
                f" joined={sorted(outcome.joined_mis)}"
                f" deactivated={sorted(outcome.newly_inactive)}"
            )
    if result.terminated:
        report = check_mis(g, result.mis)
        if not report.ok:
            _print_witnesses(report)
            return EXIT_VERIFY_FAILED
        return EXIT_OK
    return EXIT_NOT_TERMINATED


def _print_witnesses(report) -> None:
    if report.witness_edge:
        u, v = report.witness_edge
        print(f"witness: edge ({u},{v})")
    if report.witness_vertex is not None:
        print(f"witness: vertex {report.witness_vertex} addable")


def cmd_experiment(args) -> int:
    spec = ExperimentSpec(
        policy=args.policy,
        graph=args.graph,
        n_values=tuple(args.n),
        trials=args.trials,
        master_seed=_resolve_seed(args.seed),
        max_rounds=args.max_rounds,
        output=args.output,
    )
    records = run_experiment(spec, jobs=args.jobs)
    write_records(spec.output, records)
    print_summaries(records)
    print(f"wrote {len(records)} rows to {spec.output}")
    return EXIT_OK


def cmd_lowerbound(args) -> int:
    master = _resolve_seed(args.seed)
    for m in args.m:
        if m < 1:
            raise InvalidParameter(f"m must be >= 1, got {m}")
    records: list[TrialRecord] = []
    for policy_name in args.policies:
        spec = ExperimentSpec(
            policy=policy_name,
            graph="cliquefam",
            n_values=tuple(args.m),
            trials=args.trials,
            master_seed=master,
            max_rounds=args.max_rounds,
        )
        records.extend(run_experiment(spec, jobs=args.jobs))
    write_records(args.output, records)
    print_summaries(records)
    # Paired comparison: same trial seeds for every policy at a given m.
    if len(args.policies) == 2:
        first, second = args.policies
        for m in args.m:
            param = str(m)
            a = filter_terminated([r for r in records if r.policy == first and r.param == param])
            b = filter_terminated([r for r in records if r.policy == second and r.param == param])
            if a and b:
                ratio = summarize(b, "rounds").mean / summarize(a, "rounds").mean
                print(f"m={m} {second}/{first} mean-rounds ratio={ratio:.3f}")
    print(f"wrote {len(records)} rows to {args.output}")
    return EXIT_OK


def cmd_verify(args) -> int:
    with open(args.graph_file, "r", encoding="utf-8") as f:
        g = parse_edge_list(f.read())
    candidate = set()
    with open(args.set_file, "r", encoding="utf-8") as f:
        for i, raw in enumerate(f.read().splitlines(), start=1):
            text = raw.strip()
            if not text:
                continue
            try:
                candidate.add(int(text))
            except ValueError:
                raise InvalidParameter(f"line {i}: set entries must be integers, got {raw!r}") from None
    report = check_mis(g, candidate)
    if report.ok:
        print(f"ok: independent maximal set of size {len(candidate)}")
        return EXIT_OK
    _print_witnesses(report)
    return EXIT_VERIFY_FAILED


def cmd_reproduce_fig3(args) -> int:
    """Round-count scaling comparison: feedback vs sweep on G(n, 1/2), 100 trials."""
    master = _resolve_seed(args.seed)
    ns = tuple(args.n) if args.n else FIG3_N_VALUES
    records: list[TrialRecord] = []
    for policy_name in ("feedback", "sweep"):
        spec = ExperimentSpec(policy_name, "er:0.5", ns, FIG3_TRIALS, master)
        records.extend(run_experiment(spec, jobs=args.jobs))
    write_records(args.output, records)
    for n in ns:
        fb = filter_terminated([r for r in records if r.policy == "feedback" and r.n == n])
        sw = filter_terminated([r for r in records if r.policy == "sweep" and r.n == n])
        if n >= 2 and fb and sw:
            log2n, log2n_sq, scaled = reference_curves(n)
            print(
                f"n={n} feedback mean={summarize(fb, 'rounds').mean:.2f} (2.5*log2 n={scaled:.2f})"
                f" sweep mean={summarize(sw, 'rounds').mean:.2f} (log2^2 n={log2n_sq:.2f})"
            )
    print(f"wrote {len(records)} rows to {args.output}")
    return EXIT_OK


def cmd_reproduce_fig5(args) -> int:
    """Beeps-per-node scaling: feedback vs sweep on G(n, 1/2) and square grids, 200 trials."""
    master = _resolve_seed(args.seed)
    ns = tuple(args.n) if args.n else FIG3_N_VALUES
    records: list[TrialRecord] = []
    for family in ("er:0.5", "grid"):
        for policy_name in ("feedback", "sweep"):
            spec = ExperimentSpec(policy_name, family, ns, FIG5_TRIALS, master)
            records.extend(run_experiment(spec, jobs=args.jobs))
    write_records(args.output, records)
    print_summaries(records)
    print(f"wrote {len(records)} rows to {args.output}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="beepmis", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a single run")
    p_run.add_argument("--graph", required=True,
                       help="er:<n>,<p> | grid:<r>,<c> | clique:<d> | cliquefam:<m> | path:<n> | file:<path>")
    p_run.add_argument("--policy", required=True,
                       help="feedback | feedback:f=<f>,init=<p>,cap=<c> | sweep | const:<p>")
    p_run.add_argument("--seed", type=int, default=None, help=f"master seed (default: ${SEED_ENV_VAR} or 0)")
    p_run.add_argument("--max-rounds", type=int, default=None, dest="max_rounds")
    p_run.add_argument("--show-mis", action="store_true", dest="show_mis")
    p_run.add_argument("--trace", action="store_true", help="print per-round beeped/joined/deactivated sets")
    p_run.set_defaults(func=cmd_run)

    p_exp = sub.add_parser("experiment", help="run a trial batch and write CSV")
    p_exp.add_argument("--graph", required=True,
                       help="er:<p> | grid | clique | cliquefam | path | file:<path>")
    p_exp.add_argument("--policy", required=True)
    p_exp.add_argument("--n", type=int, nargs="+", required=True, help="size values")
    p_exp.add_argument("--trials", type=int, default=100)
    p_exp.add_argument("--seed", type=int, default=None)
    p_exp.add_argument("--max-rounds", type=int, default=None, dest="max_rounds")
    p_exp.add_argument("--output", default="experiment.csv")
    p_exp.add_argument("--jobs", type=int, default=1)
    p_exp.set_defaults(func=cmd_experiment)

    p_low = sub.add_parser("lowerbound", help="sweep vs feedback on clique families")
    p_low.add_argument("--m", type=int, nargs="+", default=[4, 6, 8, 10])
    p_low.add_argument("--policies", nargs="+", default=["feedback", "sweep"])
    p_low.add_argument("--trials", type=int, default=100)
    p_low.add_argument("--seed", type=int, default=None)
    p_low.add_argument("--max-rounds", type=int, default=None, dest="max_rounds")
    p_low.add_argument("--output", default="lowerbound.csv")
    p_low.add_argument("--jobs", type=int, default=1)
    p_low.set_defaults(func=cmd_lowerbound)

    p_ver = sub.add_parser("verify", help="check a node set against a graph file")
    p_ver.add_argument("graph_file")
    p_ver.add_argument("set_file", help="one node index per line")
    p_ver.set_defaults(func=cmd_verify)

    p_f3 = sub.add_parser("reproduce-fig3", help="round-count scaling preset (100 trials)")
    p_f3.add_argument("--n", type=int, nargs="+", default=None)
    p_f3.add_argument("--seed", type=int, default=None)
    p_f3.add_argument("--output", default="fig3.csv")
    p_f3.add_argument("--jobs", type=int, default=1)
    p_f3.set_defaults(func=cmd_reproduce_fig3)

    p_f5 = sub.add_parser("reproduce-fig5", help="beeps-per-node scaling preset (200 trials)")
    p_f5.add_argument("--n", type=int, nargs="+", default=None)
    p_f5.add_argument("--seed", type=int, default=None)
    p_f5.add_argument("--output", default="fig5.csv")
    p_f5.add_argument("--jobs", type=int, default=1)
    p_f5.set_defaults(func=cmd_reproduce_fig5)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BeepMISError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
