"""Trial records, summary statistics, reference curves, and the CSV schema."""

from __future__ import annotations

import csv
import math
import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptySample, InvalidParameter

CSV_HEADER = (
    "policy", "graph", "n", "param", "trial", "seed",
    "rounds", "terminated", "total_beeps", "beeps_per_node", "mis_size",
)


@dataclass(frozen=True)
class TrialRecord:
    """One simulation run, one CSV row."""

    policy: str
    graph: str
    n: int
    param: str
    trial: int
    seed: int
    rounds: int
    terminated: bool
    total_beeps: int
    beeps_per_node: float
    mis_size: int


def record_from_run(policy_name: str, graph_name: str, param: str, trial: int,
                    seed: int, result) -> TrialRecord:
    """Build a TrialRecord from a RunResult; n is the actual node count."""
    n = len(result.beep_counts)
    return TrialRecord(
        policy=policy_name,
        graph=graph_name,
        n=n,
        param=param,
        trial=trial,
        seed=seed,
        rounds=result.rounds,
        terminated=result.terminated,
        total_beeps=result.total_beeps,
        beeps_per_node=result.total_beeps / n if n else 0.0,
        mis_size=len(result.mis),
    )


@dataclass(frozen=True)
class SummaryStats:
    """Mean and spread of one numeric field over a batch of trials."""

    count: int
    mean: float
    stddev: float
    minimum: float
    maximum: float
    sample: bool = True  # stddev uses the N-1 divisor


def summarize(records: Sequence, field: str) -> SummaryStats:
    """Arithmetic mean and sample standard deviation of a numeric field.

    A single record gives stddev 0; an empty batch raises EmptySample.
    Permutation invariant.
    """
    values = [float(getattr(r, field)) for r in records]
    if not values:
        raise EmptySample(f"no records to summarize for field {field!r}")
    return SummaryStats(
        count=len(values),
        mean=statistics.fmean(values),
        stddev=statistics.stdev(values) if len(values) > 1 else 0.0,
        minimum=min(values),
        maximum=max(values),
    )


def filter_terminated(records: Iterable[TrialRecord]) -> list[TrialRecord]:
    """Trials that finished within the round cap.

    Round-count statistics are taken over these only; callers report the
    non-terminated count separately, since a round-cap blowup is itself the
    signal in the lower-bound experiments.
    """
    return [r for r in records if r.terminated]


def reference_curves(n: int) -> tuple[float, float, float]:
    """Reference values (log2 n, (log2 n)^2, 2.5 * log2 n) for scaling plots."""
    if not isinstance(n, int) or n < 2:
        raise InvalidParameter(f"reference_curves requires n >= 2, got {n!r}")
    log2n = math.log2(n)
    return log2n, log2n * log2n, 2.5 * log2n


def format_float(x: float) -> str:
    """Floats in CSV carry up to 6 significant digits."""
    return f"{x:.6g}"


def record_to_row(r: TrialRecord) -> list[str]:
    return [
        r.policy,
        r.graph,
        str(r.n),
        r.param,
        str(r.trial),
        str(r.seed),
        str(r.rounds),
        "true" if r.terminated else "false",
        str(r.total_beeps),
        format_float(r.beeps_per_node),
        str(r.mis_size),
    ]


def write_records(path: str, records: Iterable[TrialRecord]) -> None:
    """Write records as CSV (header, LF line endings, byte-deterministic)."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(record_to_row(r))


def read_records(path: str) -> list[TrialRecord]:
    """Read back a CSV written by write_records."""
    records = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != list(CSV_HEADER):
            raise InvalidParameter(f"unexpected CSV header {header!r}")
        for row in reader:
            records.append(TrialRecord(
                policy=row[0],
                graph=row[1],
                n=int(row[2]),
                param=row[3],
                trial=int(row[4]),
                seed=int(row[5]),
                rounds=int(row[6]),
                terminated=row[7] == "true",
                total_beeps=int(row[8]),
                beeps_per_node=float(row[9]),
                mis_size=int(row[10]),
            ))
    return records
