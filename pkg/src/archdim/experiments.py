"""Reproducible experiment harness: growth sweeps, randomized-architecture
Monte Carlo, and witness-vs-Haar comparisons.

All randomness derives from a caller-supplied master seed by counter, so a
given seed reproduces identical numbers regardless of worker count.  Rows
carry wall-clock milliseconds for operator convenience; every other column
is deterministic.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass

from .architecture import Architecture, brickwork, detect_staircase_slices, \
    random_adjacent, staircase
from .bounds import randomized_bound_probability, staircase_slice_probability
from .contraction import (
    DEFAULT_N_MAX,
    DEFAULT_TOLERANCES,
    RankReport,
    accessible_dimension,
    numerical_rank,
    subseed,
    tangent_frame,
)
from .errors import ValidationError, VerdictError
from .witness import witness_point

# Two-sided 99% normal quantile for the binomial interval.
_Z_99 = 2.5758293035489004

CSV_HEADER = "n,family,T,R,L,dA,witness_rank,lower,upper,cap,samples,seed,ms"


def _build_family(family: str, n: int, t_slices: int) -> Architecture:
    if family == "staircase":
        return staircase(n, t_slices)
    if family == "brickwork":
        return brickwork(n, n * t_slices)
    raise ValidationError(f"unknown family {family!r}")


@dataclass(frozen=True)
class SweepRow:
    n: int
    family: str
    t_slices: int
    r_gates: int
    l_gates: int
    accessible: int | None
    witness_rank: int | None
    lower: int
    upper: int
    cap: int
    samples: int
    seed: int
    ms: int

    def csv_line(self) -> str:
        d = "" if self.accessible is None else str(self.accessible)
        w = "" if self.witness_rank is None else str(self.witness_rank)
        return (f"{self.n},{self.family},{self.t_slices},{self.r_gates},"
                f"{self.l_gates},{d},{w},{self.lower},{self.upper},{self.cap},"
                f"{self.samples},{self.seed},{self.ms}")


def check_ramp(rows: list[SweepRow]) -> None:
    """Assert the ramp shape on the conclusive rows of one sweep.

    The consensus dimension must be nondecreasing, gain at least one per
    slice while below the cap, stay at or above the slice count until the
    cap, and sit exactly at the cap from then on.
    """
    conclusive = [r for r in rows if r.accessible is not None]
    prev: SweepRow | None = None
    for row in conclusive:
        d = row.accessible
        cap = row.cap
        if row.t_slices <= cap and d < row.t_slices:
            raise VerdictError(
                f"T={row.t_slices}: dimension {d} below slice count")
        if row.t_slices >= cap and d != cap:
            raise VerdictError(
                f"T={row.t_slices}: dimension {d} should sit at cap {cap}")
        if prev is not None and prev.accessible is not None:
            if d < prev.accessible:
                raise VerdictError(
                    f"T={row.t_slices}: dimension decreased "
                    f"{prev.accessible} -> {d}")
            gap = row.t_slices - prev.t_slices
            if prev.accessible < cap and d < min(cap, prev.accessible + gap):
                raise VerdictError(
                    f"T={row.t_slices}: slope below one per slice "
                    f"({prev.accessible} -> {d})")
        prev = row


def growth_sweep(n: int, family: str, t_max: int, samples: int = 5,
                 seed: int = 0, mode: str = "unitary",
                 tolerances: tuple[float, float] = DEFAULT_TOLERANCES,
                 n_max: int = DEFAULT_N_MAX, workers: int = 1,
                 ) -> list[SweepRow]:
    """One row per slice count T = 1..t_max, ramp shape asserted.

    Inconclusive consensus ranks propagate as empty dimension cells; the
    sweep continues and the ramp check skips them.
    """
    if t_max < 1:
        raise ValidationError(f"t_max must be positive, got {t_max}")
    rows: list[SweepRow] = []
    for t in range(1, t_max + 1):
        arch = _build_family(family, n, t)
        started = time.perf_counter()
        report = accessible_dimension(
            arch, mode, samples, subseed(seed, t), tolerances, n_max, workers)
        cert = witness_point(arch, mode)
        westimate = numerical_rank(
            tangent_frame(arch, cert.to_gate_assignment(), mode, n_max),
            tolerances)
        ms = int(round((time.perf_counter() - started) * 1000))
        rows.append(SweepRow(
            n=n, family=family, t_slices=t, r_gates=arch.gate_count,
            l_gates=arch.gate_count // t, accessible=report.consensus,
            witness_rank=westimate.rank, lower=report.lower_bound,
            upper=report.upper_bound, cap=report.cap, samples=samples,
            seed=seed, ms=ms))
    check_ramp(rows)
    return rows


def rows_to_csv(rows: list[SweepRow], header_comment: str | None = None) -> str:
    lines = []
    if header_comment:
        lines.append(f"# {header_comment}")
    lines.append(CSV_HEADER)
    lines.extend(r.csv_line() for r in rows)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MonteCarloSummary:
    """Empirical causal fraction of random adjacent-gate blocks vs exact p."""

    n: int
    trials: int
    block_gates: int
    seed: int
    causal_blocks: int
    empirical: float
    exact: float
    interval: tuple[float, float]
    within_interval: bool
    alpha: float
    probability_bound: float
    complexity_threshold: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "block_gates": self.block_gates,
            "seed": self.seed,
            "causal_blocks": self.causal_blocks,
            "empirical": self.empirical,
            "exact": self.exact,
            "interval_99": list(self.interval),
            "within_interval": self.within_interval,
            "alpha": self.alpha,
            "probability_bound": self.probability_bound,
            "complexity_threshold": self.complexity_threshold,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def randomized_architecture_experiment(n: int, trials: int, seed: int,
                                       alpha: float = 0.5,
                                       ) -> MonteCarloSummary:
    """Sample ``trials`` blocks of n(n-1)^2 uniformly placed adjacent gates
    and compare the causal fraction against the exact product formula.

    The 99% interval is the normal approximation around the exact p; the
    summary also evaluates the implied complexity statement at ``alpha``.
    """
    if trials < 1:
        raise ValidationError(f"trials must be positive, got {trials}")
    block = n * (n - 1) ** 2
    r_total = trials * block
    arch = random_adjacent(n, r_total, seed)
    reports = detect_staircase_slices(arch)
    full = [r for r in reports if r.complete]
    hits = sum(1 for r in full if r.causal)
    p_hat = hits / trials
    exact = staircase_slice_probability(n).value
    half = _Z_99 * math.sqrt(exact * (1.0 - exact) / trials)
    interval = (exact - half, exact + half)
    threshold = alpha * r_total / (9 * n * (n - 1) ** 2) - n / 3.0
    return MonteCarloSummary(
        n=n, trials=trials, block_gates=block, seed=seed, causal_blocks=hits,
        empirical=p_hat, exact=exact, interval=interval,
        within_interval=interval[0] <= p_hat <= interval[1], alpha=alpha,
        probability_bound=randomized_bound_probability(n, alpha),
        complexity_threshold=threshold)


@dataclass(frozen=True)
class WitnessComparison:
    """Witness-point rank next to the Haar consensus for one architecture."""

    n: int
    family: str
    t_slices: int
    witness_rank: int
    report: RankReport

    @property
    def consensus(self) -> int | None:
        return self.report.consensus

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "family": self.family,
            "T": self.t_slices,
            "witness_rank": self.witness_rank,
            "consensus": self.consensus,
            "inconclusive": self.report.inconclusive,
        }


def witness_vs_haar(n: int, family: str, t_slices: int, samples: int = 5,
                    seed: int = 0, mode: str = "unitary",
                    tolerances: tuple[float, float] = DEFAULT_TOLERANCES,
                    n_max: int = DEFAULT_N_MAX) -> WitnessComparison:
    """Assert witness rank <= Haar consensus and both >= the slice count."""
    arch = _build_family(family, n, t_slices)
    report = accessible_dimension(arch, mode, samples, seed, tolerances, n_max)
    cert = witness_point(arch, mode)
    westimate = numerical_rank(
        tangent_frame(arch, cert.to_gate_assignment(), mode, n_max), tolerances)
    wrank = westimate.rank
    if wrank is None:
        raise VerdictError("witness-point rank is numerically inconclusive")
    if wrank < t_slices:
        raise VerdictError(
            f"witness rank {wrank} below slice count {t_slices}")
    if report.consensus is not None:
        if report.consensus < t_slices:
            raise VerdictError(
                f"consensus {report.consensus} below slice count {t_slices}")
        if wrank > report.consensus:
            raise VerdictError(
                f"witness rank {wrank} exceeds consensus {report.consensus}")
    return WitnessComparison(n, family, t_slices, wrank, report)
