"""Experiment harness: sweeps, Monte Carlo, witness comparisons."""

import numpy as np
import pytest

from archdim import (
    VerdictError,
    growth_sweep,
    randomized_architecture_experiment,
    rows_to_csv,
    witness_vs_haar,
)
from archdim.experiments import CSV_HEADER, SweepRow, check_ramp


def test_sweep_su4_plateau():
    rows = growth_sweep(2, "staircase", 3, samples=3, seed=1)
    assert [r.accessible for r in rows] == [15, 15, 15]
    assert all(r.witness_rank == 15 for r in rows)


def test_sweep_ramp_lower_bound():
    rows = growth_sweep(3, "staircase", 10, samples=3, seed=2)
    for r in rows:
        assert r.accessible >= r.t_slices
        assert r.lower == r.t_slices
        assert r.lower <= r.accessible <= r.upper
    assert [r.accessible for r in rows] == [27, 45] + [63] * 8


def test_sweep_full_saturation():
    # the ramp must end exactly at the cap once T reaches 4^n - 1
    rows = growth_sweep(3, "staircase", 63, samples=3, seed=17)
    assert [r.t_slices for r in rows] == list(range(1, 64))
    assert rows[-1].accessible == 63
    assert rows[-1].witness_rank == 63


def test_sweep_brickwork():
    rows = growth_sweep(4, "brickwork", 2, samples=3, seed=3)
    assert [r.l_gates for r in rows] == [12, 12]
    for r in rows:
        assert r.accessible >= r.t_slices


def test_sweep_csv_deterministic_modulo_wall_time():
    def strip_ms(text):
        return ["," .join(line.split(",")[:-1]) for line in text.splitlines()]

    a = rows_to_csv(growth_sweep(2, "staircase", 2, samples=3, seed=5))
    b = rows_to_csv(growth_sweep(2, "staircase", 2, samples=3, seed=5))
    assert strip_ms(a) == strip_ms(b)
    assert a.splitlines()[0] == CSV_HEADER


def test_check_ramp_rejects_violations():
    def row(t, d, cap=63):
        return SweepRow(3, "staircase", t, 2 * t, 2, d, None, t,
                        min(18 * t + 9, cap), cap, 3, 0, 0)

    check_ramp([row(1, 27), row(2, 45), row(3, 63), row(4, 63)])
    with pytest.raises(VerdictError):
        check_ramp([row(1, 27), row(2, 26)])  # decreasing
    with pytest.raises(VerdictError):
        check_ramp([row(1, 0)])  # below slice count
    with pytest.raises(VerdictError):
        check_ramp([row(1, 27), row(2, 27)])  # flat below the cap
    with pytest.raises(VerdictError):
        check_ramp([row(63, 62, cap=63)])  # not saturated at the cap


def test_check_ramp_skips_inconclusive_rows():
    def row(t, d):
        return SweepRow(3, "staircase", t, 2 * t, 2, d, None, t, 63, 63, 3, 0, 0)

    check_ramp([row(1, 27), row(2, None), row(3, 63)])


def test_monte_carlo_two_qubits_always_causal():
    summary = randomized_architecture_experiment(2, 100, seed=4)
    assert summary.empirical == 1.0
    assert summary.exact == 1.0


def test_monte_carlo_matches_formula():
    summary = randomized_architecture_experiment(4, 2000, seed=6)
    assert summary.block_gates == 36
    lo, hi = summary.interval
    assert lo <= summary.empirical <= hi
    assert summary.within_interval
    # chained Bernoulli lower bound
    assert summary.empirical >= 1 - 3 * np.exp(-4) - 0.02


def test_monte_carlo_calibration_over_seeds():
    # the 99% interval should hold in at least 95% of seeded batches
    inside = sum(
        randomized_architecture_experiment(4, 1000, seed=s).within_interval
        for s in range(20))
    assert inside >= 19


def test_monte_carlo_summary_json():
    summary = randomized_architecture_experiment(3, 200, seed=8, alpha=0.25)
    d = summary.to_json_dict()
    assert d["alpha"] == 0.25
    assert 0.0 <= d["probability_bound"] <= 1.0
    assert d["trials"] == 200


def test_witness_vs_haar_ordering():
    cmp = witness_vs_haar(3, "staircase", 4, samples=3, seed=5)
    assert cmp.witness_rank >= 4
    assert cmp.consensus >= 4
    assert cmp.witness_rank <= cmp.consensus


def test_witness_vs_haar_su4_point():
    cmp = witness_vs_haar(2, "staircase", 1, samples=3, seed=5)
    assert 1 <= cmp.witness_rank <= 15
    assert cmp.consensus == 15


def test_witness_vs_haar_brickwork_single_slice():
    cmp = witness_vs_haar(4, "brickwork", 1, samples=3, seed=7)
    assert cmp.witness_rank >= 1
    assert cmp.consensus >= 1
