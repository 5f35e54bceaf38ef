"""Circuit architectures: ordered two-qubit gate slots on an n-qubit register.

An architecture fixes where gates sit, not what they are.  The induced DAG is
implicit in the gate order (a gate depends on the most recent earlier gate on
each of its wires), so acyclicity holds by construction.  Optional slice
boundaries partition the gate list into contiguous slices; a slice is causal
when some sink qubit is reachable from every qubit through gates of the slice
alone, which is the structural property the witness construction needs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidBoundary, InvalidQubit, OddQubitCount, ValidationError


@dataclass(frozen=True)
class Architecture:
    """Immutable arrangement of two-qubit gate slots.

    Gates are (qubit_a, qubit_b) pairs with 1-based, distinct entries.
    ``slice_boundaries`` holds strictly increasing cumulative gate counts and,
    when present, must end at the total gate count.
    """

    n: int
    gates: tuple[tuple[int, int], ...]
    slice_boundaries: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidQubit(f"need at least one qubit, got n={self.n}")
        for i, (a, b) in enumerate(self.gates):
            if a == b:
                raise InvalidQubit(f"gate {i} pairs qubit {a} with itself")
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise InvalidQubit(f"gate {i} = ({a}, {b}) outside [1, {self.n}]")
        if self.slice_boundaries is not None:
            prev = 0
            for bnd in self.slice_boundaries:
                if bnd <= prev:
                    raise InvalidBoundary(
                        f"boundaries must be strictly increasing, got "
                        f"{self.slice_boundaries}")
                prev = bnd
            if prev != len(self.gates):
                raise InvalidBoundary(
                    f"last boundary {prev} must equal gate count "
                    f"{len(self.gates)}")

    @property
    def gate_count(self) -> int:
        return len(self.gates)

    @property
    def slice_count(self) -> int:
        return len(self.slice_boundaries) if self.slice_boundaries else 0

    def slice_ranges(self) -> tuple[tuple[int, int], ...]:
        """(start, stop) gate-index ranges of the marked slices."""
        if not self.slice_boundaries:
            return ()
        starts = (0,) + self.slice_boundaries[:-1]
        return tuple(zip(starts, self.slice_boundaries))

    def touched_qubits(self) -> frozenset[int]:
        return frozenset(q for gate in self.gates for q in gate)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        d: dict = {"n": self.n, "gates": [list(g) for g in self.gates]}
        if self.slice_boundaries is not None:
            d["boundaries"] = list(self.slice_boundaries)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, d: dict) -> Architecture:
        boundaries = d.get("boundaries")
        return cls(
            int(d["n"]),
            tuple((int(a), int(b)) for a, b in d["gates"]),
            tuple(int(x) for x in boundaries) if boundaries is not None else None,
        )

    @classmethod
    def from_json(cls, text: str) -> Architecture:
        return cls.from_json_dict(json.loads(text))


def from_gate_sequence(n: int, pairs: Sequence[tuple[int, int]],
                       boundaries: Sequence[int] | None = None) -> Architecture:
    """Validated architecture from an explicit gate list."""
    return Architecture(
        n,
        tuple((int(a), int(b)) for a, b in pairs),
        tuple(int(x) for x in boundaries) if boundaries is not None else None,
    )


def staircase(n: int, t_slices: int) -> Architecture:
    """``t_slices`` repetitions of the stepwise string (1,2),(2,3),...,(n-1,n).

    Each repetition is a minimal causal slice of n-1 gates with sink n, and
    slice boundaries are set accordingly.
    """
    if n < 2:
        raise InvalidQubit(f"staircase needs n >= 2, got {n}")
    if t_slices < 1:
        raise ValidationError(f"need at least one slice, got {t_slices}")
    step = [(j, j + 1) for j in range(1, n)]
    gates = tuple(step * t_slices)
    boundaries = tuple((n - 1) * (k + 1) for k in range(t_slices))
    return Architecture(n, gates, boundaries)


def brickwork(n: int, rounds: int) -> Architecture:
    """Alternating even/odd layers on a 1D chain without periodic boundaries.

    One round is the layer (1,2),(3,4),... followed by (2,3),(4,5),...;
    n rounds make one causal slice of n(n-1) gates.  Boundaries are marked
    every n rounds; trailing rounds short of a full slice are merged into
    the final slice (extra gates never break causality).  With fewer than
    n rounds no boundaries are set.
    """
    if n < 2 or n % 2 != 0:
        raise OddQubitCount(f"brickwork needs an even n >= 2, got {n}")
    if rounds < 1:
        raise ValidationError(f"need at least one round, got {rounds}")
    layer_a = [(j, j + 1) for j in range(1, n, 2)]
    layer_b = [(j, j + 1) for j in range(2, n - 1, 2)]
    gates: list[tuple[int, int]] = []
    for _ in range(rounds):
        gates.extend(layer_a)
        gates.extend(layer_b)
    per_round = len(layer_a) + len(layer_b)
    full_slices = rounds // n
    if full_slices == 0:
        boundaries = None
    else:
        boundaries = [n * per_round * (k + 1) for k in range(full_slices)]
        boundaries[-1] = len(gates)
    return Architecture(n, tuple(gates),
                        tuple(boundaries) if boundaries else None)


def random_adjacent(n: int, r_gates: int, seed: int) -> Architecture:
    """``r_gates`` gates at positions (j, j+1), j drawn uniformly per seed."""
    if n < 2:
        raise InvalidQubit(f"need n >= 2, got {n}")
    if r_gates < 0:
        raise ValidationError(f"gate count must be nonnegative, got {r_gates}")
    rng = np.random.default_rng(seed)
    positions = rng.integers(1, n, size=r_gates)
    gates = tuple((int(j), int(j) + 1) for j in positions)
    return Architecture(n, gates, None)


# -- causal-slice analysis ----------------------------------------------------


def reach_matrix(arch: Architecture, start: int, stop: int) -> np.ndarray:
    """Boolean matrix M with M[u-1, v-1] true iff qubit u has a directed
    path to qubit v through gates ``start:stop``."""
    if not (0 <= start <= stop <= arch.gate_count):
        raise ValidationError(
            f"slice [{start}, {stop}) outside [0, {arch.gate_count})")
    reach = np.eye(arch.n, dtype=bool)
    for a, b in arch.gates[start:stop]:
        joined = reach[:, a - 1] | reach[:, b - 1]
        reach[:, a - 1] = joined
        reach[:, b - 1] = joined
    return reach


def is_causal_slice(arch: Architecture, start: int, stop: int) -> int | None:
    """Sink qubit of the slice, or None if the slice is not causal.

    A sink is a qubit reachable from every qubit via a directed path of
    slice gates.  Several sinks can coexist; the largest is returned, which
    for the staircase family is the last qubit of the chain.
    """
    reach = reach_matrix(arch, start, stop)
    sinks = np.flatnonzero(reach.all(axis=0))
    if sinks.size == 0:
        return None
    return int(sinks[-1]) + 1


@dataclass(frozen=True)
class LightCone:
    """Backward light cone of a sink within one marked slice.

    ``reached[q-1]`` says whether qubit q has a directed path to the sink
    through the slice's gates; it is always true for the sink itself.
    """

    slice_index: int
    sink: int
    reached: tuple[bool, ...]

    @property
    def complete(self) -> bool:
        return all(self.reached)


def slice_light_cone(arch: Architecture, slice_index: int,
                     sink: int | None = None) -> LightCone:
    """Light cone of a marked slice; the sink defaults to the causal sink."""
    ranges = arch.slice_ranges()
    if not 0 <= slice_index < len(ranges):
        raise ValidationError(
            f"slice index {slice_index} outside [0, {len(ranges)})")
    start, stop = ranges[slice_index]
    if sink is None:
        sink = is_causal_slice(arch, start, stop)
        if sink is None:
            raise ValidationError(f"slice {slice_index} has no causal sink")
    reach = reach_matrix(arch, start, stop)
    return LightCone(slice_index, sink, tuple(bool(x) for x in reach[:, sink - 1]))


# -- staircase detection in adjacent-gate streams ------------------------------


@dataclass(frozen=True)
class StaircaseSliceReport:
    """Detection result for one block of an adjacent-gate stream."""

    start: int
    stop: int
    i_flags: tuple[bool, ...]
    causal: bool
    complete: bool


def detect_staircase_slices(arch: Architecture) -> list[StaircaseSliceReport]:
    """Partition an adjacent-gate stream into blocks of n(n-1)^2 gates and
    flag the blocks that provably contain a staircase.

    Each block splits into n-1 sub-blocks of n(n-1) gates; indicator j is set
    when sub-block j contains a gate at position (j, j+1).  A block with all
    indicators set contains the ascending staircase in order and is therefore
    causal.  A trailing partial block is reported but never flagged.
    """
    n = arch.n
    if n < 2:
        raise ValidationError(f"need n >= 2, got n={n}")
    positions = np.empty(arch.gate_count, dtype=np.int64)
    for i, (a, b) in enumerate(arch.gates):
        if abs(a - b) != 1:
            raise ValidationError(
                f"gate {i} = ({a}, {b}) is not an adjacent pair")
        positions[i] = min(a, b)
    block = n * (n - 1) ** 2
    sub = n * (n - 1)
    reports: list[StaircaseSliceReport] = []
    full = arch.gate_count // block
    if full:
        body = positions[: full * block].reshape(full, n - 1, sub)
        hits = body == (np.arange(1, n)[None, :, None])
        flags = hits.any(axis=2)
        for k in range(full):
            f = tuple(bool(x) for x in flags[k])
            reports.append(StaircaseSliceReport(
                k * block, (k + 1) * block, f, all(f), True))
    if arch.gate_count % block:
        start = full * block
        tail = positions[start:]
        flags_t = []
        for j in range(1, n):
            seg = tail[(j - 1) * sub: j * sub]
            flags_t.append(bool(seg.size) and bool((seg == j).any()))
        reports.append(StaircaseSliceReport(
            start, arch.gate_count, tuple(flags_t), False, False))
    return reports
