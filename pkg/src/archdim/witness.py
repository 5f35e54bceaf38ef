"""Clifford witness points certifying linear rank growth.

A causal slice can be filled with Clifford gates that sweep any chosen
nontrivial Pauli string onto a bare Z of the slice's sink qubit: each qubit's
factor travels along a path of the slice's in-tree, one two-qubit routing
step per hop, and merged paths proceed jointly.  Iterating over slices while
keeping the accumulated perturbation directions distinct yields a gate
assignment at which the contraction map provably has rank at least the slice
count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import contraction
from .architecture import Architecture, is_causal_slice
from .clifford import CliffordCircuit, CliffordTableau, routing_clifford_2q
from .errors import (
    CertificateMismatch,
    NotCausal,
    NotOnSlice,
    PhasedPauli,
    TooManySlices,
    TrivialPauli,
    ValidationError,
)
from .pauli import PauliString, nontrivial_strings


@dataclass(frozen=True)
class PathTree:
    """In-tree of qubit paths to a slice's sink.

    ``next_hop[q]`` is the (gate_index, next_qubit) step that carries qubit
    q's Pauli factor one gate closer to the sink; gate indices are absolute
    and strictly increase along every root path, so merged paths never
    diverge after meeting.
    """

    n: int
    start: int
    stop: int
    sink: int
    wire_pairs: tuple[tuple[int, int], ...]
    next_hop: dict[int, tuple[int, int]]

    def hop_at(self, gate_index: int) -> tuple[int, int] | None:
        """(source_qubit, destination_qubit) if this gate is a hop."""
        for q, (idx, nxt) in self.next_hop.items():
            if idx == gate_index:
                return q, nxt
        return None

    def path(self, qubit: int) -> list[tuple[int, int, int]]:
        """Hops (gate_index, from_qubit, to_qubit) from a qubit to the sink."""
        out = []
        q = qubit
        while q != self.sink:
            idx, nxt = self.next_hop[q]
            out.append((idx, q, nxt))
            q = nxt
        return out


def build_path_tree(arch: Architecture, start: int, stop: int,
                    sink: int | None = None) -> PathTree:
    """Deterministic in-tree over a causal slice, built back to front.

    Sweeping the slice's gates in reverse, a qubit not yet connected to the
    sink is attached through the latest gate that couples it to a connected
    qubit.  Hop gate indices therefore increase along every path, and each
    gate carries at most one hop.
    """
    if sink is None:
        sink = is_causal_slice(arch, start, stop)
        if sink is None:
            raise NotCausal(f"slice [{start}, {stop}) has no sink")
    connected = {sink}
    next_hop: dict[int, tuple[int, int]] = {}
    for idx in range(stop - 1, start - 1, -1):
        a, b = arch.gates[idx]
        in_a, in_b = a in connected, b in connected
        if in_a and not in_b:
            next_hop[b] = (idx, a)
            connected.add(b)
        elif in_b and not in_a:
            next_hop[a] = (idx, b)
            connected.add(a)
    if len(connected) != arch.n:
        missing = sorted(set(range(1, arch.n + 1)) - connected)
        raise NotCausal(
            f"slice [{start}, {stop}) is not causal: qubits {missing} "
            f"cannot reach {sink}")
    return PathTree(arch.n, start, stop, sink,
                    arch.gates[start:stop], dict(next_hop))


@dataclass(frozen=True)
class RoutingRecord:
    """Outcome of sweeping one Pauli string through one slice."""

    pauli: PauliString
    sink: int
    final: PauliString


def route_pauli_through_slice(
        tree: PathTree, p: PauliString,
) -> tuple[dict[int, CliffordCircuit], RoutingRecord]:
    """Per-gate Clifford circuits conjugating ``p`` to Z on the sink.

    Gates off the sweep get the empty circuit.  At each hop gate the current
    two-qubit factor, if nontrivial, is routed onto the hop's destination
    wire as a bare Z; waiting factors on the destination merge into the same
    step.  The input must be nontrivial and unphased, since conjugation can
    never change the scalar prefactor.
    """
    if p.n != tree.n:
        raise NotOnSlice(f"string acts on {p.n} qubits, slice register is {tree.n}")
    if p.is_identity:
        raise TrivialPauli("the identity string has no routing")
    if p.phase_exp != 0:
        raise PhasedPauli(f"cannot route phased string {p.label()!r}")

    hop_for_gate = {idx: (q, nxt) for q, (idx, nxt) in tree.next_hop.items()}
    assignments: dict[int, CliffordCircuit] = {}
    work = p
    for offset, (a, b) in enumerate(tree.wire_pairs):
        idx = tree.start + offset
        hop = hop_for_gate.get(idx)
        circuit = CliffordCircuit(2)
        if hop is not None:
            local = work.factor((a, b))
            if not local.is_identity:
                _, dst = hop
                circuit = routing_clifford_2q(local, target=1 if dst == a else 2)
                work = circuit.conjugate(work, wires=(a, b))
        assignments[idx] = circuit
    target = PauliString.single(tree.n, "Z", tree.sink)
    if work != target:
        raise AssertionError(
            f"routing failed: {p.label()} swept to {work.label()}, "
            f"expected {target.label()}")
    return assignments, RoutingRecord(p, tree.sink, work)


@dataclass(frozen=True)
class SliceRecord:
    start: int
    stop: int
    sink: int
    chosen: PauliString
    insertion_gate: int


@dataclass(frozen=True)
class WitnessCertificate:
    """Gate assignment plus the direction bookkeeping that certifies it.

    In unitary mode ``directions`` holds the T perturbation directions in
    the final frame, pairwise distinct up to phase.  In state mode
    ``state_images`` holds (bits, kappa) pairs with pairwise-distinct
    (bits, kappa mod 2), the real-linear independence criterion for
    i^kappa |bits>.
    """

    n: int
    mode: str
    gate_circuits: tuple[CliffordCircuit, ...]
    slices: tuple[SliceRecord, ...]
    directions: tuple[PauliString, ...] = ()
    state_images: tuple[tuple[int, int], ...] = ()

    @property
    def slice_count(self) -> int:
        return len(self.slices)

    def to_gate_assignment(self) -> "contraction.GateAssignment":
        return contraction.GateAssignment.from_circuits(self.gate_circuits)

    def to_json_dict(self) -> dict:
        d = {
            "n": self.n,
            "mode": self.mode,
            "gates": [c.to_json_ops() for c in self.gate_circuits],
            "slices": [
                {
                    "start": s.start,
                    "stop": s.stop,
                    "sink": s.sink,
                    "q": s.chosen.label(),
                    "insertion_gate": s.insertion_gate,
                }
                for s in self.slices
            ],
        }
        if self.mode == "unitary":
            d["directions"] = [p.label() for p in self.directions]
        else:
            d["directions"] = [
                {"bits": format(bits, f"0{self.n}b"), "phase_exp": kappa}
                for bits, kappa in self.state_images
            ]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, d: dict) -> WitnessCertificate:
        n = int(d["n"])
        mode = d["mode"]
        circuits = tuple(
            CliffordCircuit.from_json_ops(2, ops) for ops in d["gates"])
        slices = tuple(
            SliceRecord(int(s["start"]), int(s["stop"]), int(s["sink"]),
                        PauliString.from_label(s["q"]),
                        int(s["insertion_gate"]))
            for s in d["slices"])
        directions: tuple[PauliString, ...] = ()
        images: tuple[tuple[int, int], ...] = ()
        if mode == "unitary":
            directions = tuple(
                PauliString.from_label(lbl) for lbl in d["directions"])
        else:
            images = tuple(
                (int(e["bits"], 2), int(e["phase_exp"]))
                for e in d["directions"])
        return cls(n, mode, circuits, slices, directions, images)

    @classmethod
    def from_json(cls, text: str) -> WitnessCertificate:
        return cls.from_json_dict(json.loads(text))


def _slice_tableau(arch: Architecture, start: int, stop: int,
                   circuits: dict[int, CliffordCircuit] | tuple,
                   ) -> CliffordTableau:
    tab = CliffordTableau.identity(arch.n)
    for idx in range(start, stop):
        c = circuits[idx]
        tab.apply_circuit(c, wires=arch.gates[idx])
    return tab


def _inverse_slice_tableau(arch: Architecture, start: int, stop: int,
                           circuits) -> CliffordTableau:
    tab = CliffordTableau.identity(arch.n)
    for idx in range(stop - 1, start - 1, -1):
        c = circuits[idx].inverse()
        tab.apply_circuit(c, wires=arch.gates[idx])
    return tab


def _last_gate_on(arch: Architecture, start: int, stop: int, qubit: int) -> int:
    for idx in range(stop - 1, start - 1, -1):
        if qubit in arch.gates[idx]:
            return idx
    raise NotCausal(f"no gate touches qubit {qubit} in slice [{start}, {stop})")


def _direction_budget(n: int, mode: str, t_slices: int) -> None:
    if mode == "unitary":
        cap = 4 ** n - 1
        if t_slices > cap:
            raise TooManySlices(
                f"unitary mode supports at most {cap} slices for n={n}, "
                f"got {t_slices}")
    else:
        cap = 2 * 2 ** n - 1
        if t_slices >= cap:
            raise TooManySlices(
                f"state mode needs slice count below {cap} for n={n}, "
                f"got {t_slices}")


def witness_point(arch: Architecture, mode: str = "unitary",
                  ) -> WitnessCertificate:
    """All-Clifford gate assignment with T pairwise-distinct directions.

    Iterates over the marked slices: pick the lexicographically smallest
    nontrivial Pauli not yet represented among the accumulated directions
    (in state mode, one whose (bits, phase-parity) image of |0...0> is new),
    route it to Z on the slice's sink, conjugate the accumulated directions
    through the new slice, and append the fresh Z.
    """
    if mode not in ("unitary", "state"):
        raise ValidationError(f"mode must be 'unitary' or 'state', got {mode!r}")
    ranges = arch.slice_ranges()
    if not ranges:
        raise NotCausal("architecture has no marked slices")
    _direction_budget(arch.n, mode, len(ranges))

    n = arch.n
    per_gate: dict[int, CliffordCircuit] = {
        i: CliffordCircuit(2) for i in range(arch.gate_count)}
    directions: list[PauliString] = []
    state_images: list[tuple[int, int]] = []
    seen_pairs: set[tuple[int, int]] = set()
    inv_prefix = CliffordTableau.identity(n)
    records: list[SliceRecord] = []

    for start, stop in ranges:
        sink = is_causal_slice(arch, start, stop)
        if sink is None:
            raise NotCausal(f"slice [{start}, {stop}) is not causal")
        tree = build_path_tree(arch, start, stop, sink)

        if mode == "unitary":
            used = {d.key() for d in directions}
            chosen = next(
                q for q in nontrivial_strings(n) if q.key() not in used)
        else:
            chosen = next(
                q for q in nontrivial_strings(n)
                if _parity_pair(inv_prefix.conjugate(q)) not in seen_pairs)

        assignments, _ = route_pauli_through_slice(tree, chosen)
        per_gate.update(assignments)
        slice_tab = _slice_tableau(arch, start, stop, assignments)

        z_sink = PauliString.single(n, "Z", sink)
        directions = [slice_tab.conjugate(d) for d in directions]
        directions.append(z_sink)

        if mode == "state":
            inv_prefix = CliffordTableau.compose(
                inv_prefix, _inverse_slice_tableau(arch, start, stop, per_gate))
            image = inv_prefix.conjugate(z_sink).state_image()
            seen_pairs.add((image[0], image[1] % 2))
            state_images.append(image)

        records.append(SliceRecord(
            start, stop, sink, chosen, _last_gate_on(arch, start, stop, sink)))

    keys = [d.key() for d in directions]
    if len(set(keys)) != len(keys):
        raise AssertionError("constructed directions are not distinct")
    if mode == "state" and len(seen_pairs) != len(ranges):
        raise AssertionError("constructed state images are not distinct")

    return WitnessCertificate(
        n, mode, tuple(per_gate[i] for i in range(arch.gate_count)),
        tuple(records),
        tuple(directions) if mode == "unitary" else (),
        tuple(state_images))


def _parity_pair(p: PauliString) -> tuple[int, int]:
    bits, kappa = p.state_image()
    return bits, kappa % 2


@dataclass(frozen=True)
class WitnessVerdict:
    slice_count: int
    distinct_directions: int
    witness_rank: int | None
    clifford_checked: bool


def verify_certificate(cert: WitnessCertificate, arch: Architecture,
                       check_rank: bool = True,
                       n_max: int | None = None) -> WitnessVerdict:
    """Independently recompute and cross-check a certificate.

    Each direction is rebuilt by inserting Z on the slice's sink and
    conjugating it forward through the later slices' tableaux; the stored
    routing choices, directions and distinctness are all re-derived.  In
    unitary mode the numerical rank of the tangent frame at the witness
    point is additionally required to reach the slice count.
    """
    if cert.n != arch.n or len(cert.gate_circuits) != arch.gate_count:
        raise CertificateMismatch("certificate does not match the architecture")
    ranges = arch.slice_ranges()
    if tuple((s.start, s.stop) for s in cert.slices) != ranges:
        raise CertificateMismatch("certificate slices do not match boundaries")

    tabs = [
        _slice_tableau(arch, s.start, s.stop, cert.gate_circuits)
        for s in cert.slices
    ]
    for s, tab in zip(cert.slices, tabs):
        target = PauliString.single(arch.n, "Z", s.sink)
        if tab.conjugate(s.chosen) != target:
            raise CertificateMismatch(
                f"slice [{s.start}, {s.stop}) does not route "
                f"{s.chosen.label()} to {target.label()}")
        if _last_gate_on(arch, s.start, s.stop, s.sink) != s.insertion_gate:
            raise CertificateMismatch(
                f"insertion gate of slice [{s.start}, {s.stop}) is stale")

    recomputed: list[PauliString] = []
    for j, s in enumerate(cert.slices):
        d = PauliString.single(arch.n, "Z", s.sink)
        for tab in tabs[j + 1:]:
            d = tab.conjugate(d)
        recomputed.append(d)

    if cert.mode == "unitary":
        if tuple(recomputed) != cert.directions:
            raise CertificateMismatch("stored directions disagree with recomputation")
        keys = {d.key() for d in recomputed}
        if len(keys) != len(recomputed):
            raise CertificateMismatch("directions are not pairwise distinct")
        distinct = len(keys)
    else:
        inv_prefix = CliffordTableau.identity(arch.n)
        images = []
        for s in cert.slices:
            inv_prefix = CliffordTableau.compose(
                inv_prefix,
                _inverse_slice_tableau(arch, s.start, s.stop, cert.gate_circuits))
            images.append(
                inv_prefix.conjugate(
                    PauliString.single(arch.n, "Z", s.sink)).state_image())
        if tuple(images) != cert.state_images:
            raise CertificateMismatch("stored state images disagree with recomputation")
        pairs = {(bits, kappa % 2) for bits, kappa in images}
        if len(pairs) != len(images):
            raise CertificateMismatch("state images are not pairwise distinct")
        distinct = len(pairs)

    rank = None
    clifford_checked = False
    if check_rank:
        limit = contraction.DEFAULT_N_MAX if n_max is None else n_max
        gates = cert.to_gate_assignment()
        frame = contraction.tangent_frame(arch, gates, cert.mode, limit)
        estimate = contraction.numerical_rank(frame)
        rank = estimate.rank
        if rank is None or rank < cert.slice_count:
            raise CertificateMismatch(
                f"witness rank {rank} below slice count {cert.slice_count}")
        clifford_checked = _contracted_is_clifford(arch, gates, tabs, limit)
    return WitnessVerdict(cert.slice_count, distinct, rank, clifford_checked)


def _contracted_is_clifford(arch: Architecture, gates, tabs,
                            n_max: int) -> bool:
    """Dense check that the contracted witness maps generators to Paulis."""
    total = CliffordTableau.identity(arch.n)
    for tab in tabs:
        total = CliffordTableau.compose(tab, total)
    dense = contraction.contract(arch, gates, n_max=n_max)
    for q in range(1, arch.n + 1):
        for kind in ("X", "Z"):
            gen = PauliString.single(arch.n, kind, q)
            image = total.conjugate(gen)
            got = dense @ gen.to_matrix() @ dense.conj().T
            if np.abs(got - image.to_matrix()).max() > 1e-9:
                return False
    return True
