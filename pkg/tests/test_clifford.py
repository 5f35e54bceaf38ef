"""Clifford circuits, tableaux, and the two-qubit routing synthesis."""

import numpy as np
import pytest

from archdim import (
    CliffordCircuit,
    CliffordTableau,
    PauliString,
    PhasedPauli,
    TrivialPauli,
    clifford_to_unitary,
    conjugate_pauli_by_gate,
    routing_clifford_2q,
)
from archdim.clifford import GATE_ARITY, GATE_MATRICES
from archdim.dense import apply_gate_left
from archdim.pauli import TWO_QUBIT_GENERATORS

GATE_PLACEMENTS = [
    (name, qubits)
    for name, arity in GATE_ARITY.items()
    for qubits in ([(1,), (2,)] if arity == 1 else [(1, 2), (2, 1)])
]


def _embedded(name: str, qubits: tuple[int, ...], n: int) -> np.ndarray:
    return apply_gate_left(np.eye(2 ** n, dtype=complex),
                           GATE_MATRICES[name], qubits, n)


@pytest.mark.parametrize("name,qubits", GATE_PLACEMENTS)
def test_gate_conjugation_matches_dense(name, qubits):
    g = _embedded(name, qubits, 2)
    for p in TWO_QUBIT_GENERATORS:
        predicted = conjugate_pauli_by_gate(p, name, qubits)
        got = g @ p.to_matrix() @ g.conj().T
        assert np.abs(got - predicted.to_matrix()).max() < 1e-12


def test_standard_conjugation_rules():
    x1 = PauliString.from_label("XI")
    assert conjugate_pauli_by_gate(x1, "CNOT", (1, 2)).label() == "XX"
    zz = PauliString.from_label("ZZ")
    assert conjugate_pauli_by_gate(zz, "CNOT", (1, 2)).label() == "IZ"
    z = PauliString.from_label("Z")
    assert conjugate_pauli_by_gate(z, "H", (1,)).label() == "X"
    y = PauliString.from_label("Y")
    assert conjugate_pauli_by_gate(y, "H", (1,)).label() == "-Y"
    assert conjugate_pauli_by_gate(
        PauliString.from_label("X"), "S", (1,)).label() == "Y"


def _random_circuit(rng, n, length):
    names = list(GATE_ARITY)
    ops = []
    for _ in range(length):
        name = names[int(rng.integers(len(names)))]
        qs = tuple(int(q) + 1
                   for q in rng.choice(n, size=GATE_ARITY[name], replace=False))
        ops.append((name, qs))
    return CliffordCircuit(n, tuple(ops))


def _random_pauli(rng, n):
    return PauliString(n, int(rng.integers(0, 1 << n)),
                       int(rng.integers(0, 1 << n)), int(rng.integers(0, 4)))


def test_tableau_composition_homomorphism():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        n = int(rng.integers(2, 5))
        first = _random_circuit(rng, n, 5)
        second = _random_circuit(rng, n, 5)
        t1 = CliffordTableau.from_circuit(first)
        t2 = CliffordTableau.from_circuit(second)
        composed = CliffordTableau.compose(t2, t1)
        p = _random_pauli(rng, n)
        assert composed.conjugate(p) == t2.conjugate(t1.conjugate(p))


def test_tableau_is_symplectic_for_random_circuits():
    rng = np.random.default_rng(12)
    for _ in range(50):
        n = int(rng.integers(2, 5))
        tab = CliffordTableau.from_circuit(_random_circuit(rng, n, 8))
        assert tab.is_symplectic()


def test_tableau_preserves_identity_and_weight_zero():
    rng = np.random.default_rng(13)
    tab = CliffordTableau.from_circuit(_random_circuit(rng, 3, 10))
    ident = PauliString.identity(3)
    assert tab.conjugate(ident) == ident


def test_conjugate_tracks_input_phase():
    tab = CliffordTableau.identity(2)
    p = PauliString.from_label("-iXZ")
    assert tab.conjugate(p) == p


def test_circuit_inverse_undoes_conjugation():
    rng = np.random.default_rng(14)
    for _ in range(50):
        n = int(rng.integers(2, 4))
        circ = _random_circuit(rng, n, 6)
        p = _random_pauli(rng, n)
        roundtrip = circ.inverse().conjugate(circ.conjugate(p))
        assert roundtrip == p


# -- dense bridge ---------------------------------------------------------------


def test_empty_circuit_unitary_is_identity():
    assert np.allclose(clifford_to_unitary(CliffordCircuit(2)), np.eye(4))


def test_single_hadamard_unitary():
    circ = CliffordCircuit(1, (("H", (1,)),))
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert np.abs(clifford_to_unitary(circ) - h).max() < 1e-15


def test_unitarity_of_random_circuits():
    rng = np.random.default_rng(15)
    circ = _random_circuit(rng, 3, 12)
    u = clifford_to_unitary(circ)
    assert np.abs(u @ u.conj().T - np.eye(8)).max() < 1e-12


def test_dense_conjugation_agrees_with_tableau_on_phased_strings():
    rng = np.random.default_rng(17)
    for _ in range(25):
        n = int(rng.integers(2, 4))
        circ = _random_circuit(rng, n, 6)
        u = clifford_to_unitary(circ)
        tab = CliffordTableau.from_circuit(circ)
        p = _random_pauli(rng, n)
        dense = u @ p.to_matrix() @ u.conj().T
        assert np.abs(dense - tab.conjugate(p).to_matrix()).max() < 1e-12


def test_dense_conjugation_agrees_with_tableau_on_generators():
    rng = np.random.default_rng(16)
    for _ in range(10):
        n = 2
        circ = _random_circuit(rng, n, 5)
        u = clifford_to_unitary(circ)
        tab = CliffordTableau.from_circuit(circ)
        for q in range(1, n + 1):
            for kind in ("X", "Z"):
                gen = PauliString.single(n, kind, q)
                dense = u @ gen.to_matrix() @ u.conj().T
                assert np.abs(dense - tab.conjugate(gen).to_matrix()).max() < 1e-12


# -- routing --------------------------------------------------------------------


def test_routing_identity_input_rejected():
    with pytest.raises(TrivialPauli):
        routing_clifford_2q(PauliString.identity(2))


def test_routing_phased_input_rejected():
    with pytest.raises(PhasedPauli):
        routing_clifford_2q(PauliString.from_label("-XX"))


def test_routing_trivial_cases():
    assert routing_clifford_2q(PauliString.from_label("IZ")).is_identity
    swap_only = routing_clifford_2q(PauliString.from_label("ZI"))
    assert [name for name, _ in swap_only.gates] == ["SWAP"]


@pytest.mark.parametrize("target", [1, 2])
def test_routing_all_fifteen_paulis(target):
    expected = PauliString.single(2, "Z", target)
    for p in TWO_QUBIT_GENERATORS:
        circ = routing_clifford_2q(p, target=target)
        assert len(circ) <= 6
        assert circ.conjugate(p) == expected
        # dense 4x4 oracle
        u = clifford_to_unitary(circ)
        got = u @ p.to_matrix() @ u.conj().T
        assert np.abs(got - expected.to_matrix()).max() < 1e-12


def test_local_circuit_embeds_on_wires():
    circ = routing_clifford_2q(PauliString.from_label("XY"))
    big = PauliString.from_label("XY").embedded(4, (2, 4))
    moved = circ.conjugate(big, wires=(2, 4))
    assert moved == PauliString.single(4, "Z", 4)
