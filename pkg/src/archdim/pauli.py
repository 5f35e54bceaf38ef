"""Pauli strings in symplectic (bitmask) form with exact phase tracking.

An n-qubit Pauli string is stored as two n-bit integers plus a power of i:

    P = i^phase_exp * (sigma_1 x sigma_2 x ... x sigma_n)

where the letter on qubit q is read from bit q-1 of ``x_bits``/``z_bits``:
(0,0) -> I, (1,0) -> X, (1,1) -> Y, (0,1) -> Z.  Qubit 1 is the leftmost
character of the text form and the most significant tensor factor of the
dense matrix.

Multiplication tracks phases mod 4 exactly, using Y = i X Z per qubit, so
for example X * Z = -iY on one qubit.  Bitmask integers keep products,
equality and hashing cheap at any register width.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DimensionMismatch, InvalidQubit

_LETTERS = "IXYZ"
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_PHASE_PREFIX = {0: "", 1: "+i", 2: "-", 3: "-i"}
# Accept ASCII and Unicode minus on parse.
_LABEL_RE = re.compile(r"^(\+i|-i|−i|\+|-|−|i)?([IXYZ]+)$")
_PREFIX_PHASE = {
    None: 0, "+": 0, "i": 1, "+i": 1,
    "-": 2, "−": 2, "-i": 3, "−i": 3,
}

_MAT_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliString:
    """Immutable n-qubit Pauli string ``i^phase_exp * letters``."""

    n: int
    x_bits: int
    z_bits: int
    phase_exp: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DimensionMismatch(f"need at least one qubit, got n={self.n}")
        mask = (1 << self.n) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise InvalidQubit(f"bitmask exceeds {self.n} qubits")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n, 0, 0, 0)

    @classmethod
    def single(cls, n: int, kind: str, qubit: int) -> PauliString:
        """Single-letter string, e.g. ``single(3, "Z", 2)`` is IZI."""
        if kind not in _LETTER_BITS:
            raise ValueError(f"unknown Pauli letter {kind!r}")
        if not 1 <= qubit <= n:
            raise InvalidQubit(f"qubit {qubit} outside [1, {n}]")
        xb, zb = _LETTER_BITS[kind]
        p = qubit - 1
        return cls(n, xb << p, zb << p, 0)

    @classmethod
    def from_label(cls, text: str) -> PauliString:
        """Parse a text form like ``XYZI``, ``-iXZ`` or ``+IZ``."""
        m = _LABEL_RE.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse Pauli label {text!r}")
        prefix, letters = m.groups()
        phase = _PREFIX_PHASE[prefix]
        x = z = 0
        for pos, ch in enumerate(letters):
            xb, zb = _LETTER_BITS[ch]
            x |= xb << pos
            z |= zb << pos
        return cls(len(letters), x, z, phase)

    # -- inspection --------------------------------------------------------

    @property
    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    @property
    def is_hermitian(self) -> bool:
        return self.phase_exp % 2 == 0

    def weight(self) -> int:
        return (self.x_bits | self.z_bits).bit_count()

    def letter(self, qubit: int) -> str:
        if not 1 <= qubit <= self.n:
            raise InvalidQubit(f"qubit {qubit} outside [1, {self.n}]")
        p = qubit - 1
        xb = (self.x_bits >> p) & 1
        zb = (self.z_bits >> p) & 1
        return ("I", "Z", "X", "Y")[(xb << 1) | zb]

    def label(self) -> str:
        """Canonical text form; phase 0 prints with no prefix."""
        letters = "".join(self.letter(q) for q in range(1, self.n + 1))
        return _PHASE_PREFIX[self.phase_exp] + letters

    def unphased(self) -> PauliString:
        return PauliString(self.n, self.x_bits, self.z_bits, 0)

    def key(self) -> tuple[int, int]:
        """(x_bits, z_bits) pair identifying the string up to phase."""
        return (self.x_bits, self.z_bits)

    def __str__(self) -> str:
        return self.label()

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: PauliString) -> PauliString:
        if self.n != other.n:
            raise DimensionMismatch(
                f"cannot multiply strings on {self.n} and {other.n} qubits")
        x = self.x_bits ^ other.x_bits
        z = self.z_bits ^ other.z_bits
        # Each canonical letter string W satisfies W = i^{#Y} X^x Z^z, and
        # Z^z X^x' = (-1)^{z.x'} X^x' Z^z; collecting powers of i:
        y_self = (self.x_bits & self.z_bits).bit_count()
        y_other = (other.x_bits & other.z_bits).bit_count()
        y_res = (x & z).bit_count()
        cross = (self.z_bits & other.x_bits).bit_count()
        phase = (self.phase_exp + other.phase_exp
                 + y_self + y_other + 2 * cross - y_res) % 4
        return PauliString(self.n, x, z, phase)

    def commutes_with(self, other: PauliString) -> bool:
        if self.n != other.n:
            raise DimensionMismatch(
                f"cannot compare strings on {self.n} and {other.n} qubits")
        sym = ((self.x_bits & other.z_bits).bit_count()
               + (self.z_bits & other.x_bits).bit_count())
        return sym % 2 == 0

    # -- restriction / embedding -------------------------------------------

    def factor(self, qubits: tuple[int, ...]) -> PauliString:
        """Letters at the given qubits as a new unphased string."""
        x = z = 0
        for pos, q in enumerate(qubits):
            if not 1 <= q <= self.n:
                raise InvalidQubit(f"qubit {q} outside [1, {self.n}]")
            p = q - 1
            x |= ((self.x_bits >> p) & 1) << pos
            z |= ((self.z_bits >> p) & 1) << pos
        return PauliString(len(qubits), x, z, 0)

    def embedded(self, n: int, wires: tuple[int, ...]) -> PauliString:
        """Place this string on the given wires of an n-qubit register."""
        if len(wires) != self.n:
            raise DimensionMismatch(
                f"{self.n}-qubit string needs {self.n} wires, got {len(wires)}")
        x = z = 0
        for pos, w in enumerate(wires):
            if not 1 <= w <= n:
                raise InvalidQubit(f"wire {w} outside [1, {n}]")
            p = w - 1
            x |= ((self.x_bits >> pos) & 1) << p
            z |= ((self.z_bits >> pos) & 1) << p
        return PauliString(n, x, z, self.phase_exp)

    # -- dense form ---------------------------------------------------------

    def to_matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix, qubit 1 as the most significant factor."""
        out = np.array([[1.0 + 0j]])
        for q in range(1, self.n + 1):
            out = np.kron(out, _MAT_1Q[self.letter(q)])
        return (1j ** self.phase_exp) * out

    def state_image(self) -> tuple[int, int]:
        """(bits, kappa) with ``P |0...0> = i^kappa |bits>``.

        ``bits`` uses qubit 1 as the most significant bit of the integer.
        """
        kappa = (self.phase_exp + (self.x_bits & self.z_bits).bit_count()) % 4
        bits = 0
        for q in range(1, self.n + 1):
            bits = (bits << 1) | ((self.x_bits >> (q - 1)) & 1)
        return bits, kappa


def pauli_multiply(p: PauliString, q: PauliString) -> PauliString:
    """Product PQ with the phase tracked mod 4."""
    return p * q


def nontrivial_strings(n: int) -> Iterator[PauliString]:
    """All 4^n - 1 nontrivial unphased strings in lexicographic label order."""
    for idx in range(1, 4 ** n):
        x = z = 0
        rem = idx
        for pos in range(n - 1, -1, -1):
            digit = rem % 4
            rem //= 4
            xb, zb = _LETTER_BITS[_LETTERS[digit]]
            x |= xb << pos
            z |= zb << pos
        yield PauliString(n, x, z, 0)


TWO_QUBIT_GENERATORS: tuple[PauliString, ...] = tuple(nontrivial_strings(2))
TWO_QUBIT_GENERATOR_MATS: tuple[np.ndarray, ...] = tuple(
    p.to_matrix() for p in TWO_QUBIT_GENERATORS)
