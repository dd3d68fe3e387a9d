"""Dense statevector engine for small qubit registers.

States are stored as flat complex arrays of length ``2**n`` with
little-endian basis indexing (bit ``i`` of the index = qubit ``i``).
Gate application works on the reshaped ``(2, ..., 2)`` tensor, so qubit
``q`` lives on axis ``n - 1 - q``.

Expectation values of Pauli sums are evaluated term by term on the state
(no dense Hamiltonian matrix), which keeps 10-qubit optimization runs
cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .pauli import PauliSum, to_dense

NORM_TOL = 1e-10
UNITARY_TOL = 1e-12


def is_unitary(matrix: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    delta = m @ m.conj().T - np.eye(m.shape[0])
    return bool(np.max(np.abs(delta)) < tol)


@dataclass(frozen=True)
class GateMatrix:
    """A validated 2x2 or 4x4 unitary.

    Construction checks ``U U^dag = I`` to within ``UNITARY_TOL``. Gate
    factories whose output is unitary by construction use the private
    ``_trusted`` constructor to skip the check on hot paths; those
    factories are covered by randomized unitarity tests instead.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.ascontiguousarray(self.matrix, dtype=complex)
        if m.shape not in ((2, 2), (4, 4)):
            raise ValueError(f"gate matrix must be 2x2 or 4x4, got shape {m.shape}")
        if not is_unitary(m):
            raise ValueError("gate matrix is not unitary within 1e-12")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def _trusted(cls, matrix: np.ndarray) -> "GateMatrix":
        gate = object.__new__(cls)
        m = np.ascontiguousarray(matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(gate, "matrix", m)
        return gate

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


class StateVector:
    """Normalized register state: ``2**n_qubits`` complex amplitudes."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, n_qubits: int, amplitudes: np.ndarray) -> None:
        amps = np.asarray(amplitudes, dtype=complex)
        if amps.shape != (2**n_qubits,):
            raise ValueError(
                f"expected {2**n_qubits} amplitudes for {n_qubits} qubits, "
                f"got shape {amps.shape}"
            )
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 = {norm!r} deviates from 1 beyond {NORM_TOL}")
        self.n_qubits = n_qubits
        self.amplitudes = amps

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def basis_state(n_qubits: int, excitations: Iterable[int] = ()) -> StateVector:
    """Computational basis state with the listed qubits set to 1.

    ``basis_state(4, {0})`` is the little-endian index 1, i.e. |0001>.
    """
    index = 0
    for q in set(excitations):
        if not 0 <= q < n_qubits:
            raise ValueError(f"excitation index {q} out of range for {n_qubits} qubits")
        index |= 1 << q
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[index] = 1.0
    state = StateVector.__new__(StateVector)
    state.n_qubits = n_qubits
    state.amplitudes = amps
    return state


# -- raw kernels -------------------------------------------------------------
#
# The kernels work on bare arrays of shape (2**n,) or (2**n, batch) so the
# optimizer can push several input states through a circuit at once. They
# are linear maps; normalization is neither assumed nor enforced here.

def apply_gate_1q(amps: np.ndarray, n_qubits: int, qubit: int, u: np.ndarray) -> np.ndarray:
    if not 0 <= qubit < n_qubits:
        raise ValueError(f"qubit index {qubit} out of range")
    batch = amps.shape[1:]
    t = amps.reshape((2,) * n_qubits + batch)
    axis = n_qubits - 1 - qubit
    t = np.tensordot(u, t, axes=([1], [axis]))
    t = np.moveaxis(t, 0, axis)
    return t.reshape(amps.shape)


def apply_gate_2q(
    amps: np.ndarray, n_qubits: int, q1: int, q2: int, u: np.ndarray
) -> np.ndarray:
    # Matrix rows/columns are ordered with q1 as the more significant bit
    # of the two-qubit subspace and q2 as the less significant one.
    if q1 == q2:
        raise ValueError("two-qubit gate needs distinct qubits")
    for q in (q1, q2):
        if not 0 <= q < n_qubits:
            raise ValueError(f"qubit index {q} out of range")
    batch = amps.shape[1:]
    t = amps.reshape((2,) * n_qubits + batch)
    a1, a2 = n_qubits - 1 - q1, n_qubits - 1 - q2
    u4 = u.reshape(2, 2, 2, 2)  # (q1_out, q2_out, q1_in, q2_in)
    t = np.tensordot(u4, t, axes=([2, 3], [a1, a2]))
    t = np.moveaxis(t, (0, 1), (a1, a2))
    return t.reshape(amps.shape)


def apply_gate_sequence(
    amps: np.ndarray,
    n_qubits: int,
    gates: Sequence[tuple[GateMatrix, tuple[int, ...]]],
) -> np.ndarray:
    for gate, qubits in gates:
        if len(qubits) == 1:
            amps = apply_gate_1q(amps, n_qubits, qubits[0], gate.matrix)
        elif len(qubits) == 2:
            amps = apply_gate_2q(amps, n_qubits, qubits[0], qubits[1], gate.matrix)
        else:
            raise ValueError(f"unsupported gate arity {len(qubits)}")
    return amps


# -- public single-state operations ------------------------------------------

def apply_1q(state: StateVector, qubit: int, u: GateMatrix) -> StateVector:
    if u.dimension != 2:
        raise ValueError("apply_1q needs a 2x2 gate")
    out = apply_gate_1q(state.amplitudes, state.n_qubits, qubit, u.matrix)
    return StateVector(state.n_qubits, out)


def apply_2q(state: StateVector, q1: int, q2: int, u: GateMatrix) -> StateVector:
    if u.dimension != 4:
        raise ValueError("apply_2q needs a 4x4 gate")
    out = apply_gate_2q(state.amplitudes, state.n_qubits, q1, q2, u.matrix)
    return StateVector(state.n_qubits, out)


def apply_circuit(state: StateVector, circuit) -> StateVector:
    """Apply a bound circuit (anything with ``n_qubits`` and ``gates``)."""
    if circuit.n_qubits != state.n_qubits:
        raise ValueError(
            f"circuit acts on {circuit.n_qubits} qubits, state has {state.n_qubits}"
        )
    out = apply_gate_sequence(state.amplitudes, state.n_qubits, circuit.gates)
    return StateVector(state.n_qubits, out)


# -- Pauli-sum expectation values ---------------------------------------------

class CompiledPauliSum:
    """Pauli sum preprocessed for fast repeated expectation values.

    Each term P contributes  <psi|P|psi> = sum_b conj(psi[b ^ f]) * s_b * psi[b]
    where f flips the X/Y positions and s_b = i^{#Y} * (-1)^{parity(b & zy)}.
    The flip indices and sign vectors of all terms are stacked so one
    einsum evaluates every term at once.
    """

    __slots__ = ("n_qubits", "flips", "signs", "weights")

    def __init__(self, h: PauliSum) -> None:
        n = h.n_qubits
        idx = np.arange(2**n, dtype=np.intp)
        flips = []
        signs = []
        weights = []
        for coeff, string in h.terms:
            x_mask = y_mask = z_mask = 0
            for q, op in enumerate(string.ops):
                bit = 1 << q
                if op == "X":
                    x_mask |= bit
                elif op == "Y":
                    y_mask |= bit
                elif op == "Z":
                    z_mask |= bit
            flips.append(idx ^ (x_mask | y_mask))
            parity = np.bitwise_count(idx & (y_mask | z_mask)) & 1
            signs.append(1.0 - 2.0 * parity.astype(np.float64))
            weights.append(coeff * (1j) ** (bin(y_mask).count("1")))
        self.n_qubits = n
        self.flips = np.asarray(flips, dtype=np.intp).reshape(len(weights), 2**n)
        self.signs = np.asarray(signs, dtype=np.float64).reshape(len(weights), 2**n)
        self.weights = np.asarray(weights, dtype=complex)

    def expectations(self, amps: np.ndarray) -> np.ndarray:
        """Expectation per column of ``amps`` (shape ``(2**n, batch)``)."""
        if self.weights.size == 0:
            return np.zeros(amps.shape[1])
        conj_flipped = np.conj(amps)[self.flips]  # (terms, 2**n, batch)
        values = np.einsum("tbj,tb,bj->tj", conj_flipped, self.signs, amps)
        acc = self.weights @ values
        imag = float(np.max(np.abs(acc.imag)))
        if imag >= 1e-10:
            raise ValueError(f"expectation has imaginary residue {imag:g}")
        return acc.real


def compile_pauli_sum(h: PauliSum) -> CompiledPauliSum:
    return CompiledPauliSum(h)


def expectation(state: StateVector, h: PauliSum) -> float:
    """Term-wise  <psi| H |psi>  for a real-weighted Pauli sum."""
    if h.n_qubits != state.n_qubits:
        raise ValueError(
            f"Hamiltonian acts on {h.n_qubits} qubits, state has {state.n_qubits}"
        )
    compiled = CompiledPauliSum(h)
    return float(compiled.expectations(state.amplitudes.reshape(-1, 1))[0])


def expectation_dense(state: StateVector, h: PauliSum) -> float:
    """Oracle path: quadratic form against the dense matrix (n <= 12)."""
    m = to_dense(h)
    value = complex(np.vdot(state.amplitudes, m @ state.amplitudes))
    return value.real
