"""Single-qubit rotations and the parameterized two-qubit entanglers.

The three entangler families interpolate from the identity at angle 0 to
their standard fixed gate at angle pi:

* ``cz_theta``     diag(1, 1, 1, e^{i*theta})
* ``iswap_theta``  cos/-i*sin block on the {|01>, |10>} subspace
* ``cnot_theta``   e^{i*theta/2} * Rx(theta) block on the control-|1>
  subspace. The bare cos-diagonal variant of this matrix is not unitary
  at intermediate angles; multiplying the block diagonal by e^{i*theta/2}
  is the minimal completion that keeps the off-diagonal entries, restores
  unitarity, and preserves both endpoints exactly.

Rotation convention: R_a(t) = exp(-i t sigma_a / 2) (half angle).

Two-qubit matrices are ordered with the first qubit of the pair (the
control, where there is one) as the more significant basis bit.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

import numpy as np

from .simulator import GateMatrix


def _require_finite(theta: float) -> float:
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta!r}")
    return theta


# -- raw matrix builders (unitary by construction) ----------------------------

def _rx_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _ry_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz_matrix(theta: float) -> np.ndarray:
    phase = np.exp(-0.5j * theta)
    return np.array([[phase, 0], [0, np.conj(phase)]], dtype=complex)


def _phase_matrix(phi: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * phi)]], dtype=complex)


def _cz_theta_matrix(theta: float) -> np.ndarray:
    m = np.eye(4, dtype=complex)
    m[3, 3] = np.exp(1j * theta)
    return m


def _iswap_theta_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    m = np.eye(4, dtype=complex)
    m[1, 1] = c
    m[2, 2] = c
    m[1, 2] = -1j * s
    m[2, 1] = -1j * s
    return m


def _cnot_theta_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    g = np.exp(0.5j * theta)
    m = np.eye(4, dtype=complex)
    m[2, 2] = g * c
    m[3, 3] = g * c
    m[2, 3] = -1j * g * s
    m[3, 2] = -1j * g * s
    return m


# -- public gate factories -----------------------------------------------------

def rx(theta: float) -> GateMatrix:
    return GateMatrix._trusted(_rx_matrix(_require_finite(theta)))


def ry(theta: float) -> GateMatrix:
    return GateMatrix._trusted(_ry_matrix(_require_finite(theta)))


def rz(theta: float) -> GateMatrix:
    return GateMatrix._trusted(_rz_matrix(_require_finite(theta)))


def phase_gate(phi: float) -> GateMatrix:
    """diag(1, e^{i*phi}); used by the CNOT(theta) decomposition."""
    return GateMatrix._trusted(_phase_matrix(_require_finite(phi)))


def cz_theta(theta: float) -> GateMatrix:
    return GateMatrix._trusted(_cz_theta_matrix(_require_finite(theta)))


def iswap_theta(theta: float) -> GateMatrix:
    return GateMatrix._trusted(_iswap_theta_matrix(_require_finite(theta)))


def cnot_theta(theta: float) -> GateMatrix:
    return GateMatrix._trusted(_cnot_theta_matrix(_require_finite(theta)))


def cnot_theta_decomposed(
    theta: float,
) -> list[tuple[GateMatrix, tuple[int, ...]]]:
    """CNOT(theta) as single-qubit rotations plus two fixed CNOTs.

    Returns (gate, qubits) pairs in application order on the pair
    (0 = control, 1 = target):

        Rz(pi/2) target, CNOT, Ry(-theta/2) target, CNOT,
        Ry(theta/2) target, Rz(-pi/2) target, phase(theta/2) control.

    Without the final control phase the product is the controlled-Rx(theta)
    circuit of the standard decomposition, which differs from
    ``cnot_theta`` exactly by the phase e^{i*theta/2} on the control-|1>
    subspace; the phase gate completes the equality.
    """
    theta = _require_finite(theta)
    fixed_cnot = cnot_theta(math.pi)
    return [
        (rz(math.pi / 2), (1,)),
        (fixed_cnot, (0, 1)),
        (ry(-theta / 2), (1,)),
        (fixed_cnot, (0, 1)),
        (ry(theta / 2), (1,)),
        (rz(-math.pi / 2), (1,)),
        (phase_gate(theta / 2), (0,)),
    ]


def sequence_to_matrix(
    sequence: list[tuple[GateMatrix, tuple[int, ...]]]
) -> np.ndarray:
    """Compose a two-qubit gate sequence into a single 4x4 matrix.

    Pair position 0 is the more significant basis bit (matching the
    entangler matrix convention).
    """
    eye = np.eye(2, dtype=complex)
    total = np.eye(4, dtype=complex)
    for gate, qubits in sequence:
        if qubits == (0,):
            full = np.kron(gate.matrix, eye)
        elif qubits == (1,):
            full = np.kron(eye, gate.matrix)
        elif qubits == (0, 1):
            full = gate.matrix
        else:
            raise ValueError(f"unsupported qubit targets {qubits}")
        total = full @ total
    return total


class GateFamily(str, enum.Enum):
    """The three entangler families of the comparison study."""

    CNOT = "cnot"
    ISWAP = "iswap"
    CZ = "cz"

    def theta_matrix(self, theta: float) -> np.ndarray:
        builder = _ENTANGLER_BUILDERS[self]
        return builder(_require_finite(theta))

    def entangler(self, theta: float) -> GateMatrix:
        return GateMatrix._trusted(self.theta_matrix(theta))

    def fixed(self) -> GateMatrix:
        return GateMatrix._trusted(self.theta_matrix(math.pi))


_ENTANGLER_BUILDERS = {
    GateFamily.CNOT: _cnot_theta_matrix,
    GateFamily.ISWAP: _iswap_theta_matrix,
    GateFamily.CZ: _cz_theta_matrix,
}


class GateKind(NamedTuple):
    """Entangler family plus fixed/parameterized variant.

    The fixed variant is the parameterized gate pinned at theta = pi.
    """

    family: GateFamily
    parameterized: bool

    def describe(self) -> str:
        return f"{'parameterized' if self.parameterized else 'fixed'} {self.family.value}"


class EntanglingPower(NamedTuple):
    estimate: float
    stderr: float


def entangling_power(u: GateMatrix, n_samples: int, seed: int) -> EntanglingPower:
    """Monte-Carlo mean linear entropy of ``u`` on Haar-random product states.

    Draws ``n_samples`` product states |a> x |b>, applies the gate and
    returns the sample mean and standard error of 1 - tr(rho_A^2), where
    rho_A is the reduced state of the first (more significant) qubit.
    The estimate for a fixed CNOT converges to 2/9, the maximum for
    perfect entanglers; the identity gives exactly 0.
    """
    if not isinstance(u, GateMatrix) or u.dimension != 4:
        raise ValueError("entangling_power needs a 4x4 GateMatrix")
    if n_samples < 1000:
        raise ValueError("n_samples must be at least 1000 for a stable estimate")
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n_samples, 2)) + 1j * rng.normal(size=(n_samples, 2))
    b = rng.normal(size=(n_samples, 2)) + 1j * rng.normal(size=(n_samples, 2))
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    b /= np.linalg.norm(b, axis=1, keepdims=True)
    psi = np.einsum("ni,nj->nij", a, b).reshape(n_samples, 4)
    out = psi @ u.matrix.T
    m = out.reshape(n_samples, 2, 2)
    rho = m @ np.conj(np.transpose(m, (0, 2, 1)))
    purity = np.sum(np.abs(rho) ** 2, axis=(1, 2))
    entropy = 1.0 - purity
    estimate = float(np.mean(entropy))
    stderr = float(np.std(entropy, ddof=1) / math.sqrt(n_samples))
    return EntanglingPower(estimate, stderr)
