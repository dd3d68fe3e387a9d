"""Exact-diagonalization oracle for Pauli-sum Hamiltonians.

Dense Hermitian eigendecomposition is exact at the scales treated here
(at most 12 qubits, matrices up to 4096 x 4096) and serves as the
reference for every VQE energy difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pauli import MAX_DENSE_QUBITS, PauliSum, to_dense

CHEMICAL_ACCURACY_HARTREE = 0.0016

_RESIDUAL_TOL = 1e-9
_HERMITICITY_TOL = 1e-10


@dataclass(frozen=True)
class SpectrumResult:
    """The k lowest eigenvalues, sorted ascending."""

    eigenvalues: tuple[float, ...]

    @property
    def k(self) -> int:
        return len(self.eigenvalues)

    @property
    def ground_energy(self) -> float:
        return self.eigenvalues[0]


def lowest_eigenvalues(h: PauliSum, k: int) -> SpectrumResult:
    """k smallest eigenvalues of the dense Hamiltonian.

    Eigenvectors are used internally to verify the residual
    ``|H v - lambda v| < 1e-9 * |H|`` for each returned pair.
    """
    if h.n_qubits > MAX_DENSE_QUBITS:
        raise ValueError(f"exact diagonalization limited to {MAX_DENSE_QUBITS} qubits")
    dim = 2**h.n_qubits
    if not 1 <= k <= dim:
        raise ValueError(f"k must be between 1 and {dim}, got {k}")
    matrix = to_dense(h)
    herm = float(np.max(np.abs(matrix - matrix.conj().T)))
    if herm > _HERMITICITY_TOL:
        raise ValueError(f"Hamiltonian is not Hermitian (deviation {herm:g})")
    values, vectors = np.linalg.eigh(matrix)
    scale = max(float(np.max(np.abs(values))), 1.0)
    for i in range(k):
        residual = float(np.linalg.norm(matrix @ vectors[:, i] - values[i] * vectors[:, i]))
        if residual > _RESIDUAL_TOL * scale:
            raise ArithmeticError(
                f"eigenpair {i} residual {residual:g} exceeds {_RESIDUAL_TOL:g} * |H|"
            )
    return SpectrumResult(tuple(float(v) for v in values[:k]))


def delta_e(vqe_energies, exact: SpectrumResult) -> np.ndarray:
    """Elementwise  E_vqe,j - lambda_j  against the sorted exact levels."""
    vqe = np.asarray(vqe_energies, dtype=float)
    if vqe.shape != (exact.k,):
        raise ValueError(
            f"got {vqe.shape[0] if vqe.ndim == 1 else '?'} VQE energies "
            f"for {exact.k} exact levels"
        )
    return vqe - np.asarray(exact.eigenvalues)


def chemical_accuracy(delta: float) -> bool:
    """|delta| <= 0.0016 Hartree (boundary inclusive)."""
    if not math.isfinite(delta):
        raise ValueError("delta must be finite")
    return abs(delta) <= CHEMICAL_ACCURACY_HARTREE
