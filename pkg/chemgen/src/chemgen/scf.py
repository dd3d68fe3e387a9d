"""Restricted Hartree-Fock with DIIS for closed-shell molecules."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import build_basis, nuclear_repulsion
from .integrals import integral_tables


class SCFConvergenceError(RuntimeError):
    """SCF failed to converge for a geometry."""


@dataclass
class SCFResult:
    energy: float  # total RHF energy (electronic + nuclear)
    nuclear_repulsion: float
    mo_coefficients: np.ndarray  # columns are MOs, ascending orbital energy
    mo_energies: np.ndarray
    h_core: np.ndarray
    eri: np.ndarray  # chemist notation (ij|kl) in the AO basis
    n_electrons: int


def _fock(h_core: np.ndarray, eri: np.ndarray, density: np.ndarray) -> np.ndarray:
    coulomb = np.einsum("ijkl,kl->ij", eri, density)
    exchange = np.einsum("ikjl,kl->ij", eri, density)
    return h_core + coulomb - 0.5 * exchange


def run_rhf(
    atoms: list[tuple[str, tuple[float, float, float]]],
    n_electrons: int,
    max_iterations: int = 200,
    tol: float = 1e-10,
    diis_size: int = 8,
) -> SCFResult:
    """Roothaan iterations with DIIS extrapolation on the Fock matrix."""
    if n_electrons % 2 != 0:
        raise ValueError("restricted HF needs an even electron count")
    basis = build_basis(atoms)
    overlap, h_core, eri = integral_tables(basis, atoms)
    e_nuc = nuclear_repulsion(atoms)
    n_occ = n_electrons // 2

    s_vals, s_vecs = np.linalg.eigh(overlap)
    if np.min(s_vals) < 1e-10:
        raise SCFConvergenceError("overlap matrix is near-singular")
    x = s_vecs @ np.diag(s_vals**-0.5) @ s_vecs.T

    def solve(fock):
        f_prime = x.T @ fock @ x
        energies, vectors = np.linalg.eigh(f_prime)
        coeffs = x @ vectors
        return energies, coeffs

    _, coeffs = solve(h_core)
    density = 2.0 * coeffs[:, :n_occ] @ coeffs[:, :n_occ].T

    fock_history: list[np.ndarray] = []
    error_history: list[np.ndarray] = []
    previous_energy = 0.0
    for _ in range(max_iterations):
        fock = _fock(h_core, eri, density)
        # DIIS residual in the orthonormal basis
        residual = x.T @ (fock @ density @ overlap - overlap @ density @ fock) @ x
        fock_history.append(fock)
        error_history.append(residual)
        if len(fock_history) > diis_size:
            fock_history.pop(0)
            error_history.pop(0)
        if len(fock_history) > 1:
            m = len(fock_history)
            b = -np.ones((m + 1, m + 1))
            b[m, m] = 0.0
            for i in range(m):
                for j in range(m):
                    b[i, j] = float(np.sum(error_history[i] * error_history[j]))
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                weights = np.linalg.solve(b, rhs)[:m]
                fock = sum(w * f for w, f in zip(weights, fock_history))
            except np.linalg.LinAlgError:
                pass
        mo_energies, coeffs = solve(fock)
        density = 2.0 * coeffs[:, :n_occ] @ coeffs[:, :n_occ].T
        electronic = 0.5 * float(np.sum(density * (h_core + _fock(h_core, eri, density))))
        energy = electronic + e_nuc
        if abs(energy - previous_energy) < tol and float(np.max(np.abs(residual))) < 1e-8:
            return SCFResult(
                energy=energy,
                nuclear_repulsion=e_nuc,
                mo_coefficients=coeffs,
                mo_energies=mo_energies,
                h_core=h_core,
                eri=eri,
                n_electrons=n_electrons,
            )
        previous_energy = energy
    raise SCFConvergenceError(f"SCF not converged after {max_iterations} iterations")
