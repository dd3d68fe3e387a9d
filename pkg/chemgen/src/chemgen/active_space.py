"""MO integral transformation and frozen-core active-space reduction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scf import SCFResult


@dataclass
class ActiveSpaceHamiltonian:
    """Second-quantized Hamiltonian restricted to active spatial orbitals.

    ``constant`` absorbs nuclear repulsion plus the frozen-core energy;
    ``h1`` is the effective one-body matrix over active orbitals and
    ``eri`` the chemist-notation (tu|vw) tensor. Spin orbital p maps to
    spatial p // 2 with spin p % 2 (0 = alpha), interleaved.
    """

    constant: float
    h1: np.ndarray
    eri: np.ndarray
    n_electrons: int
    frozen: tuple[int, ...]
    active: tuple[int, ...]

    @property
    def n_spatial(self) -> int:
        return self.h1.shape[0]

    @property
    def n_spin_orbitals(self) -> int:
        return 2 * self.h1.shape[0]


def mo_integrals(scf: SCFResult) -> tuple[np.ndarray, np.ndarray]:
    """Transform AO integrals into the canonical MO basis."""
    c = scf.mo_coefficients
    h1 = c.T @ scf.h_core @ c
    eri = np.einsum("pi,pqrs->iqrs", c, scf.eri, optimize=True)
    eri = np.einsum("qj,iqrs->ijrs", c, eri, optimize=True)
    eri = np.einsum("rk,ijrs->ijks", c, eri, optimize=True)
    eri = np.einsum("sl,ijks->ijkl", c, eri, optimize=True)
    return h1, eri


def reduce_to_active_space(
    scf: SCFResult,
    frozen: tuple[int, ...],
    active: tuple[int, ...],
) -> ActiveSpaceHamiltonian:
    """Freeze doubly occupied core orbitals and keep the listed active ones.

    The frozen orbitals contribute a mean-field constant and shift the
    active one-body matrix through their Coulomb and exchange fields.
    """
    h1, eri = mo_integrals(scf)
    n_mo = h1.shape[0]
    frozen = tuple(sorted(frozen))
    active = tuple(sorted(active))
    if set(frozen) & set(active):
        raise ValueError("frozen and active orbitals overlap")
    if any(not 0 <= i < n_mo for i in frozen + active):
        raise ValueError("orbital index out of range")

    e_frozen = 0.0
    for i in frozen:
        e_frozen += 2.0 * h1[i, i]
        for j in frozen:
            e_frozen += 2.0 * eri[i, i, j, j] - eri[i, j, j, i]

    n_active = len(active)
    h_eff = np.empty((n_active, n_active))
    for a, t in enumerate(active):
        for b, u in enumerate(active):
            value = h1[t, u]
            for i in frozen:
                value += 2.0 * eri[t, u, i, i] - eri[t, i, i, u]
            h_eff[a, b] = value

    eri_active = eri[np.ix_(active, active, active, active)]
    n_elec_active = scf.n_electrons - 2 * len(frozen)
    if n_elec_active < 0:
        raise ValueError("more frozen electrons than the molecule has")
    return ActiveSpaceHamiltonian(
        constant=scf.nuclear_repulsion + e_frozen,
        h1=h_eff,
        eri=eri_active,
        n_electrons=n_elec_active,
        frozen=frozen,
        active=active,
    )
