"""Determinant-basis full CI: the independent oracle for emitted files.

The active-space Hamiltonian is applied directly to occupation-number
determinants with explicit fermionic signs (no Pauli strings involved),
so agreement with the diagonalized Jordan-Wigner output validates the
transformation end to end.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .active_space import ActiveSpaceHamiltonian


def _annihilate(det: int, p: int) -> tuple[int, int]:
    """Apply a_p to |det>; returns (sign, new_det) with sign 0 if empty."""
    if not det & (1 << p):
        return 0, det
    below = bin(det & ((1 << p) - 1)).count("1")
    return (-1) ** below, det & ~(1 << p)


def _create(det: int, p: int) -> tuple[int, int]:
    if det & (1 << p):
        return 0, det
    below = bin(det & ((1 << p) - 1)).count("1")
    return (-1) ** below, det | (1 << p)


def fci_ground_energy(h: ActiveSpaceHamiltonian, n_electrons: int | None = None) -> float:
    """Lowest eigenvalue in the fixed-particle-number sector.

    Builds <D'|H|D> by applying the second-quantized operator to every
    determinant with the requested electron count (all S_z sectors).
    """
    n_so = h.n_spin_orbitals
    n_elec = h.n_electrons if n_electrons is None else n_electrons
    dets = [sum(1 << p for p in occ) for occ in combinations(range(n_so), n_elec)]
    index = {det: i for i, det in enumerate(dets)}
    dim = len(dets)
    matrix = np.zeros((dim, dim))
    for col, det in enumerate(dets):
        matrix[col, col] += h.constant
        # one-body: h_pq a+_p a_q
        for q in range(n_so):
            sign_q, det_q = _annihilate(det, q)
            if sign_q == 0:
                continue
            for p in range(q % 2, n_so, 2):
                value = h.h1[p // 2, q // 2]
                if value == 0.0:
                    continue
                sign_p, det_pq = _create(det_q, p)
                if sign_p == 0:
                    continue
                matrix[index[det_pq], col] += sign_q * sign_p * value
        # two-body: 1/2 <pq|rs> a+_p a+_q a_s a_r, <pq|rs> = (p r | q s)
        for r in range(n_so):
            sign_r, det_r = _annihilate(det, r)
            if sign_r == 0:
                continue
            for s in range(n_so):
                sign_s, det_rs = _annihilate(det_r, s)
                if sign_s == 0:
                    continue
                for q in range(s % 2, n_so, 2):
                    sign_q, det_rsq = _create(det_rs, q)
                    if sign_q == 0:
                        continue
                    for p in range(r % 2, n_so, 2):
                        value = 0.5 * h.eri[p // 2, r // 2, q // 2, s // 2]
                        if value == 0.0:
                            continue
                        sign_p, det_final = _create(det_rsq, p)
                        if sign_p == 0:
                            continue
                        matrix[index[det_final], col] += (
                            sign_r * sign_s * sign_q * sign_p * value
                        )
    return float(np.linalg.eigvalsh(matrix)[0])


def hartree_fock_energy(h: ActiveSpaceHamiltonian) -> float:
    """<HF|H|HF> for the aufbau determinant of the active space.

    With all non-frozen occupied orbitals active this must reproduce the
    SCF total energy, which pins down the integral bookkeeping.
    """
    occupied = list(range(h.n_electrons))
    energy = h.constant
    for p in occupied:
        energy += h.h1[p // 2, p // 2]
    for p in occupied:
        for q in occupied:
            # 1/2 (<pq|pq> - <pq|qp>)
            direct = h.eri[p // 2, p // 2, q // 2, q // 2]
            exchange = (
                h.eri[p // 2, q // 2, q // 2, p // 2] if p % 2 == q % 2 else 0.0
            )
            energy += 0.5 * (direct - exchange)
    return float(energy)
