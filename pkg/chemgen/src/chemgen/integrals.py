"""Gaussian integrals via the McMurchie-Davidson scheme.

Covers overlap, kinetic, nuclear-attraction and electron-repulsion
integrals for arbitrary Cartesian angular momenta (s and p are all the
bundled molecules need). All lengths in bohr, energies in hartree.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import hyp1f1

from .basis import ATOMIC_NUMBER, BasisFunction


def boys(m: int, t: float) -> float:
    """Boys function F_m(t) via the confluent hypergeometric identity."""
    return float(hyp1f1(m + 0.5, m + 1.5, -t)) / (2 * m + 1)


def _hermite_e(i: int, j: int, t: int, q_dist: float, a: float, b: float, memo) -> float:
    """Hermite expansion coefficient E_t^{ij} for a 1D Gaussian product."""
    if t < 0 or t > i + j:
        return 0.0
    key = (i, j, t)
    if key in memo:
        return memo[key]
    p = a + b
    q = a * b / p
    if i == j == t == 0:
        value = math.exp(-q * q_dist * q_dist)
    elif j == 0:
        value = (
            _hermite_e(i - 1, j, t - 1, q_dist, a, b, memo) / (2 * p)
            - (q * q_dist / a) * _hermite_e(i - 1, j, t, q_dist, a, b, memo)
            + (t + 1) * _hermite_e(i - 1, j, t + 1, q_dist, a, b, memo)
        )
    else:
        value = (
            _hermite_e(i, j - 1, t - 1, q_dist, a, b, memo) / (2 * p)
            + (q * q_dist / b) * _hermite_e(i, j - 1, t, q_dist, a, b, memo)
            + (t + 1) * _hermite_e(i, j - 1, t + 1, q_dist, a, b, memo)
        )
    memo[key] = value
    return value


def _primitive_overlap(a, lmn1, center1, b, lmn2, center2) -> float:
    p = a + b
    value = (math.pi / p) ** 1.5
    for axis in range(3):
        value *= _hermite_e(
            lmn1[axis], lmn2[axis], 0, center1[axis] - center2[axis], a, b, {}
        )
    return value


def _primitive_kinetic(a, lmn1, center1, b, lmn2, center2) -> float:
    l2, m2, n2 = lmn2

    def overlap(dl, dm, dn):
        lmn = (l2 + dl, m2 + dm, n2 + dn)
        if min(lmn) < 0:
            return 0.0
        return _primitive_overlap(a, lmn1, center1, b, lmn, center2)

    term0 = b * (2 * (l2 + m2 + n2) + 3) * overlap(0, 0, 0)
    term1 = -2 * b * b * (overlap(2, 0, 0) + overlap(0, 2, 0) + overlap(0, 0, 2))
    term2 = -0.5 * (
        l2 * (l2 - 1) * overlap(-2, 0, 0)
        + m2 * (m2 - 1) * overlap(0, -2, 0)
        + n2 * (n2 - 1) * overlap(0, 0, -2)
    )
    return term0 + term1 + term2


def _hermite_r(t: int, u: int, v: int, n: int, p: float, pc: np.ndarray, memo) -> float:
    """Auxiliary Hermite Coulomb integral R^n_{tuv}."""
    key = (t, u, v, n)
    if key in memo:
        return memo[key]
    if t == u == v == 0:
        dist2 = float(pc @ pc)
        value = (-2.0 * p) ** n * boys(n, p * dist2)
    elif t > 0:
        value = pc[0] * _hermite_r(t - 1, u, v, n + 1, p, pc, memo)
        if t > 1:
            value += (t - 1) * _hermite_r(t - 2, u, v, n + 1, p, pc, memo)
    elif u > 0:
        value = pc[1] * _hermite_r(t, u - 1, v, n + 1, p, pc, memo)
        if u > 1:
            value += (u - 1) * _hermite_r(t, u - 2, v, n + 1, p, pc, memo)
    else:
        value = pc[2] * _hermite_r(t, u, v - 1, n + 1, p, pc, memo)
        if v > 1:
            value += (v - 1) * _hermite_r(t, u, v - 2, n + 1, p, pc, memo)
    memo[key] = value
    return value


def _primitive_nuclear(a, lmn1, center1, b, lmn2, center2, nucleus) -> float:
    p = a + b
    composite = (a * center1 + b * center2) / p
    pc = composite - nucleus
    memo_r: dict = {}
    memos = [{}, {}, {}]
    value = 0.0
    for t in range(lmn1[0] + lmn2[0] + 1):
        ex = _hermite_e(lmn1[0], lmn2[0], t, center1[0] - center2[0], a, b, memos[0])
        for u in range(lmn1[1] + lmn2[1] + 1):
            ey = _hermite_e(lmn1[1], lmn2[1], u, center1[1] - center2[1], a, b, memos[1])
            for v in range(lmn1[2] + lmn2[2] + 1):
                ez = _hermite_e(lmn1[2], lmn2[2], v, center1[2] - center2[2], a, b, memos[2])
                value += ex * ey * ez * _hermite_r(t, u, v, 0, p, pc, memo_r)
    return 2.0 * math.pi / p * value


def _primitive_eri(a, lmn1, ca, b, lmn2, cb, c, lmn3, cc, d, lmn4, cd) -> float:
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    pcomp = (a * ca + b * cb) / p
    qcomp = (c * cc + d * cd) / q
    pq = pcomp - qcomp
    memo_r: dict = {}
    memos1 = [{}, {}, {}]
    memos2 = [{}, {}, {}]
    value = 0.0
    for t in range(lmn1[0] + lmn2[0] + 1):
        e1x = _hermite_e(lmn1[0], lmn2[0], t, ca[0] - cb[0], a, b, memos1[0])
        for u in range(lmn1[1] + lmn2[1] + 1):
            e1y = _hermite_e(lmn1[1], lmn2[1], u, ca[1] - cb[1], a, b, memos1[1])
            for v in range(lmn1[2] + lmn2[2] + 1):
                e1z = _hermite_e(lmn1[2], lmn2[2], v, ca[2] - cb[2], a, b, memos1[2])
                e1 = e1x * e1y * e1z
                if e1 == 0.0:
                    continue
                for tau in range(lmn3[0] + lmn4[0] + 1):
                    e2x = _hermite_e(lmn3[0], lmn4[0], tau, cc[0] - cd[0], c, d, memos2[0])
                    for nu in range(lmn3[1] + lmn4[1] + 1):
                        e2y = _hermite_e(lmn3[1], lmn4[1], nu, cc[1] - cd[1], c, d, memos2[1])
                        for phi in range(lmn3[2] + lmn4[2] + 1):
                            e2z = _hermite_e(
                                lmn3[2], lmn4[2], phi, cc[2] - cd[2], c, d, memos2[2]
                            )
                            sign = -1.0 if (tau + nu + phi) % 2 else 1.0
                            value += (
                                e1
                                * e2x
                                * e2y
                                * e2z
                                * sign
                                * _hermite_r(t + tau, u + nu, v + phi, 0, alpha, pq, memo_r)
                            )
    return value * 2.0 * math.pi**2.5 / (p * q * math.sqrt(p + q))


def _contract_pair(bf1: BasisFunction, bf2: BasisFunction, primitive) -> float:
    value = 0.0
    for a, ca in zip(bf1.exponents, bf1.coefficients):
        for b, cb in zip(bf2.exponents, bf2.coefficients):
            value += ca * cb * primitive(a, b)
    return value


def contracted_overlap(bf1: BasisFunction, bf2: BasisFunction) -> float:
    return _contract_pair(
        bf1,
        bf2,
        lambda a, b: _primitive_overlap(a, bf1.lmn, bf1.center, b, bf2.lmn, bf2.center),
    )


def contracted_kinetic(bf1: BasisFunction, bf2: BasisFunction) -> float:
    return _contract_pair(
        bf1,
        bf2,
        lambda a, b: _primitive_kinetic(a, bf1.lmn, bf1.center, b, bf2.lmn, bf2.center),
    )


def contracted_nuclear(bf1: BasisFunction, bf2: BasisFunction, atoms) -> float:
    value = 0.0
    for element, coords in atoms:
        z = ATOMIC_NUMBER[element]
        nucleus = np.asarray(coords, dtype=float)
        value -= z * _contract_pair(
            bf1,
            bf2,
            lambda a, b: _primitive_nuclear(
                a, bf1.lmn, bf1.center, b, bf2.lmn, bf2.center, nucleus
            ),
        )
    return value


def contracted_eri(
    bf1: BasisFunction, bf2: BasisFunction, bf3: BasisFunction, bf4: BasisFunction
) -> float:
    value = 0.0
    for a, ca in zip(bf1.exponents, bf1.coefficients):
        for b, cb in zip(bf2.exponents, bf2.coefficients):
            for c, cc in zip(bf3.exponents, bf3.coefficients):
                for d, cd in zip(bf4.exponents, bf4.coefficients):
                    value += ca * cb * cc * cd * _primitive_eri(
                        a, bf1.lmn, bf1.center,
                        b, bf2.lmn, bf2.center,
                        c, bf3.lmn, bf3.center,
                        d, bf4.lmn, bf4.center,
                    )
    return value


def integral_tables(basis: list[BasisFunction], atoms):
    """Overlap, core Hamiltonian and chemist-notation ERI tensor (ij|kl)."""
    n = len(basis)
    overlap = np.empty((n, n))
    kinetic = np.empty((n, n))
    nuclear = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            overlap[i, j] = overlap[j, i] = contracted_overlap(basis[i], basis[j])
            kinetic[i, j] = kinetic[j, i] = contracted_kinetic(basis[i], basis[j])
            nuclear[i, j] = nuclear[j, i] = contracted_nuclear(basis[i], basis[j], atoms)
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(i + 1):
            ij = i * (i + 1) // 2 + j
            for k in range(n):
                for l in range(k + 1):
                    kl = k * (k + 1) // 2 + l
                    if ij < kl:
                        continue
                    value = contracted_eri(basis[i], basis[j], basis[k], basis[l])
                    for a, b in ((i, j), (j, i)):
                        for c, d in ((k, l), (l, k)):
                            eri[a, b, c, d] = value
                            eri[c, d, a, b] = value
    return overlap, kinetic + nuclear, eri
