"""Jordan-Wigner transformation of the active-space Hamiltonian.

Spin orbital p (interleaved: spatial p//2, spin p%2 with 0 = alpha) maps
to qubit p. Ladder operators become

    a_p      = Z_0 ... Z_{p-1} (X_p + i Y_p) / 2
    a_p^dag  = Z_0 ... Z_{p-1} (X_p - i Y_p) / 2

and the second-quantized Hamiltonian

    H = c + sum_pq h_pq a_p^dag a_q
          + 1/2 sum_pqrs <pq|rs> a_p^dag a_q^dag a_s a_r

is expanded into Pauli strings with a small symbolic Pauli algebra.
Physicist matrix elements come from the chemist tensor via
<pq|rs> = (p r | q s) with spin deltas.
"""

from __future__ import annotations

from .active_space import ActiveSpaceHamiltonian

# (a, b) -> (phase, product) for single-qubit Pauli multiplication a*b
_PAULI_PRODUCT = {
    ("I", "I"): (1.0, "I"), ("I", "X"): (1.0, "X"), ("I", "Y"): (1.0, "Y"), ("I", "Z"): (1.0, "Z"),
    ("X", "I"): (1.0, "X"), ("X", "X"): (1.0, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1.0, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1.0, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1.0, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1.0, "I"),
}

# A polynomial maps a sorted tuple of (qubit, op) pairs to a complex coefficient.
PauliPolynomial = dict[tuple[tuple[int, str], ...], complex]


def _poly_mul(left: PauliPolynomial, right: PauliPolynomial) -> PauliPolynomial:
    out: PauliPolynomial = {}
    for ops_l, coeff_l in left.items():
        for ops_r, coeff_r in right.items():
            phase = 1.0 + 0.0j
            merged = dict(ops_l)
            for qubit, op in ops_r:
                if qubit in merged:
                    extra, product = _PAULI_PRODUCT[(merged[qubit], op)]
                    phase *= extra
                    if product == "I":
                        del merged[qubit]
                    else:
                        merged[qubit] = product
                else:
                    merged[qubit] = op
            key = tuple(sorted(merged.items()))
            out[key] = out.get(key, 0.0) + coeff_l * coeff_r * phase
    return out


def _poly_add(target: PauliPolynomial, other: PauliPolynomial, scale: complex) -> None:
    for key, coeff in other.items():
        target[key] = target.get(key, 0.0) + scale * coeff


def _ladder(p: int, create: bool) -> PauliPolynomial:
    z_string = tuple((q, "Z") for q in range(p))
    sign = -0.5j if create else 0.5j
    return {
        z_string + ((p, "X"),): 0.5 + 0.0j,
        z_string + ((p, "Y"),): sign,
    }


def jordan_wigner_terms(h: ActiveSpaceHamiltonian, tol: float = 1e-12) -> list[tuple[float, str]]:
    """Pauli terms (coeff, label) of the qubit Hamiltonian.

    Labels follow the shared file convention: character i acts on qubit i.
    Imaginary residues beyond 1e-10 (there are none for a Hermitian input)
    raise instead of being silently dropped.
    """
    n_spatial = h.n_spatial
    n_so = h.n_spin_orbitals
    creation = [_ladder(p, create=True) for p in range(n_so)]
    annihilation = [_ladder(p, create=False) for p in range(n_so)]

    total: PauliPolynomial = {(): complex(h.constant)}

    for p in range(n_so):
        for q in range(n_so):
            if p % 2 != q % 2:
                continue
            coeff = h.h1[p // 2, q // 2]
            if abs(coeff) < tol:
                continue
            _poly_add(total, _poly_mul(creation[p], annihilation[q]), coeff)

    # 1/2 sum <pq|rs> a+_p a+_q a_s a_r with <pq|rs> = (p r | q s) * spin deltas
    for p in range(n_so):
        for q in range(n_so):
            if p == q:
                continue
            for r in range(n_so):
                if r % 2 != p % 2:
                    continue
                for s in range(n_so):
                    if s % 2 != q % 2 or s == r:
                        continue
                    coeff = 0.5 * h.eri[p // 2, r // 2, q // 2, s // 2]
                    if abs(coeff) < tol:
                        continue
                    poly = _poly_mul(
                        _poly_mul(creation[p], creation[q]),
                        _poly_mul(annihilation[s], annihilation[r]),
                    )
                    _poly_add(total, poly, coeff)

    terms: list[tuple[float, str]] = []
    for ops, coeff in total.items():
        if abs(coeff) < tol:
            continue
        if abs(coeff.imag) > 1e-10:
            raise ValueError(f"non-Hermitian JW output: imaginary {coeff.imag:g}")
        label = ["I"] * n_so
        for qubit, op in ops:
            label[qubit] = op
        terms.append((float(coeff.real), "".join(label)))
    terms.sort(key=lambda item: item[1])
    return terms
