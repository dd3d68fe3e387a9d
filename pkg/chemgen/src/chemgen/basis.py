"""STO-3G basis data and shell expansion for H, Li and Be.

Exponents and contraction coefficients are the published STO-3G values
(coefficients assume normalized primitives). Contracted functions are
renormalized numerically after attaching primitive norms, so small
rounding in the tabulated coefficients never leaks into overlaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_S_COEFS_1S = (0.1543289673, 0.5353281423, 0.4446345422)
_S_COEFS_2S = (-0.09996722919, 0.3995128261, 0.7001154689)
_P_COEFS_2P = (0.1559162750, 0.6076837186, 0.3919573931)

# element -> list of (shell_type, exponents, coefficients)
STO3G = {
    "H": [
        ("s", (3.425250914, 0.6239137298, 0.1688554040), _S_COEFS_1S),
    ],
    "Li": [
        ("s", (16.11957475, 2.936200663, 0.7946504870), _S_COEFS_1S),
        ("s", (0.6362897469, 0.1478600533, 0.0480886784), _S_COEFS_2S),
        ("p", (0.6362897469, 0.1478600533, 0.0480886784), _P_COEFS_2P),
    ],
    "Be": [
        ("s", (30.16787069, 5.495115306, 1.487192653), _S_COEFS_1S),
        ("s", (1.314833110, 0.3055389383, 0.0993707456), _S_COEFS_2S),
        ("p", (1.314833110, 0.3055389383, 0.0993707456), _P_COEFS_2P),
    ],
}

ATOMIC_NUMBER = {"H": 1, "Li": 3, "Be": 4}


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def primitive_norm(alpha: float, lmn: tuple[int, int, int]) -> float:
    l, m, n = lmn
    total = l + m + n
    num = (2 * alpha / math.pi) ** 0.75 * (4 * alpha) ** (total / 2)
    den = math.sqrt(
        _double_factorial(2 * l - 1)
        * _double_factorial(2 * m - 1)
        * _double_factorial(2 * n - 1)
    )
    return num / den


@dataclass
class BasisFunction:
    """Contracted Cartesian Gaussian: sum_k c_k N_k exp(-a_k r^2) x^l y^m z^n."""

    center: np.ndarray
    lmn: tuple[int, int, int]
    exponents: np.ndarray
    coefficients: np.ndarray  # includes primitive norms and contraction norm


_SHELL_LMN = {
    "s": [(0, 0, 0)],
    "p": [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
}


def build_basis(atoms: list[tuple[str, tuple[float, float, float]]]) -> list[BasisFunction]:
    """Expand shells into Cartesian basis functions (coordinates in bohr)."""
    from .integrals import contracted_overlap  # deferred import, no cycle at call time

    functions: list[BasisFunction] = []
    for element, coords in atoms:
        if element not in STO3G:
            raise ValueError(f"no STO-3G data for element {element!r}")
        center = np.asarray(coords, dtype=float)
        for shell_type, exponents, coefficients in STO3G[element]:
            for lmn in _SHELL_LMN[shell_type]:
                exps = np.asarray(exponents, dtype=float)
                coefs = np.asarray(
                    [c * primitive_norm(a, lmn) for a, c in zip(exps, coefficients)]
                )
                bf = BasisFunction(center=center, lmn=lmn, exponents=exps, coefficients=coefs)
                self_overlap = contracted_overlap(bf, bf)
                bf.coefficients = coefs / math.sqrt(self_overlap)
                functions.append(bf)
    return functions


def nuclear_repulsion(atoms: list[tuple[str, tuple[float, float, float]]]) -> float:
    energy = 0.0
    for i in range(len(atoms)):
        for j in range(i + 1, len(atoms)):
            zi = ATOMIC_NUMBER[atoms[i][0]]
            zj = ATOMIC_NUMBER[atoms[j][0]]
            rij = np.linalg.norm(np.asarray(atoms[i][1]) - np.asarray(atoms[j][1]))
            energy += zi * zj / rij
    return float(energy)
