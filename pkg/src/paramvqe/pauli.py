"""Hamiltonians as real-weighted sums of Pauli strings.

Conventions used throughout the package:

* A Pauli string is written left-to-right in qubit order: character ``i``
  of the label acts on qubit ``i``.
* Basis indices are little-endian: bit ``i`` of a computational-basis
  index holds the value of qubit ``i``.

Both conventions are fixed once here so that Hamiltonian files, result
CSVs and the statevector simulator all agree.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

PAULI_LABELS = "IXYZ"

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# Coefficients below this magnitude are treated as exact cancellations
# (double-precision noise floor of the chemistry pipeline).
MERGE_TOL = 1e-12

# Dense realization is guarded: 2^12 x 2^12 complex is ~256 MB.
MAX_DENSE_QUBITS = 12

HAMILTONIAN_FORMAT_VERSION = 1


class HamiltonianFormatError(ValueError):
    """Raised when a Hamiltonian file violates the JSON schema."""


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis, one label per qubit."""

    ops: tuple[str, ...]

    def __post_init__(self) -> None:
        for i, op in enumerate(self.ops):
            if op not in PAULI_LABELS:
                raise ValueError(
                    f"illegal Pauli label {op!r} at position {i}; expected one of I, X, Y, Z"
                )

    @property
    def n_qubits(self) -> int:
        return len(self.ops)

    @property
    def label(self) -> str:
        return "".join(self.ops)

    def __str__(self) -> str:
        return self.label

    def weight(self) -> int:
        """Number of non-identity factors."""
        return sum(1 for op in self.ops if op != "I")


def parse_pauli_string(text: str, n_qubits: int) -> PauliString:
    """Parse a label like ``"XYZI"`` into a PauliString on ``n_qubits`` qubits.

    Character ``i`` acts on qubit ``i`` (ascending left-to-right).
    """
    if len(text) != n_qubits:
        raise ValueError(
            f"Pauli string {text!r} has length {len(text)}, expected {n_qubits}"
        )
    for i, ch in enumerate(text):
        if ch not in PAULI_LABELS:
            raise ValueError(
                f"illegal character {ch!r} at position {i} in Pauli string {text!r}"
            )
    return PauliString(tuple(text))


class PauliSum:
    """Real-weighted sum of Pauli strings on a fixed qubit register.

    Instances are immutable and normalized at construction: duplicate
    strings are merged by coefficient summation, terms with
    ``|coeff| < MERGE_TOL`` are dropped, and terms are kept in a canonical
    (lexicographic) order. Real coefficients make the operator Hermitian.

    ``metadata`` is free-form file metadata preserved through round trips;
    it does not participate in equality or hashing.
    """

    __slots__ = ("n_qubits", "terms", "metadata")

    def __init__(
        self,
        n_qubits: int,
        terms: Iterable[tuple[float, PauliString | str]],
        metadata: Mapping | None = None,
    ) -> None:
        if not isinstance(n_qubits, int) or n_qubits < 1:
            raise ValueError(f"n_qubits must be a positive integer, got {n_qubits!r}")
        merged: dict[str, float] = {}
        for coeff, string in terms:
            coeff = float(coeff)
            if not math.isfinite(coeff):
                raise ValueError(f"non-finite coefficient {coeff!r}")
            if isinstance(string, PauliString):
                if string.n_qubits != n_qubits:
                    raise ValueError(
                        f"Pauli string {string.label!r} has {string.n_qubits} qubits, "
                        f"expected {n_qubits}"
                    )
                label = string.label
            else:
                label = parse_pauli_string(string, n_qubits).label
            merged[label] = merged.get(label, 0.0) + coeff
        kept = tuple(
            (coeff, PauliString(tuple(label)))
            for label, coeff in sorted(merged.items())
            if abs(coeff) >= MERGE_TOL
        )
        object.__setattr__(self, "n_qubits", n_qubits)
        object.__setattr__(self, "terms", kept)
        object.__setattr__(self, "metadata", dict(metadata) if metadata else {})

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("PauliSum is immutable")

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self.n_qubits == other.n_qubits and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n_qubits, self.terms))

    def __repr__(self) -> str:
        return f"PauliSum(n_qubits={self.n_qubits}, n_terms={len(self.terms)})"

    def __reduce__(self):
        # __setattr__ is blocked, so rebuild through the constructor.
        terms = [(coeff, string.label) for coeff, string in self.terms]
        return (PauliSum, (self.n_qubits, terms, self.metadata))

    def coefficient(self, label: str) -> float:
        """Coefficient of the given string label (0.0 if absent)."""
        target = parse_pauli_string(label, self.n_qubits).label
        for coeff, string in self.terms:
            if string.label == target:
                return coeff
        return 0.0


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the spin-chain models: couplings, field and geometry."""

    J: float
    B: float
    n_qubits: int
    boundary: str = "periodic"

    def __post_init__(self) -> None:
        if self.boundary not in ("open", "periodic"):
            raise ValueError(f"boundary must be 'open' or 'periodic', got {self.boundary!r}")
        if self.n_qubits < 2:
            raise ValueError("spin models need n_qubits >= 2")
        if self.boundary == "periodic" and self.n_qubits < 3:
            # At n=2 the wrap-around bond coincides with the single open bond;
            # rejecting beats silently double-counting it.
            raise ValueError("periodic boundary requires n_qubits >= 3")
        if not (math.isfinite(self.J) and math.isfinite(self.B)):
            raise ValueError("J and B must be finite")


def _bonds(p: ModelParams) -> list[tuple[int, int]]:
    bonds = [(i, i + 1) for i in range(p.n_qubits - 1)]
    if p.boundary == "periodic":
        bonds.append((p.n_qubits - 1, 0))
    return bonds


def _single_site(n: int, qubit: int, op: str) -> str:
    return "".join(op if q == qubit else "I" for q in range(n))


def _two_site(n: int, i: int, j: int, op: str) -> str:
    return "".join(op if q in (i, j) else "I" for q in range(n))


def build_heisenberg(p: ModelParams) -> PauliSum:
    """Heisenberg chain  B * sum_i Z_i + J * sum_<ij> (XX + YY + ZZ)."""
    n = p.n_qubits
    terms: list[tuple[float, str]] = []
    for i in range(n):
        terms.append((p.B, _single_site(n, i, "Z")))
    for i, j in _bonds(p):
        for op in "XYZ":
            terms.append((p.J, _two_site(n, i, j, op)))
    return PauliSum(n, terms)


def build_tfim(p: ModelParams) -> PauliSum:
    """Transverse-field Ising chain  B * sum_i X_i + J * sum_<ij> Z_i Z_j."""
    n = p.n_qubits
    terms: list[tuple[float, str]] = []
    for i in range(n):
        terms.append((p.B, _single_site(n, i, "X")))
    for i, j in _bonds(p):
        terms.append((p.J, _two_site(n, i, j, "Z")))
    return PauliSum(n, terms)


def to_dense(h: PauliSum) -> np.ndarray:
    """Dense Hermitian matrix  sum_k coeff_k * kron(P_{n-1}, ..., P_0).

    Qubit 0 is the least significant index, so its factor sits rightmost
    in the Kronecker chain. Guarded to ``MAX_DENSE_QUBITS``.
    """
    n = h.n_qubits
    if n > MAX_DENSE_QUBITS:
        raise ValueError(
            f"to_dense limited to {MAX_DENSE_QUBITS} qubits, got {n}"
        )
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    for coeff, string in h.terms:
        m = np.array([[1.0]], dtype=complex)
        for q in reversed(range(n)):
            m = np.kron(m, PAULI_MATRICES[string.ops[q]])
        out += coeff * m
    return out


def _validate_file_document(doc) -> None:
    if not isinstance(doc, dict):
        raise HamiltonianFormatError("top-level JSON value must be an object")
    if doc.get("format_version") != HAMILTONIAN_FORMAT_VERSION:
        raise HamiltonianFormatError(
            f"unsupported format_version {doc.get('format_version')!r}; "
            f"expected {HAMILTONIAN_FORMAT_VERSION}"
        )
    if not isinstance(doc.get("n_qubits"), int) or doc["n_qubits"] < 1:
        raise HamiltonianFormatError("n_qubits must be a positive integer")
    if not isinstance(doc.get("terms"), list):
        raise HamiltonianFormatError("terms must be a list")
    if "metadata" in doc and not isinstance(doc["metadata"], dict):
        raise HamiltonianFormatError("metadata must be an object")


def load_hamiltonian(path) -> PauliSum:
    """Load a Hamiltonian JSON file (see ``save_hamiltonian`` for the schema).

    Raises ``HamiltonianFormatError`` with a distinct message for schema
    violations, non-finite coefficients and string-length mismatches.
    """
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise HamiltonianFormatError(f"invalid JSON in {path}: {exc}") from exc
    _validate_file_document(doc)
    n = doc["n_qubits"]
    terms: list[tuple[float, str]] = []
    for k, entry in enumerate(doc["terms"]):
        if not isinstance(entry, dict) or "coeff" not in entry or "pauli" not in entry:
            raise HamiltonianFormatError(
                f"term {k} must be an object with 'coeff' and 'pauli' keys"
            )
        coeff = entry["coeff"]
        if not isinstance(coeff, (int, float)) or not math.isfinite(coeff):
            raise HamiltonianFormatError(f"term {k} coefficient is not a finite number")
        pauli = entry["pauli"]
        if not isinstance(pauli, str) or len(pauli) != n:
            raise HamiltonianFormatError(
                f"term {k} Pauli string has length {len(pauli) if isinstance(pauli, str) else '?'}, "
                f"expected {n}"
            )
        try:
            parse_pauli_string(pauli, n)
        except ValueError as exc:
            raise HamiltonianFormatError(f"term {k}: {exc}") from exc
        terms.append((float(coeff), pauli))
    return PauliSum(n, terms, metadata=doc.get("metadata"))


def save_hamiltonian(h: PauliSum, path) -> None:
    """Write the Hamiltonian JSON schema:

    ``{"format_version": 1, "n_qubits": N,
       "terms": [{"coeff": c, "pauli": "..."}], "metadata": {...}}``

    Coefficients are serialized at full double precision (round-trip exact),
    so ``load(save(h)) == h``.
    """
    doc = {
        "format_version": HAMILTONIAN_FORMAT_VERSION,
        "n_qubits": h.n_qubits,
        "terms": [
            {"coeff": coeff, "pauli": string.label} for coeff, string in h.terms
        ],
        "metadata": h.metadata,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
