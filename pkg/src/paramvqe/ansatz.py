"""Layered hardware-efficient circuit template.

Each layer applies a ZYZ Euler rotation Rz(a) -> Ry(b) -> Rz(c) on every
qubit, then nearest-neighbor entanglers on the open-chain bonds
(0,1), (1,2), ..., (N-2, N-1) in ascending order. The chain stays open
even when the target Hamiltonian is periodic, matching a linear qubit
layout.

With a fixed entangler the circuit has 3N parameters per layer. With a
parameterized entangler the bonds contribute N-1 extra angles, so one
uniformly random Euler angle per (layer, qubit) is removed to keep the
parameter budgets comparable; the removal pattern is drawn once from
``drop_seed`` and then frozen for every restart and sweep point of an
experiment, which isolates the gate-parameterization effect.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gates import GateFamily, GateKind, _ry_matrix, _rz_matrix
from .simulator import GateMatrix

_EULER_ROLES = ("euler_0", "euler_1", "euler_2")
# Role -> rotation axis in application order: Rz, Ry, Rz.
_EULER_BUILDERS = (_rz_matrix, _ry_matrix, _rz_matrix)


@dataclass(frozen=True)
class ParameterSlot:
    """One free angle of the template and the gate location it feeds."""

    layer: int
    role: str  # euler_0 | euler_1 | euler_2 | entangler
    qubit: int | None = None
    bond: tuple[int, int] | None = None


@dataclass(frozen=True)
class BoundCircuit:
    """Gate list with concrete matrices, ready for the simulator."""

    n_qubits: int
    gates: tuple[tuple[GateMatrix, tuple[int, ...]], ...]


@dataclass(frozen=True)
class AnsatzDescriptor:
    """Circuit template: sizes, entangler kind and the frozen drop pattern.

    ``drop_pattern[layer][qubit]`` is the index in {0, 1, 2} of the Euler
    angle removed at that location; it is ``None`` for the fixed variant,
    which keeps all three angles.
    """

    n_qubits: int
    n_layers: int
    gate_kind: GateKind
    drop_seed: int
    drop_pattern: tuple[tuple[int, ...], ...] | None
    slots: tuple[ParameterSlot, ...]

    @property
    def bonds(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, i + 1) for i in range(self.n_qubits - 1))


def build_ansatz(
    n_qubits: int, n_layers: int, gate_kind: GateKind, drop_seed: int = 0
) -> AnsatzDescriptor:
    if n_qubits < 2:
        raise ValueError("ansatz needs at least 2 qubits")
    if n_layers < 1:
        raise ValueError("ansatz needs at least 1 layer")
    if not isinstance(gate_kind, GateKind):
        raise TypeError("gate_kind must be a GateKind")

    drop_pattern: tuple[tuple[int, ...], ...] | None = None
    if gate_kind.parameterized:
        rng = np.random.default_rng(drop_seed)
        drop_pattern = tuple(
            tuple(int(rng.integers(0, 3)) for _ in range(n_qubits))
            for _ in range(n_layers)
        )

    slots: list[ParameterSlot] = []
    for layer in range(n_layers):
        for qubit in range(n_qubits):
            dropped = drop_pattern[layer][qubit] if drop_pattern is not None else None
            for role_index, role in enumerate(_EULER_ROLES):
                if role_index == dropped:
                    continue
                slots.append(ParameterSlot(layer=layer, role=role, qubit=qubit))
        if gate_kind.parameterized:
            for bond in ((i, i + 1) for i in range(n_qubits - 1)):
                slots.append(ParameterSlot(layer=layer, role="entangler", bond=bond))

    return AnsatzDescriptor(
        n_qubits=n_qubits,
        n_layers=n_layers,
        gate_kind=gate_kind,
        drop_seed=drop_seed,
        drop_pattern=drop_pattern,
        slots=tuple(slots),
    )


def param_count(a: AnsatzDescriptor) -> int:
    """Length of the parameter vector accepted by ``bind``.

    Fixed variant: 3*N*L. Parameterized variant: (2*N + N-1)*L, i.e. two
    surviving Euler angles per qubit plus one angle per open-chain bond.
    """
    return len(a.slots)


def bind(a: AnsatzDescriptor, theta: Sequence[float]) -> BoundCircuit:
    """Attach a parameter vector to the template.

    Slot i of the descriptor consumes theta[i]; the result is
    deterministic in (descriptor, theta).
    """
    values = np.asarray(theta, dtype=float)
    if values.shape != (len(a.slots),):
        raise ValueError(
            f"theta has length {values.shape}, expected ({len(a.slots)},)"
        )
    if not np.all(np.isfinite(values)):
        raise ValueError("theta contains non-finite entries")

    family = a.gate_kind.family
    fixed_entangler = None if a.gate_kind.parameterized else family.fixed()

    gates: list[tuple[GateMatrix, tuple[int, ...]]] = []
    pos = 0
    for layer in range(a.n_layers):
        for qubit in range(a.n_qubits):
            dropped = (
                a.drop_pattern[layer][qubit] if a.drop_pattern is not None else None
            )
            for role_index in range(3):
                if role_index == dropped:
                    continue
                matrix = _EULER_BUILDERS[role_index](values[pos])
                gates.append((GateMatrix._trusted(matrix), (qubit,)))
                pos += 1
        for bond in a.bonds:
            if a.gate_kind.parameterized:
                gate = GateMatrix._trusted(family.theta_matrix(values[pos]))
                pos += 1
            else:
                gate = fixed_entangler
            gates.append((gate, bond))
    assert pos == len(a.slots)
    return BoundCircuit(n_qubits=a.n_qubits, gates=tuple(gates))


# -- descriptor serialization --------------------------------------------------

def descriptor_to_dict(a: AnsatzDescriptor) -> dict:
    return {
        "n_qubits": a.n_qubits,
        "n_layers": a.n_layers,
        "gate_family": a.gate_kind.family.value,
        "parameterized": a.gate_kind.parameterized,
        "drop_seed": a.drop_seed,
        "drop_pattern": (
            [list(layer) for layer in a.drop_pattern]
            if a.drop_pattern is not None
            else None
        ),
    }


def descriptor_from_dict(doc: dict) -> AnsatzDescriptor:
    kind = GateKind(GateFamily(doc["gate_family"]), bool(doc["parameterized"]))
    rebuilt = build_ansatz(
        n_qubits=int(doc["n_qubits"]),
        n_layers=int(doc["n_layers"]),
        gate_kind=kind,
        drop_seed=int(doc["drop_seed"]),
    )
    stored = doc.get("drop_pattern")
    if stored is not None:
        stored_tuple = tuple(tuple(int(v) for v in layer) for layer in stored)
        if stored_tuple != rebuilt.drop_pattern:
            raise ValueError("stored drop_pattern disagrees with drop_seed")
    return rebuilt


def save_descriptor(a: AnsatzDescriptor, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(descriptor_to_dict(a), fh, indent=1)
        fh.write("\n")


def load_descriptor(path) -> AnsatzDescriptor:
    with open(path, encoding="utf-8") as fh:
        return descriptor_from_dict(json.load(fh))
