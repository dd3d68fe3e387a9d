"""Statevector SSVQE with parameterized two-qubit entangling gates.

The package benchmarks CNOT(theta), iSWAP(theta) and CZ(theta) entanglers
against their fixed counterparts in a layered variational ansatz, using a
dense statevector simulator and an exact-diagonalization oracle, on
molecular, Heisenberg and transverse-field Ising Hamiltonians.
"""

from .ansatz import (
    AnsatzDescriptor,
    BoundCircuit,
    ParameterSlot,
    bind,
    build_ansatz,
    param_count,
)
from .exact import (
    CHEMICAL_ACCURACY_HARTREE,
    SpectrumResult,
    chemical_accuracy,
    delta_e,
    lowest_eigenvalues,
)
from .gates import (
    EntanglingPower,
    GateFamily,
    GateKind,
    cnot_theta,
    cnot_theta_decomposed,
    cz_theta,
    entangling_power,
    iswap_theta,
    phase_gate,
    rx,
    ry,
    rz,
    sequence_to_matrix,
)
from .pauli import (
    HamiltonianFormatError,
    ModelParams,
    PauliString,
    PauliSum,
    build_heisenberg,
    build_tfim,
    load_hamiltonian,
    parse_pauli_string,
    save_hamiltonian,
    to_dense,
)
from .simulator import (
    GateMatrix,
    StateVector,
    apply_1q,
    apply_2q,
    apply_circuit,
    basis_state,
    expectation,
    expectation_dense,
)
from .ssvqe import (
    MultiRestartResult,
    OptimizationError,
    OptimizerConfig,
    RunRecord,
    SSVQETask,
    SweepPoint,
    SweepResult,
    adam_step,
    cost,
    derive_seed,
    default_excitations,
    default_weights,
    gradient,
    initial_parameters,
    make_task,
    multi_restart,
    optimize,
    state_energies,
    sweep,
)

__version__ = "0.1.0"
