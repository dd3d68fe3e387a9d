"""Molecular qubit-Hamiltonian generator (STO-3G RHF + Jordan-Wigner)."""

from .active_space import ActiveSpaceHamiltonian, reduce_to_active_space
from .fci import fci_ground_energy, hartree_fock_energy
from .jw import jordan_wigner_terms
from .pipeline import (
    BOHR_PER_ANGSTROM,
    GeneratedHamiltonian,
    MoleculeSpec,
    build_hamiltonian,
    generate,
    verify,
    write_hamiltonian,
)
from .scf import SCFConvergenceError, SCFResult, run_rhf

__version__ = "0.1.0"
