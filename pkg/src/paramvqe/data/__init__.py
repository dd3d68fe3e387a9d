"""Bundled molecular Hamiltonian files (generated by the chemgen tool).

The files live under ``data/molecules`` and use the shared Hamiltonian
JSON schema, so the test suite and the experiment driver never need the
electronic-structure toolchain.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

_MOLECULES = "molecules"


def molecule_dir() -> Path:
    """Directory holding the bundled Hamiltonian JSON files."""
    return Path(resources.files(__package__) / _MOLECULES)


def molecule_path(name: str) -> Path:
    """Path of a bundled file, e.g. ``molecule_path("H2_d0.7414.json")``."""
    path = molecule_dir() / name
    if not path.exists():
        available = sorted(p.name for p in molecule_dir().glob("*.json"))
        raise FileNotFoundError(
            f"no bundled Hamiltonian {name!r}; available: {available}"
        )
    return path


def list_molecules() -> list[str]:
    return sorted(p.name for p in molecule_dir().glob("*.json"))
