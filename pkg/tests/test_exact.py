import numpy as np
import pytest

from paramvqe.exact import (
    SpectrumResult,
    chemical_accuracy,
    delta_e,
    lowest_eigenvalues,
)
from paramvqe.pauli import ModelParams, PauliSum, build_heisenberg, build_tfim, to_dense


class TestLowestEigenvalues:
    def test_diagonal_field(self):
        h = PauliSum(4, [(1.0, "ZIII"), (1.0, "IZII"), (1.0, "IIZI"), (1.0, "IIIZ")])
        result = lowest_eigenvalues(h, 2)
        assert result.eigenvalues == pytest.approx((-4.0, -2.0))

    def test_heisenberg_ring(self):
        h = build_heisenberg(ModelParams(J=1.0, B=0.0, n_qubits=4, boundary="periodic"))
        assert lowest_eigenvalues(h, 1).ground_energy == pytest.approx(-8.0, abs=1e-9)

    def test_tfim_open_classical(self):
        h = build_tfim(ModelParams(J=1.0, B=0.0, n_qubits=4, boundary="open"))
        assert lowest_eigenvalues(h, 1).ground_energy == pytest.approx(-3.0, abs=1e-9)

    def test_sorted_ascending(self):
        h = build_heisenberg(ModelParams(J=0.8, B=0.3, n_qubits=3, boundary="open"))
        values = lowest_eigenvalues(h, 8).eigenvalues
        assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))

    def test_full_spectrum_trace_consistency(self):
        h = build_heisenberg(ModelParams(J=0.5, B=1.1, n_qubits=4, boundary="periodic"))
        result = lowest_eigenvalues(h, 16)
        trace = float(np.trace(to_dense(h)).real)
        scale = max(abs(v) for v in result.eigenvalues)
        assert sum(result.eigenvalues) == pytest.approx(trace, abs=1e-8 * max(scale, 1))

    def test_k_bounds(self):
        h = PauliSum(2, [(1.0, "ZZ")])
        with pytest.raises(ValueError, match="k"):
            lowest_eigenvalues(h, 0)
        with pytest.raises(ValueError, match="k"):
            lowest_eigenvalues(h, 5)

    def test_size_guard(self):
        h = PauliSum(13, [(1.0, "Z" * 13)])
        with pytest.raises(ValueError, match="12"):
            lowest_eigenvalues(h, 1)


class TestVariationalDominance:
    def test_random_circuit_energies_bounded_below(self):
        # every per-state energy sits above the exact ground level
        from paramvqe.ansatz import build_ansatz, param_count
        from paramvqe.gates import GateFamily, GateKind
        from paramvqe.ssvqe import make_task, state_energies

        h = build_heisenberg(ModelParams(J=0.7, B=1.0, n_qubits=4, boundary="periodic"))
        ground = lowest_eigenvalues(h, 1).ground_energy
        ansatz = build_ansatz(4, 2, GateKind(GateFamily.CNOT, True), drop_seed=3)
        task = make_task(h, ansatz, n_states=2)
        rng = np.random.default_rng(77)
        for _ in range(100):
            theta = rng.uniform(-np.pi, np.pi, param_count(ansatz))
            assert min(state_energies(task, theta)) >= ground - 1e-9


class TestDeltaE:
    def test_zero_for_identical(self):
        spectrum = SpectrumResult((-1.0, -0.5))
        assert np.allclose(delta_e([-1.0, -0.5], spectrum), 0.0)

    def test_simple_subtraction(self):
        spectrum = SpectrumResult((-1.137,))
        assert delta_e([-1.135], spectrum)[0] == pytest.approx(0.002)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="levels"):
            delta_e([-1.0], SpectrumResult((-1.0, -0.5)))


class TestChemicalAccuracy:
    def test_inside(self):
        assert chemical_accuracy(0.001)

    def test_boundary_inclusive(self):
        assert chemical_accuracy(0.0016)
        assert chemical_accuracy(-0.0016)

    def test_outside(self):
        assert not chemical_accuracy(0.01)

    def test_nonfinite(self):
        with pytest.raises(ValueError, match="finite"):
            chemical_accuracy(float("nan"))
