import csv
import json
from pathlib import Path

import numpy as np
import pytest

from paramvqe.cli import RESULT_COLUMNS, main
from paramvqe.data import molecule_path
from paramvqe.exact import lowest_eigenvalues
from paramvqe.pauli import load_hamiltonian


def write_config(tmp_path: Path, **overrides) -> Path:
    doc = {
        "model": "heisenberg",
        "n_qubits": 3,
        "B": 1.0,
        "boundary": "periodic",
        "grid": {"values": [0.5]},
        "layers": [1],
        "gate_families": ["iswap"],
        "variants": "parameterized",
        "n_states": 2,
        "n_samples": 2,
        "master_seed": 77,
        "warm_start": False,
        "optimizer": {"max_steps": 25, "convergence_window": 5},
        "out_dir": str(tmp_path / "out"),
    }
    doc.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(doc))
    return path


def read_csv(path: Path) -> list[dict]:
    with open(path) as fh:
        return list(csv.DictReader(fh))


def strip_wall_time(path: Path) -> str:
    lines = []
    with open(path) as fh:
        reader = csv.reader(fh)
        header = next(reader)
        idx = header.index("wall_ms")
        lines.append(",".join(h for i, h in enumerate(header) if i != idx))
        for row in reader:
            lines.append(",".join(v for i, v in enumerate(row) if i != idx))
    return "\n".join(lines)


class TestBuildHam:
    def test_heisenberg_grid_file_count(self, tmp_path):
        cfg = write_config(
            tmp_path,
            n_qubits=6,
            grid={"start": 0.0, "stop": 2.0, "step": 0.1},
        )
        assert main(["--config", str(cfg), "build-ham"]) == 0
        files = sorted((tmp_path / "out").glob("heisenberg_n6_*.json"))
        assert len(files) == 21

    def test_tfim_field_only_ground_energy(self, tmp_path):
        cfg = write_config(
            tmp_path, model="tfim", n_qubits=4, boundary="open", grid={"values": [0.0]}
        )
        assert main(["--config", str(cfg), "build-ham"]) == 0
        (path,) = (tmp_path / "out").glob("tfim_n4_*.json")
        h = load_hamiltonian(path)
        assert lowest_eigenvalues(h, 1).ground_energy == pytest.approx(-4.0, abs=1e-9)
        assert h.metadata["grid_value"] == 0.0

    def test_file_mode_passthrough(self, tmp_path):
        source = molecule_path("H2_d0.7414.json")
        cfg = write_config(
            tmp_path,
            model="file",
            n_qubits=4,
            grid=None,
            hamiltonian_files=[{"grid_value": 0.7414, "path": str(source)}],
        )
        assert main(["--config", str(cfg), "build-ham"]) == 0
        (copy,) = (tmp_path / "out").glob("molecule_*.json")
        assert load_hamiltonian(copy) == load_hamiltonian(source)


class TestRun:
    def test_row_count_contract(self, tmp_path):
        cfg = write_config(tmp_path, n_samples=5)
        assert main(["--config", str(cfg), "run"]) == 0
        rows = read_csv(tmp_path / "out" / "results.csv")
        assert len(rows) == 5 * 2  # samples x states, single cell, single point
        assert list(rows[0].keys()) == RESULT_COLUMNS

    def test_summary_covers_cartesian_product(self, tmp_path):
        cfg = write_config(
            tmp_path,
            gate_families=["cnot", "cz"],
            variants="both",
            layers=[1, 2],
            n_samples=1,
            optimizer={"max_steps": 5, "convergence_window": 2},
        )
        assert main(["--config", str(cfg), "run"]) == 0
        summary = json.loads((tmp_path / "out" / "summary.json").read_text())
        cells = {
            (c["gate_kind"], c["parameterized"], c["n_layers"]) for c in summary["cells"]
        }
        assert len(cells) == 8 == len(summary["cells"])
        assert summary["failed_cells"] == []

    def test_rerun_byte_identical_modulo_wall_time(self, tmp_path):
        cfg = write_config(tmp_path, n_samples=3)
        assert main(["--config", str(cfg), "run"]) == 0
        first = strip_wall_time(tmp_path / "out" / "results.csv")
        assert main(["--config", str(cfg), "run"]) == 0
        second = strip_wall_time(tmp_path / "out" / "results.csv")
        assert first == second

    def test_workers_match_serial(self, tmp_path):
        serial_cfg = write_config(
            tmp_path,
            gate_families=["cnot", "iswap"],
            n_samples=1,
            optimizer={"max_steps": 8, "convergence_window": 3},
            out_dir=str(tmp_path / "serial"),
        )
        assert main(["--config", str(serial_cfg), "run"]) == 0
        parallel_cfg = write_config(
            tmp_path,
            gate_families=["cnot", "iswap"],
            n_samples=1,
            optimizer={"max_steps": 8, "convergence_window": 3},
            out_dir=str(tmp_path / "parallel"),
            workers=2,
        )
        assert main(["--config", str(parallel_cfg), "run"]) == 0
        assert strip_wall_time(tmp_path / "serial" / "results.csv") == strip_wall_time(
            tmp_path / "parallel" / "results.csv"
        )

    def test_flag_overrides(self, tmp_path):
        cfg = write_config(tmp_path)
        out = tmp_path / "flagged"
        assert main(["--config", str(cfg), "--out", str(out), "--samples", "1", "run"]) == 0
        rows = read_csv(out / "results.csv")
        assert len(rows) == 2

    def test_delta_e_matches_exact_column(self, tmp_path):
        cfg = write_config(tmp_path)
        assert main(["--config", str(cfg), "run"]) == 0
        for row in read_csv(tmp_path / "out" / "results.csv"):
            delta = float(row["energy"]) - float(row["exact_energy"])
            assert float(row["delta_e"]) == pytest.approx(delta, abs=1e-12)

    def test_sweep_is_alias(self, tmp_path):
        cfg = write_config(tmp_path, out_dir=str(tmp_path / "alias"))
        assert main(["--config", str(cfg), "sweep"]) == 0
        assert (tmp_path / "alias" / "results.csv").exists()


class TestExact:
    def test_spectra_json(self, tmp_path):
        cfg = write_config(tmp_path, grid={"values": [0.0, 1.0]})
        assert main(["--config", str(cfg), "exact"]) == 0
        points = json.loads((tmp_path / "out" / "exact.json").read_text())
        assert [p["grid_value"] for p in points] == [0.0, 1.0]
        assert points[0]["eigenvalues"] == pytest.approx([-3.0, -1.0])  # B-field only


class TestEntpower:
    def test_csv_shape(self, tmp_path):
        out = tmp_path / "ent.csv"
        code = main(
            [
                "entpower",
                "--gate",
                "cnot",
                "--theta-points",
                "5",
                "--samples",
                "2000",
                "--seed",
                "3",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        rows = read_csv(out)
        assert len(rows) == 5
        assert list(rows[0].keys()) == ["theta", "estimate", "stderr"]
        assert float(rows[0]["estimate"]) == pytest.approx(0.0, abs=1e-9)


class TestHist:
    def _results(self, tmp_path) -> Path:
        cfg = write_config(tmp_path, n_samples=6)
        assert main(["--config", str(cfg), "run"]) == 0
        return tmp_path / "out" / "results.csv"

    def test_bins_cover_range(self, tmp_path):
        results = self._results(tmp_path)
        out = tmp_path / "hist"
        assert main(["hist", "--results", str(results), "--bins", "4", "--out", str(out)]) == 0
        rows = read_csv(out / "hist.csv")
        energies = [
            float(r["energy"])
            for r in read_csv(results)
            if r["state_index"] == "0"
        ]
        assert float(rows[0]["bin_left"]) == pytest.approx(min(energies))
        assert float(rows[-1]["bin_right"]) == pytest.approx(max(energies))
        assert sum(int(r["count"]) for r in rows) == len(energies)
        means = read_csv(out / "hist_means.csv")
        assert float(means[0]["mean"]) == pytest.approx(float(np.mean(energies)))

    def test_identical_energies_single_bin(self, tmp_path):
        results = tmp_path / "fake.csv"
        with open(results, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(RESULT_COLUMNS)
            for s in range(100):
                writer.writerow(
                    ["cnot", "true", 4, 1, 0.5, s, s, 0, -1.25, -1.3, 0.05, -1.25, 10, "true", 1.0]
                )
        out = tmp_path / "hist1"
        assert main(["hist", "--results", str(results), "--bins", "8", "--out", str(out)]) == 0
        rows = read_csv(out / "hist.csv")
        assert len(rows) == 1
        assert int(rows[0]["count"]) == 100
        means = read_csv(out / "hist_means.csv")
        assert float(means[0]["mean"]) == pytest.approx(-1.25)


class TestReport:
    def test_curve_files(self, tmp_path):
        cfg = write_config(
            tmp_path,
            gate_families=["iswap"],
            variants="both",
            grid={"values": [0.0, 0.5]},
            n_samples=1,
            optimizer={"max_steps": 5, "convergence_window": 2},
        )
        assert main(["--config", str(cfg), "run"]) == 0
        out = tmp_path / "curves"
        summary = tmp_path / "out" / "summary.json"
        assert main(["report", "--summary", str(summary), "--out", str(out)]) == 0
        files = sorted(p.name for p in out.glob("curve_*.csv"))
        # 2 variants x 2 states x 2 quantities
        assert len(files) == 8
        one = read_csv(out / files[0])
        assert [row["grid_value"] for row in one] == ["0.0", "0.5"]

    def test_missing_summary_clean_error(self, tmp_path):
        assert main(["report", "--summary", str(tmp_path / "nope.json"), "--out", "x"]) == 1


class TestFailureIsolation:
    def test_cell_failure_exits_2_and_is_recorded(self, tmp_path):
        # n_qubits disagrees with the Hamiltonian file: the cell fails,
        # the run completes and the summary records the failure
        source = molecule_path("H2_d0.7414.json")  # 4 qubits
        cfg = write_config(
            tmp_path,
            model="file",
            n_qubits=3,
            grid=None,
            hamiltonian_files=[{"grid_value": 0.7414, "path": str(source)}],
        )
        assert main(["--config", str(cfg), "run"]) == 2
        summary = json.loads((tmp_path / "out" / "summary.json").read_text())
        assert len(summary["failed_cells"]) == 1
        assert summary["cells"] == []

    def test_warm_start_flag_recorded(self, tmp_path):
        cfg = write_config(tmp_path, grid={"values": [0.0, 0.5]})
        assert main(["--config", str(cfg), "--warm-start", "true", "run"]) == 0
        summary = json.loads((tmp_path / "out" / "summary.json").read_text())
        assert summary["config"]["warm_start"] is True


class TestConfigErrors:
    def test_unknown_key(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"model": "tfim", "n_qubits": 3, "grid": {"values": [1]}, "bogus": 1}))
        assert main(["--config", str(path), "run"]) == 1

    def test_bad_layers(self, tmp_path):
        cfg = write_config(tmp_path, layers=[9])
        assert main(["--config", str(cfg), "run"]) == 1

    def test_bad_grid_step(self, tmp_path):
        cfg = write_config(tmp_path, grid={"start": 0, "stop": 1, "step": -0.1})
        assert main(["--config", str(cfg), "run"]) == 1

    def test_missing_config(self):
        assert main(["run"]) == 1

    def test_decreasing_grid(self, tmp_path):
        cfg = write_config(tmp_path, grid={"values": [1.0, 0.5]})
        assert main(["--config", str(cfg), "run"]) == 1
