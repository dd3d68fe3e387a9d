"""Experiment driver: the paper-protocol pipeline as a command line tool.

One JSON config document describes an experiment; command-line flags
override individual keys. ``run`` executes the full Cartesian product of
gate family x variant x layer count over the grid and writes a results
CSV (one row per sample per grid point per tracked state), a best-of
summary JSON, and is complemented by ``report`` (plot-ready curve files)
and ``hist`` (energy histograms). Everything is reproducible from the
config plus master seed; wall-time columns are reported but excluded
from the determinism guarantee.

Exit codes: 0 success, 1 fatal configuration error, 2 partial cell
failures (recorded in the summary, run continued).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import itertools
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .ansatz import build_ansatz, descriptor_to_dict
from .exact import lowest_eigenvalues
from .gates import GateFamily, GateKind, entangling_power
from .pauli import (
    HamiltonianFormatError,
    ModelParams,
    PauliSum,
    build_heisenberg,
    build_tfim,
    load_hamiltonian,
    save_hamiltonian,
)
from .ssvqe import (
    OptimizerConfig,
    SweepResult,
    derive_seed,
    make_task,
    sweep,
)

RESULT_COLUMNS = [
    "gate_kind",
    "parameterized",
    "n_qubits",
    "n_layers",
    "grid_value",
    "sample_index",
    "seed",
    "state_index",
    "energy",
    "exact_energy",
    "delta_e",
    "cost",
    "iterations",
    "converged",
    "wall_ms",
]

_DROP_SEED_TAG = 0x44524F50  # experiment-wide drop-pattern stream


class ConfigError(ValueError):
    """Fatal experiment-configuration problem (exit code 1)."""


@dataclass
class ExperimentConfig:
    """One experiment: model, grid, circuit family axes and budgets."""

    model: str
    n_qubits: int
    B: float = 1.0
    boundary: str = "periodic"
    grid: dict | None = None
    hamiltonian_files: list | None = None
    layers: list[int] = field(default_factory=lambda: [1])
    gate_families: list[str] = field(default_factory=lambda: ["cnot"])
    variants: str = "both"
    n_states: int = 2
    weights: list[float] | None = None
    n_samples: int = 1
    master_seed: int = 0
    warm_start: bool = False
    workers: int = 1
    optimizer: dict = field(default_factory=dict)
    out_dir: str = "out"

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            cfg = cls(**{k: v for k, v in doc.items() if k in known})
            cfg.layers = [int(l) for l in cfg.layers]
            cfg.n_qubits = int(cfg.n_qubits)
            cfg.validate()
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        return cfg

    def validate(self) -> None:
        if self.model not in ("heisenberg", "tfim", "file"):
            raise ConfigError(f"model must be heisenberg, tfim or file, got {self.model!r}")
        if self.model == "file":
            if not self.hamiltonian_files:
                raise ConfigError("file model needs hamiltonian_files")
            for entry in self.hamiltonian_files:
                if not isinstance(entry, dict) or "grid_value" not in entry or "path" not in entry:
                    raise ConfigError(
                        "hamiltonian_files entries need 'grid_value' and 'path'"
                    )
        else:
            if self.grid is None:
                raise ConfigError("spin models need a grid")
        if not self.layers or any(not 1 <= int(l) <= 8 for l in self.layers):
            raise ConfigError("layers must be a nonempty list within [1, 8]")
        for fam in self.gate_families:
            try:
                GateFamily(fam)
            except ValueError:
                raise ConfigError(f"unknown gate family {fam!r}") from None
        if self.variants not in ("fixed", "parameterized", "both"):
            raise ConfigError("variants must be fixed, parameterized or both")
        if self.n_samples < 1:
            raise ConfigError("n_samples must be at least 1")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.n_states < 1 or self.n_states - 1 > self.n_qubits:
            raise ConfigError("n_states must be in [1, n_qubits + 1]")
        try:
            self.optimizer_config()
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad optimizer settings: {exc}") from exc
        self.grid_points()

    def optimizer_config(self) -> OptimizerConfig:
        return OptimizerConfig(**self.optimizer)

    def grid_points(self) -> list[float]:
        """Strictly increasing grid values (model parameter or file axis)."""
        if self.model == "file":
            values = [float(e["grid_value"]) for e in self.hamiltonian_files]
        elif "values" in (self.grid or {}):
            values = [float(v) for v in self.grid["values"]]
        else:
            try:
                start = float(self.grid["start"])
                stop = float(self.grid["stop"])
                step = float(self.grid["step"])
            except (KeyError, TypeError) as exc:
                raise ConfigError("grid needs start/stop/step or values") from exc
            if step <= 0:
                raise ConfigError("grid step must be positive")
            count = int(round((stop - start) / step)) + 1
            values = [round(start + i * step, 12) for i in range(count)]
        if not values or any(b <= a for a, b in zip(values, values[1:])):
            raise ConfigError("grid values must be nonempty and strictly increasing")
        return values

    def hamiltonian_at(self, grid_index: int) -> PauliSum:
        value = self.grid_points()[grid_index]
        if self.model == "file":
            return load_hamiltonian(self.hamiltonian_files[grid_index]["path"])
        params = ModelParams(J=value, B=self.B, n_qubits=self.n_qubits, boundary=self.boundary)
        if self.model == "heisenberg":
            return build_heisenberg(params)
        return build_tfim(params)

    def cells(self) -> list[GateKind | tuple]:
        variants = {"fixed": [False], "parameterized": [True], "both": [False, True]}[
            self.variants
        ]
        return [
            (GateFamily(fam), parameterized, int(layers))
            for fam, parameterized, layers in itertools.product(
                self.gate_families, variants, self.layers
            )
        ]


def _format(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _run_cell(payload: tuple) -> tuple[dict, SweepResult]:
    """Execute one (family, variant, layers) cell; top-level for pickling."""
    cfg_doc, family_value, parameterized, n_layers = payload
    cfg = ExperimentConfig.from_dict(cfg_doc)
    kind = GateKind(GateFamily(family_value), parameterized)
    drop_seed = derive_seed(cfg.master_seed, _DROP_SEED_TAG)
    descriptor = build_ansatz(cfg.n_qubits, n_layers, kind, drop_seed)
    grid = cfg.grid_points()

    def factory(value: float):
        index = grid.index(value)
        return make_task(
            cfg.hamiltonian_at(index),
            descriptor,
            n_states=cfg.n_states,
            weights=cfg.weights,
        )

    result = sweep(
        factory,
        grid,
        cfg.optimizer_config(),
        warm_start=cfg.warm_start,
        n_samples=cfg.n_samples,
        master_seed=cfg.master_seed,
    )
    cell_doc = {
        "gate_kind": family_value,
        "parameterized": parameterized,
        "n_layers": n_layers,
        "descriptor": descriptor_to_dict(descriptor),
    }
    return cell_doc, result


def run_experiment(cfg: ExperimentConfig, cfg_doc: dict) -> tuple[list[dict], dict, bool]:
    """All cells of the Cartesian product; returns (rows, summary, had_failures)."""
    payloads = [
        (cfg_doc, family.value, parameterized, layers)
        for family, parameterized, layers in cfg.cells()
    ]
    outcomes: list[tuple[dict, SweepResult] | Exception] = []
    if cfg.workers > 1 and len(payloads) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(_run_cell, p) for p in payloads]
            for future in futures:
                try:
                    outcomes.append(future.result())
                except Exception as exc:  # cell failure is isolated
                    outcomes.append(exc)
    else:
        for payload in payloads:
            try:
                outcomes.append(_run_cell(payload))
            except Exception as exc:
                outcomes.append(exc)

    rows: list[dict] = []
    cells_summary: list[dict] = []
    failed_cells: list[dict] = []
    had_sample_failures = False
    for payload, outcome in zip(payloads, outcomes):
        _, family_value, parameterized, n_layers = payload
        if isinstance(outcome, Exception):
            failed_cells.append(
                {
                    "gate_kind": family_value,
                    "parameterized": parameterized,
                    "n_layers": n_layers,
                    "error": str(outcome),
                }
            )
            continue
        cell_doc, result = outcome
        points_doc = []
        for grid_index, point in enumerate(result.points):
            for record in point.records:
                for state_index, energy in enumerate(record.energies):
                    rows.append(
                        {
                            "gate_kind": family_value,
                            "parameterized": parameterized,
                            "n_qubits": cfg.n_qubits,
                            "n_layers": n_layers,
                            "grid_value": point.grid_value,
                            "sample_index": record.sample_index,
                            "seed": record.seed,
                            "state_index": state_index,
                            "energy": energy,
                            "exact_energy": point.exact_energies[state_index],
                            "delta_e": energy - point.exact_energies[state_index],
                            "cost": record.cost,
                            "iterations": record.iterations,
                            "converged": record.converged,
                            "wall_ms": record.wall_ms,
                        }
                    )
            if point.failures:
                had_sample_failures = True
            points_doc.append(
                {
                    "grid_value": point.grid_value,
                    "exact_energies": list(point.exact_energies),
                    "best": {
                        "sample_index": point.best.sample_index,
                        "seed": point.best.seed,
                        "cost": point.best.cost,
                        "energies": list(point.best.energies),
                        "delta_e": list(point.delta_e_best),
                        "iterations": point.best.iterations,
                        "converged": point.best.converged,
                    },
                    "n_samples": len(point.records),
                    "failed_samples": [list(f) for f in point.failures],
                }
            )
        cell_doc["points"] = points_doc
        cells_summary.append(cell_doc)

    rows.sort(
        key=lambda r: (
            r["gate_kind"],
            r["parameterized"],
            r["n_layers"],
            r["grid_value"],
            r["sample_index"],
            r["state_index"],
        )
    )
    summary = {
        "config": cfg_doc,
        "n_states": cfg.n_states,
        "cells": cells_summary,
        "failed_cells": failed_cells,
    }
    had_failures = bool(failed_cells) or had_sample_failures
    return rows, summary, had_failures


def write_results_csv(rows: list[dict], path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULT_COLUMNS)
        for row in rows:
            writer.writerow([_format(row[col]) for col in RESULT_COLUMNS])


def _load_config(args) -> tuple[ExperimentConfig, dict]:
    if not args.config:
        raise ConfigError("--config is required for this subcommand")
    try:
        with open(args.config, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    # flag overrides
    if args.out is not None:
        doc["out_dir"] = args.out
    if args.seed is not None:
        doc["master_seed"] = args.seed
    if args.samples is not None:
        doc["n_samples"] = args.samples
    if args.workers is not None:
        doc["workers"] = args.workers
    if args.warm_start is not None:
        doc["warm_start"] = args.warm_start
    return ExperimentConfig.from_dict(doc), doc


def _write_json(doc, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def cmd_build_ham(args) -> int:
    cfg, _ = _load_config(args)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    grid = cfg.grid_points()
    for index, value in enumerate(grid):
        h = cfg.hamiltonian_at(index)
        if cfg.model == "file":
            name = f"molecule_{index:03d}.json"
        else:
            metadata = dict(h.metadata)
            metadata.update(
                {
                    "source": f"paramvqe build-ham {cfg.model}",
                    "model": cfg.model,
                    "n_qubits": cfg.n_qubits,
                    "boundary": cfg.boundary,
                    "J": value,
                    "B": cfg.B,
                    "grid_value": value,
                }
            )
            h = PauliSum(h.n_qubits, [(c, s.label) for c, s in h.terms], metadata)
            name = f"{cfg.model}_n{cfg.n_qubits}_{index:03d}.json"
        save_hamiltonian(h, out / name)
    print(f"wrote {len(grid)} Hamiltonian files to {out}")
    return 0


def cmd_run(args) -> int:
    cfg, doc = _load_config(args)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows, summary, had_failures = run_experiment(cfg, doc)
    write_results_csv(rows, out / "results.csv")
    _write_json(summary, out / "summary.json")
    print(f"wrote {len(rows)} result rows to {out / 'results.csv'}")
    if had_failures:
        print("some cells or samples failed; see summary.json", file=sys.stderr)
        return 2
    return 0


def cmd_exact(args) -> int:
    cfg, _ = _load_config(args)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    points = []
    for index, value in enumerate(cfg.grid_points()):
        spectrum = lowest_eigenvalues(cfg.hamiltonian_at(index), cfg.n_states)
        points.append({"grid_value": value, "eigenvalues": list(spectrum.eigenvalues)})
    _write_json(points, out / "exact.json")
    print(f"wrote {len(points)} exact spectra to {out / 'exact.json'}")
    return 0


def cmd_entpower(args) -> int:
    family = GateFamily(args.gate)
    thetas = np.linspace(0.0, args.theta_max, args.theta_points)
    samples = getattr(args, "samples", None) or 100_000
    seed = getattr(args, "seed", None) or 0
    out = Path(getattr(args, "out", None) or "entpower.csv")
    if out.parent != Path("."):
        out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["theta", "estimate", "stderr"])
        for i, theta in enumerate(thetas):
            gate = family.entangler(float(theta))
            result = entangling_power(gate, samples, derive_seed(seed, i))
            writer.writerow(
                [repr(float(theta)), repr(result.estimate), repr(result.stderr)]
            )
    print(f"wrote {len(thetas)} entangling-power rows to {out}")
    return 0


def cmd_hist(args) -> int:
    with open(args.results, encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        rows = [r for r in reader if r["state_index"] == "0"]
    if not rows:
        raise ConfigError(f"no ground-state rows found in {args.results}")
    out_dir = Path(getattr(args, "out", None) or "hist")
    out_dir.mkdir(parents=True, exist_ok=True)
    groups: dict[tuple[str, str], list[float]] = {}
    for row in rows:
        key = (row["gate_kind"], row["parameterized"])
        groups.setdefault(key, []).append(float(row["energy"]))
    hist_path = out_dir / "hist.csv"
    means_path = out_dir / "hist_means.csv"
    with open(hist_path, "w", newline="", encoding="utf-8") as fh_hist, open(
        means_path, "w", newline="", encoding="utf-8"
    ) as fh_means:
        hist_writer = csv.writer(fh_hist, lineterminator="\n")
        mean_writer = csv.writer(fh_means, lineterminator="\n")
        hist_writer.writerow(["gate_kind", "parameterized", "bin_left", "bin_right", "count"])
        mean_writer.writerow(["gate_kind", "parameterized", "mean"])
        for key in sorted(groups):
            energies = np.asarray(groups[key])
            low, high = float(energies.min()), float(energies.max())
            if low == high:
                counts, edges = np.array([energies.size]), np.array([low, high])
            else:
                counts, edges = np.histogram(energies, bins=args.bins, range=(low, high))
            for b in range(len(counts)):
                hist_writer.writerow(
                    [key[0], key[1], repr(float(edges[b])), repr(float(edges[b + 1])), int(counts[b])]
                )
            mean_writer.writerow([key[0], key[1], repr(float(energies.mean()))])
    print(f"wrote {hist_path} and {means_path}")
    return 0


def cmd_report(args) -> int:
    try:
        with open(args.summary, encoding="utf-8") as fh:
            summary = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read summary: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"summary is not valid JSON: {exc}") from exc
    if "cells" not in summary:
        raise ConfigError("summary has no 'cells' section")
    out_dir = Path(getattr(args, "out", None) or "curves")
    out_dir.mkdir(parents=True, exist_ok=True)
    n_files = 0
    for cell in summary["cells"]:
        variant = "param" if cell["parameterized"] else "fixed"
        n_states = len(cell["points"][0]["best"]["energies"]) if cell["points"] else 0
        for state in range(n_states):
            for quantity in ("energy", "delta_e"):
                name = (
                    f"curve_{cell['gate_kind']}_{variant}_L{cell['n_layers']}"
                    f"_state{state}_{quantity}.csv"
                )
                with open(out_dir / name, "w", newline="", encoding="utf-8") as fh:
                    writer = csv.writer(fh, lineterminator="\n")
                    writer.writerow(["grid_value", quantity])
                    for point in cell["points"]:
                        value = (
                            point["best"]["energies"][state]
                            if quantity == "energy"
                            else point["best"]["delta_e"][state]
                        )
                        writer.writerow([repr(float(point["grid_value"])), repr(float(value))])
                n_files += 1
    print(f"wrote {n_files} curve files to {out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paramvqe",
        description="SSVQE gate-comparison experiments on a statevector simulator",
    )
    parser.add_argument("--config", help="experiment config JSON")
    parser.add_argument("--out", help="output directory (overrides config out_dir)")
    parser.add_argument("--seed", type=int, help="master seed override")
    parser.add_argument("--samples", type=int, help="restart count override")
    parser.add_argument("--workers", type=int, help="worker count override")
    parser.add_argument(
        "--warm-start",
        dest="warm_start",
        type=lambda s: s.lower() in ("1", "true", "yes"),
        default=None,
        help="warm-start override (true/false)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("build-ham", help="write one Hamiltonian JSON per grid point")
    sub.add_parser("run", help="run the full experiment, write CSV + summary")
    sub.add_parser("sweep", help="alias of run")
    sub.add_parser("exact", help="exact spectra per grid point")

    # Subcommand-level --out/--seed/--samples use SUPPRESS so values given
    # before the subcommand (the global flags) are not clobbered by defaults.
    ent = sub.add_parser("entpower", help="entangling power over an angle grid")
    ent.add_argument("--gate", required=True, choices=[f.value for f in GateFamily])
    ent.add_argument("--theta-max", type=float, default=float(np.pi))
    ent.add_argument("--theta-points", type=int, default=17)
    ent.add_argument("--samples", dest="samples", type=int, default=argparse.SUPPRESS)
    ent.add_argument("--seed", dest="seed", type=int, default=argparse.SUPPRESS)
    ent.add_argument("--out", dest="out", default=argparse.SUPPRESS)

    hist = sub.add_parser("hist", help="histogram of ground-state sample energies")
    hist.add_argument("--results", required=True, help="results.csv from run")
    hist.add_argument("--bins", type=int, default=20)
    hist.add_argument("--out", dest="out", default=argparse.SUPPRESS)

    report = sub.add_parser("report", help="plot-ready curve files from a summary")
    report.add_argument("--summary", required=True, help="summary.json from run")
    report.add_argument("--out", dest="out", default=argparse.SUPPRESS)
    return parser


_COMMANDS = {
    "build-ham": cmd_build_ham,
    "run": cmd_run,
    "sweep": cmd_run,
    "exact": cmd_exact,
    "entpower": cmd_entpower,
    "hist": cmd_hist,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, HamiltonianFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
