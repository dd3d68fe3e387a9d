"""Fixed vs parameterized entanglers across a coupling sweep.

A desk-scale version of the headline experiment: Heisenberg chain at
N=4, J/B swept with warm starts, iSWAP entanglers in both variants, and
the resulting ground-state errors side by side. Writes the experiment
artifacts (results CSV, summary JSON, curve files) into ./sweep_out via
the same machinery the command line uses.

Runtime: a few minutes.
"""

import json
from pathlib import Path

import paramvqe as pv
from paramvqe.cli import ExperimentConfig, cmd_report, run_experiment, write_results_csv

out_dir = Path("sweep_out")
config_doc = {
    "model": "heisenberg",
    "n_qubits": 4,
    "B": 1.0,
    "boundary": "periodic",
    "grid": {"start": 0.0, "stop": 2.0, "step": 0.5},
    "layers": [2],
    "gate_families": ["iswap"],
    "variants": "both",
    "n_states": 2,
    "n_samples": 8,
    "master_seed": 424242,
    "warm_start": True,
    "out_dir": str(out_dir),
}
config = ExperimentConfig.from_dict(config_doc)

print("running the Cartesian product: 1 family x 2 variants x 1 layer count x 5 grid points")
rows, summary, had_failures = run_experiment(config, config_doc)
out_dir.mkdir(parents=True, exist_ok=True)
write_results_csv(rows, out_dir / "results.csv")
(out_dir / "summary.json").write_text(json.dumps(summary, indent=1))
print(f"wrote {len(rows)} CSV rows, failures: {had_failures}")


class _Args:
    summary = str(out_dir / "summary.json")
    out = str(out_dir / "curves")


cmd_report(_Args())

print(f"\n{'J/B':>5} {'exact E0':>12} {'fixed dE0':>12} {'param dE0':>12}")
by_variant = {}
for cell in summary["cells"]:
    by_variant[cell["parameterized"]] = cell["points"]
for fixed_point, param_point in zip(by_variant[False], by_variant[True]):
    print(
        f"{fixed_point['grid_value']:5.2f} "
        f"{fixed_point['exact_energies'][0]:12.6f} "
        f"{fixed_point['best']['delta_e'][0]:12.2e} "
        f"{param_point['best']['delta_e'][0]:12.2e}"
    )
print("\nparameterized entanglers track the growing entanglement as J/B")
print("increases; fixed gates lose accuracy once the ground state departs")
print("from the separable J=0 limit. Curve files: sweep_out/curves/")
