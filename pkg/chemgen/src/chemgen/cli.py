"""Command line front end: chemgen --molecule H2 --grid 0.3:2.5:0.1 --out dir."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .pipeline import MoleculeSpec, generate, verify


def _parse_grid(text: str) -> tuple[float, ...]:
    try:
        start, stop, step = (float(part) for part in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("grid must look like start:stop:step") from exc
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError("grid needs step > 0 and stop >= start")
    count = int(round((stop - start) / step)) + 1
    return tuple(round(start + i * step, 10) for i in range(count))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chemgen",
        description="Generate molecular qubit-Hamiltonian JSON files (STO-3G, Jordan-Wigner)",
    )
    parser.add_argument("--molecule", choices=["H2", "LiH", "BeH2"])
    parser.add_argument("--grid", type=_parse_grid, help="bond lengths start:stop:step in angstrom")
    parser.add_argument(
        "--bond-lengths",
        type=lambda s: tuple(float(v) for v in s.split(",")),
        help="explicit comma-separated bond lengths in angstrom",
    )
    parser.add_argument("--out", default="hamiltonians", help="output directory")
    parser.add_argument(
        "--verify",
        nargs="+",
        metavar="FILE",
        help="verify emitted files against their embedded references instead of generating",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verify:
        all_ok = True
        for path in args.verify:
            report = verify(Path(path))
            print(json.dumps(report))
            all_ok &= report["ok"]
        return 0 if all_ok else 1

    if not args.molecule:
        print("error: --molecule is required unless --verify is given", file=sys.stderr)
        return 1
    lengths: tuple[float, ...] = ()
    if args.grid:
        lengths += args.grid
    if args.bond_lengths:
        lengths += args.bond_lengths
    if not lengths:
        print("error: provide --grid or --bond-lengths", file=sys.stderr)
        return 1
    spec = MoleculeSpec(species=args.molecule, bond_lengths=tuple(sorted(set(lengths))))
    written, failed = generate(spec, Path(args.out))
    for path in written:
        print(f"wrote {path}")
    for d, message in failed:
        print(f"FAILED d={d}: {message}", file=sys.stderr)
    return 0 if not failed else 1


if __name__ == "__main__":
    sys.exit(main())
