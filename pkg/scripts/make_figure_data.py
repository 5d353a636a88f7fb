#!/usr/bin/env python3
"""Generate plot-ready CSV datasets for the two bundled families.

Emits the saddle-point surface of the Renyi overlap and the degree-vs-p
sweep for both worked families (pure superposition with N1=1, N2=2, p=0.1
and the Fock-diagonal mixture with p=0.1, alpha=0.1, beta=0.01,
gamma=0.04).  Output is deterministic, so the files double as regression
fixtures.
"""

import argparse
from pathlib import Path

from qpolar.cli import build_parser, surface_csv, sweep_csv

JOBS = {
    "superposition_surface.csv": (
        surface_csv,
        ["surface", "--family", "superposition", "--n1", "1", "--n2", "2",
         "--p", "0.1", "--grid", "101"],
    ),
    "superposition_sweep.csv": (
        sweep_csv,
        ["sweep", "--family", "superposition", "--n1", "1", "--n2", "2",
         "--points", "199"],
    ),
    "mixture_surface.csv": (
        surface_csv,
        ["surface", "--family", "mixture", "--p", "0.1", "--alpha", "0.1",
         "--beta", "0.01", "--gamma", "0.04", "--grid", "101"],
    ),
    "mixture_sweep.csv": (
        sweep_csv,
        ["sweep", "--family", "mixture", "--alpha", "0.1", "--beta", "0.01",
         "--gamma", "0.04", "--points", "199"],
    ),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="out", help="output directory")
    parser.add_argument("--workers", type=int, default=1, help="grid evaluation threads")
    args = parser.parse_args()
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    cli = build_parser()
    for name, (builder, argv) in JOBS.items():
        csv = builder(cli.parse_args(argv), workers=args.workers)
        path = outdir / name
        path.write_text(csv)
        print(f"wrote {path} ({len(csv.splitlines())} lines)")


if __name__ == "__main__":
    main()
