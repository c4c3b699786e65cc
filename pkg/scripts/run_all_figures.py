#!/usr/bin/env python3
"""Run every shipped figure preset and collect the CSVs under results/.

Usage:
    python3 scripts/run_all_figures.py [--only fig2b fig3c ...] [--out DIR]

The spectrum presets take a few minutes each at the default N = 60 dressed
levels; pass --levels to trade accuracy for speed when iterating.
"""

import argparse
import sys
import time
from pathlib import Path

from phonopol.cli import available_presets, emit_csv, load_preset, run_scenario


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", nargs="*", help="subset of preset names to run")
    ap.add_argument("--out", default="results", help="output directory")
    ap.add_argument("--levels", type=int, help="override retained dressed levels")
    args = ap.parse_args()

    names = args.only or available_presets()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    failures = 0
    for name in names:
        cfg = load_preset(name)
        if args.levels is not None:
            import dataclasses

            cfg = dataclasses.replace(cfg, levels=args.levels)
        start = time.perf_counter()
        print(f"[{name}] task={cfg.task} kind={cfg.kind} ...", flush=True)
        try:
            table = run_scenario(cfg)
        except RuntimeError as exc:
            print(f"[{name}] FAILED: {exc}", file=sys.stderr)
            failures += 1
            continue
        path = out_dir / f"{name}.csv"
        emit_csv(table, path)
        print(
            f"[{name}] wrote {path} ({table.rows.shape[0]} rows, "
            f"{time.perf_counter() - start:.0f}s)"
        )
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
