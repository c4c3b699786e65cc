#!/usr/bin/env python3
"""Truncation convergence of steady-state observables for one preset.

Sweeps the number of retained dressed levels and prints the populations
n_c, n_x, n_m plus the guard-band truncation leak for each master-equation
kind, so cutoff choices in the presets can be justified (or revised).

Usage:
    python3 scripts/convergence_study.py fig2b --levels 40 60 80
"""

import argparse
import sys
import time

from phonopol.cli import load_preset
from phonopol.dressed import truncation_leak
from phonopol.liouvillian import MasterEquationKind, build_dressed_model, full_liouvillian
from phonopol.solvers import populations, steady_state


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("preset", help="preset name, e.g. fig2b")
    ap.add_argument(
        "--levels", type=int, nargs="+", default=[40, 60, 80],
        help="retained dressed level counts to compare",
    )
    args = ap.parse_args()

    cfg = load_preset(args.preset)
    print(f"# preset {args.preset}: {cfg.task}, dims {cfg.dims}, T={cfg.baths.temperature} K")
    header = f"{'kind':<5} {'N':>4} {'n_c':>12} {'n_x':>12} {'n_m':>12} {'leak':>10} {'t[s]':>6}"
    print(header)
    for n_levels in args.levels:
        model = build_dressed_model(cfg.system, cfg.dims, n_levels)
        for kind in cfg.kinds():
            start = time.perf_counter()
            lv = full_liouvillian(kind, model, cfg.system, cfg.baths)
            rho = steady_state(lv)
            pops = populations(rho, model.tset_c, model.tset_x, model.tset_m)
            leak = truncation_leak(rho, cfg.guard_levels)
            print(
                f"{kind.value:<5} {n_levels:>4} {pops.n_c:>12.5e} {pops.n_x:>12.5e} "
                f"{pops.n_m:>12.5e} {leak:>10.2e} {time.perf_counter() - start:>6.1f}"
            )
            del lv
        del model
    return 0


if __name__ == "__main__":
    sys.exit(main())
