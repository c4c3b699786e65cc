"""Scenario configs, figure presets, sweep orchestration, CSV output.

Configs are INI files with [system], [baths], [numerics] and [task]
sections; presets shipped with the package reproduce the paper-style
figure panels (eigenvalue fans, GME/SME spectra overlays, populations
versus laser detuning).  Every emitted CSV carries a '#'-prefixed
metadata block echoing the full config, so any table can be regenerated
from its own header.
"""

import argparse
import configparser
import io
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .baths import BathParams
from .dressed import truncation_leak
from .hilbert import HilbertDims
from .liouvillian import (
    MasterEquationKind,
    build_dressed_model,
    dissipator,
    full_liouvillian,
)
from .model import SystemParams, build_system_hamiltonian, excitation_number
from .dressed import diagonalize_truncate
from .solvers import detuning_sweep, emission_spectrum, steady_state

TASKS = ("eigensweep", "spectrum", "detuning_sweep")
KINDS = ("sme", "gme", "both")

_SCHEMA = {
    "system": {"omega_c", "omega_x", "omega_m", "g", "d0", "rabi", "omega_laser"},
    "baths": {"kappa", "gamma_m", "gamma_phi", "omega_cut", "temperature", "t_cal"},
    "numerics": {"n_ph", "n_vib", "levels", "guard_levels", "leak_bound"},
    "task": {
        "task",
        "kind",
        "grid_min",
        "grid_max",
        "grid_points",
        "sweep_param",
        "levels_tracked",
        "threads",
    },
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    system: SystemParams
    baths: BathParams
    dims: HilbertDims
    levels: int
    guard_levels: int
    leak_bound: float
    task: str
    kind: str
    grid_min: float
    grid_max: float
    grid_points: int
    sweep_param: str  # 'g' or 'd0' (eigensweep only)
    levels_tracked: int
    threads: int

    def kinds(self) -> list[MasterEquationKind]:
        if self.kind == "both":
            return [MasterEquationKind.GME, MasterEquationKind.SME]
        return [MasterEquationKind[self.kind.upper()]]

    def grid(self) -> np.ndarray:
        return np.linspace(self.grid_min, self.grid_max, self.grid_points)

    def echo(self) -> dict[str, str]:
        """Flat section.key = value mapping that round-trips via load_config."""
        s, b = self.system, self.baths
        items = {
            "system.omega_c": s.omega_c,
            "system.omega_x": s.omega_x,
            "system.omega_m": s.omega_m,
            "system.g": s.g,
            "system.d0": s.d0,
            "system.rabi": s.rabi,
            "system.omega_laser": s.omega_laser,
            "baths.kappa": b.kappa,
            "baths.gamma_m": b.gamma_m,
            "baths.gamma_phi": b.gamma_phi,
            "baths.omega_cut": b.omega_cut,
            "baths.temperature": b.temperature,
            "baths.t_cal": b.t_cal,
            "numerics.n_ph": self.dims.n_ph,
            "numerics.n_vib": self.dims.n_vib,
            "numerics.levels": self.levels,
            "numerics.guard_levels": self.guard_levels,
            "numerics.leak_bound": self.leak_bound,
            "task.task": self.task,
            "task.kind": self.kind,
            "task.grid_min": self.grid_min,
            "task.grid_max": self.grid_max,
            "task.grid_points": self.grid_points,
            "task.sweep_param": self.sweep_param,
            "task.levels_tracked": self.levels_tracked,
            "task.threads": self.threads,
        }
        return {k: repr(v) if isinstance(v, float) else str(v) for k, v in items.items()}


_DEFAULTS = {
    ("system", "rabi"): "0.0",
    ("system", "omega_laser"): "0.0",
    ("baths", "t_cal"): "300.0",
    ("numerics", "guard_levels"): "10",
    ("numerics", "leak_bound"): "1e-4",
    ("task", "kind"): "both",
    ("task", "grid_points"): "400",
    ("task", "sweep_param"): "g",
    ("task", "levels_tracked"): "12",
    ("task", "threads"): "1",
}


def _parse_ini(text: str, origin: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(text, source=origin)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc
    return parser


def parse_config_text(text: str, origin: str = "<string>") -> ScenarioConfig:
    parser = _parse_ini(text, origin)
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"{origin}: unknown section [{section}]")
        for key in parser[section]:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"{origin}: unknown key '{key}' in [{section}]")
    for section in ("system", "baths", "numerics", "task"):
        if section not in parser:
            raise ConfigError(f"{origin}: missing section [{section}]")
    for (section, key), value in _DEFAULTS.items():
        parser[section].setdefault(key, value)

    def get(section, key, conv):
        if key not in parser[section]:
            raise ConfigError(f"{origin}: missing key '{key}' in [{section}]")
        raw = parser[section][key]
        try:
            return conv(raw)
        except ValueError as exc:
            raise ConfigError(
                f"{origin}: bad value {raw!r} for [{section}] {key}"
            ) from exc

    try:
        system = SystemParams(
            omega_c=get("system", "omega_c", float),
            omega_x=get("system", "omega_x", float),
            omega_m=get("system", "omega_m", float),
            g=get("system", "g", float),
            d0=get("system", "d0", float),
            rabi=get("system", "rabi", float),
            omega_laser=get("system", "omega_laser", float),
        )
        baths = BathParams(
            kappa=get("baths", "kappa", float),
            gamma_m=get("baths", "gamma_m", float),
            gamma_phi=get("baths", "gamma_phi", float),
            omega_cut=get("baths", "omega_cut", float),
            temperature=get("baths", "temperature", float),
            t_cal=get("baths", "t_cal", float),
        )
        dims = HilbertDims(
            n_ph=get("numerics", "n_ph", int), n_vib=get("numerics", "n_vib", int)
        )
    except ValueError as exc:
        raise ConfigError(f"{origin}: {exc}") from exc

    levels = get("numerics", "levels", int)
    if not 1 <= levels <= dims.dim:
        raise ConfigError(
            f"{origin}: levels must be in 1..{dims.dim}, got {levels}"
        )
    task = get("task", "task", str)
    if task not in TASKS:
        raise ConfigError(f"{origin}: task must be one of {TASKS}, got {task!r}")
    kind = get("task", "kind", str).lower()
    if kind not in KINDS:
        raise ConfigError(f"{origin}: kind must be one of {KINDS}, got {kind!r}")
    sweep_param = get("task", "sweep_param", str)
    if sweep_param not in ("g", "d0"):
        raise ConfigError(f"{origin}: sweep_param must be 'g' or 'd0'")
    grid_points = get("task", "grid_points", int)
    if grid_points < 1:
        raise ConfigError(f"{origin}: grid_points must be >= 1")
    return ScenarioConfig(
        system=system,
        baths=baths,
        dims=dims,
        levels=levels,
        guard_levels=get("numerics", "guard_levels", int),
        leak_bound=get("numerics", "leak_bound", float),
        task=task,
        kind=kind,
        grid_min=get("task", "grid_min", float),
        grid_max=get("task", "grid_max", float),
        grid_points=grid_points,
        sweep_param=sweep_param,
        levels_tracked=get("task", "levels_tracked", int),
        threads=get("task", "threads", int),
    )


def load_config(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    return parse_config_text(path.read_text(), origin=str(path))


def available_presets() -> list[str]:
    pkg = resources.files("phonopol") / "presets"
    return sorted(p.name.removesuffix(".cfg") for p in pkg.iterdir() if p.name.endswith(".cfg"))


def load_preset(name: str) -> ScenarioConfig:
    pkg = resources.files("phonopol") / "presets" / f"{name}.cfg"
    if not pkg.is_file():
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(available_presets())}"
        )
    return parse_config_text(pkg.read_text(), origin=f"preset:{name}")


@dataclass
class ResultTable:
    """Rectangular float table with a reproducibility metadata block."""

    name: str
    columns: list[str]
    rows: np.ndarray  # (n, len(columns))
    meta: dict[str, str] = field(default_factory=dict)


def emit_csv(table: ResultTable, path: str | Path) -> None:
    """UTF-8 CSV: '#'-prefixed metadata, header row, 17-significant-digit
    floats (lossless float64 round trip)."""
    buf = io.StringIO()
    buf.write(f"# phonopol = {__version__}\n")
    buf.write(f"# table = {table.name}\n")
    for key, value in table.meta.items():
        buf.write(f"# {key} = {value}\n")
    buf.write(",".join(table.columns) + "\n")
    for row in np.atleast_2d(table.rows) if table.rows.size else []:
        buf.write(",".join(format(x, ".17g") for x in row) + "\n")
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def read_csv(path: str | Path) -> ResultTable:
    """Inverse of emit_csv."""
    meta: dict[str, str] = {}
    columns: list[str] = []
    rows: list[list[float]] = []
    name = ""
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            key, value = key.strip(), value.strip()
            if key == "table":
                name = value
            elif key != "phonopol":
                meta[key] = value
        elif not columns:
            columns = line.split(",")
        elif line:
            rows.append([float(x) for x in line.split(",")])
    arr = np.array(rows) if rows else np.empty((0, len(columns)))
    return ResultTable(name=name, columns=columns, rows=arr, meta=meta)


def _replace_system(cfg: ScenarioConfig, **changes) -> SystemParams:
    import dataclasses

    return dataclasses.replace(cfg.system, **changes)


def _run_eigensweep(cfg: ScenarioConfig) -> ResultTable:
    rows = []
    n_exc_diag = None
    for value in cfg.grid():
        params = _replace_system(
            cfg, **{cfg.sweep_param: float(value)}
        )
        h = build_system_hamiltonian(params, cfg.dims)
        if n_exc_diag is None:
            n_exc_diag = np.diag(excitation_number(cfg.dims))
        basis = diagonalize_truncate(h, n_exc_diag, cfg.levels)
        one_exc = np.flatnonzero(np.rint(basis.n_exc) == 1)[: cfg.levels_tracked]
        for level, idx in enumerate(one_exc):
            rows.append(
                (float(value), level, basis.energies[idx], basis.n_exc[idx])
            )
    return ResultTable(
        name="eigensweep",
        columns=[cfg.sweep_param, "level", "energy_mev", "n_exc"],
        rows=np.array(rows),
        meta=cfg.echo(),
    )


def _prepare(cfg: ScenarioConfig):
    return build_dressed_model(cfg.system, cfg.dims, cfg.levels)


def _check_leak(cfg: ScenarioConfig, rho, label: str) -> float:
    leak = truncation_leak(rho, cfg.guard_levels)
    if leak > cfg.leak_bound:
        raise RuntimeError(
            f"truncation leak {leak:.2e} exceeds bound {cfg.leak_bound:.2e} "
            f"({label}); increase levels or Fock cutoffs"
        )
    return leak


def _run_spectrum(cfg: ScenarioConfig) -> ResultTable:
    model = _prepare(cfg)
    delta = cfg.grid() * cfg.system.omega_m  # grid is in units of omega_m
    columns = ["detuning_over_wm"]
    data = [cfg.grid()]
    meta = cfg.echo()
    for kind in cfg.kinds():
        lv = full_liouvillian(kind, model, cfg.system, cfg.baths)
        rho = steady_state(lv)
        leak = _check_leak(cfg, rho, kind.value)
        meta[f"leak_{kind.value}"] = format(leak, ".3e")
        spec = emission_spectrum(lv, model.tset_c, rho, delta)
        columns.append(f"S_{kind.value}")
        data.append(spec.values)
        meta[f"max_imag_residual_{kind.value}"] = format(
            spec.max_imag_residual, ".3e"
        )
    return ResultTable(
        name="spectrum", columns=columns, rows=np.column_stack(data), meta=meta
    )


def _run_detuning_sweep(cfg: ScenarioConfig) -> ResultTable:
    model = _prepare(cfg)
    grid_lx = cfg.grid()  # laser-exciton detuning, meV
    omega_laser = cfg.system.omega_x + grid_lx
    columns = ["delta_lx_mev"]
    data = [grid_lx]
    meta = cfg.echo()
    for kind in cfg.kinds():
        cached = dissipator(kind, model, cfg.system, cfg.baths)

        def make(wl, _cached=cached, _kind=kind):
            return full_liouvillian(
                _kind, model, cfg.system, cfg.baths,
                dissipative=_cached, omega_laser=wl,
            )

        results, failures = detuning_sweep(
            make, omega_laser, model.tset_c, model.tset_x, model.tset_m,
            workers=cfg.threads,
        )
        if failures:
            msgs = "; ".join(f"point {i}: {m}" for i, m in failures[:5])
            raise RuntimeError(
                f"{len(failures)} sweep point(s) failed ({kind.value}): {msgs}"
            )
        for attr in ("n_c", "n_x", "n_m"):
            columns.append(f"{attr}_{kind.value}")
            data.append(np.array([getattr(r, attr) for r in results]))
    return ResultTable(
        name="detuning_sweep", columns=columns, rows=np.column_stack(data), meta=meta
    )


def run_scenario(cfg: ScenarioConfig) -> ResultTable:
    if cfg.task == "eigensweep":
        return _run_eigensweep(cfg)
    if cfg.task == "spectrum":
        return _run_spectrum(cfg)
    if cfg.task == "detuning_sweep":
        return _run_detuning_sweep(cfg)
    raise ConfigError(f"unknown task {cfg.task!r}")


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="phonopol",
        description="Dressed-state master equation simulations of resonant "
        "Raman scattering under strong cavity coupling.",
    )
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--config", help="path to an INI scenario config")
    src.add_argument("--preset", help="name of a shipped figure preset")
    ap.add_argument("--list-presets", action="store_true", help="list presets and exit")
    ap.add_argument("--output", "-o", help="output CSV path")
    ap.add_argument("--levels", type=int, help="override retained dressed levels")
    ap.add_argument("--kind", choices=KINDS, help="override master-equation kind")
    ap.add_argument("--threads", type=int, help="override worker thread count")
    args = ap.parse_args(argv)

    if args.list_presets:
        for name in available_presets():
            print(name)
        return 0
    try:
        if args.config:
            cfg = load_config(args.config)
            default_out = Path(args.config).with_suffix(".csv").name
        elif args.preset:
            cfg = load_preset(args.preset)
            default_out = f"{args.preset}.csv"
        else:
            ap.error("one of --config/--preset/--list-presets is required")
        import dataclasses

        overrides = {}
        if args.levels is not None:
            overrides["levels"] = args.levels
        if args.kind is not None:
            overrides["kind"] = args.kind
        if args.threads is not None:
            overrides["threads"] = args.threads
        if overrides:
            cfg = dataclasses.replace(cfg, **overrides)
        table = run_scenario(cfg)
        out = args.output or default_out
        emit_csv(table, out)
        print(f"wrote {out} ({table.rows.shape[0]} rows)")
        return 0
    except (ConfigError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
