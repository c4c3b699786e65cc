"""Panel specifications and SVG rendering.

A panel spec is an INI file with a single ``[panel]`` section:

    [panel]
    kind = spectrum            ; eigenfan | spectrum | populations
    input = results/fig2b.csv
    output = fig2b.svg         ; optional, '-o' on the CLI overrides
    title = GME vs SME emission
    xlabel = ...               ; optional, sensible default per kind
    ylabel = ...
    log_y = true               ; spectra/populations: logarithmic y axis
    normalize = max            ; spectra: none (default) | max
    observables = n_m          ; populations: comma list of n_c, n_x, n_m

Rendering is read-only and deterministic: the SVG carries no timestamp and
matplotlib's hashed ids are salted with a fixed string, so identical inputs
produce byte-identical output.
"""

import configparser
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "phonofig"

import matplotlib.pyplot as plt
import numpy as np

from .csvio import SchemaError, Table, read_table

KINDS = ("eigenfan", "spectrum", "populations")

# curve styling per master-equation kind, shared by all panel kinds
_KIND_STYLE = {
    "gme": {"color": "#c0392b", "linestyle": "-", "label": "GME"},
    "sme": {"color": "#2c3e50", "linestyle": "--", "label": "SME"},
}


@dataclass(frozen=True)
class PanelSpec:
    kind: str
    input: Path
    output: Path | None = None
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""
    log_y: bool = False
    normalize: str = "none"  # spectra only: none | max
    observables: tuple[str, ...] = ("n_m",)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"panel kind must be one of {KINDS}, got {self.kind!r}")
        if self.normalize not in ("none", "max"):
            raise ValueError(f"normalize must be 'none' or 'max', got {self.normalize!r}")
        bad = set(self.observables) - {"n_c", "n_x", "n_m"}
        if bad:
            raise ValueError(f"unknown observables: {sorted(bad)}")


def load_spec(path: str | Path) -> PanelSpec:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"panel spec not found: {path}")
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    parser.read_string(path.read_text(encoding="utf-8"), source=str(path))
    if "panel" not in parser:
        raise ValueError(f"{path}: missing [panel] section")
    section = parser["panel"]
    known = {
        "kind", "input", "output", "title", "xlabel", "ylabel",
        "log_y", "normalize", "observables",
    }
    unknown = set(section) - known
    if unknown:
        raise ValueError(f"{path}: unknown keys {sorted(unknown)}")
    for required in ("kind", "input"):
        if required not in section:
            raise ValueError(f"{path}: missing key '{required}'")
    observables = tuple(
        s.strip() for s in section.get("observables", "n_m").split(",") if s.strip()
    )
    out = section.get("output", "").strip()
    return PanelSpec(
        kind=section["kind"].strip(),
        input=(path.parent / section["input"].strip()).resolve(),
        output=(path.parent / out).resolve() if out else None,
        title=section.get("title", "").strip(),
        xlabel=section.get("xlabel", "").strip(),
        ylabel=section.get("ylabel", "").strip(),
        log_y=section.getboolean("log_y", fallback=False),
        normalize=section.get("normalize", "none").strip(),
        observables=observables,
    )


def _render_eigenfan(ax, table: Table, spec: PanelSpec) -> None:
    axis_name = table.columns[0]
    axis = table.column(axis_name)
    levels = table.column("level")
    energy = table.column("energy_mev")
    for level in np.unique(levels):
        sel = levels == level
        ax.plot(axis[sel], energy[sel], color="#2c3e50", linewidth=1.0)
    ax.set_xlabel(spec.xlabel or axis_name)
    ax.set_ylabel(spec.ylabel or "energy (meV)")


def _render_spectrum(ax, table: Table, spec: PanelSpec) -> None:
    x = table.column("detuning_over_wm")
    present = [k for k in ("gme", "sme") if table.has(f"S_{k}")]
    if not present:
        raise SchemaError("missing column 'S_gme' (or 'S_sme')")
    for kind in present:
        y = table.column(f"S_{kind}")
        if spec.normalize == "max" and np.max(np.abs(y)) > 0:
            y = y / np.max(np.abs(y))
        if spec.log_y:
            y = np.maximum(y, 0.0)
        ax.plot(x, y, linewidth=1.0, **_KIND_STYLE[kind])
    if spec.log_y:
        ax.set_yscale("log")
    ax.set_xlim(float(x[0]), float(x[-1]))
    ax.set_xlabel(spec.xlabel or r"$(\omega-\omega_L)/\omega_m$")
    ax.set_ylabel(
        spec.ylabel
        or ("cavity emission (norm.)" if spec.normalize == "max" else "cavity emission (arb.)")
    )
    ax.legend(frameon=False)


def _render_populations(ax, table: Table, spec: PanelSpec) -> None:
    x = table.column("delta_lx_mev")
    drew = False
    for obs in spec.observables:
        for kind in ("gme", "sme"):
            name = f"{obs}_{kind}"
            if not table.has(name):
                continue
            style = dict(_KIND_STYLE[kind])
            style["label"] = f"{obs} ({style.pop('label')})"
            ax.plot(x, table.column(name), linewidth=1.0, **style)
            drew = True
    if not drew:
        wanted = ", ".join(f"'{o}_gme'/'{o}_sme'" for o in spec.observables)
        raise SchemaError(f"missing column {wanted}")
    if spec.log_y:
        ax.set_yscale("log")
    ax.set_xlim(float(x[0]), float(x[-1]))
    ax.set_xlabel(spec.xlabel or r"$\omega_L-\omega_x$ (meV)")
    ax.set_ylabel(spec.ylabel or "steady-state population")
    ax.legend(frameon=False)


_RENDERERS = {
    "eigenfan": _render_eigenfan,
    "spectrum": _render_spectrum,
    "populations": _render_populations,
}


def render(spec: PanelSpec, output: str | Path | None = None) -> Path:
    """Render one panel to SVG; returns the output path.

    ``output`` overrides the spec's own output path; one of the two must be
    set.  Raises SchemaError when the CSV lacks the panel's columns.
    """
    out = Path(output) if output is not None else spec.output
    if out is None:
        raise ValueError("no output path: set it in the spec or pass -o")
    table = read_table(spec.input)
    fig, ax = plt.subplots(figsize=(4.8, 3.2), constrained_layout=True)
    try:
        _RENDERERS[spec.kind](ax, table, spec)
        if spec.title:
            ax.set_title(spec.title)
        # no Date metadata: output must be byte-stable across runs
        fig.savefig(out, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    return out
