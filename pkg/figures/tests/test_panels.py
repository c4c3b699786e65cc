"""Panel specs, rendering, and determinism.

Small synthetic CSVs (matching the simulation CLI's schema) cover the fast
paths; the golden CSVs under tests/data/ were produced by the real
simulation presets and cover figure-scale rendering.
"""

import re
from pathlib import Path

import pytest

from phonofig.csvio import SchemaError
from phonofig.cli import main
from phonofig.panels import PanelSpec, load_spec, render

DATA = Path(__file__).parent / "data"

SPECTRUM_CSV = """\
# table = spectrum
detuning_over_wm,S_gme,S_sme
-2.0,1.0e-5,1.2e-5
-1.0,2.5e-4,1.0e-4
0.0,5.0e-5,5.0e-5
1.0,3.0e-5,9.0e-5
2.0,1.0e-5,1.1e-5
"""

EIGENFAN_CSV = """\
# table = eigensweep
d0,level,energy_mev,n_exc
0.0,0,1600.0,1
0.0,1,1620.0,1
0.5,0,1590.0,1
0.5,1,1615.0,1
1.0,0,1580.0,1
1.0,1,1610.0,1
"""

POPULATIONS_CSV = """\
# table = detuning_sweep
delta_lx_mev,n_c_gme,n_x_gme,n_m_gme,n_c_sme,n_x_sme,n_m_sme
-100.0,1e-4,2e-4,3e-4,1e-4,2e-4,6e-4
0.0,5e-3,6e-3,7e-3,5e-3,6e-3,9e-3
100.0,1e-4,2e-4,3e-4,1e-4,2e-4,5e-4
"""


def make_panel(tmp_path, csv_text, kind, extra=""):
    (tmp_path / "in.csv").write_text(csv_text)
    spec_path = tmp_path / "panel.cfg"
    spec_path.write_text(
        f"[panel]\nkind = {kind}\ninput = in.csv\noutput = out.svg\n{extra}"
    )
    return spec_path


class TestSpec:
    def test_load_resolves_paths_and_defaults(self, tmp_path):
        spec = load_spec(make_panel(tmp_path, SPECTRUM_CSV, "spectrum"))
        assert spec.kind == "spectrum"
        assert spec.input == (tmp_path / "in.csv").resolve()
        assert spec.output == (tmp_path / "out.svg").resolve()
        assert spec.log_y is False and spec.normalize == "none"

    def test_options_parsed(self, tmp_path):
        spec = load_spec(
            make_panel(
                tmp_path, POPULATIONS_CSV, "populations",
                "log_y = true\nobservables = n_m, n_c\n",
            )
        )
        assert spec.log_y is True
        assert spec.observables == ("n_m", "n_c")

    def test_bad_kind_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="kind"):
            load_spec(make_panel(tmp_path, SPECTRUM_CSV, "piechart"))

    def test_unknown_key_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="unknown keys"):
            load_spec(make_panel(tmp_path, SPECTRUM_CSV, "spectrum", "bogus = 1\n"))

    def test_missing_input_key_rejected(self, tmp_path):
        path = tmp_path / "p.cfg"
        path.write_text("[panel]\nkind = spectrum\n")
        with pytest.raises(ValueError, match="missing key 'input'"):
            load_spec(path)

    def test_bad_observable_rejected(self):
        with pytest.raises(ValueError, match="unknown observables"):
            PanelSpec(kind="populations", input=Path("x.csv"), observables=("n_q",))


class TestRender:
    def svg(self, tmp_path, csv_text, kind, extra=""):
        spec = load_spec(make_panel(tmp_path, csv_text, kind, extra))
        out = render(spec)
        text = out.read_text()
        assert text.lstrip().startswith("<?xml")
        return text

    def test_spectrum_panel_has_both_curves(self, tmp_path):
        text = self.svg(tmp_path, SPECTRUM_CSV, "spectrum")
        assert "GME" in text and "SME" in text

    def test_spectrum_single_curve(self, tmp_path):
        csv_text = "\n".join(
            ",".join(line.split(",")[:2]) for line in SPECTRUM_CSV.splitlines()
        ) + "\n"
        text = self.svg(tmp_path, csv_text, "spectrum")
        assert "GME" in text and "SME" not in text

    def test_spectrum_without_any_curve_is_schema_error(self, tmp_path):
        csv_text = SPECTRUM_CSV.replace("S_gme", "A").replace("S_sme", "B")
        spec = load_spec(make_panel(tmp_path, csv_text, "spectrum"))
        with pytest.raises(SchemaError, match="S_gme"):
            render(spec)

    def test_eigenfan_renders(self, tmp_path):
        text = self.svg(tmp_path, EIGENFAN_CSV, "eigenfan")
        assert "energy (meV)" in text

    def test_populations_renders_selected_observables(self, tmp_path):
        text = self.svg(
            tmp_path, POPULATIONS_CSV, "populations", "observables = n_m\n"
        )
        assert "n_m (GME)" in text and "n_m (SME)" in text
        assert "n_c" not in text

    def test_populations_missing_observable_is_schema_error(self, tmp_path):
        csv_text = POPULATIONS_CSV.replace("n_m", "n_z")
        spec = load_spec(make_panel(tmp_path, csv_text, "populations"))
        with pytest.raises(SchemaError, match="n_m"):
            render(spec)

    def test_render_without_output_path_rejected(self, tmp_path):
        (tmp_path / "in.csv").write_text(SPECTRUM_CSV)
        spec_path = tmp_path / "p.cfg"
        spec_path.write_text("[panel]\nkind = spectrum\ninput = in.csv\n")
        with pytest.raises(ValueError, match="output"):
            render(load_spec(spec_path))

    def test_byte_stable_across_runs(self, tmp_path):
        spec = load_spec(make_panel(tmp_path, SPECTRUM_CSV, "spectrum"))
        a = render(spec, output=tmp_path / "a.svg").read_bytes()
        b = render(spec, output=tmp_path / "b.svg").read_bytes()
        assert a == b

    def test_input_csv_unmodified(self, tmp_path):
        spec = load_spec(make_panel(tmp_path, SPECTRUM_CSV, "spectrum"))
        before = spec.input.read_bytes()
        render(spec)
        assert spec.input.read_bytes() == before


class TestGoldenPanels:
    """Figure-scale CSVs produced by the real simulation presets."""

    def test_golden_spectrum_panel(self, tmp_path):
        spec = PanelSpec(
            kind="spectrum", input=DATA / "fig2b.csv", output=tmp_path / "fig2b.svg"
        )
        text = render(spec).read_text()
        assert "GME" in text and "SME" in text
        # x axis spans the full detuning window of the scenario; matplotlib
        # mirrors each tick label into an SVG comment (the glyphs themselves
        # are path references)
        assert re.search(r"<!-- [−-]6 -->", text) and re.search(r"<!-- 6 -->", text)

    def test_golden_eigenfan_panel(self, tmp_path):
        spec = PanelSpec(
            kind="eigenfan",
            input=DATA / "fig3_caption.csv",
            output=tmp_path / "fig3a.svg",
        )
        text = render(spec).read_text()
        # one path per tracked level plus axes artwork
        assert text.count("<path") >= 8

    def test_golden_panels_byte_stable(self, tmp_path):
        spec = PanelSpec(
            kind="spectrum", input=DATA / "fig2b.csv", output=tmp_path / "a.svg"
        )
        a = render(spec).read_bytes()
        b = render(spec, output=tmp_path / "b.svg").read_bytes()
        assert a == b


class TestCli:
    def test_render_subcommand(self, tmp_path, capsys):
        spec_path = make_panel(tmp_path, SPECTRUM_CSV, "spectrum")
        out = tmp_path / "cli.svg"
        assert main(["render", str(spec_path), "-o", str(out)]) == 0
        assert out.is_file()
        assert "wrote" in capsys.readouterr().out

    def test_schema_error_exit_code(self, tmp_path, capsys):
        csv_text = SPECTRUM_CSV.replace("S_gme", "A").replace("S_sme", "B")
        spec_path = make_panel(tmp_path, csv_text, "spectrum")
        assert main(["render", str(spec_path)]) == 1
        assert "schema error" in capsys.readouterr().err

    def test_missing_spec_exit_code(self, tmp_path, capsys):
        assert main(["render", str(tmp_path / "nope.cfg")]) == 1
        assert "error" in capsys.readouterr().err
