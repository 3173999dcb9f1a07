"""Figure pipeline tests on synthetic sweep CSVs conforming to the interface."""

import math

import pytest

from ipdmem_figures.curves import plot_phi_curves
from ipdmem_figures.heatmaps import phi_matrices, plot_heatmaps, shared_color_bounds
from ipdmem_figures.schema import (
    CSV_HEADER,
    MU_GRID,
    RHO_GRID,
    STRATEGY_TOKENS,
    SchemaError,
    curve_table,
    read_rows,
)


def synth_phi(strategy: str, mu: float, rho: float = 0.75) -> float:
    # smooth, strategy-dependent fake surface
    base = 0.8 + 0.9 * mu * rho
    return round(base + 0.05 * STRATEGY_TOKENS.index(strategy), 6)


def curve_csv_text(mode: str, skip: set | None = None) -> str:
    skip = skip or set()
    lines = [",".join(CSV_HEADER)]
    for strategy in STRATEGY_TOKENS:
        for mu in MU_GRID:
            if (strategy, mu) in skip:
                continue
            lines.append(
                f"{mode},{strategy},{mu!r},cooperators,"
                f"{synth_phi(strategy, mu)!r},0.01,10,12345"
            )
    return "\n".join(lines) + "\n"


def heatmap_csv_text(skip: set | None = None) -> str:
    skip = skip or set()
    lines = [",".join(CSV_HEADER)]
    for strategy in STRATEGY_TOKENS:
        for mu in MU_GRID:
            for rho in RHO_GRID:
                if (strategy, mu, rho) in skip:
                    continue
                lines.append(
                    f"heatmap,{strategy},{mu!r},{rho!r},"
                    f"{synth_phi(strategy, mu, rho)!r},0.02,25,777"
                )
    return "\n".join(lines) + "\n"


class TestSchema:
    def test_round_trips_full_curve_file(self, tmp_path):
        path = tmp_path / "het.csv"
        path.write_text(curve_csv_text("heterogeneous"))
        rows = read_rows(path)
        assert len(rows) == 126
        table = curve_table(rows, path)
        assert set(table) == set(STRATEGY_TOKENS)
        assert table["FMD"][0.5].phi_mean == synth_phi("FMD", 0.5)

    def test_rejects_wrong_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(SchemaError, match="header"):
            read_rows(path)

    def test_rejects_unknown_strategy(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text(
            ",".join(CSV_HEADER) + "\nheterogeneous,FMX,0.5,cooperators,1.0,0.0,1,1\n"
        )
        with pytest.raises(SchemaError, match="FMX"):
            read_rows(path)

    def test_missing_mu_is_listed(self, tmp_path):
        path = tmp_path / "gap.csv"
        path.write_text(curve_csv_text("heterogeneous", skip={("FMD", 0.5)}))
        with pytest.raises(SchemaError, match=r"\(FMD, mu=0.5\)"):
            curve_table(read_rows(path), path)


class TestCurves:
    def test_writes_image(self, tmp_path):
        csv_path = tmp_path / "het.csv"
        csv_path.write_text(curve_csv_text("heterogeneous"))
        out = plot_phi_curves(csv_path, "curves-heterogeneous", tmp_path / "fig.png")
        assert out.exists() and out.stat().st_size > 1000

    def test_mode_mismatch_rejected(self, tmp_path):
        csv_path = tmp_path / "hom.csv"
        csv_path.write_text(curve_csv_text("homogeneous"))
        with pytest.raises(SchemaError, match="mode column"):
            plot_phi_curves(csv_path, "curves-heterogeneous", tmp_path / "fig.png")

    def test_gap_fails_loudly(self, tmp_path):
        csv_path = tmp_path / "gap.csv"
        csv_path.write_text(curve_csv_text("homogeneous", skip={("FR", 0.25)}))
        with pytest.raises(SchemaError, match="missing curve cells"):
            plot_phi_curves(csv_path, "curves-homogeneous", tmp_path / "fig.png")

    def test_unknown_kind_rejected(self, tmp_path):
        csv_path = tmp_path / "het.csv"
        csv_path.write_text(curve_csv_text("heterogeneous"))
        with pytest.raises(SchemaError, match="kind"):
            plot_phi_curves(csv_path, "curves-diagonal", tmp_path / "fig.png")


class TestHeatmaps:
    def test_pivot_is_lossless(self, tmp_path):
        csv_path = tmp_path / "heat.csv"
        csv_path.write_text(heatmap_csv_text())
        matrices = phi_matrices(csv_path)
        assert set(matrices) == set(STRATEGY_TOKENS)
        for matrix in matrices.values():
            assert len(matrix) == 21 and all(len(row) == 21 for row in matrix)
        # spot check: rows are rho, columns are mu
        assert matrices["FR"][RHO_GRID.index(0.8)][MU_GRID.index(0.3)] == synth_phi(
            "FR", 0.3, 0.8
        )

    def test_shared_color_bounds_span_all_panels(self, tmp_path):
        csv_path = tmp_path / "heat.csv"
        csv_path.write_text(heatmap_csv_text())
        matrices = phi_matrices(csv_path)
        vmin, vmax = shared_color_bounds(matrices)
        everything = [v for m in matrices.values() for row in m for v in row]
        assert vmin == min(everything) and vmax == max(everything)
        assert vmin < vmax

    def test_writes_image(self, tmp_path):
        csv_path = tmp_path / "heat.csv"
        csv_path.write_text(heatmap_csv_text())
        out = plot_heatmaps(csv_path, tmp_path / "grid.png")
        assert out.exists() and out.stat().st_size > 1000

    def test_missing_cell_is_named(self, tmp_path):
        csv_path = tmp_path / "gap.csv"
        csv_path.write_text(heatmap_csv_text(skip={("FLP", 0.6, 0.4)}))
        with pytest.raises(SchemaError, match=r"\(FLP, mu=0.6, rho=0.4\)"):
            plot_heatmaps(csv_path, tmp_path / "grid.png")

    def test_wrong_mode_rejected(self, tmp_path):
        csv_path = tmp_path / "het.csv"
        csv_path.write_text(curve_csv_text("heterogeneous"))
        with pytest.raises(SchemaError):
            plot_heatmaps(csv_path, tmp_path / "grid.png")


class TestRenderDispatch:
    def test_dispatches_by_kind(self, tmp_path):
        from ipdmem_figures import FigureSpec, render

        curve_csv = tmp_path / "het.csv"
        curve_csv.write_text(curve_csv_text("heterogeneous"))
        heat_csv = tmp_path / "heat.csv"
        heat_csv.write_text(heatmap_csv_text())
        for kind, csv_path in [
            ("curves-heterogeneous", curve_csv),
            ("heatmap-grid", heat_csv),
        ]:
            out = render(FigureSpec(input_csv=csv_path, kind=kind, output=tmp_path / f"{kind}.png"))
            assert out.exists()


class TestCliEntrypoints:
    def test_curves_cli(self, tmp_path, capsys):
        from ipdmem_figures.curves import main

        csv_path = tmp_path / "het.csv"
        csv_path.write_text(curve_csv_text("heterogeneous"))
        out = tmp_path / "fig.png"
        assert main([str(csv_path), str(out)]) == 0
        assert out.exists()

    def test_curves_cli_error_is_nonzero(self, tmp_path, capsys):
        from ipdmem_figures.curves import main

        csv_path = tmp_path / "gap.csv"
        csv_path.write_text(curve_csv_text("heterogeneous", skip={("FMU", 0.9)}))
        assert main([str(csv_path), str(tmp_path / "fig.png")]) == 1
        assert "missing" in capsys.readouterr().err

    def test_heatmaps_cli(self, tmp_path):
        from ipdmem_figures.heatmaps import main

        csv_path = tmp_path / "heat.csv"
        csv_path.write_text(heatmap_csv_text())
        out = tmp_path / "grid.png"
        assert main([str(csv_path), str(out)]) == 0
        assert out.exists()
