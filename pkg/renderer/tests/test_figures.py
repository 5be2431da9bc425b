import csv

import numpy as np
import pytest

from figrender import (
    CurveStyle,
    FigureSpec,
    RecordsError,
    build_figure,
    load_records,
    render,
)

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def labeled_lines(ax):
    return {
        line.get_label(): line
        for line in ax.get_lines()
        if not line.get_label().startswith("_")
    }


def test_decoherence_round_trip(decoherence_path):
    # every plotted array must be bitwise identical to the file contents
    table = load_records(decoherence_path)
    for figure in ("fig1", "fig2"):
        fig = build_figure(table, figure)
        ax_p, ax_l = fig.axes
        for ax, field_exact, field_pert in (
            (ax_p, "purity_exact", "purity_pert"),
            (ax_l, "lambda_exact", "lambda_pert"),
        ):
            lines = labeled_lines(ax)
            for alpha in ("0.001", "0.005"):
                exact = lines[f"exact a={alpha}"]
                theory = lines[f"theory a={alpha}"]
                assert np.array_equal(exact.get_xdata(), table.n)
                assert np.array_equal(exact.get_ydata(), table.columns[f"{field_exact}[{alpha}]"])
                assert np.array_equal(theory.get_xdata(), table.n)
                assert np.array_equal(theory.get_ydata(), table.columns[f"{field_pert}[{alpha}]"])
                assert exact.get_linestyle() == ":"
                assert theory.get_linestyle() == "-"


def test_decoherence_panel_dressing(decoherence_path):
    fig = build_figure(load_records(decoherence_path), "fig1")
    ax_p, ax_l = fig.axes
    assert ax_p.get_ylabel() == "P"
    assert ax_l.get_xlabel() == "n"
    assert ax_p.get_legend() is not None
    assert ax_l.get_legend() is not None


def test_fn_round_trip(fn_path):
    table = load_records(fn_path)
    fig = build_figure(table, "fig3")
    ax_lin, ax_log = fig.axes
    assert ax_lin.get_xscale() == "linear"
    assert ax_log.get_xscale() == "log"
    for ax in (ax_lin, ax_log):
        lines = labeled_lines(ax)
        assert np.array_equal(lines["exact"].get_ydata(), table.columns["f_scaled"])
        assert np.array_equal(lines["fit"].get_ydata(), table.columns["f_fit_scaled"])
        assert np.array_equal(
            lines["correlation model"].get_ydata(), table.columns["f_pheno_scaled"]
        )
        assert lines["exact"].get_linestyle() == ":"
        assert lines["fit"].get_linestyle() == "-"
        assert ax.get_xlabel() == "n"


def test_fn_without_pheno_column(tmp_path, fn_path):
    # the correlation-model overlay is optional; the fit overlay is not
    with fn_path.open() as fh:
        rows = list(csv.reader(fh))
    drop = rows[0].index("f_pheno_scaled")
    trimmed = tmp_path / "no_pheno.csv"
    with trimmed.open("w", newline="") as fh:
        csv.writer(fh).writerows([row[:drop] + row[drop + 1 :] for row in rows])
    fig = build_figure(load_records(trimmed), "fig3")
    for ax in fig.axes:
        assert set(labeled_lines(ax)) == {"exact", "fit"}


def test_missing_column_is_named(tmp_path, decoherence_path):
    with decoherence_path.open() as fh:
        rows = list(csv.reader(fh))
    drop = rows[0].index("lambda_pert[0.005]")
    broken = tmp_path / "broken.csv"
    with broken.open("w", newline="") as fh:
        csv.writer(fh).writerows([row[:drop] + row[drop + 1 :] for row in rows])
    with pytest.raises(RecordsError, match=r"lambda_pert\[0.005\]"):
        build_figure(load_records(broken), "fig1")


def test_wrong_records_kind_is_named(fn_path):
    with pytest.raises(RecordsError, match="purity_exact"):
        build_figure(load_records(fn_path), "fig1")


def test_single_point_records(tmp_path, decoherence_path):
    # a run recorded at n=0 only must still draw
    with decoherence_path.open() as fh:
        rows = list(csv.reader(fh))
    single = tmp_path / "single.csv"
    with single.open("w", newline="") as fh:
        csv.writer(fh).writerows(rows[:2])
    fig = build_figure(load_records(single), "fig1")
    for ax in fig.axes:
        for line in labeled_lines(ax).values():
            assert len(line.get_xdata()) == 1
    out = tmp_path / "single.png"
    render(FigureSpec(records_path=single, figure="fig1", out_path=out))
    assert out.read_bytes()[:8] == PNG_MAGIC


def test_render_is_deterministic_and_read_only(tmp_path, decoherence_path):
    before = decoherence_path.read_bytes()
    data = []
    for tag in ("one", "two"):
        fig = build_figure(load_records(decoherence_path), "fig2")
        data.append(
            [
                (label, line.get_xdata().tolist(), line.get_ydata().tolist())
                for ax in fig.axes
                for label, line in sorted(labeled_lines(ax).items())
            ]
        )
        render(
            FigureSpec(
                records_path=decoherence_path, figure="fig2", out_path=tmp_path / f"{tag}.png"
            )
        )
    assert data[0] == data[1]
    assert decoherence_path.read_bytes() == before


def test_render_writes_png(tmp_path, fn_path):
    out = tmp_path / "fn.png"
    result = render(FigureSpec(records_path=fn_path, figure="fig3", out_path=out))
    assert result == out
    assert out.read_bytes()[:8] == PNG_MAGIC


def test_custom_style_propagates(decoherence_path):
    style = CurveStyle(exact_linestyle="--", theory_linestyle="-.")
    fig = build_figure(load_records(decoherence_path), "fig1", style)
    lines = labeled_lines(fig.axes[0])
    assert lines["exact a=0.001"].get_linestyle() == "--"
    assert lines["theory a=0.001"].get_linestyle() == "-."


def test_unknown_figure_rejected(tmp_path, decoherence_path):
    with pytest.raises(RecordsError, match="fig9"):
        FigureSpec(records_path=decoherence_path, figure="fig9", out_path=tmp_path / "x.png")
    with pytest.raises(RecordsError, match="fig9"):
        build_figure(load_records(decoherence_path), "fig9")
