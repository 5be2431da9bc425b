"""Figure assembly from record tables.

Three layouts are supported.  ``fig1`` and ``fig2`` are two-panel views of a
decoherence run (purity on top, the entanglement indicator Lambda below) with
one dotted exact trace and one solid theory trace per coupling strength.
``fig3`` shows the decoherence function with its recorded fit overlaid, plus
a companion panel with a logarithmic step axis.  Every plotted value comes
verbatim from the records file; nothing physical is computed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from matplotlib.figure import Figure

from .records import RecordTable, RecordsError, load_records

FIGURE_NAMES = ("fig1", "fig2", "fig3")

_DECOHERENCE_TITLES = {
    "fig1": "Bell pair dephasing",
    "fig2": "Product-state pair",
}


@dataclass(frozen=True)
class CurveStyle:
    exact_linestyle: str = ":"
    theory_linestyle: str = "-"


@dataclass(frozen=True)
class FigureSpec:
    records_path: Path
    figure: str
    out_path: Path
    style: CurveStyle = field(default_factory=CurveStyle)

    def __post_init__(self):
        if self.figure not in FIGURE_NAMES:
            raise RecordsError(f"unknown figure '{self.figure}', expected one of {FIGURE_NAMES}")


def _decoherence_figure(table: RecordTable, title: str, style: CurveStyle) -> Figure:
    alphas = table.alphas_for("purity_exact")
    if not alphas:
        raise RecordsError(
            f"records file {table.path} has no 'purity_exact[...]' columns; "
            "it does not look like a decoherence run"
        )
    fig = Figure(figsize=(6.4, 7.2))
    ax_p, ax_l = fig.subplots(2, 1, sharex=True)
    for alpha in alphas:
        p_exact, p_pert = table.require(f"purity_exact[{alpha}]", f"purity_pert[{alpha}]")
        l_exact, l_pert = table.require(f"lambda_exact[{alpha}]", f"lambda_pert[{alpha}]")
        ax_p.plot(table.n, p_exact, style.exact_linestyle, label=f"exact a={alpha}")
        ax_p.plot(table.n, p_pert, style.theory_linestyle, label=f"theory a={alpha}")
        ax_l.plot(table.n, l_exact, style.exact_linestyle, label=f"exact a={alpha}")
        ax_l.plot(table.n, l_pert, style.theory_linestyle, label=f"theory a={alpha}")
    ax_l.axhline(0.0, color="0.8", linewidth=0.8, zorder=0)
    ax_p.set_ylabel("P")
    ax_l.set_ylabel(r"$\Lambda$")
    ax_l.set_xlabel("n")
    ax_p.set_title(title)
    ax_p.legend(fontsize="small")
    ax_l.legend(fontsize="small")
    return fig


def _fn_figure(table: RecordTable, style: CurveStyle) -> Figure:
    (f_scaled,) = table.require("f_scaled")
    (f_fit,) = table.require("f_fit_scaled")
    fig = Figure(figsize=(9.6, 4.2))
    ax_lin, ax_log = fig.subplots(1, 2)
    for ax in (ax_lin, ax_log):
        ax.plot(table.n, f_scaled, style.exact_linestyle, label="exact")
        ax.plot(table.n, f_fit, style.theory_linestyle, label="fit")
        if "f_pheno_scaled" in table.columns:
            ax.plot(
                table.n,
                table.columns["f_pheno_scaled"],
                style.theory_linestyle,
                label="correlation model",
            )
        ax.set_xlabel("n")
        ax.set_ylabel("f")
    ax_log.set_xscale("log")
    ax_lin.set_title("decoherence function")
    ax_log.set_title("log-time view")
    ax_lin.legend(fontsize="small")
    return fig


def build_figure(table: RecordTable, figure: str, style: CurveStyle | None = None) -> Figure:
    """Assemble the requested figure from an already-loaded record table."""
    style = style if style is not None else CurveStyle()
    if figure in _DECOHERENCE_TITLES:
        return _decoherence_figure(table, _DECOHERENCE_TITLES[figure], style)
    if figure == "fig3":
        return _fn_figure(table, style)
    raise RecordsError(f"unknown figure '{figure}', expected one of {FIGURE_NAMES}")


def render(spec: FigureSpec) -> Path:
    """Load records, build the figure, and write the image file."""
    table = load_records(spec.records_path)
    fig = build_figure(table, spec.figure, spec.style)
    out = Path(spec.out_path)
    fig.savefig(out, dpi=150)
    return out
