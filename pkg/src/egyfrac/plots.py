"""Figure rendering for report outputs.

Each CLI report path renders one PNG next to its CSV/JSON files.
Figures use the Agg backend and carry no volatile metadata, so reruns
of the same configuration reproduce the file bytes.
"""

from __future__ import annotations

from pathlib import Path

_SAVE_KW = dict(dpi=130, metadata={"Software": None})


def _new_figure(ncols: int):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, axes = plt.subplots(1, ncols, figsize=(5.2 * ncols, 3.9))
    return plt, fig, (axes if ncols > 1 else [axes])


def render_scan_figure(report, path: Path) -> None:
    """Moment sums and the normalized deviation ratio per checkpoint."""
    plt, fig, (ax1, ax2) = _new_figure(2)
    ns = [row.n_max for row in report.rows]
    ax1.loglog(ns, [row.s1 for row in report.rows], "o-", label="sum R")
    ax1.loglog(ns, [row.s2 for row in report.rows], "s-", label="sum R^2")
    ax1.set_xlabel("N")
    ax1.set_ylabel("cumulative sum")
    ax1.set_title(f"moment sums, a={report.a}")
    ax1.legend()
    ax2.semilogx(ns, [row.d_normalized for row in report.rows], "o-",
                 label="D / (N log^2 N)")
    for i, t in enumerate(report.rows[0].turan):
        ax2.semilogx(ns, [row.turan[i].fixed_ratio for row in report.rows],
                     "--", label=f"turan {t.label}")
    ax2.set_xlabel("N")
    ax2.set_ylabel("normalized ratio")
    ax2.set_title("deviation and turan ratios")
    ax2.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def render_dist_figure(grid, ks: float, path: Path) -> None:
    """Empirical CDF against the Gaussian CDF, with the gap panel."""
    plt, fig, (ax1, ax2) = _new_figure(2)
    ax1.plot(grid.z_values, grid.gaussian, "-", label="Gaussian CDF")
    ax1.step(grid.z_values, grid.empirical, where="post", label="empirical")
    ax1.set_xlabel("z")
    ax1.set_ylabel("CDF")
    ax1.set_title(f"{grid.label} distribution, N={grid.N}")
    ax1.legend()
    gaps = [abs(e - g) for e, g in zip(grid.empirical, grid.gaussian)]
    ax2.bar(grid.z_values, gaps, width=0.2)
    ax2.axhline(ks, color="k", linestyle=":", label=f"KS = {ks:.4f}")
    ax2.set_xlabel("z")
    ax2.set_ylabel("|empirical - Gaussian|")
    ax2.set_title("pointwise gap")
    ax2.legend()
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def render_coeff_figure(partials, result, path: Path) -> None:
    """Running truncated Euler product versus the prime cutoff."""
    plt, fig, (ax,) = _new_figure(1)
    ps = [p for p, _ in partials]
    vs = [v for _, v in partials]
    ax.semilogx(ps, vs, "o-")
    ax.axhline(result.value, color="k", linestyle=":",
               label=f"value at p_max={result.p_max}")
    ax.set_xlabel("prime cutoff")
    ax.set_ylabel("truncated product")
    ax.set_title(f"leading-coefficient product, a={result.a}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
