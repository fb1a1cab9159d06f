"""Render campaign summary figures to files alongside the CSV output."""

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .harness import summarize


def _series(summary, algorithm, grid, metric):
    pts = [(n, stats[metric]["mean"])
           for (alg, n, g), stats in summary.items()
           if alg == algorithm and g == grid and metric in stats]
    pts.sort()
    return [p[0] for p in pts], [p[1] for p in pts]


def render_figures(rows, out_dir):
    """Write one PNG per metric; returns the list of files written."""
    os.makedirs(out_dir, exist_ok=True)
    summary = summarize(rows)
    grids = sorted({g for (_, _, g) in summary})
    algorithms = sorted({a for (a, _, _) in summary})
    written = []

    specs = [
        ("partitions", "partitions_vs_n.png", "mean partitions"),
        ("active_pct", "active_pct_vs_n.png", "active nodes (%)"),
        ("tx_total", "messages_vs_n.png", "total transmissions"),
        ("lifetime_rounds", "lifetime_vs_n.png", "lifetime (rounds)"),
    ]
    for metric, fname, ylabel in specs:
        fig, ax = plt.subplots(figsize=(6, 4))
        plotted = False
        for alg in algorithms:
            for grid in grids:
                xs, ys = _series(summary, alg, grid, metric)
                if xs:
                    ax.plot(xs, ys, marker="o", label=f"{alg} {grid}")
                    plotted = True
        if not plotted:
            plt.close(fig)
            continue
        ax.set_xlabel("number of nodes")
        ax.set_ylabel(ylabel)
        ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        path = os.path.join(out_dir, fname)
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)

    # density vs partitions scatter, one marker per run
    fig, ax = plt.subplots(figsize=(6, 4))
    plotted = False
    for alg in algorithms:
        xs = [r.density for r in rows if r.algorithm == alg]
        ys = [r.partitions for r in rows if r.algorithm == alg]
        if xs:
            ax.scatter(xs, ys, s=12, alpha=0.5, label=alg)
            plotted = True
    if plotted:
        ax.set_xlabel("network density (mean degree)")
        ax.set_ylabel("partitions")
        ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        path = os.path.join(out_dir, "density_vs_partitions.png")
        fig.savefig(path, dpi=120)
        written.append(path)
    plt.close(fig)
    return written
