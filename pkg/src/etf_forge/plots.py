"""Report figures.

Figures are drawn on standalone matplotlib Figure objects (no pyplot state),
so rendering works headless and never touches a global backend.
"""

import numpy as np
from matplotlib.figure import Figure


def render_report_figure(rows, path, dpi=150):
    """Coherence-versus-dimension chart for a certification report.

    Certified sizes are plotted against the d x 2d Welch bound curve;
    sizes needing an imported Hadamard and conjectural sizes are marked at
    their target coherence.
    """
    fig = Figure(figsize=(8.0, 4.5))
    ax = fig.subplots()

    ds = [r.d for r in rows]
    if ds:
        grid = np.linspace(min(3, min(ds)), max(ds) + 2, 400)
        ax.plot(grid, 1.0 / np.sqrt(2.0 * grid - 1.0), color="0.6", lw=1.0,
                label="Welch bound 1/sqrt(2d-1)", zorder=1)

    certified = [r for r in rows if r.status == "certified"]
    needing = [r for r in rows if r.status == "needs_import"]
    open_sizes = [r for r in rows if r.status == "conjectural"]
    if certified:
        ax.scatter([r.d for r in certified], [r.coherence for r in certified],
                   s=26, color="tab:blue", marker="o", label="certified", zorder=3)
    if needing:
        ax.scatter([r.d for r in needing], [r.mu_target for r in needing],
                   s=30, color="tab:red", marker="x", label="needs imported Hadamard", zorder=3)
    if open_sizes:
        ax.scatter([r.d for r in open_sizes], [r.mu_target for r in open_sizes],
                   s=26, facecolors="none", edgecolors="tab:orange", marker="^",
                   label="existence open", zorder=3)

    ax.set_xlabel("dimension d")
    ax.set_ylabel("coherence of 2d lines")
    ax.set_title("d x 2d equiangular tight frames: certified coherence")
    ax.legend(loc="upper right", fontsize=9)
    ax.grid(True, alpha=0.25)
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
