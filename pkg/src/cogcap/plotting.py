"""Figure rendering for the CLI report paths.

Reports that write delimited output also render a companion PNG next to it
(disable with --no-plot).  Rendering is headless (Agg backend) and uses a
compact paper-style rc setup.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_RC = {
    "font.size": 9,
    "axes.labelsize": 10,
    "axes.titlesize": 11,
    "legend.fontsize": 8,
    "figure.figsize": (4.8, 3.6),
    "figure.dpi": 120,
    "savefig.dpi": 200,
    "savefig.bbox": "tight",
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.4,
}


def save_figure(fig, path: str) -> str:
    """Write the figure as PNG and release it; returns the path written."""
    fig.savefig(path)
    plt.close(fig)
    return path


def region_figure(curve, title: str = "", marker_point=None):
    """Frontier plot rp vs rc; optionally mark a distinguished point."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ax.plot(curve.rp, curve.rc, label=f"{curve.regime}-regime frontier")
        if marker_point is not None:
            ax.plot([marker_point[0]], [marker_point[1]], "o", ms=5,
                    label="zero-loss point")
            ax.legend()
        ax.set_xlabel("primary rate $R_p$ [nats/use]")
        ax.set_ylabel("cognitive rate $R_c$ [nats/use]")
        if title:
            ax.set_title(title)
    return fig


def sweep_figure(rows, title: str = ""):
    """Deviation-from-limit curves of a convergence sweep, one line per M."""
    by_m: dict = {}
    for r in rows:
        by_m.setdefault(r.M, []).append(r)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        for m, group in sorted(by_m.items()):
            group = sorted(group, key=lambda r: -r.eps)
            ax.loglog([r.eps for r in group], [max(r.dev, 1e-18) for r in group],
                      marker=".", label=f"M={m:g}")
        ax.invert_xaxis()
        ax.set_xlabel("alignment eps")
        ax.set_ylabel("max rate deviation [nats]")
        ax.legend()
        if title:
            ax.set_title(title)
    return fig


def blocks_figure(blocks, title: str = ""):
    """Per-block empirical power traces of a simulation run."""
    keys = [k for k in blocks[0] if k != "block"]
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        xs = [b["block"] for b in blocks]
        for k in keys:
            ax.plot(xs, [b[k] for b in blocks], marker=".", label=k)
        ax.set_xlabel("block")
        ax.set_ylabel("mean power")
        ax.legend()
        if title:
            ax.set_title(title)
    return fig
