"""Matplotlib figures written as byte-reproducible SVG.

Figures are built on bare ``Figure`` objects (no pyplot state) and saved
with a fixed hash salt, no timestamp and text kept as ``<text>`` elements,
so identical data always produce identical files.
"""

import io
import math

import matplotlib
from matplotlib.figure import Figure

from mixsim.msm import MEASURE_NAMES

STYLE = {
    "svg.hashsalt": "mixsim",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "font.size": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "lines.linewidth": 1.2,
    "path.simplify": False,
}

# index-ordered: Red, Amber, Orange, Green, Teal, Flat
PALETTE = ("#d62728", "#e6a817", "#ff7f0e", "#2ca02c", "#17a2a8", "#7f7f7f", "#9467bd", "#8c564b")

MEASURE_LABELS = {
    "mu_I": r"$\mu_I$",
    "var_I": r"$\sigma_I^2$",
    "mu_L": r"$\mu_L$",
    "var_L": r"$\sigma_L^2$",
    "mu_LR": r"$\mu_{LR}$",
    "var_LR": r"$\sigma_{LR}^2$",
    "mu_S": r"$\mu_S$",
    "var_S": r"$\sigma_S^2$",
    "M_mix": r"$M_{mix}$",
}

FIG_SIZE = (6.0, 5.0)


def color(index: int) -> str:
    return PALETTE[index % len(PALETTE)]


def to_svg(fig: Figure) -> bytes:
    buf = io.BytesIO()
    with matplotlib.rc_context(STYLE):
        fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
    return buf.getvalue()


def _figure(size=FIG_SIZE) -> Figure:
    with matplotlib.rc_context(STYLE):
        return Figure(figsize=size, dpi=100)


def radar_svg(radar: dict, title: str = "") -> bytes:
    """One closed polygon per network over the nine normalized measures."""
    with matplotlib.rc_context(STYLE):
        fig = _figure()
        ax = fig.add_subplot(projection="polar")
        k = len(MEASURE_NAMES)
        angles = [2 * math.pi * i / k for i in range(k)]
        for idx, (name, values) in enumerate(radar.items()):
            ys = [values.get(m) or 0.0 for m in MEASURE_NAMES]
            ax.plot(angles + angles[:1], ys + ys[:1], color=color(idx), label=name)
        ax.set_xticks(angles)
        ax.set_xticklabels([MEASURE_LABELS[m] for m in MEASURE_NAMES])
        ax.set_ylim(0, 1.0)
        ax.set_yticks([0.25, 0.5, 0.75, 1.0])
        if title:
            ax.set_title(title)
        ax.legend(loc="upper right", bbox_to_anchor=(1.32, 1.1))
        fig.subplots_adjust(left=0.08, right=0.78)
        return to_svg(fig)


def mixism_svg(report) -> bytes:
    """Grouped bars of averaged M_mix: cases on the x axis, one bar per network."""
    with matplotlib.rc_context(STYLE):
        fig = _figure((7.0, 4.0))
        ax = fig.add_subplot()
        names = report.network_names
        labels = report.case_labels
        width = 0.8 / max(1, len(names))
        for idx, name in enumerate(names):
            xs, ys = [], []
            for ci, label in enumerate(labels):
                avg = report.cells[name, label].average
                if avg is not None and avg.M_mix is not None:
                    xs.append(ci + (idx - (len(names) - 1) / 2) * width)
                    ys.append(avg.M_mix)
            ax.bar(xs, ys, width=width, color=color(idx), label=name)
        ax.set_xticks(range(len(labels)))
        ax.set_xticklabels(labels)
        ax.set_ylabel(r"$M_{mix} = \mu_S \cdot \sigma_S^2$")
        ax.legend(ncol=3, loc="upper left")
        fig.tight_layout()
        return to_svg(fig)


def trajectory_svg(trajectories: dict, title: str = "") -> bytes:
    """Polar polylines, theta angular and r radial, one per named trajectory."""
    with matplotlib.rc_context(STYLE):
        fig = _figure()
        ax = fig.add_subplot(projection="polar")
        for idx, (name, points) in enumerate(trajectories.items()):
            ax.plot([p.theta for p in points], [p.r for p in points], color=color(idx), label=name)
        ax.set_thetamin(0)
        ax.set_thetamax(90)
        if title:
            ax.set_title(title)
        if len(trajectories) > 1:
            ax.legend(loc="upper right")
        return to_svg(fig)


def degree_histogram_svg(histograms: dict) -> bytes:
    """One bar panel per named degree histogram."""
    with matplotlib.rc_context(STYLE):
        count = len(histograms)
        cols = min(3, count)
        rows = math.ceil(count / cols)
        fig = _figure((3.0 * cols, 2.4 * rows))
        for idx, (name, hist) in enumerate(histograms.items()):
            ax = fig.add_subplot(rows, cols, idx + 1)
            ax.bar(list(hist), list(hist.values()), color=color(idx), width=0.8)
            ax.set_title(name)
            ax.set_xlabel("degree")
            ax.set_ylabel("vertices")
        fig.tight_layout()
        return to_svg(fig)
