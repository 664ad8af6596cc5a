"""Fixed plotting style: committed color/marker cycles keep renders
byte-reproducible across runs and machines.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

COLORS = [
    "#0072b2", "#d55e00", "#009e73", "#cc79a7", "#e69f00",
    "#56b4e9", "#f0e442", "#000000", "#999999", "#7f3c8d", "#11a579",
]
MARKERS = ["o", "s", "D", "^", "v", "<", ">", "p", "h", "x", "+"]
HEATMAP_CMAP = "viridis"


def apply_style():
    plt.rcParams.update({
        "figure.dpi": 100,
        "savefig.dpi": 300,
        "font.size": 9,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "lines.linewidth": 1.4,
        "lines.markersize": 4,
        "legend.fontsize": 7,
        "svg.hashsalt": "sqws-figures",  # deterministic SVG ids
        "axes.prop_cycle": plt.cycler(color=COLORS),
    })


def color_for(index: int) -> str:
    return COLORS[index % len(COLORS)]


def marker_for(index: int) -> str:
    return MARKERS[index % len(MARKERS)]
