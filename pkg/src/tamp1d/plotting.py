"""CSV and SVG emission for step and piecewise-linear curves.

CSV is the machine interface: exact breakpoints, header ``x,y``, decimals
with 12 significant digits.  SVG is a matplotlib rendering (single polyline
with axes) in a fixed 800x400 viewport, written next to the CSV.
"""

from __future__ import annotations

from .norms import PiecewiseLinear
from .stepfn import StepFunction


def curve_points(fn) -> list:
    """The polyline tracing the graph: staircase for steps, nodes for linear."""
    if isinstance(fn, StepFunction):
        if fn.is_zero():
            return [(0, 0)]
        pts = [(fn.cuts[0], 0)] if fn.values and fn.values[0] != 0 else []
        for lo, hi, v in fn.pieces():
            if not pts or pts[-1] != (lo, v):
                pts.append((lo, v))
            pts.append((hi, v))
        if fn.values[-1] != 0:
            pts.append((fn.cuts[-1], 0))
        return pts
    if isinstance(fn, PiecewiseLinear):
        step = fn.grid_step
        return [(step * i, v) for i, v in enumerate(fn.nodes)]
    raise TypeError(f"cannot plot {type(fn).__name__}")


def _fmt(x) -> str:
    return format(float(x), ".12g")


def write_csv(fn, path) -> None:
    rows = ["x,y"] + [f"{_fmt(x)},{_fmt(y)}" for x, y in curve_points(fn)]
    with open(path, "w") as handle:
        handle.write("\n".join(rows) + "\n")


def write_svg(fn, path, title: str = "") -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    pts = curve_points(fn)
    xs = [float(x) for x, _ in pts]
    ys = [float(y) for _, y in pts]
    # matplotlib's SVG backend works at 72 dpi: this figsize pins the
    # viewBox to exactly 800x400.
    fig, ax = plt.subplots(figsize=(800 / 72, 400 / 72))
    ax.plot(xs, ys, linewidth=1.5)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    if title:
        ax.set_title(title)
    ax.margins(x=0.02)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
