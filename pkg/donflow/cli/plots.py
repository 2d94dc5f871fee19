"""Line charts of the diagnostics, rendered to SVG by matplotlib."""
from __future__ import annotations
import io
import math
from typing import Sequence

import matplotlib
from matplotlib.figure import Figure

# text stays text, ids and metadata do not change between runs
SVG_SETTINGS = {"svg.fonttype": "none", "svg.hashsalt": "donflow"}
FIGURE_SIZE = (6.4, 4.0)


def line_chart(
    xs: Sequence[float],
    ys: Sequence[float],
    title: str,
    x_label: str = "t",
    y_label: str = "",
    log_y: bool = False,
) -> str:
    """An SVG document with one line through ``(xs, ys)``.

    With ``log_y`` the ordinate axis is logarithmic; non-positive and
    non-finite points are dropped.

    Raises:
        ValueError: If the sequences differ in length or nothing is left to draw.
    """
    if len(xs) != len(ys):
        raise ValueError(f"{len(xs)} abscissae for {len(ys)} ordinates")
    points = [
        (x, y)
        for x, y in zip(xs, ys)
        if math.isfinite(x) and math.isfinite(y) and (y > 0 or not log_y)
    ]
    if not points:
        raise ValueError(f"No finite points to draw in {title!r}")

    figure = Figure(figsize=FIGURE_SIZE)
    axes = figure.add_subplot()
    axes.plot([x for x, _ in points], [y for _, y in points], color="#1f5fa8", linewidth=1.5)
    if log_y:
        axes.set_yscale("log")
    axes.set_title(title)
    axes.set_xlabel(x_label)
    axes.set_ylabel(y_label)
    axes.grid(True, alpha=0.3)
    figure.tight_layout()

    buffer = io.StringIO()
    with matplotlib.rc_context(SVG_SETTINGS):
        figure.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()
