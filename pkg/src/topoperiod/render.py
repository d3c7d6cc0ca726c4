"""Deterministic SVG rendering for point clouds and persistence diagrams.

The output is a pure function of the input artifact: fixed canvas,
fixed palette, floats formatted to four decimals, no timestamps or
randomness. Rendering the same artifact twice gives byte-identical SVG.
"""

from __future__ import annotations

import numpy as np

from .embedding import PointCloud
from .errors import EmptyArtifactError
from .persistence import PersistenceDiagram

_WIDTH = 800
_HEIGHT = 400
_MARGIN = 40
_BAR_H = 8
_BAR_GAP = 4
_POINT_R = 3

_DIM_COLORS = {0: "#2b6cb0", 1: "#c53030", 2: "#2f855a", 3: "#b7791f"}
_FALLBACK_COLOR = "#4a5568"


def _fmt(x: float) -> str:
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def _header(kind: str) -> str:
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" data-kind="{kind}">'
    )


def _scale(values: np.ndarray, lo_px: float, hi_px: float) -> np.ndarray:
    vmin = float(values.min())
    vmax = float(values.max())
    if vmax == vmin:
        return np.full(values.shape, (lo_px + hi_px) / 2.0)
    return lo_px + (values - vmin) * (hi_px - lo_px) / (vmax - vmin)


def _render_cloud(cloud: PointCloud) -> str:
    if len(cloud) == 0:
        raise EmptyArtifactError("cannot render an empty point cloud")
    pts = cloud.points
    xs = pts[:, 0]
    ys = pts[:, 1] if cloud.dim >= 2 else np.zeros(len(cloud))
    px = _scale(xs, _MARGIN, _WIDTH - _MARGIN)
    # SVG y grows downward, so the vertical axis is flipped.
    py = _HEIGHT - _scale(ys, _MARGIN, _HEIGHT - _MARGIN)
    parts = [_header("point-cloud")]
    parts.append(
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="#ffffff"/>'
    )
    for i in range(len(cloud)):
        parts.append(
            f'<circle class="pt" cx="{_fmt(px[i])}" cy="{_fmt(py[i])}" '
            f'r="{_POINT_R}" fill="{_DIM_COLORS[0]}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _render_barcode(diagram: PersistenceDiagram) -> str:
    if not diagram.intervals:
        raise EmptyArtifactError("cannot render an empty persistence diagram")
    intervals = diagram.intervals
    finite_deaths = [iv.death for iv in intervals if iv.is_finite]
    births = [iv.birth for iv in intervals]
    xmax = max(finite_deaths + births)
    if xmax <= 0:
        xmax = 1.0
    xmax *= 1.05
    lo_px = _MARGIN
    hi_px = _WIDTH - _MARGIN

    def to_px(v: float) -> float:
        return lo_px + v * (hi_px - lo_px) / xmax

    parts = [_header("barcode")]
    parts.append(
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="#ffffff"/>'
    )
    y = float(_MARGIN)
    for iv in intervals:
        color = _DIM_COLORS.get(iv.dim, _FALLBACK_COLOR)
        x0 = to_px(iv.birth)
        if iv.is_finite:
            x1 = to_px(iv.death)
            parts.append(
                f'<rect class="bar" data-dim="{iv.dim}" '
                f'x="{_fmt(x0)}" y="{_fmt(y)}" '
                f'width="{_fmt(max(x1 - x0, 0.5))}" height="{_BAR_H}" '
                f'fill="{color}"/>'
            )
        else:
            # Unbounded bars run to the right edge and end in an arrow tip.
            parts.append(
                f'<rect class="bar" data-dim="{iv.dim}" data-essential="true" '
                f'x="{_fmt(x0)}" y="{_fmt(y)}" '
                f'width="{_fmt(hi_px - x0)}" height="{_BAR_H}" '
                f'fill="{color}"/>'
            )
            tip_y0 = y - 2
            tip_y1 = y + _BAR_H + 2
            tip_x = hi_px + 10
            parts.append(
                f'<path class="inf-marker" d="M {_fmt(hi_px)} {_fmt(tip_y0)} '
                f'L {_fmt(tip_x)} {_fmt((tip_y0 + tip_y1) / 2.0)} '
                f'L {_fmt(hi_px)} {_fmt(tip_y1)} Z" fill="{color}"/>'
            )
        y += _BAR_H + _BAR_GAP
        if y > _HEIGHT - _MARGIN:
            y = float(_MARGIN)  # wrap rather than overflow the canvas
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_svg(artifact: PointCloud | PersistenceDiagram) -> str:
    """Render a point cloud scatter or a persistence barcode as SVG text.

    Raises EmptyArtifactError when there is nothing to draw.
    """
    if isinstance(artifact, PointCloud):
        return _render_cloud(artifact)
    if isinstance(artifact, PersistenceDiagram):
        return _render_barcode(artifact)
    raise TypeError(f"cannot render {type(artifact).__name__}")
