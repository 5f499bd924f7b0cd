"""Deterministic SVG and sample-table emission.

All documents are built by plain string formatting from sampled values, so
identical inputs give byte-identical output; there is no dependency on a
plotting toolkit.  Curves are drawn as closed polylines, parametric
derivative graphs are split at their poles, and the singularity diagram
shows where the parametric derivative is undefined across the weight
range with the predicted cusps overlaid as bold markers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .curve import (
    AnySpec,
    PlanePoint,
    TwoTermSpec,
    as_curve,
    derivative_scale,
    eval_complex,
    sample,
    spec_to_wire,
)
from .errors import EmptyInput
from .singularity import predicted_cusp_locus, undefined_derivative_set

SVG_NS = 'xmlns="http://www.w3.org/2000/svg"'


@dataclass(frozen=True)
class PlotSpec:
    """Canvas geometry and styling for curve plots.

    viewbox is the half-extent of a symmetric square window; it grows
    automatically if sampled points fall outside.
    """

    width: int = 800
    height: int = 800
    viewbox: float = 2.2
    stroke_width: float = 1.5
    markers: tuple[tuple[PlanePoint, str], ...] = field(default=())
    samples: int = 1024


def _px(v: float) -> str:
    # fixed decimals keep documents byte-stable and sub-pixel accurate
    return f"{v:.3f}"


def _color_ramp(i: int, count: int) -> str:
    if count == 1:
        return "#000000"
    if count == 3:
        return ("#cc2222", "#22aa22", "#2222cc")[i]
    f = i / (count - 1)
    r = round(40 + f * (204 - 40))
    g = 60
    bl = round(204 + f * (40 - 204))
    return f"#{r:02x}{g:02x}{bl:02x}"


def render_curve(specs: list[AnySpec], plot: PlotSpec = PlotSpec()) -> str:
    """Render one closed polyline per spec into an SVG document."""
    if not specs:
        raise EmptyInput("nothing to render")
    curves = [as_curve(s) for s in specs]
    pts = [sample(c, plot.samples) for c in curves]

    extent = plot.viewbox
    top = max(max(max(abs(p.x), abs(p.y)) for p in ps) for ps in pts)
    if top > extent:
        extent = 1.1 * top

    def to_px(p: PlanePoint) -> tuple[float, float]:
        return (
            (p.x + extent) / (2 * extent) * plot.width,
            (extent - p.y) / (2 * extent) * plot.height,
        )

    lines = [
        f'<svg {SVG_NS} width="{plot.width}" height="{plot.height}" '
        f'viewBox="0 0 {plot.width} {plot.height}">',
        f'<rect width="{plot.width}" height="{plot.height}" fill="#ffffff"/>',
    ]
    for i, ps in enumerate(pts):
        closed = list(ps) + [ps[0]]
        coords = " ".join("%s,%s" % (_px(x), _px(y)) for x, y in map(to_px, closed))
        lines.append(
            f'<polyline points="{coords}" fill="none" '
            f'stroke="{_color_ramp(i, len(pts))}" stroke-width="{plot.stroke_width}"/>'
        )
    for point, label in plot.markers:
        x, y = to_px(point)
        lines.append(
            f'<circle class="overlay-marker" cx="{_px(x)}" cy="{_px(y)}" r="4" '
            f'fill="#000000"><title>{label}</title></circle>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_param_derivative(spec: TwoTermSpec, plot: PlotSpec = PlotSpec()) -> str:
    """Graph the slope y'(t)/x'(t) over one period, split at the poles.

    The graph is clipped to |slope| <= viewbox; the polyline breaks
    wherever the slope is undefined or runs off the clip range, so no
    stroke ever crosses a pole.
    """
    n = plot.samples
    d = eval_complex(spec, np.arange(n + 1) / n, order=1)
    tol = 1e-9 * derivative_scale(spec)
    clip = plot.viewbox

    def to_px(t: float, v: float) -> tuple[float, float]:
        return (t * plot.width, (clip - v) / (2 * clip) * plot.height)

    lines = [
        f'<svg {SVG_NS} width="{plot.width}" height="{plot.height}" '
        f'viewBox="0 0 {plot.width} {plot.height}">',
        f'<rect width="{plot.width}" height="{plot.height}" fill="#ffffff"/>',
        f'<line x1="0" y1="{_px(plot.height / 2)}" x2="{plot.width}" '
        f'y2="{_px(plot.height / 2)}" stroke="#bbbbbb" stroke-width="1"/>',
    ]
    run: list[tuple[float, float]] = []
    runs: list[list[tuple[float, float]]] = []
    for j in range(n + 1):
        xp, yp = d[j].real, d[j].imag
        value = None if abs(xp) <= tol else yp / xp
        if value is None or abs(value) > clip:
            if len(run) >= 2:
                runs.append(run)
            run = []
        else:
            run.append(to_px(j / n, value))
    if len(run) >= 2:
        runs.append(run)
    for pts in runs:
        coords = " ".join("%s,%s" % (_px(x), _px(y)) for x, y in pts)
        lines.append(
            f'<polyline class="deriv-branch" points="{coords}" fill="none" '
            f'stroke="#000000" stroke-width="{plot.stroke_width}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_singularity_diagram(a: int, b: int, s_grid: int = 201) -> str:
    """Diagram of undefined-derivative parameters across the weight range.

    For each weight s on a uniform grid the parameters where the
    parametric derivative is undefined are drawn as dots (s horizontal,
    t vertical); the dense grid renders the branch curves.  The
    predicted cusps are overlaid as bold markers carrying their (s, t)
    in data attributes.
    """
    width = height = 800
    s_lo, s_hi = -1.0, 1.0
    t_lo, t_hi = -0.08, 1.08

    def to_px(s: float, t: float) -> tuple[float, float]:
        x = (s - s_lo + 0.1) / (s_hi - s_lo + 0.2) * width
        y = (t_hi - t) / (t_hi - t_lo) * height
        return x, y

    lines = [
        f'<svg {SVG_NS} width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    # frame and reference ticks
    fx0, fy1 = to_px(s_lo, t_lo)
    fx1, fy0 = to_px(s_hi, t_hi)
    lines.append(
        f'<rect x="{_px(fx0)}" y="{_px(fy0)}" width="{_px(fx1 - fx0)}" '
        f'height="{_px(fy1 - fy0)}" fill="none" stroke="#888888" stroke-width="1"/>'
    )
    for s_tick in (-1.0, 0.0, 1.0):
        x, y = to_px(s_tick, t_lo)
        lines.append(
            f'<text x="{_px(x)}" y="{_px(y + 16)}" font-size="12" '
            f'text-anchor="middle">s={s_tick:g}</text>'
        )
    for t_tick in (0.0, 0.5, 1.0):
        x, y = to_px(s_lo, t_tick)
        lines.append(
            f'<text x="{_px(x - 6)}" y="{_px(y + 4)}" font-size="12" '
            f'text-anchor="end">t={t_tick:g}</text>'
        )

    for i in range(s_grid):
        s = s_lo + (s_hi - s_lo) * i / (s_grid - 1)
        for t in undefined_derivative_set(a, b, s):
            x, y = to_px(s, t)
            lines.append(
                f'<circle class="udef-dot" cx="{_px(x)}" cy="{_px(y)}" r="1.2" '
                f'fill="#000000"/>'
            )

    locus = predicted_cusp_locus(a, b)
    for t_frac in locus.t_values:
        s_val, t_val = float(locus.s_bar), float(t_frac)
        x, y = to_px(s_val, t_val)
        lines.append(
            f'<circle class="cusp-marker" cx="{_px(x)}" cy="{_px(y)}" r="5" '
            f'fill="#000000" data-s="{s_val:.6g}" data-t="{t_val:.6g}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_samples(spec: AnySpec, n: int, format: str = "csv") -> str:
    """Sample table t, x, y with full float precision.

    CSV uses CRLF line endings and the exact header ``t,x,y``; JSON
    carries the curve's wire form alongside the samples so the document
    round-trips through the spec parser.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    c = as_curve(spec)
    t = np.arange(n) / n
    z = eval_complex(c, t)
    if format == "csv":
        rows = ["t,x,y"]
        rows.extend(
            "%.17g,%.17g,%.17g" % (t[i], z[i].real, z[i].imag) for i in range(n)
        )
        return "\r\n".join(rows) + "\r\n"
    if format == "json":
        payload = {
            "spec": spec_to_wire(c),
            "samples": [[float(t[i]), float(z[i].real), float(z[i].imag)] for i in range(n)],
        }
        return json.dumps(payload, separators=(",", ":")) + "\n"
    raise ValueError(f"unknown format: {format!r}")
