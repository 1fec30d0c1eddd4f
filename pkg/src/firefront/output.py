"""Serialization of run results: CSV, JSON report, and SVG plots.

All writers are deterministic: floats are rendered with repr() (shortest
round-trip form), no timestamps or environment details are embedded, and
iteration order is fixed by the run result itself.  CSV is the canonical
interchange; the SVG is a direct serializer for quick inspection.
"""

from __future__ import annotations

import json

FRONTS_HEADER = "stage,t,vertex_index,x,y"
RAYS_HEADER = "ray_id,t,x,y,v1,v2"


def _fmt(value):
    return repr(float(value))


def write_fronts_csv(path, result):
    """Front vertices as `stage,t,vertex_index,x,y` rows."""
    lines = [FRONTS_HEADER]
    for stage_no, t, front in result.fronts:
        for i, (x, y) in enumerate(front.points):
            lines.append(f"{stage_no},{_fmt(t)},{i},{_fmt(x)},{_fmt(y)}")
    _write_text(path, "\n".join(lines) + "\n")


def write_rays_csv(path, result):
    """Ray trajectory samples as `ray_id,t,x,y,v1,v2` rows.

    Times are absolute scenario times (stage offset plus local sample
    time).
    """
    lines = [RAYS_HEADER]
    for ray_id, _stage_no, t0, traj in result.rays:
        for k in range(traj.t.shape[0]):
            x, y = traj.points[k]
            v1, v2 = traj.velocities[k]
            lines.append(f"{ray_id},{_fmt(t0 + traj.t[k])},{_fmt(x)},{_fmt(y)},"
                         f"{_fmt(v1)},{_fmt(v2)}")
    _write_text(path, "\n".join(lines) + "\n")


def write_report_json(path, result, files=None):
    report = dict(result.report)
    if files is not None:
        report["files"] = list(files)
    _write_text(path, json.dumps(report, indent=2) + "\n")


def _write_text(path, text):
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_COLD = (43, 108, 176)    # early fronts: blue
_HOT = (197, 48, 48)      # late fronts: red
_RAY_STYLE = 'stroke="#b8b8b8"'


def _color(frac):
    r = round(_COLD[0] + frac * (_HOT[0] - _COLD[0]))
    g = round(_COLD[1] + frac * (_HOT[1] - _COLD[1]))
    b = round(_COLD[2] + frac * (_HOT[2] - _COLD[2]))
    return f"#{r:02x}{g:02x}{b:02x}"


def _c(value):
    """Compact stable coordinate formatting for SVG."""
    return f"{value:.6g}"


def _path_d(points, closed):
    parts = [f"M {_c(points[0][0])} {_c(-points[0][1])}"]
    parts.extend(f"L {_c(x)} {_c(-y)}" for x, y in points[1:])
    if closed:
        parts.append("Z")
    return " ".join(parts)


def write_svg(path, result, width=720):
    """Fronts colored from blue (early) to red (late); rays in gray.

    The y axis is flipped so the plane's +y points up on screen.
    """
    xs, ys = [], []
    for _s, _t, front in result.fronts:
        xs.extend(front.points[:, 0])
        ys.extend(front.points[:, 1])
    for _rid, _s, _t0, traj in result.rays:
        xs.extend(traj.points[:, 0])
        ys.extend(traj.points[:, 1])
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    span_x = max(xmax - xmin, 1e-9)
    span_y = max(ymax - ymin, 1e-9)
    pad = 0.05 * max(span_x, span_y)
    vb_x = xmin - pad
    vb_y = -(ymax + pad)          # y flipped
    vb_w = span_x + 2 * pad
    vb_h = span_y + 2 * pad
    height = round(width * vb_h / vb_w)
    stroke = vb_w / 400.0

    t_vals = [t for _s, t, _f in result.fronts]
    t_max = max(t_vals) if t_vals else 1.0

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="{_c(vb_x)} {_c(vb_y)} {_c(vb_w)} {_c(vb_h)}">',
        f'<rect x="{_c(vb_x)}" y="{_c(vb_y)}" width="{_c(vb_w)}" '
        f'height="{_c(vb_h)}" fill="#ffffff"/>',
        f'<g fill="none" stroke-width="{_c(stroke * 0.5)}">',
    ]
    for _rid, _s, _t0, traj in result.rays:
        if traj.points.shape[0] >= 2:
            lines.append(f'<path {_RAY_STYLE} d="{_path_d(traj.points, False)}"/>')
    lines.append("</g>")
    lines.append(f'<g fill="none" stroke-width="{_c(stroke)}">')
    for _s, t, front in result.fronts:
        color = _color(t / t_max if t_max > 0 else 0.0)
        lines.append(f'<path stroke="{color}" d="{_path_d(front.points, front.closed)}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    _write_text(path, "\n".join(lines) + "\n")
