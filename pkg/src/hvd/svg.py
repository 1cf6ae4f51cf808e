"""Deterministic SVG emission for scene documents.

Fixed 1024x1024 canvas, fixed style table, edges emitted in document order
(the builders already sort them by site pair), coordinates printed with a
fixed format: identical documents yield byte-identical SVG.
"""

from __future__ import annotations

import math

CANVAS = 1024

# world windows per model (xmin, xmax, ymin, ymax)
_WINDOWS = {
    "klein": (-1.1, 1.1, -1.1, 1.1),
    "poincare": (-1.1, 1.1, -1.1, 1.1),
    "halfplane": (-2.2, 2.2, -0.1, 4.3),
}

_STYLE_EDGE = 'stroke="#1f5fbf" stroke-width="1.5" fill="none"'
_STYLE_RIM = 'stroke="#222222" stroke-width="2" fill="none"'
_STYLE_SITE = 'fill="#c0392b"'
_STYLE_OVERLAY = 'stroke="#2e8b57" stroke-width="2" fill="none"'
_STYLE_LABEL = 'font-family="monospace" font-size="16" fill="#333333"'

# past this radius an arc is indistinguishable from its chord at canvas scale
_FLAT_ARC_RADIUS = 1e6


def _fmt(v: float) -> str:
    out = f"{v:.4f}"
    return "0.0000" if out == "-0.0000" else out


class _View:
    def __init__(self, model: str):
        x0, x1, y0, y1 = _WINDOWS[model]
        self.x0, self.y1 = x0, y1
        self.sx = CANVAS / (x1 - x0)
        self.sy = CANVAS / (y1 - y0)

    def pt(self, x: float, y: float) -> tuple[float, float]:
        return (x - self.x0) * self.sx, (self.y1 - y) * self.sy

    def fmt_pt(self, x: float, y: float) -> tuple[str, str]:
        px, py = self.pt(x, y)
        return _fmt(px), _fmt(py)


def _segment(view, p0, p1, style) -> str:
    x0, y0 = view.fmt_pt(*p0)
    x1, y1 = view.fmt_pt(*p1)
    return f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" {style}/>'


def _arc(view, center, radius, th0, th1, style) -> str:
    span = (th1 - th0) % (2.0 * math.pi)
    if span == 0.0:
        span = 2.0 * math.pi
    p0 = (center[0] + radius * math.cos(th0), center[1] + radius * math.sin(th0))
    p1 = (center[0] + radius * math.cos(th0 + span),
          center[1] + radius * math.sin(th0 + span))
    if radius > _FLAT_ARC_RADIUS:
        return _segment(view, p0, p1, style)
    if span >= 2.0 * math.pi - 1e-12:
        cx, cy = view.fmt_pt(*center)
        r = _fmt(radius * view.sx)
        return f'<circle cx="{cx}" cy="{cy}" r="{r}" {style}/>'
    x0, y0 = view.fmt_pt(*p0)
    x1, y1 = view.fmt_pt(*p1)
    r = _fmt(radius * view.sx)
    large = 1 if span > math.pi else 0
    # CCW in world coordinates is CW on the y-flipped canvas: sweep flag 0
    return (f'<path d="M {x0} {y0} A {r} {r} 0 {large} 0 {x1} {y1}" {style}/>')


def _clip_line(point, direction, t0, t1, window):
    """Parameter range of a line inside the world window, or None."""
    x0, x1, y0, y1 = window
    lo = -1e9 if t0 is None else t0
    hi = 1e9 if t1 is None else t1
    px, py = point
    dx, dy = direction
    for p, d, wlo, whi in ((px, dx, x0, x1), (py, dy, y0, y1)):
        if abs(d) < 1e-15:
            if p < wlo or p > whi:
                return None
            continue
        ta = (wlo - p) / d
        tb = (whi - p) / d
        if ta > tb:
            ta, tb = tb, ta
        lo = max(lo, ta)
        hi = min(hi, tb)
    if hi <= lo:
        return None
    return lo, hi


def scene_svg(doc: dict, overlay: list[tuple[float, float]] | None = None) -> str:
    """Render a scene document to SVG text.

    overlay, when given, is a closed locus polyline in the scene's model
    coordinates (used for enclosing-ball output).
    """
    model = doc["model"]
    view = _View(model)
    window = _WINDOWS[model]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" '
        f'height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">',
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="#ffffff"/>',
    ]
    if model in ("klein", "poincare"):
        cx, cy = view.fmt_pt(0.0, 0.0)
        out.append(f'<circle cx="{cx}" cy="{cy}" r="{_fmt(view.sx)}" {_STYLE_RIM}/>')
    else:
        out.append(_segment(view, (window[0], 0.0), (window[1], 0.0), _STYLE_RIM))

    for e in doc["edges"]:
        if e["type"] == "segment":
            out.append(_segment(view, e["p0"], e["p1"], _STYLE_EDGE))
        elif e["type"] == "arc":
            out.append(_arc(view, e["center"], e["radius"], e["theta0"],
                            e["theta1"], _STYLE_EDGE))
        else:
            rng = _clip_line(e["point"], e["direction"], e["t0"], e["t1"], window)
            if rng is None:
                continue
            px, py = e["point"]
            dx, dy = e["direction"]
            p0 = (px + rng[0] * dx, py + rng[0] * dy)
            p1 = (px + rng[1] * dx, py + rng[1] * dy)
            out.append(_segment(view, p0, p1, _STYLE_EDGE))

    if overlay:
        pts = " ".join(
            "{},{}".format(*view.fmt_pt(x, y)) for x, y in overlay
        )
        out.append(f'<polygon points="{pts}" {_STYLE_OVERLAY}/>')

    for rec in doc["sites"]:
        x, y = view.fmt_pt(rec["x"], rec["y"])
        out.append(f'<circle cx="{x}" cy="{y}" r="4" {_STYLE_SITE}/>')
        label = rec.get("label")
        if label:
            out.append(f'<text x="{x}" y="{y}" dx="6" dy="-6" '
                       f'{_STYLE_LABEL}>{_escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;"))
