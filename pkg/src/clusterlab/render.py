"""SVG rendering of triangulated surfaces: a convex polygon with chords
for the disk, concentric circles with interpolated curve paths for the
annulus.  Output is for human eyes; floats are fine here."""

from __future__ import annotations

import math

from .surface import (
    AnnulusSurface,
    DiskSurface,
    Triangulation,
    peripheral_interval,
)

SIZE = 420
CENTER = SIZE / 2
R_OUTER = SIZE * 0.42
R_INNER = SIZE * 0.17


def _polygon_point(m: int, i: int, radius: float = R_OUTER) -> tuple[float, float]:
    angle = 2 * math.pi * (i - 1) / m - math.pi / 2
    return (CENTER + radius * math.cos(angle), CENTER + radius * math.sin(angle))


def _annulus_point(x: float, y: float) -> tuple[float, float]:
    """Map universal-cover coordinates (x in periods, y in [0,1] with the
    outer boundary at y=1) into the plane."""
    radius = R_INNER + (R_OUTER - R_INNER) * y
    angle = 2 * math.pi * x - math.pi / 2
    return (CENTER + radius * math.cos(angle), CENTER + radius * math.sin(angle))


def _path(points, stroke="#1f6feb", width=2.0) -> str:
    d = "M " + " L ".join(f"{x:.2f} {y:.2f}" for x, y in points)
    return f'<path d="{d}" fill="none" stroke="{stroke}" stroke-width="{width}"/>'


def _sampled(f, n=64):
    return [f(k / n) for k in range(n + 1)]


def render_triangulation(t: Triangulation, labels: bool = True) -> str:
    body: list[str] = []
    if isinstance(t.surface, DiskSurface):
        m = t.surface.m
        ring = [_polygon_point(m, i) for i in range(1, m + 1)]
        body.append(
            '<polygon points="'
            + " ".join(f"{x:.2f},{y:.2f}" for x, y in ring)
            + '" fill="#f6f8fa" stroke="#57606a" stroke-width="2"/>'
        )
        for pos, arc in enumerate(t.arcs):
            a, b = arc.data
            body.append(_path([_polygon_point(m, a), _polygon_point(m, b)]))
            mid = tuple((u + v) / 2 for u, v in zip(_polygon_point(m, a), _polygon_point(m, b)))
            body.append(
                f'<text x="{mid[0]:.1f}" y="{mid[1]:.1f}" font-size="12" fill="#1f6feb">{pos + 1}</text>'
            )
        for i in range(1, m + 1):
            x, y = _polygon_point(m, i)
            body.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="#24292f"/>')
            if labels:
                lx, ly = _polygon_point(m, i, R_OUTER + 16)
                body.append(
                    f'<text x="{lx:.1f}" y="{ly:.1f}" font-size="13" text-anchor="middle">{i}</text>'
                )
    elif isinstance(t.surface, AnnulusSurface):
        surface = t.surface
        body.append(
            f'<circle cx="{CENTER}" cy="{CENTER}" r="{R_OUTER}" fill="#f6f8fa" stroke="#57606a" stroke-width="2"/>'
        )
        body.append(
            f'<circle cx="{CENTER}" cy="{CENTER}" r="{R_INNER}" fill="#ffffff" stroke="#57606a" stroke-width="2"/>'
        )
        for pos, arc in enumerate(t.arcs):
            if arc.kind == "bridge":
                i, j, w = arc.data
                x0 = float(surface.outer_pos(i))
                x1 = float(surface.inner_pos(j)) + w
                pts = _sampled(lambda s: _annulus_point(x0 + (x1 - x0) * s, 1 - s))
            else:
                lo, hi = peripheral_interval(surface, arc)
                side = arc.data[0]
                y0, yd = (1.0, 0.55) if side == "outer" else (0.0, 0.45)

                def dip(s, lo=float(lo), hi=float(hi), y0=y0, yd=yd):
                    x = lo + (hi - lo) * s
                    y = y0 + (yd - y0) * math.sin(math.pi * s)
                    return _annulus_point(x, y)

                pts = _sampled(dip)
            body.append(_path(pts))
            mx, my = pts[len(pts) // 2]
            body.append(
                f'<text x="{mx:.1f}" y="{my:.1f}" font-size="12" fill="#1f6feb">{pos + 1}</text>'
            )
        for i in range(1, surface.p + 1):
            x, y = _annulus_point(float(surface.outer_pos(i)), 1.0)
            body.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="#24292f"/>')
        for j in range(1, surface.q + 1):
            x, y = _annulus_point(float(surface.inner_pos(j)), 0.0)
            body.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="#24292f"/>')
    else:
        raise ValueError(f"cannot render {t.surface}")
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">\n' + "\n".join(body) + "\n</svg>\n"
    )
