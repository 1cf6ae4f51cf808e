"""Hyperbolic Voronoi diagrams in the Klein disk, their dual Delaunay
triangulation, and rendering into the three models.

The diagram of a Klein point set is the power diagram of the mapped weighted
sites clipped to the closed unit disk: cell edges become chord segments and
the gaps between them along the unit circle become boundary arcs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bisector import PowerSite, site_to_power
from .errors import (
    CoincidentPointsError,
    DegenerateInputError,
    EmptyInputError,
    GeometryError,
    NumericDegeneracyError,
)
from .hypgeom import (
    KleinPoint,
    PoincarePoint,
    _disk_to_halfplane_c,
    _klein_to_poincare_xy,
)
from .powerdiag import (
    DiagramEdge,
    PowerDiagram,
    Triangulation,
    build_power_diagram,
    regular_triangulation,
)

TWO_PI = 2.0 * math.pi

# Chain/closure matching tolerance for clipped cell boundaries.
CHAIN_TOL = 1e-9

# Clipped pieces or arc spans shorter than this are dropped.
_TINY = 1e-12

# Distance from the half-plane map's pole (the disk point 1+0i) below which
# an endpoint maps to infinity and the image is emitted as a ray.
_POLE_TOL = 1e-9


@dataclass(frozen=True)
class GeodesicArc:
    """A Poincare-disk geodesic: a circular arc orthogonal to the unit circle
    (kind "arc") or a diameter chord (kind "diameter")."""

    kind: str
    p0: tuple[float, float]
    p1: tuple[float, float]
    center: tuple[float, float] | None = None
    radius: float | None = None
    theta0: float | None = None
    theta1: float | None = None
    direction: tuple[float, float] | None = None


@dataclass(frozen=True)
class ChordEdge:
    """A Voronoi edge: the part of the bisector of sites i and j inside the
    closed unit disk, as a Klein chord segment."""

    site_i: int
    site_j: int
    p0: tuple[float, float]
    p1: tuple[float, float]
    power_edge: int


@dataclass(frozen=True)
class BoundaryArc:
    """Unit-circle arc bounding one cell, CCW from theta0 to theta1."""

    site: int
    theta0: float
    theta1: float


@dataclass(frozen=True)
class HyperbolicCell:
    """Chained boundary of one clipped cell: ("chord", chord_id) and
    ("arc", arc_id) entries in CCW loop order."""

    site: int
    loop: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class SceneEdge:
    """One drawable of a rendered scene.

    kind "segment": p0 to p1.  kind "arc": CCW from theta0 to theta1 on the
    circle (center, radius).  kind "line": p0 + t*direction for t in [t0, t1]
    with None meaning unbounded.  sites is (i, j) for bisector edges and
    (i, -1) for cell boundary pieces.
    """

    kind: str
    sites: tuple[int, int]
    p0: tuple[float, float] | None = None
    p1: tuple[float, float] | None = None
    center: tuple[float, float] | None = None
    radius: float | None = None
    theta0: float | None = None
    theta1: float | None = None
    direction: tuple[float, float] | None = None
    t0: float | None = None
    t1: float | None = None


@dataclass
class SceneModel:
    """Renderable form of a diagram in one model: site positions plus typed
    drawables, with per-cell drawable index lists."""

    model: str
    sites: list[tuple[float, float]]
    edges: list[SceneEdge]
    cells: list[tuple[int, ...]]


class HyperbolicVoronoiDiagram:
    """Clipped power diagram of a Klein point set.

    sites is the deduplicated site list; index_map sends input positions to
    site indices.  cells[i] is None only for weighted builds whose added
    weights emptied the cell.
    """

    def __init__(self, sites, index_map, power, chords, arcs, cells, vertices,
                 added_weights=None):
        self.sites: list[KleinPoint] = list(sites)
        self.index_map: list[int] = list(index_map)
        self.power: PowerDiagram = power
        self.chords: list[ChordEdge] = list(chords)
        self.arcs: list[BoundaryArc] = list(arcs)
        self.cells: list[HyperbolicCell | None] = list(cells)
        self.vertices: list[tuple[float, float]] = list(vertices)
        self.added_weights = added_weights
        self._sx = np.array([p.x for p in self.sites])
        self._sy = np.array([p.y for p in self.sites])
        self._gamma = 1.0 / np.sqrt(1.0 - self._sx ** 2 - self._sy ** 2)

    def cosh_distances(self, x: float, y: float) -> np.ndarray:
        """cosh of the hyperbolic distance from (x, y) to every site."""
        num = 1.0 - (self._sx * x + self._sy * y)
        return np.maximum(num * self._gamma / math.sqrt(1.0 - x * x - y * y), 1.0)

    def cell_contains(self, i: int, x: float, y: float, tol: float = CHAIN_TOL) -> bool:
        """Membership of a disk point in the clipped cell of site i."""
        if x * x + y * y > 1.0 + tol:
            return False
        cell = self.cells[i]
        if cell is None:
            return False
        for nx, ny, off in self.power.cell_halfplanes(i):
            n = math.hypot(nx, ny)
            if nx * x + ny * y + off > tol * n:
                return False
        return True

    def delaunay(self) -> Triangulation:
        """Dual triangulation of the diagram's sites."""
        return hyperbolic_delaunay(self.sites)

    def delaunay_edge_set(self) -> set[tuple[int, int]]:
        """Site pairs whose cells share a chord inside the disk.

        This is the edge set of the hyperbolic Delaunay structure; the full
        regular triangulation can additionally carry adjacencies whose dual
        edge lies entirely outside the unit disk, and those are not
        hyperbolic objects (they may change under recentering).
        """
        out = set()
        for c in self.chords:
            if math.hypot(c.p1[0] - c.p0[0], c.p1[1] - c.p0[1]) > 1e-10:
                out.add((c.site_i, c.site_j))
        return out


# ---------------------------------------------------------------------------
# construction


def _dedup_points(points, weights):
    seen: dict[tuple[float, float, float], int] = {}
    unique: list[KleinPoint] = []
    uweights: list[float] = []
    index_map: list[int] = []
    for p, w in zip(points, weights):
        key = (p.x, p.y, w)
        u = seen.get(key)
        if u is None:
            u = len(unique)
            seen[key] = u
            unique.append(p)
            uweights.append(w)
        index_map.append(u)
    return unique, uweights, index_map


def _clip_edge(e: DiagramEdge):
    """Portion of a diagram edge inside the closed unit disk, or None."""
    px, py = e.p0
    if e.kind == "segment":
        dx, dy = e.p1[0] - px, e.p1[1] - py
        lo_lim, hi_lim = 0.0, 1.0
    elif e.kind == "ray":
        dx, dy = e.direction
        lo_lim, hi_lim = 0.0, math.inf
    else:
        dx, dy = e.direction
        lo_lim, hi_lim = -math.inf, math.inf
    a = dx * dx + dy * dy
    b = 2.0 * (px * dx + py * dy)
    c = px * px + py * py - 1.0
    disc = b * b - 4.0 * a * c
    if disc <= 0.0:
        return None
    root = math.sqrt(disc)
    t1 = (-b - root) / (2.0 * a)
    t2 = (-b + root) / (2.0 * a)
    lo = max(lo_lim, t1)
    hi = min(hi_lim, t2)
    if hi - lo <= _TINY:
        return None
    return (px + lo * dx, py + lo * dy), (px + hi * dx, py + hi * dy)


def _on_circle(p) -> bool:
    return abs(p[0] * p[0] + p[1] * p[1] - 1.0) <= 2.0 * CHAIN_TOL


def _chain_loop(elements):
    """Chain boundary elements (endpoint pairs) into a closed loop.

    elements: list of (key, start_point, end_point, mid_point).  Returns the
    keys in chained CCW order.  Raises NumericDegeneracyError if the pieces
    do not close up.
    """
    if not elements:
        return ()
    n = len(elements)
    used = [False] * n
    order = [0]
    used[0] = True
    flipped = [False]
    cur = elements[0][2]
    for _ in range(n - 1):
        best = None
        best_d = CHAIN_TOL
        best_flip = False
        for k in range(n):
            if used[k]:
                continue
            d0 = math.hypot(elements[k][1][0] - cur[0], elements[k][1][1] - cur[1])
            d1 = math.hypot(elements[k][2][0] - cur[0], elements[k][2][1] - cur[1])
            if d0 < best_d:
                best, best_d, best_flip = k, d0, False
            if d1 < best_d:
                best, best_d, best_flip = k, d1, True
        if best is None:
            raise NumericDegeneracyError("clipped cell boundary does not chain")
        used[best] = True
        order.append(best)
        flipped.append(best_flip)
        cur = elements[best][1 if best_flip else 2]
    start = elements[0][1]
    if math.hypot(cur[0] - start[0], cur[1] - start[1]) > CHAIN_TOL:
        raise NumericDegeneracyError("clipped cell boundary does not close")

    # orient CCW using the chained endpoint/midpoint polygon
    poly = []
    for k, flip in zip(order, flipped):
        _, s, e_, m = elements[k]
        poly.append(e_ if flip else s)
        poly.append(m)
    area = 0.0
    for i in range(len(poly)):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % len(poly)]
        area += x0 * y1 - x1 * y0
    keys = [elements[k][0] for k in order]
    if area < 0.0:
        keys.reverse()
    pivot = min(range(len(keys)), key=lambda r: keys[r])
    return tuple(keys[pivot:] + keys[:pivot])


def _arc_point(theta: float) -> tuple[float, float]:
    return (math.cos(theta), math.sin(theta))


def _build_clipped(unique, power: PowerDiagram):
    m = len(unique)
    clipped: dict[int, tuple] = {}
    for eid, e in enumerate(power.edges):
        seg = _clip_edge(e)
        if seg is not None:
            clipped[eid] = seg

    chords: list[ChordEdge] = []
    chord_of_edge: dict[int, int] = {}
    for eid in sorted(clipped):
        e = power.edges[eid]
        p0, p1 = clipped[eid]
        chord_of_edge[eid] = len(chords)
        chords.append(ChordEdge(e.site_i, e.site_j, p0, p1, eid))

    arcs: list[BoundaryArc] = []
    cells: list[HyperbolicCell | None] = [None] * m
    for i in range(m):
        pcell = power.cells[i]
        if pcell is None:
            continue
        cell_chords = [chord_of_edge[eid] for eid in pcell.edge_ids
                       if eid in chord_of_edge]
        if not cell_chords:
            # no cell boundary meets the disk, so the cell either covers the
            # whole disk or misses it; membership of the disk center decides
            covers_disk = all(
                off <= _TINY * math.hypot(nx, ny)
                for nx, ny, off in power.cell_halfplanes(i)
            )
            if not covers_disk:
                continue
            aid = len(arcs)
            arcs.append(BoundaryArc(i, 0.0, TWO_PI))
            cells[i] = HyperbolicCell(i, (("arc", aid),))
            continue

        crossings = []
        for cid in cell_chords:
            for pt in (chords[cid].p0, chords[cid].p1):
                if _on_circle(pt):
                    crossings.append(math.atan2(pt[1], pt[0]) % TWO_PI)
        halfplanes = [(nx, ny, off, math.hypot(nx, ny))
                      for nx, ny, off in power.cell_halfplanes(i)]

        elements = []
        for cid in cell_chords:
            ch = chords[cid]
            mid = ((ch.p0[0] + ch.p1[0]) / 2.0, (ch.p0[1] + ch.p1[1]) / 2.0)
            elements.append((("chord", cid), ch.p0, ch.p1, mid))

        if crossings:
            crossings.sort()
            for r, th0 in enumerate(crossings):
                th1 = crossings[(r + 1) % len(crossings)]
                span = (th1 - th0) % TWO_PI
                if span <= _TINY:
                    continue
                thm = th0 + span / 2.0
                mx, my = _arc_point(thm)
                ok = all(nx * mx + ny * my + off <= CHAIN_TOL * nn
                         for nx, ny, off, nn in halfplanes)
                if not ok:
                    continue
                aid = len(arcs)
                arcs.append(BoundaryArc(i, th0 % TWO_PI, (th0 + span) % TWO_PI))
                elements.append((("arc", aid), _arc_point(th0),
                                 _arc_point(th0 + span), (mx, my)))
        cells[i] = HyperbolicCell(i, _chain_loop(elements))

    vertices = [(x, y) for x, y in power.vertices if x * x + y * y < 1.0]
    return chords, arcs, cells, vertices


def _build(points, added_weights) -> HyperbolicVoronoiDiagram:
    pts = list(points)
    if not pts:
        raise EmptyInputError("need at least one site")
    if added_weights is None:
        weights = [0.0] * len(pts)
    else:
        weights = [float(w) for w in added_weights]
        if len(weights) != len(pts):
            raise GeometryError("added_weights length must match points")
    unique, uweights, index_map = _dedup_points(pts, weights)
    power_sites = [site_to_power(p, i) for i, p in enumerate(unique)]
    if added_weights is not None:
        power_sites = [
            PowerSite(s.center, s.weight + uw, s.origin_index)
            for s, uw in zip(power_sites, uweights)
        ]
    power = build_power_diagram(power_sites)
    chords, arcs, cells, vertices = _build_clipped(unique, power)
    return HyperbolicVoronoiDiagram(
        unique, index_map, power, chords, arcs, cells, vertices,
        added_weights=uweights if added_weights is not None else None,
    )


def build_hyperbolic_voronoi(points) -> HyperbolicVoronoiDiagram:
    """Hyperbolic Voronoi diagram of Klein points, clipped to the unit disk."""
    return _build(points, None)


def build_weighted_voronoi(points, added_weights) -> HyperbolicVoronoiDiagram:
    """Same pipeline with raw additive power weights per site."""
    return _build(points, list(added_weights))


def hyperbolic_delaunay(points) -> Triangulation:
    """Dual triangulation of the hyperbolic Voronoi diagram, drawn with
    straight chords in the Klein disk."""
    pts = list(points)
    unique, _, _ = _dedup_points(pts, [0.0] * len(pts))
    if len(unique) < 3:
        raise DegenerateInputError("need at least 3 distinct sites")
    xs = np.array([p.x for p in unique])
    ys = np.array([p.y for p in unique])
    lo = int(np.lexsort((ys, xs))[0])
    hi = int(np.lexsort((ys, xs))[-1])
    ux, uy = xs[hi] - xs[lo], ys[hi] - ys[lo]
    span = math.hypot(ux, uy)
    resid = np.abs((xs - xs[lo]) * uy - (ys - ys[lo]) * ux)
    if resid.max() <= 1e-12 * max(1.0, span):
        raise DegenerateInputError("all sites lie on one Klein chord")
    return regular_triangulation([site_to_power(p, i) for i, p in enumerate(unique)])


# ---------------------------------------------------------------------------
# geodesics and scene rendering


def _geodesic_xy(x0, y0, x1, y1) -> GeodesicArc:
    det = x0 * y1 - y0 * x1
    n0 = math.hypot(x0, y0)
    n1 = math.hypot(x1, y1)
    if abs(det) <= 1e-12 * max(1.0, n0 * n1):
        dx, dy = x1 - x0, y1 - y0
        n = math.hypot(dx, dy)
        if n == 0.0:
            raise CoincidentPointsError("geodesic undefined for equal points")
        return GeodesicArc(
            "diameter", (x0, y0), (x1, y1), direction=(dx / n, dy / n)
        )
    r0 = (x0 * x0 + y0 * y0 + 1.0) / 2.0
    r1 = (x1 * x1 + y1 * y1 + 1.0) / 2.0
    a = (r0 * y1 - r1 * y0) / det
    b = (x0 * r1 - x1 * r0) / det
    rad = math.sqrt(a * a + b * b - 1.0)
    th0 = math.atan2(y0 - b, x0 - a)
    th1 = math.atan2(y1 - b, x1 - a)
    if (th1 - th0) % TWO_PI <= math.pi:
        lo, hi = th0, th1
    else:
        lo, hi = th1, th0
    return GeodesicArc("arc", (x0, y0), (x1, y1), (a, b), rad, lo, hi)


def poincare_geodesic(p: PoincarePoint, q: PoincarePoint) -> GeodesicArc:
    """Geodesic through two Poincare disk points: a circle arc orthogonal to
    the unit circle, or a diameter when the points are radially aligned."""
    if math.hypot(p.x - q.x, p.y - q.y) < 1e-12:
        raise CoincidentPointsError("geodesic undefined for coincident points")
    return _geodesic_xy(p.x, p.y, q.x, q.y)


def _klein_scene(d: HyperbolicVoronoiDiagram) -> SceneModel:
    edges = [SceneEdge("segment", (c.site_i, c.site_j), p0=c.p0, p1=c.p1)
             for c in d.chords]
    for a in d.arcs:
        edges.append(SceneEdge("arc", (a.site, -1), center=(0.0, 0.0),
                               radius=1.0, theta0=a.theta0, theta1=a.theta1))
    cells = []
    for cell in d.cells:
        if cell is None:
            cells.append(())
            continue
        ids = tuple(cid if kind == "chord" else len(d.chords) + cid
                    for kind, cid in cell.loop)
        cells.append(ids)
    sites = [(p.x, p.y) for p in d.sites]
    return SceneModel("klein", sites, edges, cells)


def _poincare_scene(d: HyperbolicVoronoiDiagram) -> SceneModel:
    scene = _klein_scene(d)
    edges = []
    for e in scene.edges:
        if e.kind != "segment":
            edges.append(e)  # boundary arcs are shared by the two disk models
            continue
        x0, y0 = _klein_to_poincare_xy(*e.p0)
        x1, y1 = _klein_to_poincare_xy(*e.p1)
        g = _geodesic_xy(x0, y0, x1, y1)
        if g.kind == "diameter":
            edges.append(SceneEdge("segment", e.sites, p0=(x0, y0), p1=(x1, y1)))
        else:
            edges.append(SceneEdge("arc", e.sites, center=g.center,
                                   radius=g.radius, theta0=g.theta0,
                                   theta1=g.theta1))
    sites = [_klein_to_poincare_xy(x, y) for x, y in scene.sites]
    return SceneModel("poincare", sites, edges, scene.cells)


def _fit_circle(w0: complex, wm: complex, w1: complex):
    """Circle through three points, or None when they are collinear."""
    ax, ay = (wm - w0).real, (wm - w0).imag
    bx, by = (w1 - w0).real, (w1 - w0).imag
    cross = ax * by - ay * bx
    scale = max(abs(w1 - w0), abs(wm - w0), 1.0)
    if abs(cross) <= 1e-9 * scale * scale:
        return None
    am = (ax * ax + ay * ay) / 2.0
    bm = (bx * bx + by * by) / 2.0
    ux = (am * by - bm * ay) / cross
    uy = (bm * ax - am * bx) / cross
    center = w0 + complex(ux, uy)
    return center, abs(complex(ux, uy))


def _halfplane_pieces(sites_pair, z0: complex, zm: complex, z1: complex):
    """Half-plane images of a disk-model curve sampled at its two endpoints
    and midpoint.  The pole z=1 maps to infinity, so curves touching it are
    emitted as rays."""
    sing0 = abs(z0 - 1.0) <= _POLE_TOL
    sing1 = abs(z1 - 1.0) <= _POLE_TOL
    if sing0 and sing1:
        return []
    if sing0 or sing1:
        anchor = _disk_to_halfplane_c(z1 if sing0 else z0)
        through = _disk_to_halfplane_c(zm)
        dx, dy = through.real - anchor.real, through.imag - anchor.imag
        n = math.hypot(dx, dy)
        if n == 0.0:
            return []
        return [SceneEdge("line", sites_pair, p0=(anchor.real, anchor.imag),
                          direction=(dx / n, dy / n), t0=0.0, t1=None)]
    w0 = _disk_to_halfplane_c(z0)
    wm = _disk_to_halfplane_c(zm)
    w1 = _disk_to_halfplane_c(z1)
    fit = _fit_circle(w0, wm, w1)
    if fit is None:
        return [SceneEdge("segment", sites_pair, p0=(w0.real, w0.imag),
                          p1=(w1.real, w1.imag))]
    center, radius = fit
    ph0 = math.atan2((w0 - center).imag, (w0 - center).real)
    phm = math.atan2((wm - center).imag, (wm - center).real)
    ph1 = math.atan2((w1 - center).imag, (w1 - center).real)
    if (phm - ph0) % TWO_PI <= (ph1 - ph0) % TWO_PI:
        lo, hi = ph0, ph1
    else:
        lo, hi = ph1, ph0
    return [SceneEdge("arc", sites_pair, center=(center.real, center.imag),
                      radius=radius, theta0=lo, theta1=hi)]


def _halfplane_map_edge(e: SceneEdge) -> list[SceneEdge]:
    if e.kind == "segment":
        z0 = complex(*e.p0)
        z1 = complex(*e.p1)
        return _halfplane_pieces(e.sites, z0, (z0 + z1) / 2.0, z1)
    # arc: split at the pole angle if the circle passes through z = 1 and
    # the arc's interior contains it (true for every boundary arc)
    cx, cy = e.center
    rad = e.radius
    span = (e.theta1 - e.theta0) % TWO_PI
    if span == 0.0:
        span = TWO_PI

    def at(th: float) -> complex:
        return complex(cx + rad * math.cos(th), cy + rad * math.sin(th))

    pieces = [(e.theta0, span)]
    if abs(math.hypot(cx - 1.0, cy) - rad) <= _POLE_TOL:
        th_s = math.atan2(-cy, 1.0 - cx)
        rel = (th_s - e.theta0) % TWO_PI
        if _TINY < rel < span - _TINY:
            pieces = [(e.theta0, rel), (e.theta0 + rel, span - rel)]
    out = []
    for th0, sp in pieces:
        out.extend(
            _halfplane_pieces(e.sites, at(th0), at(th0 + sp / 2.0), at(th0 + sp))
        )
    return out


def _halfplane_scene(d: HyperbolicVoronoiDiagram) -> SceneModel:
    disk = _poincare_scene(d)
    edges: list[SceneEdge] = []
    remap: list[tuple[int, ...]] = []
    for e in disk.edges:
        pieces = _halfplane_map_edge(e)
        remap.append(tuple(range(len(edges), len(edges) + len(pieces))))
        edges.extend(pieces)
    cells = [tuple(i for eid in cell for i in remap[eid]) for cell in disk.cells]
    sites = []
    for x, y in disk.sites:
        w = _disk_to_halfplane_c(complex(x, y))
        sites.append((w.real, w.imag))
    return SceneModel("halfplane", sites, edges, cells)


def render_scene(d: HyperbolicVoronoiDiagram, model: str) -> SceneModel:
    """Render a built diagram in one of the three models."""
    if model == "klein":
        return _klein_scene(d)
    if model == "poincare":
        return _poincare_scene(d)
    if model == "halfplane":
        return _halfplane_scene(d)
    raise GeometryError(f"unknown model {model!r}")


def delaunay_scene(points, tri: Triangulation) -> SceneModel:
    """Klein-embedded straight-line scene of a triangulation."""
    sites = [(p.x, p.y) for p in points]
    edge_ids: dict[tuple[int, int], int] = {}
    edges: list[SceneEdge] = []
    for u, v in sorted(tri.edge_set()):
        edge_ids[(u, v)] = len(edges)
        edges.append(SceneEdge("segment", (u, v), p0=sites[u], p1=sites[v]))
    cells = []
    for a, b, c in tri.triangles:
        ids = []
        for u, v in ((a, b), (b, c), (c, a)):
            ids.append(edge_ids[(u, v) if u < v else (v, u)])
        cells.append(tuple(ids))
    return SceneModel("klein", sites, edges, cells)
