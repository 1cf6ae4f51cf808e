"""Planar power (Laguerre) diagram construction and its dual regular
triangulation.

The diagram is computed by lifting each weighted site (c, w) to the 3D point
(c_x, c_y, |c|^2 - w) and reading the regular triangulation off the lower
convex hull; diagram vertices are the equal-power points of the lower-hull
triangles and cells follow by duality.  Collinear centers (including every
2-site input) are handled by a 1D lower-envelope sweep instead.

Built diagrams and triangulations are immutable and safe to query from
multiple threads; construction itself is single-threaded per call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .bisector import PowerSite
from .errors import (
    DegenerateInputError,
    EmptyInputError,
    NumericDegeneracyError,
)

# Centers closer than this are collapsed before construction.
DUPLICATE_TOL = 1e-12

# A lower-hull facet steeper than 1/_MIN_FACET_SLOPE in z is treated as a
# degeneracy and sent to the perturbation retry path.
_MIN_FACET_SLOPE = 1e-10

# Dual edges shorter than this are reported as degenerate (cells meet in a
# single point, not an edge).
DEGENERATE_EDGE_TOL = 1e-10


@dataclass(frozen=True)
class DiagramEdge:
    """A maximal straight piece of the diagram between cells site_i < site_j.

    kind is "segment" (p0 to p1), "ray" (from p0 along direction) or "line"
    (through p0 along direction, unbounded both ways).
    """

    site_i: int
    site_j: int
    kind: str
    p0: tuple[float, float]
    p1: tuple[float, float] | None = None
    direction: tuple[float, float] | None = None

    @property
    def length(self) -> float:
        if self.kind != "segment":
            return math.inf
        return math.hypot(self.p1[0] - self.p0[0], self.p1[1] - self.p0[1])


@dataclass(frozen=True)
class PowerCell:
    """Boundary of one site's cell: edge ids in CCW order around the site.

    For unbounded cells the list is an open chain starting and ending with a
    ray or line edge.
    """

    site: int
    edge_ids: tuple[int, ...]
    bounded: bool


@dataclass(frozen=True)
class Triangulation:
    """Regular triangulation dual to a power diagram.

    triangles are positively oriented index triples (lowest index first);
    adjacency[t][k] is the triangle across the edge opposite vertex k of
    triangle t, or None on the hull.
    """

    vertices: tuple[int, ...]
    triangles: tuple[tuple[int, int, int], ...]
    adjacency: tuple[tuple[int | None, int | None, int | None], ...]

    def edge_set(self) -> set[tuple[int, int]]:
        edges = set()
        for a, b, c in self.triangles:
            for u, v in ((a, b), (b, c), (c, a)):
                edges.add((u, v) if u < v else (v, u))
        return edges


class PowerDiagram:
    """Power diagram of a list of weighted sites.

    sites keeps the caller's order; cells/empty_cell_flags are indexed the
    same way.  Dominated duplicates and sites whose cell is empty have
    cells[i] = None and empty_cell_flags[i] = True.
    """

    def __init__(self, sites, edges, vertices, cells, empty_cell_flags,
                 triangulation):
        self.sites: list[PowerSite] = list(sites)
        self.edges: list[DiagramEdge] = list(edges)
        self.vertices: list[tuple[float, float]] = list(vertices)
        self.cells: list[PowerCell | None] = list(cells)
        self.empty_cell_flags: list[bool] = list(empty_cell_flags)
        self.triangulation: Triangulation | None = triangulation
        arr = np.array([s.center for s in self.sites], dtype=float)
        self._cx = arr[:, 0].copy()
        self._cy = arr[:, 1].copy()
        self._w = np.array([s.weight for s in self.sites], dtype=float)

    def power_values(self, x: float, y: float) -> np.ndarray:
        dx = self._cx - x
        dy = self._cy - y
        return dx * dx + dy * dy - self._w

    def halfplane(self, i: int, j: int) -> tuple[float, float, float]:
        """(nx, ny, off) with nx*x + ny*y + off <= 0 on site i's side of the
        radical line between sites i and j."""
        nx = 2.0 * (self._cx[j] - self._cx[i])
        ny = 2.0 * (self._cy[j] - self._cy[i])
        gi = self._cx[i] ** 2 + self._cy[i] ** 2 - self._w[i]
        gj = self._cx[j] ** 2 + self._cy[j] ** 2 - self._w[j]
        return nx, ny, gi - gj

    def cell_halfplanes(self, i: int) -> list[tuple[float, float, float]]:
        cell = self.cells[i]
        if cell is None:
            return []
        res = []
        for eid in cell.edge_ids:
            e = self.edges[eid]
            j = e.site_j if e.site_i == i else e.site_i
            res.append(self.halfplane(i, j))
        return res

    def adjacency_pairs(self) -> set[tuple[int, int]]:
        """Site pairs sharing a non-degenerate diagram edge."""
        pairs = set()
        for e in self.edges:
            if e.kind == "segment" and e.length <= DEGENERATE_EDGE_TOL:
                continue
            pairs.add((e.site_i, e.site_j))
        return pairs


def locate_cell(d: PowerDiagram, x) -> int:
    """Index of the site with minimal power distance to x; ties go to the
    lowest index."""
    px, py = float(x[0]), float(x[1])
    return int(np.argmin(d.power_values(px, py)))


# ---------------------------------------------------------------------------
# construction


def _dedup(sites) -> tuple[list[int], list[bool]]:
    """Collapse duplicate centers; the larger weight wins, ties go to the
    lowest index.  Returns (winner indices ascending, dominated flags)."""
    by_center: dict[tuple[float, float], int] = {}
    dominated = [False] * len(sites)
    for i, s in enumerate(sites):
        key = s.center
        best = by_center.get(key)
        if best is None:
            by_center[key] = i
        elif sites[best].weight >= s.weight:
            dominated[i] = True
        else:
            dominated[best] = True
            by_center[key] = i
    return sorted(by_center.values()), dominated


def _tiebreak_profile(n: int, attempt: int) -> np.ndarray:
    if attempt == 1:
        return np.arange(n, dtype=float)
    # deterministic pseudo-random profile for inputs where the index ramp
    # is itself affine in the coordinates
    h = (np.arange(n, dtype=np.uint64) + 1) * np.uint64(2654435761)
    return (h % np.uint64(2 ** 32)).astype(float) / 2.0 ** 32


def _lower_hull_triangles(centers: np.ndarray,
                          weights: np.ndarray) -> list[tuple[int, int, int]]:
    """Triangles (as row indices into centers, CCW) of the regular
    triangulation, via the lower hull of the lifted sites."""
    m = len(centers)
    z = (centers ** 2).sum(axis=1) - weights
    zspan = max(float(np.ptp(z)), 1.0)

    if m == 3:
        cross = _cross3(centers, 0, 1, 2)
        if abs(cross) <= 1e-14 * max(1.0, float(np.abs(centers).max()) ** 2):
            raise DegenerateInputError("three collinear centers")
        return [(0, 1, 2)] if cross > 0 else [(0, 2, 1)]

    for attempt, eps in ((0, 0.0), (1, 1e-9), (2, 1e-6)):
        zp = z if eps == 0.0 else z - eps * zspan * _tiebreak_profile(m, attempt)
        try:
            hull = ConvexHull(np.column_stack([centers, zp]), qhull_options="Qt")
        except QhullError:
            continue
        tris = _extract_lower(hull, centers)
        if tris is not None:
            return tris
    raise NumericDegeneracyError(
        "lower hull degenerate even after weight perturbation"
    )


def _cross3(c: np.ndarray, a: int, b: int, d: int) -> float:
    return float(
        (c[b, 0] - c[a, 0]) * (c[d, 1] - c[a, 1])
        - (c[b, 1] - c[a, 1]) * (c[d, 0] - c[a, 0])
    )


def _extract_lower(hull: ConvexHull, centers: np.ndarray):
    scale = max(1.0, float(np.abs(centers).max()) ** 2)
    tris = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        nz = eq[2]
        if nz >= -_MIN_FACET_SLOPE:
            if nz < 0.0:
                return None  # near-vertical lower facet: retry perturbed
            continue
        a, b, c = (int(v) for v in simplex)
        cross = _cross3(centers, a, b, c)
        if abs(cross) <= 1e-14 * scale:
            return None
        tris.append((a, b, c) if cross > 0 else (a, c, b))
    return tris if tris else None


def _power_center(centers, gvals, tri) -> tuple[float, float]:
    i, j, k = tri
    a11 = 2.0 * (centers[j, 0] - centers[i, 0])
    a12 = 2.0 * (centers[j, 1] - centers[i, 1])
    a21 = 2.0 * (centers[k, 0] - centers[i, 0])
    a22 = 2.0 * (centers[k, 1] - centers[i, 1])
    r1 = gvals[j] - gvals[i]
    r2 = gvals[k] - gvals[i]
    det = a11 * a22 - a12 * a21
    return ((r1 * a22 - r2 * a12) / det, (r2 * a11 - r1 * a21) / det)


def _perp_away(base, tip, other) -> tuple[float, float]:
    """Unit vector perpendicular to tip-base pointing away from other."""
    dx = tip[0] - base[0]
    dy = tip[1] - base[1]
    px, py = -dy, dx
    if px * (other[0] - base[0]) + py * (other[1] - base[1]) > 0.0:
        px, py = -px, -py
    n = math.hypot(px, py)
    return px / n, py / n


def _is_collinear(centers: np.ndarray) -> tuple[bool, np.ndarray | None]:
    """Collinearity of unique centers; returns (flag, unit direction)."""
    m = len(centers)
    if m < 2:
        return True, None
    lo = min(range(m), key=lambda i: (centers[i, 0], centers[i, 1]))
    hi = max(range(m), key=lambda i: (centers[i, 0], centers[i, 1]))
    d = centers[hi] - centers[lo]
    span = float(np.hypot(d[0], d[1]))
    if span == 0.0:
        return True, None
    u = d / span
    rel = centers - centers[lo]
    resid = np.abs(rel[:, 0] * u[1] - rel[:, 1] * u[0])
    return bool(resid.max() <= 1e-12 * max(1.0, span)), u


def _walk_around(i, tris_of_i, dir_edge, tris):
    """Incident triangles of vertex i in CCW order; closed=False for hull
    vertices (open fan)."""

    def rot(t_id):
        t = tris[t_id]
        k = t.index(i)
        return t[k], t[(k + 1) % 3], t[(k + 2) % 3]

    start = tris_of_i[0]
    order = [start]
    cur = start
    closed = False
    while True:
        _, _, b = rot(cur)
        nxt = dir_edge.get((i, b))
        if nxt == start:
            closed = True
            break
        if nxt is None:
            break
        order.append(nxt)
        cur = nxt
        if len(order) > len(tris_of_i):
            raise NumericDegeneracyError(f"inconsistent fan around site {i}")
    if not closed:
        cur = start
        while True:
            _, a, _ = rot(cur)
            prv = dir_edge.get((a, i))
            if prv is None:
                break
            order.insert(0, prv)
            cur = prv
            if len(order) > len(tris_of_i):
                raise NumericDegeneracyError(f"inconsistent fan around site {i}")
    return order, closed


def _assemble_from_triangles(sites, unique_idx, tris_u):
    """Shared diagram assembly once triangles over the unique sites exist.

    tris_u uses rows of the unique-site arrays; output indices are original.
    """
    centers = np.array([sites[i].center for i in unique_idx], dtype=float)
    weights = np.array([sites[i].weight for i in unique_idx], dtype=float)
    gvals = (centers ** 2).sum(axis=1) - weights

    # canonical triangle order: lowest original index first, sorted list
    tris_orig = []
    for a, b, c in tris_u:
        t = (unique_idx[a], unique_idx[b], unique_idx[c])
        k = t.index(min(t))
        tris_orig.append((t[k], t[(k + 1) % 3], t[(k + 2) % 3]))
    order = sorted(range(len(tris_orig)), key=lambda r: tris_orig[r])
    tris_orig = [tris_orig[r] for r in order]
    tris_u = [tris_u[r] for r in order]

    u_of_orig = {oi: r for r, oi in enumerate(unique_idx)}
    tri_centers = [
        _power_center(centers, gvals, tuple(u_of_orig[v] for v in t))
        for t in tris_orig
    ]

    dir_edge: dict[tuple[int, int], int] = {}
    und_edge: dict[tuple[int, int], list[int]] = {}
    tris_of: dict[int, list[int]] = {}
    for t_id, (a, b, c) in enumerate(tris_orig):
        for u, v in ((a, b), (b, c), (c, a)):
            dir_edge[(u, v)] = t_id
            und_edge.setdefault((u, v) if u < v else (v, u), []).append(t_id)
        for v in (a, b, c):
            tris_of.setdefault(v, []).append(t_id)

    def center_of(orig: int) -> tuple[float, float]:
        r = u_of_orig[orig]
        return float(centers[r, 0]), float(centers[r, 1])

    edges: list[DiagramEdge] = []
    edge_id: dict[tuple[int, int], int] = {}
    for (u, v), ts in sorted(und_edge.items()):
        if len(ts) == 2:
            t0, t1 = sorted(ts)
            e = DiagramEdge(u, v, "segment", tri_centers[t0], tri_centers[t1])
        else:
            (t0,) = ts
            a, b, c = tris_orig[t0]
            third = a + b + c - u - v
            d = _perp_away(center_of(u), center_of(v), center_of(third))
            e = DiagramEdge(u, v, "ray", tri_centers[t0], None, d)
        edge_id[(u, v)] = len(edges)
        edges.append(e)

    cells: list[PowerCell | None] = [None] * len(sites)
    flags = [True] * len(sites)
    for oi in unique_idx:
        if oi not in tris_of:
            continue  # redundant site: empty cell
        fan, closed = _walk_around(oi, tris_of[oi], dir_edge, tris_orig)
        ids = []

        def shared_other(t_id):
            t = tris_orig[t_id]
            k = t.index(oi)
            return t[(k + 2) % 3]  # vertex b: edge (oi, b) crossed going CCW

        if not closed:
            t = tris_orig[fan[0]]
            k = t.index(oi)
            a0 = t[(k + 1) % 3]
            key = (oi, a0) if oi < a0 else (a0, oi)
            ids.append(edge_id[key])
        for r in range(len(fan) if closed else len(fan) - 1):
            b = shared_other(fan[r])
            key = (oi, b) if oi < b else (b, oi)
            ids.append(edge_id[key])
        if not closed:
            b = shared_other(fan[-1])
            key = (oi, b) if oi < b else (b, oi)
            ids.append(edge_id[key])
        cells[oi] = PowerCell(oi, tuple(ids), closed)
        flags[oi] = False

    vertices = [(float(x), float(y)) for x, y in tri_centers]
    adjacency = []
    for t_id, (a, b, c) in enumerate(tris_orig):
        neigh = []
        for u, v in ((b, c), (c, a), (a, b)):  # edge opposite a, b, c
            key = (u, v) if u < v else (v, u)
            ts = und_edge[key]
            neigh.append(ts[0] + ts[1] - t_id if len(ts) == 2 else None)
        adjacency.append(tuple(neigh))
    triangulation = Triangulation(
        tuple(sorted(tris_of.keys())), tuple(tris_orig), tuple(adjacency)
    )
    return edges, vertices, cells, flags, triangulation


def _assemble_collinear(sites, unique_idx, u):
    """1D power diagram of collinear centers: slabs between radical lines."""
    centers = np.array([sites[i].center for i in unique_idx], dtype=float)
    weights = np.array([sites[i].weight for i in unique_idx], dtype=float)
    base = centers[0]
    t = (centers - base) @ u

    # minimize (s - t_i)^2 - w_i over i at each position s along the line:
    # lower envelope of the lines -2 t_i s + (t_i^2 - w_i)
    slope = -2.0 * t
    icpt = t * t - weights
    order = np.argsort(t, kind="stable")
    kept: list[int] = []
    starts: list[float] = []
    for r in order:
        while kept:
            top = kept[-1]
            s = (icpt[r] - icpt[top]) / (slope[top] - slope[r])
            if s <= starts[-1]:
                kept.pop()
                starts.pop()
                continue
            break
        starts.append(-math.inf if not kept else s)
        kept.append(int(r))

    v = (-float(u[1]), float(u[0]))
    edges: list[DiagramEdge] = []
    cells: list[PowerCell | None] = [None] * len(sites)
    flags = [True] * len(sites)
    cell_edges: list[list[int]] = [[] for _ in kept]
    for r in range(len(kept) - 1):
        s = starts[r + 1]
        anchor = (float(base[0] + s * u[0]), float(base[1] + s * u[1]))
        i, j = unique_idx[kept[r]], unique_idx[kept[r + 1]]
        lo, hi = (i, j) if i < j else (j, i)
        edges.append(DiagramEdge(lo, hi, "line", anchor, None, v))
        cell_edges[r].append(len(edges) - 1)
        cell_edges[r + 1].append(len(edges) - 1)
    for r, k in enumerate(kept):
        oi = unique_idx[k]
        cells[oi] = PowerCell(oi, tuple(cell_edges[r]), False)
        flags[oi] = False
    return edges, [], cells, flags, None


def build_power_diagram(sites) -> PowerDiagram:
    """Power diagram of the given sites (n >= 1, finite coordinates)."""
    sites = list(sites)
    if not sites:
        raise EmptyInputError("need at least one site")
    unique_idx, dominated = _dedup(sites)

    if len(unique_idx) == 1:
        oi = unique_idx[0]
        cells: list[PowerCell | None] = [None] * len(sites)
        cells[oi] = PowerCell(oi, (), False)
        flags = [i != oi for i in range(len(sites))]
        return PowerDiagram(sites, [], [], cells, flags, None)

    centers = np.array([sites[i].center for i in unique_idx], dtype=float)
    collinear, u = _is_collinear(centers)
    if collinear:
        parts = _assemble_collinear(sites, unique_idx, u)
    else:
        weights = np.array([sites[i].weight for i in unique_idx], dtype=float)
        tris_u = _lower_hull_triangles(centers, weights)
        parts = _assemble_from_triangles(sites, unique_idx, tris_u)
    return PowerDiagram(sites, *parts)


def regular_triangulation(sites) -> Triangulation:
    """Regular triangulation dual to the power diagram of the sites."""
    sites = list(sites)
    if not sites:
        raise EmptyInputError("need at least one site")
    unique_idx, dominated = _dedup(sites)
    if len(unique_idx) < 3:
        raise DegenerateInputError("need at least 3 distinct sites")
    centers = np.array([sites[i].center for i in unique_idx], dtype=float)
    collinear, _ = _is_collinear(centers)
    if collinear:
        raise DegenerateInputError("all site centers are collinear")
    weights = np.array([sites[i].weight for i in unique_idx], dtype=float)
    tris_u = _lower_hull_triangles(centers, weights)
    *_, triangulation = _assemble_from_triangles(sites, unique_idx, tris_u)
    return triangulation
