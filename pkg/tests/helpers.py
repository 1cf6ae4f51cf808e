"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import itertools
import math

import numpy as np

from hvd.hypgeom import KleinPoint, klein_distance
from hvd.hquery import circumcenter2, circumcenter3


def sample_klein(rng, n, max_norm=0.9):
    """n points uniform in the Euclidean disk of the given radius."""
    pts = []
    while len(pts) < n:
        x, y = rng.uniform(-max_norm, max_norm, 2)
        if x * x + y * y < max_norm * max_norm:
            pts.append(KleinPoint(float(x), float(y)))
    return pts


def sample_hyperbolic_uniform(rng, n, radius=5.0):
    """n points uniform w.r.t. hyperbolic area within hyperbolic radius."""
    u = rng.uniform(0.0, 1.0, n)
    rh = np.arccosh(1.0 + u * (math.cosh(radius) - 1.0))
    rk = np.tanh(rh)
    th = rng.uniform(0.0, 2.0 * math.pi, n)
    return [KleinPoint(float(r * math.cos(t)), float(r * math.sin(t)))
            for r, t in zip(rk, th)]


def sample_disk_points(rng, n, max_norm=0.999):
    """Raw (x, y) query samples uniform in the disk."""
    out = np.empty((n, 2))
    k = 0
    while k < n:
        cand = rng.uniform(-max_norm, max_norm, (2 * (n - k), 2))
        keep = (cand ** 2).sum(axis=1) < max_norm * max_norm
        take = cand[keep][: n - k]
        out[k:k + len(take)] = take
        k += len(take)
    return out


def cosh_matrix(sites, xy: np.ndarray) -> np.ndarray:
    """cosh of hyperbolic distance from each sample row to each site."""
    sx = np.array([p.x for p in sites])
    sy = np.array([p.y for p in sites])
    gamma = 1.0 / np.sqrt(1.0 - sx ** 2 - sy ** 2)
    num = 1.0 - np.outer(xy[:, 0], sx) - np.outer(xy[:, 1], sy)
    denom = np.sqrt(1.0 - (xy ** 2).sum(axis=1))
    return np.maximum(num * gamma[None, :] / denom[:, None], 1.0)


def brute_nearest(sites, xy: np.ndarray) -> np.ndarray:
    """Independent nearest-site oracle: plain argmin over all distances."""
    return np.argmin(cosh_matrix(sites, xy), axis=1)


def seb_oracle(pts):
    """Exhaustive enclosing-ball oracle over all 1/2/3-point candidate balls."""
    if len(pts) == 1:
        return pts[0], 0.0
    cands = []
    for i, j in itertools.combinations(range(len(pts)), 2):
        m = circumcenter2(pts[i], pts[j])
        cands.append((m, max(klein_distance(m, pts[i]),
                             klein_distance(m, pts[j]))))
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        c = circumcenter3(pts[i], pts[j], pts[k])
        if c is not None:
            cands.append((c, max(klein_distance(c, pts[t]) for t in (i, j, k))))
    best = None
    for c, r in cands:
        if all(klein_distance(c, p) <= r + 1e-9 for p in pts):
            if best is None or r < best[1]:
                best = (c, r)
    assert best is not None
    return best


def clipped_assignment(diagram, xy: np.ndarray, tol=1e-9) -> np.ndarray:
    """Cell assignment read off the clipped structure: the lowest-index cell
    whose half-planes contain the sample."""
    assigned = np.full(len(xy), -1, dtype=int)
    for i in range(len(diagram.sites)):
        idx = np.nonzero(assigned == -1)[0]
        if len(idx) == 0:
            break
        hp = diagram.power.cell_halfplanes(i)
        if diagram.cells[i] is None:
            continue
        inside = np.ones(len(idx), dtype=bool)
        sub = xy[idx]
        for nx, ny, off in hp:
            nn = math.hypot(nx, ny)
            inside &= nx * sub[:, 0] + ny * sub[:, 1] + off <= tol * nn
        assigned[idx[inside]] = i
    return assigned


def bisector_chord_samples(line, n=100):
    """n points of an affine line strictly inside the unit disk."""
    (ax, ay), b = line.a, line.b
    if abs(b) >= 1.0:
        return []
    fx, fy = -b * ax, -b * ay
    half = math.sqrt(max(0.0, 1.0 - b * b))
    ts = np.linspace(-half, half, n + 2)[1:-1] * (1.0 - 1e-9)
    return [(fx - t * ay, fy + t * ax) for t in ts]


def loop_points(diagram, cell):
    """Endpoint sequence of a cell's boundary loop elements."""
    pts = []
    for kind, ref in cell.loop:
        if kind == "chord":
            ch = diagram.chords[ref]
            pts.append((ch.p0, ch.p1))
        else:
            a = diagram.arcs[ref]
            span = (a.theta1 - a.theta0) % (2.0 * math.pi)
            if span == 0.0:
                span = 2.0 * math.pi
            pts.append((
                (math.cos(a.theta0), math.sin(a.theta0)),
                (math.cos(a.theta0 + span), math.sin(a.theta0 + span)),
            ))
    return pts
