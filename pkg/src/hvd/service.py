"""Local HTTP query service over immutable diagram snapshots.

The service never mutates a snapshot: recentering builds a new one and
returns its id, so concurrent readers always see consistent geometry and
clients use the snapshot id as their consistency token.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .errors import GeometryError
from .fileio import PointSet, scene_to_dict
from .hquery import (
    ball_boundary_points,
    ball_poincare_circle,
    nearest_neighbor,
    smallest_enclosing_ball,
)
from .hvoronoi import (
    build_hyperbolic_voronoi,
    build_weighted_voronoi,
    render_scene,
)
from .hypgeom import (
    HalfPlanePoint,
    KleinPoint,
    PoincarePoint,
    halfplane_to_disk,
    klein_distance,
    klein_to_poincare,
    poincare_to_klein,
)
from .mobius import recenter_sites

SCENE_MODELS = ("klein", "poincare", "halfplane")


def _to_klein(x: float, y: float, model: str) -> KleinPoint:
    if model == "klein":
        return KleinPoint(x, y)
    if model == "poincare":
        return poincare_to_klein(PoincarePoint(x, y))
    if model == "halfplane":
        return poincare_to_klein(halfplane_to_disk(HalfPlanePoint(x, y)))
    raise GeometryError(f"unknown model {model!r}")


class QueryPoint(BaseModel):
    x: float
    y: float
    model: str = "poincare"
    snapshot: str | None = None


class RecenterRequest(QueryPoint):
    scene_model: str = "poincare"


class SebRequest(BaseModel):
    indices: list[int]
    snapshot: str | None = None


class NNResponse(BaseModel):
    snapshot: str
    index: int
    label: str | None
    distance: float


class SebOverlay(BaseModel):
    poincare_center: tuple[float, float]
    poincare_radius: float
    locus_klein: list[tuple[float, float]]
    locus_poincare: list[tuple[float, float]]


class SebResponse(BaseModel):
    snapshot: str
    indices: list[int]
    center_klein: tuple[float, float]
    center_poincare: tuple[float, float]
    radius: float
    overlay: SebOverlay


class RecenterResponse(BaseModel):
    snapshot: str
    scene: dict


class HealthResponse(BaseModel):
    status: str
    snapshot: str
    sites: int


class Snapshot:
    def __init__(self, sid, points, labels, weights, seed):
        self.id = sid
        self.weights = weights
        if weights is None:
            self.diagram = build_hyperbolic_voronoi(points)
        else:
            self.diagram = build_weighted_voronoi(points, weights)
        # labels follow the deduplicated sites; first occurrence wins
        self.labels: list[str | None] = [None] * len(self.diagram.sites)
        for i, u in enumerate(self.diagram.index_map):
            if self.labels[u] is None:
                self.labels[u] = labels[i]
        self.seed = seed

    def scene_doc(self, model: str) -> dict:
        scene = render_scene(self.diagram, model)
        return scene_to_dict(
            scene, self.labels,
            {"seed": self.seed, "snapshot": self.id, "kind": "voronoi"},
        )


class SnapshotStore:
    def __init__(self):
        self._snaps: dict[str, Snapshot] = {}
        self._lock = threading.Lock()
        self._counter = 0
        self.latest: str | None = None

    def create(self, points, labels, weights, seed) -> Snapshot:
        with self._lock:
            sid = f"s{self._counter}"
            self._counter += 1
            snap = Snapshot(sid, points, labels, weights, seed)
            self._snaps[sid] = snap
            self.latest = sid
            return snap

    def get(self, sid: str | None) -> Snapshot:
        key = self.latest if sid is None else sid
        snap = self._snaps.get(key)
        if snap is None:
            raise HTTPException(status_code=404, detail=f"unknown snapshot {sid!r}")
        return snap


def create_app(point_set: PointSet, seed: int = 0) -> FastAPI:
    """Build the service around one loaded point set."""
    points, labels, weights = point_set.to_klein()
    store = SnapshotStore()
    store.create(points, labels, weights, seed)
    app = FastAPI(title="hvd query service", version="0.1.0")
    # the disk viewer is served from a different origin than the service
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    app.state.store = store

    def _klein_query(q: QueryPoint) -> KleinPoint:
        try:
            return _to_klein(q.x, q.y, q.model)
        except GeometryError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.get("/health", response_model=HealthResponse)
    def health():
        snap = store.get(None)
        return HealthResponse(status="ok", snapshot=snap.id,
                              sites=len(snap.diagram.sites))

    @app.get("/scene")
    def scene(model: str = Query("poincare"), snapshot: str | None = None):
        if model not in SCENE_MODELS:
            raise HTTPException(status_code=400,
                                detail=f"model must be one of {SCENE_MODELS}")
        return store.get(snapshot).scene_doc(model)

    @app.post("/nn", response_model=NNResponse)
    def nn(q: QueryPoint):
        snap = store.get(q.snapshot)
        qk = _klein_query(q)
        idx = nearest_neighbor(snap.diagram, qk)
        return NNResponse(
            snapshot=snap.id, index=idx, label=snap.labels[idx],
            distance=klein_distance(snap.diagram.sites[idx], qk),
        )

    @app.post("/seb", response_model=SebResponse)
    def seb(req: SebRequest):
        snap = store.get(req.snapshot)
        n = len(snap.diagram.sites)
        if not req.indices:
            raise HTTPException(status_code=400, detail="indices must be non-empty")
        if any(i < 0 or i >= n for i in req.indices):
            raise HTTPException(status_code=400,
                                detail=f"site indices must be in [0, {n})")
        pts = [snap.diagram.sites[i] for i in req.indices]
        ball = smallest_enclosing_ball(pts, snap.seed)
        locus_k, locus_p = ball_boundary_points(ball)
        pc, pr = ball_poincare_circle(ball)
        center_p = klein_to_poincare(ball.center)
        return SebResponse(
            snapshot=snap.id,
            indices=list(req.indices),
            center_klein=(ball.center.x, ball.center.y),
            center_poincare=(center_p.x, center_p.y),
            radius=ball.radius,
            overlay=SebOverlay(
                poincare_center=pc, poincare_radius=pr,
                locus_klein=locus_k, locus_poincare=locus_p,
            ),
        )

    @app.post("/recenter", response_model=RecenterResponse)
    def recenter(req: RecenterRequest):
        if req.scene_model not in SCENE_MODELS:
            raise HTTPException(status_code=400,
                                detail=f"scene_model must be one of {SCENE_MODELS}")
        snap = store.get(req.snapshot)
        focus = _klein_query(req)
        try:
            moved = recenter_sites(snap.diagram.sites, focus)
        except GeometryError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        new = store.create(moved, snap.labels, snap.diagram.added_weights,
                           snap.seed)
        return RecenterResponse(snapshot=new.id,
                                scene=new.scene_doc(req.scene_model))

    return app
