"""Point-set and scene file formats (JSON documents) and their validation."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import GeometryError
from .hypgeom import BOUNDARY_MARGIN, KleinPoint, poincare_to_klein, PoincarePoint
from .hvoronoi import SceneEdge, SceneModel

TOOL_NAME = "hvd"
TOOL_VERSION = "0.1.0"

INPUT_MODELS = ("klein", "poincare")
SCENE_MODELS = ("klein", "poincare", "halfplane")


class PointSetError(GeometryError):
    """Malformed or invariant-violating point-set file."""


@dataclass(frozen=True)
class PointRecord:
    x: float
    y: float
    label: str | None = None
    weight: float | None = None


@dataclass
class PointSet:
    """Validated contents of a point-set file."""

    model: str
    points: list[PointRecord]

    @property
    def has_weights(self) -> bool:
        return any(r.weight is not None for r in self.points)

    def to_klein(self) -> tuple[list[KleinPoint], list[str | None], list[float] | None]:
        """Klein coordinates, labels, and the additive weights (None when no
        record declares one; absent weights on individual records mean 0)."""
        pts = []
        for r in self.points:
            if self.model == "poincare":
                pts.append(poincare_to_klein(PoincarePoint(r.x, r.y)))
            else:
                pts.append(KleinPoint(r.x, r.y))
        labels = [r.label for r in self.points]
        weights = None
        if self.has_weights:
            weights = [r.weight if r.weight is not None else 0.0
                       for r in self.points]
        return pts, labels, weights


def parse_point_set(text: str) -> PointSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PointSetError(
            f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise PointSetError("point-set file must be a JSON object")
    model = doc.get("model")
    if model not in INPUT_MODELS:
        raise PointSetError(f"model must be one of {INPUT_MODELS}, got {model!r}")
    raw = doc.get("points")
    if not isinstance(raw, list):
        raise PointSetError("'points' must be a list of records")

    problems: list[str] = []
    records: list[PointRecord] = []
    labels_seen: dict[str, int] = {}
    limit = 1.0 - BOUNDARY_MARGIN
    for i, rec in enumerate(raw):
        if not isinstance(rec, dict):
            problems.append(f"record {i}: not an object")
            continue
        x, y = rec.get("x"), rec.get("y")
        if not isinstance(x, (int, float)) or not isinstance(y, (int, float)) \
                or isinstance(x, bool) or isinstance(y, bool) \
                or not (math.isfinite(x) and math.isfinite(y)):
            problems.append(f"record {i}: x and y must be finite numbers")
            continue
        if x * x + y * y >= limit * limit:
            problems.append(
                f"record {i}: ({x}, {y}) violates the {model} disk invariant"
            )
            continue
        label = rec.get("label")
        if label is not None:
            if not isinstance(label, str):
                problems.append(f"record {i}: label must be a string")
                continue
            if label in labels_seen:
                problems.append(
                    f"record {i}: duplicate label {label!r} "
                    f"(first used by record {labels_seen[label]})"
                )
                continue
            labels_seen[label] = i
        weight = rec.get("weight")
        if weight is not None and (
            isinstance(weight, bool)
            or not isinstance(weight, (int, float))
            or not math.isfinite(weight)
        ):
            problems.append(f"record {i}: weight must be a finite number")
            continue
        records.append(PointRecord(float(x), float(y), label,
                                   None if weight is None else float(weight)))
    if problems:
        raise PointSetError("; ".join(problems))
    if not records:
        raise PointSetError("point set is empty")
    return PointSet(model, records)


def load_point_set(path: str) -> PointSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_point_set(fh.read())


# ---------------------------------------------------------------------------
# scene documents


def _edge_to_dict(e: SceneEdge) -> dict:
    d: dict = {"type": e.kind, "sites": [e.sites[0], e.sites[1]]}
    if e.kind == "segment":
        d["p0"] = [e.p0[0], e.p0[1]]
        d["p1"] = [e.p1[0], e.p1[1]]
    elif e.kind == "arc":
        d["center"] = [e.center[0], e.center[1]]
        d["radius"] = e.radius
        d["theta0"] = e.theta0
        d["theta1"] = e.theta1
    else:
        d["point"] = [e.p0[0], e.p0[1]]
        d["direction"] = [e.direction[0], e.direction[1]]
        d["t0"] = e.t0
        d["t1"] = e.t1
    return d


def _edge_from_dict(d: dict) -> SceneEdge:
    kind = d["type"]
    sites = (int(d["sites"][0]), int(d["sites"][1]))
    if kind == "segment":
        return SceneEdge(kind, sites, p0=tuple(d["p0"]), p1=tuple(d["p1"]))
    if kind == "arc":
        return SceneEdge(kind, sites, center=tuple(d["center"]),
                         radius=float(d["radius"]), theta0=float(d["theta0"]),
                         theta1=float(d["theta1"]))
    if kind == "line":
        return SceneEdge(kind, sites, p0=tuple(d["point"]),
                         direction=tuple(d["direction"]),
                         t0=d["t0"], t1=d["t1"])
    raise PointSetError(f"unknown edge type {kind!r}")


def scene_to_dict(scene: SceneModel, labels=None, metadata=None) -> dict:
    sites = []
    for i, (x, y) in enumerate(scene.sites):
        rec = {"x": x, "y": y}
        if labels is not None and labels[i] is not None:
            rec["label"] = labels[i]
        sites.append(rec)
    meta = {"tool": TOOL_NAME, "version": TOOL_VERSION}
    if metadata:
        meta.update(metadata)
    return {
        "model": scene.model,
        "sites": sites,
        "edges": [_edge_to_dict(e) for e in scene.edges],
        "cells": [list(c) for c in scene.cells],
        "metadata": meta,
    }


def scene_from_dict(doc: dict) -> tuple[SceneModel, list[str | None]]:
    if doc.get("model") not in SCENE_MODELS:
        raise PointSetError(f"scene model must be one of {SCENE_MODELS}")
    edges = [_edge_from_dict(e) for e in doc.get("edges", [])]
    for k, e in enumerate(edges):
        if e.kind == "arc" and not (e.radius > 0.0 and math.isfinite(e.radius)):
            raise PointSetError(f"edge {k}: arc radius must be positive")
    cells = []
    for ci, cell in enumerate(doc.get("cells", [])):
        ids = tuple(int(v) for v in cell)
        for eid in ids:
            if eid < 0 or eid >= len(edges):
                raise PointSetError(f"cell {ci} references missing edge {eid}")
        cells.append(ids)
    sites = []
    labels = []
    for rec in doc.get("sites", []):
        sites.append((float(rec["x"]), float(rec["y"])))
        labels.append(rec.get("label"))
    scene = SceneModel(doc["model"], sites, edges, cells)
    return scene, labels


def dumps_json(doc: dict) -> str:
    """Deterministic document serialization (keys in construction order,
    floats in shortest round-trip-exact form)."""
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"
