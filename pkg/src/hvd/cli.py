"""Command-line front end: diagram/delaunay/seb file transforms and the
query service."""

from __future__ import annotations

import argparse
import sys

from .errors import GeometryError
from .fileio import (
    TOOL_VERSION,
    dumps_json,
    load_point_set,
    scene_to_dict,
)
from .hquery import ball_boundary_points, smallest_enclosing_ball
from .hvoronoi import (
    build_hyperbolic_voronoi,
    build_weighted_voronoi,
    delaunay_scene,
    render_scene,
)
from .hypgeom import klein_to_poincare
from .svg import scene_svg

MODELS = ("klein", "poincare", "halfplane")


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _unique_labels(diagram, labels):
    out = [None] * len(diagram.sites)
    for i, u in enumerate(diagram.index_map):
        if out[u] is None:
            out[u] = labels[i]
    return out


def _build(points, weights):
    if weights is None:
        return build_hyperbolic_voronoi(points)
    return build_weighted_voronoi(points, weights)


def cmd_diagram(args) -> int:
    ps = load_point_set(args.input)
    points, labels, weights = ps.to_klein()
    diagram = _build(points, weights)
    scene = render_scene(diagram, args.model)
    doc = scene_to_dict(scene, _unique_labels(diagram, labels),
                        {"seed": args.seed, "kind": "voronoi"})
    _write(args, scene_svg(doc) if args.format == "svg" else dumps_json(doc))
    return 0


def cmd_delaunay(args) -> int:
    ps = load_point_set(args.input)
    points, labels, _ = ps.to_klein()
    diagram = build_hyperbolic_voronoi(points)
    tri = diagram.delaunay()
    scene = delaunay_scene(diagram.sites, tri)
    doc = scene_to_dict(scene, _unique_labels(diagram, labels),
                        {"seed": args.seed, "kind": "delaunay"})
    doc["triangles"] = [list(t) for t in tri.triangles]
    _write(args, scene_svg(doc) if args.format == "svg" else dumps_json(doc))
    return 0


def cmd_seb(args) -> int:
    ps = load_point_set(args.input)
    points, labels, _ = ps.to_klein()
    ball = smallest_enclosing_ball(points, args.seed)
    center_p = klein_to_poincare(ball.center)
    if args.format == "svg":
        sites = [{"x": p.x, "y": p.y} for p in points]
        for i, lab in enumerate(labels):
            if lab is not None:
                sites[i]["label"] = lab
        doc = {"model": "klein", "sites": sites, "edges": [], "cells": [],
               "metadata": {"tool": "hvd", "version": TOOL_VERSION,
                            "seed": args.seed, "kind": "seb"}}
        locus_k, _ = ball_boundary_points(ball)
        _write(args, scene_svg(doc, overlay=locus_k))
        return 0
    report = {
        "center_klein": [ball.center.x, ball.center.y],
        "center_poincare": [center_p.x, center_p.y],
        "radius": ball.radius,
        "n_points": len(points),
        "metadata": {"tool": "hvd", "version": TOOL_VERSION, "seed": args.seed},
    }
    _write(args, dumps_json(report))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(load_point_set(args.input), seed=args.seed)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _add_common(p, model: bool = True, fmt: bool = True):
    p.add_argument("--input", required=True, help="point-set JSON file")
    if model:
        p.add_argument("--model", choices=MODELS, default="klein",
                       help="output model (default: klein)")
    if fmt:
        p.add_argument("--format", choices=("json", "svg"), default="json",
                       help="output format (default: json)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed recorded in outputs and used by randomized steps")
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hvd",
        description="Hyperbolic Voronoi diagrams in the Klein, Poincare and "
                    "half-plane models",
    )
    parser.add_argument("--version", action="version", version=TOOL_VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram", help="build and render the Voronoi diagram")
    _add_common(p)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("delaunay",
                       help="dual triangulation, embedded with Klein chords")
    _add_common(p, model=False)
    p.set_defaults(func=cmd_delaunay)

    p = sub.add_parser("seb", help="smallest enclosing hyperbolic ball")
    _add_common(p, model=False)
    p.set_defaults(func=cmd_seb)

    p = sub.add_parser("serve", help="run the local HTTP query service")
    p.add_argument("--input", required=True, help="point-set JSON file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
