"""Hyperbolic Voronoi diagrams as clipped power diagrams in the Klein disk,
with model conversions, nearest-neighbor and smallest-enclosing-ball queries,
and Mobius viewpoint recentering."""

from .bisector import (
    AffineLine,
    PowerSite,
    WEIGHT_SIGN_THRESHOLD_SQ,
    klein_bisector,
    power_bisector,
    site_to_power,
)
from .errors import (
    CoincidentPointsError,
    DegenerateInputError,
    DomainError,
    EmptyInputError,
    GeometryError,
    NumericDegeneracyError,
)
from .hquery import (
    circumcenter2,
    circumcenter3,
    nearest_neighbor,
    smallest_enclosing_ball,
)
from .hvoronoi import (
    GeodesicArc,
    HyperbolicVoronoiDiagram,
    SceneEdge,
    SceneModel,
    build_hyperbolic_voronoi,
    build_weighted_voronoi,
    hyperbolic_delaunay,
    poincare_geodesic,
    render_scene,
)
from .hypgeom import (
    HalfPlanePoint,
    HyperbolicBall,
    KleinPoint,
    PoincarePoint,
    disk_to_halfplane,
    halfplane_to_disk,
    klein_distance,
    klein_to_poincare,
    poincare_distance,
    poincare_to_klein,
)
from .mobius import (
    MobiusTransform,
    apply,
    compose,
    identity,
    inverse,
    recenter_sites,
    translate_to_origin,
)
from .powerdiag import (
    PowerDiagram,
    Triangulation,
    build_power_diagram,
    locate_cell,
    regular_triangulation,
)

__version__ = "0.1.0"
