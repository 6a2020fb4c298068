"""Convex separation, clearance queries and monotone bisection.

All operations are pure functions of their inputs and safe to call from any
number of workers. Points are float64 arrays of shape (3,); point sets are
arrays of shape (n, 3). Distances are meters.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from ._mindist import hull_distance
from .errors import Infeasible, NotSeparable

#: default tolerance for bisection on the unit interval
BISECT_TOL = 1e-4
_BISECT_MAX_ITER = 60

#: minimum hull volume accepted for an obstacle (rejects coplanar vertex sets)
_MIN_HULL_VOLUME = 1e-12


def as_point3(p) -> np.ndarray:
    """Coerce to a finite float64 point of shape (3,)."""
    a = np.asarray(p, dtype=np.float64).reshape(3)
    if not np.all(np.isfinite(a)):
        raise ValueError(f"point has non-finite components: {a}")
    return a


def _as_point_set(points) -> np.ndarray:
    a = np.ascontiguousarray(np.atleast_2d(np.asarray(points, dtype=np.float64)))
    if a.ndim != 2 or a.shape[1] != 3 or a.shape[0] == 0:
        raise ValueError(f"expected a nonempty (n, 3) point set, got shape {a.shape}")
    return a


@dataclass
class ConvexObstacle:
    """Convex obstacle given by the hull of its vertices.

    Degenerate (coplanar) vertex sets are rejected at construction; queries
    assume a positive-volume hull. Vertices are reduced to the hull's extreme
    points and an axis-aligned bounding box is precomputed for cheap
    rejection tests.
    """

    vertices: np.ndarray
    id: int = 0
    aabb_min: np.ndarray = field(init=False, repr=False)
    aabb_max: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        verts = _as_point_set(self.vertices)
        if verts.shape[0] < 4:
            raise ValueError(f"obstacle {self.id}: needs >= 4 vertices, got {verts.shape[0]}")
        try:
            hull = ConvexHull(verts)
        except QhullError as exc:
            raise ValueError(f"obstacle {self.id}: degenerate vertex set ({exc})") from exc
        if hull.volume <= _MIN_HULL_VOLUME:
            raise ValueError(f"obstacle {self.id}: hull volume {hull.volume} is not positive")
        self.vertices = np.ascontiguousarray(verts[hull.vertices])
        self.aabb_min = self.vertices.min(axis=0)
        self.aabb_max = self.vertices.max(axis=0)

    def aabb_distance(self, points) -> float:
        """Lower bound on the distance from any of `points` to the hull."""
        pts = np.atleast_2d(points)
        d = np.maximum(self.aabb_min - pts, 0.0) + np.maximum(pts - self.aabb_max, 0.0)
        return float(np.sqrt((d * d).sum(axis=1)).min())

    @classmethod
    def box(cls, lo, hi, id=0) -> "ConvexObstacle":
        lo = as_point3(lo)
        hi = as_point3(hi)
        corners = np.array([[x, y, z] for x in (lo[0], hi[0])
                            for y in (lo[1], hi[1]) for z in (lo[2], hi[2])])
        return cls(vertices=corners, id=id)


@dataclass
class HalfSpace:
    """Linear constraint normal . p >= offset (sense 'ge') or <= (sense 'le')."""

    normal: np.ndarray
    offset: float
    sense: str = "ge"

    def __post_init__(self):
        self.normal = as_point3(self.normal)
        n = float(np.linalg.norm(self.normal))
        if abs(n - 1.0) > 1e-9:
            raise ValueError(f"half-space normal must be unit length, |a| = {n}")
        if self.sense not in ("ge", "le"):
            raise ValueError(f"sense must be 'ge' or 'le', got {self.sense!r}")
        self.offset = float(self.offset)

    def margin(self, p) -> float:
        """Signed slack at p; nonnegative iff p satisfies the constraint."""
        v = float(self.normal @ as_point3(p)) - self.offset
        return v if self.sense == "ge" else -v


@dataclass
class Ball:
    """Closed ball; used for agent bodies and connectivity spheres."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        self.center = as_point3(self.center)
        self.radius = float(self.radius)
        if self.radius <= 0:
            raise ValueError(f"ball radius must be positive, got {self.radius}")

    def contains(self, p, tol=0.0) -> bool:
        return float(np.linalg.norm(as_point3(p) - self.center)) <= self.radius + tol


def hull_to_hull(points_a, points_b):
    """Distance between conv(points_a) and conv(points_b) plus witness points."""
    a = _as_point_set(points_a)
    b = _as_point_set(points_b)
    return hull_distance(a, b)


def separating_hyperplane(free_points, obstacle: ConvexObstacle, inflation: float = 0.0):
    """Max-margin plane between conv(free_points) and the inflated obstacle.

    Returns (HalfSpace, margin). The plane normal points from the obstacle
    toward the free set; the offset sits on the support plane of the obstacle
    inflated by `inflation`, so every obstacle point v satisfies
    a.v <= offset and every free point satisfies a.p >= offset + margin.
    The margin equals the hull-to-hull distance minus `inflation` and is the
    maximum achievable by any unit-normal plane.

    Raises NotSeparable when the margin would be <= 0.
    """
    if inflation < 0:
        raise ValueError(f"inflation must be >= 0, got {inflation}")
    free = _as_point_set(free_points)
    dist, pa, pb = hull_distance(free, obstacle.vertices)
    if dist <= 0.0 or dist <= inflation:
        raise NotSeparable(
            f"hulls are {dist:.6g} m apart, need > {inflation:.6g} m (obstacle {obstacle.id})")
    a = (pa - pb) / dist
    a /= np.linalg.norm(a)
    offset = float(np.max(obstacle.vertices @ a)) + inflation
    margin = float(np.min(free @ a)) - offset
    if margin <= 0.0:
        raise NotSeparable(
            f"numerically marginal separation ({margin:.3g} m) against obstacle {obstacle.id}")
    return HalfSpace(normal=a, offset=offset), margin


def hulls_disjoint(points, obstacle: ConvexObstacle, margin: float = 0.0) -> bool:
    """True iff conv(points) is at distance >= margin from the obstacle hull.

    Touching or intersecting hulls are never considered disjoint.
    """
    try:
        _, delta = separating_hyperplane(points, obstacle, inflation=0.0)
    except NotSeparable:
        return False
    return delta >= margin


def segment_obstacle_distance(p, q, obstacle: ConvexObstacle) -> float:
    """Euclidean distance between segment [p, q] and the obstacle hull (0 if they meet)."""
    seg = np.ascontiguousarray(np.vstack([as_point3(p), as_point3(q)]))
    dist, _, _ = hull_distance(seg, obstacle.vertices)
    return float(dist)


def point_obstacle_distance(p, obstacle: ConvexObstacle) -> float:
    return segment_obstacle_distance(p, p, obstacle)


def line_of_sight_clear(p, q, obstacles, margin: float = 0.0) -> bool:
    """True iff segment [p, q] keeps distance >= margin from every obstacle."""
    p = as_point3(p)
    q = as_point3(q)
    for obs in obstacles:
        if segment_obstacle_distance(p, q, obs) < margin:
            return False
    return True


def bisect_min(predicate, tol: float = BISECT_TOL) -> float:
    """Smallest s in [0, 1] (within tol) with predicate(s) true.

    The predicate must be monotone: false below some threshold, true above.
    Returns 0.0 when predicate(0) holds; raises Infeasible when predicate(1)
    fails. Capped at 60 iterations.
    """
    if not predicate(1.0):
        raise Infeasible("predicate is false at the upper end of [0, 1]")
    if predicate(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    for _ in range(_BISECT_MAX_ITER):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi
