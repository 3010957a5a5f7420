"""Exact calculus of convex lattice polygons.

A polygon is kept in both descriptions at once: counterclockwise
vertices and half-planes {x : <n_e, x> >= a_e} with primitive integer
inner normals.  Scaling the polygon by q and moving every edge p
lattice steps inward replaces the supports by q*a_e + p; the level of
the polygon is the largest rational t for which supports a_e + t leave
the region nonempty, and the keel is the lattice length of the region
at that critical offset.  Everything is computed with integers and
`fractions.Fraction`; no floating point is used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from .errors import (
    DegenerateInputError,
    InvariantViolationError,
    NonLatticeVerticesError,
    UnboundedRegionError,
)

IntPoint = tuple[int, int]
RatPoint = tuple[Fraction, Fraction]
HalfPlane = tuple[IntPoint, Fraction]


class Shape(Enum):
    EMPTY = "empty"
    POINT = "point"
    SEGMENT = "segment"
    POLYGON = "polygon"


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points):
    """Convex hull in counterclockwise order starting at the lexicographic
    minimum; collinear intermediate points are dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _primitive(v: tuple[int, int]) -> tuple[int, int]:
    g = math.gcd(v[0], v[1])
    return (v[0] // g, v[1] // g)


def _edge_halfplanes(vertices):
    """Half-plane data (primitive inner normal, support) for a CCW vertex cycle."""
    out = []
    k = len(vertices)
    for i in range(k):
        vx, vy = vertices[i]
        wx, wy = vertices[(i + 1) % k]
        n = _primitive((-(wy - vy), wx - vx))
        out.append((n, n[0] * vx + n[1] * vy))
    return out


@dataclass(frozen=True)
class LatticePolygon:
    """Full-dimensional convex lattice polygon.

    ``vertices`` is the counterclockwise cycle (no three consecutive
    collinear); ``edges`` holds one (inner normal, support) pair per edge
    with the polygon equal to the intersection of the half-planes.
    """

    vertices: tuple[IntPoint, ...]
    edges: tuple[tuple[IntPoint, int], ...]

    def contains(self, point: IntPoint) -> bool:
        x, y = point
        return all(n[0] * x + n[1] * y >= a for n, a in self.edges)

    def bounding_box(self) -> tuple[int, int, int, int]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)


def normalize(points) -> LatticePolygon:
    """Canonical LatticePolygon from an arbitrary list of integer points.

    Raises DegenerateInputError when the hull is a point or a segment:
    level and keel are only defined for a two-dimensional figure.
    """
    pts = list(points)
    if not pts:
        raise DegenerateInputError("empty point list")
    for p in pts:
        if len(p) != 2 or not all(isinstance(c, int) for c in p):
            raise NonLatticeVerticesError(f"not an integer pair: {p!r}")
    hull = _hull([tuple(p) for p in pts])
    if len(hull) < 3:
        raise DegenerateInputError(
            f"hull of {len(pts)} point(s) is {len(hull)}-dimensional, need a polygon"
        )
    return LatticePolygon(tuple(hull), tuple(_edge_halfplanes(hull)))


def _solve_pair(h1, h2):
    """Exact intersection point of two half-plane boundary lines, or None."""
    (a1, b1), c1 = h1
    (a2, b2), c2 = h2
    det = a1 * b2 - a2 * b1
    if det == 0:
        return None
    return (Fraction(c1 * b2 - c2 * b1, det), Fraction(a1 * c2 - a2 * c1, det))


def _satisfies(halfplanes, pt) -> bool:
    x, y = pt
    return all(n[0] * x + n[1] * y >= c for n, c in halfplanes)


def _unbounded_direction(normals) -> bool:
    """True when some nonzero direction d has <n, d> >= 0 for every normal."""
    for nx, ny in normals:
        for d in ((-ny, nx), (ny, -nx)):
            if all(mx * d[0] + my * d[1] >= 0 for mx, my in normals):
                return True
    return False


@dataclass(frozen=True)
class RationalPolygon:
    """Intersection of rational half-planes with its shape resolved.

    The shape tag and the exact vertex list are computed at construction;
    Empty regions are legal values, unbounded ones are rejected.
    """

    halfplanes: tuple[HalfPlane, ...]
    shape: Shape
    vertices: tuple[RatPoint, ...]

    @classmethod
    def empty(cls) -> "RationalPolygon":
        hps = (((1, 0), Fraction(1)), ((-1, 0), Fraction(1)))
        return cls(hps, Shape.EMPTY, ())

    @classmethod
    def from_halfplanes(cls, halfplanes) -> "RationalPolygon":
        # Tightest support wins when a normal repeats.
        tight: dict[IntPoint, Fraction] = {}
        for n, c in halfplanes:
            n = (int(n[0]), int(n[1]))
            if n == (0, 0):
                raise ValueError("zero normal")
            c = Fraction(c)
            if n not in tight or c > tight[n]:
                tight[n] = c
        hps = tuple(sorted(tight.items()))
        normals = [n for n, _ in hps]
        if not normals:
            raise UnboundedRegionError("no constraints given")

        if all(n[0] * m[1] - n[1] * m[0] == 0 for n, m in combinations(normals, 2)):
            # All normals parallel (or a single one): the region is empty or
            # contains a line; a line is never a valid bounded figure here.
            base = normals[0]
            lo, hi = None, None
            for n, c in hps:
                if n == base:
                    lo = c if lo is None else max(lo, c)
                else:
                    ub = -c
                    hi = ub if hi is None else min(hi, ub)
            feasible = lo is None or hi is None or lo <= hi
            if feasible:
                raise UnboundedRegionError("constraints do not bound the region")
            return cls(hps, Shape.EMPTY, ())

        candidates = set()
        for h1, h2 in combinations(hps, 2):
            pt = _solve_pair(h1, h2)
            if pt is not None and _satisfies(hps, pt):
                candidates.add(pt)
        if not candidates:
            return cls(hps, Shape.EMPTY, ())
        if _unbounded_direction(normals):
            raise UnboundedRegionError("constraints do not bound the region")

        hull = _hull(candidates)
        if len(hull) == 1:
            return cls(hps, Shape.POINT, (hull[0],))
        if len(hull) == 2:
            return cls(hps, Shape.SEGMENT, tuple(hull))
        return cls(hps, Shape.POLYGON, tuple(hull))

    @classmethod
    def from_points(cls, points) -> "RationalPolygon":
        """Convex hull of integer points, with a matching half-plane system."""
        pts = sorted(set(tuple(p) for p in points))
        if not pts:
            return cls.empty()
        if len(pts) == 1:
            (x, y) = pts[0]
            hps = (
                ((1, 0), Fraction(x)),
                ((-1, 0), Fraction(-x)),
                ((0, 1), Fraction(y)),
                ((0, -1), Fraction(-y)),
            )
            return cls(hps, Shape.POINT, ((Fraction(x), Fraction(y)),))
        hull = _hull(pts)
        if len(hull) == 2:
            a, b = hull
            u = _primitive((b[0] - a[0], b[1] - a[1]))
            n = (-u[1], u[0])
            hps = (
                (n, Fraction(n[0] * a[0] + n[1] * a[1])),
                ((-n[0], -n[1]), Fraction(-(n[0] * a[0] + n[1] * a[1]))),
                (u, Fraction(u[0] * a[0] + u[1] * a[1])),
                ((-u[0], -u[1]), Fraction(-(u[0] * b[0] + u[1] * b[1]))),
            )
            verts = tuple((Fraction(p[0]), Fraction(p[1])) for p in hull)
            return cls(hps, Shape.SEGMENT, verts)
        hps = tuple((n, Fraction(c)) for n, c in _edge_halfplanes(hull))
        verts = tuple((Fraction(p[0]), Fraction(p[1])) for p in hull)
        return cls(hps, Shape.POLYGON, verts)

    @property
    def is_empty(self) -> bool:
        return self.shape is Shape.EMPTY

    def lattice_vertices(self) -> tuple[IntPoint, ...]:
        for x, y in self.vertices:
            if x.denominator != 1 or y.denominator != 1:
                raise NonLatticeVerticesError(f"vertex ({x}, {y}) is not integral")
        return tuple((int(x), int(y)) for x, y in self.vertices)


def as_rational(polygon: LatticePolygon) -> RationalPolygon:
    """The polygon itself as a RationalPolygon value."""
    return RationalPolygon.from_halfplanes(
        [(n, Fraction(a)) for n, a in polygon.edges]
    )


def offset_scale(polygon: LatticePolygon, q: int, p: int) -> RationalPolygon:
    """Scale by q and move every edge p lattice steps inward.

    Returns the region {x : <n_e, x> >= q*a_e + p}; an empty result is a
    valid value (it certifies non-effectivity of the associated class).
    """
    if not isinstance(q, int) or q < 1:
        raise ValueError(f"q must be a positive integer, got {q!r}")
    if not isinstance(p, int) or p < 0:
        raise ValueError(f"p must be a nonnegative integer, got {p!r}")
    return RationalPolygon.from_halfplanes(
        [(n, Fraction(q * a + p)) for n, a in polygon.edges]
    )


def offset_feasible(polygon: LatticePolygon, q: int, p: int) -> bool:
    """Fast exact nonemptiness test for offset_scale(polygon, q, p).

    Integer-only arithmetic; used by the brute-force level oracle where
    building the full vertex description would dominate the runtime.
    """
    hps = [(n[0], n[1], q * a + p) for n, a in polygon.edges]
    for (a1, b1, c1), (a2, b2, c2) in combinations(hps, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        xn = c1 * b2 - c2 * b1
        yn = a1 * c2 - a2 * c1
        if det < 0:
            det, xn, yn = -det, -xn, -yn
        if all(nx * xn + ny * yn >= c * det for nx, ny, c in hps):
            return True
    return False


def interior_hull(polygon: LatticePolygon) -> RationalPolygon:
    """Convex hull of the lattice points strictly inside the polygon."""
    inner = offset_scale(polygon, 1, 1)
    if inner.is_empty:
        return RationalPolygon.empty()
    return RationalPolygon.from_points(lattice_points(inner))


def lattice_points(region: RationalPolygon) -> list[IntPoint]:
    """All integer points of a nonempty bounded region, lexicographic order."""
    if region.is_empty:
        raise ValueError("region is empty")
    xs = [v[0] for v in region.vertices]
    ys = [v[1] for v in region.vertices]
    x_lo, x_hi = math.ceil(min(xs)), math.floor(max(xs))
    y_lo, y_hi = math.ceil(min(ys)), math.floor(max(ys))
    checks = [(n[0], n[1], c.numerator, c.denominator) for n, c in region.halfplanes]
    out = []
    for x in range(x_lo, x_hi + 1):
        for y in range(y_lo, y_hi + 1):
            if all((nx * x + ny * y) * cd >= cn for nx, ny, cn, cd in checks):
                out.append((x, y))
    return out


@dataclass(frozen=True)
class PolygonInvariants:
    """Level, keel, and the face of the polygon realizing the level."""

    level: Fraction
    keel: Fraction
    optimal_face: RationalPolygon
    denominator: int


def _segment_lattice_length(a: RatPoint, b: RatPoint) -> Fraction:
    dx, dy = b[0] - a[0], b[1] - a[1]
    scale = math.lcm(dx.denominator, dy.denominator)
    ix, iy = int(dx * scale), int(dy * scale)
    g = math.gcd(ix, iy)
    return Fraction(g, scale)


def level_keel(polygon: LatticePolygon) -> PolygonInvariants:
    """Level and keel of a full-dimensional lattice polygon.

    The level is found by exact vertex enumeration of the lifted system
    {(x, t) : <n_e, x> - t >= a_e}: the maximum of t over the feasible
    set is attained where three constraints are active, so scanning all
    edge triples is exhaustive.  The keel is 0 when the critical face is
    a point and the lattice length of the face when it is a segment.
    """
    hps = [(n[0], n[1], a) for n, a in polygon.edges]
    best: Fraction | None = None
    for (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) in combinations(hps, 3):
        # Cramer on rows (a, b, -1) with right-hand sides c.
        det = (
            a1 * (b2 * (-1) - (-1) * b3)
            - b1 * (a2 * (-1) - (-1) * a3)
            + (-1) * (a2 * b3 - b2 * a3)
        )
        if det == 0:
            continue
        det_x = (
            c1 * (b2 * (-1) - (-1) * b3)
            - b1 * (c2 * (-1) - (-1) * c3)
            + (-1) * (c2 * b3 - b2 * c3)
        )
        det_y = (
            a1 * (c2 * (-1) - (-1) * c3)
            - c1 * (a2 * (-1) - (-1) * a3)
            + (-1) * (a2 * c3 - c2 * a3)
        )
        det_t = (
            a1 * (b2 * c3 - c2 * b3)
            - b1 * (a2 * c3 - c2 * a3)
            + c1 * (a2 * b3 - b2 * a3)
        )
        if det < 0:
            det, det_x, det_y, det_t = -det, -det_x, -det_y, -det_t
        if all(nx * det_x + ny * det_y - det_t >= c * det for nx, ny, c in hps):
            t = Fraction(det_t, det)
            if best is None or t > best:
                best = t
    if best is None:
        raise InvariantViolationError("no critical offset found for a valid polygon")

    face = RationalPolygon.from_halfplanes(
        [(n, Fraction(a) + best) for n, a in polygon.edges]
    )
    if face.shape not in (Shape.POINT, Shape.SEGMENT):
        raise InvariantViolationError(f"critical face has shape {face.shape}")
    if face.shape is Shape.POINT:
        keel = Fraction(0)
    else:
        keel = _segment_lattice_length(face.vertices[0], face.vertices[1])
    return PolygonInvariants(best, keel, face, best.denominator)


def nmc_polygon(region: RationalPolygon) -> int:
    """Number of moving components of the figure's class.

    0 for a point or empty figure, the lattice length for a segment
    (count of lattice points minus one), 1 for a two-dimensional figure.
    """
    if region.shape in (Shape.EMPTY, Shape.POINT):
        if region.shape is Shape.POINT:
            region.lattice_vertices()
        return 0
    region.lattice_vertices()
    if region.shape is Shape.SEGMENT:
        return len(lattice_points(region)) - 1
    return 1


TERMINAL_SCALE3_POINT = "scale3_single_interior_point"
TERMINAL_SCALE3_HULL = "scale3_hull_single_interior_point"
TERMINAL_SCALE2_POINT = "scale2_single_interior_point"
TERMINAL_SCALE2_SEGMENT = "scale2_collinear_interior_points"


@dataclass(frozen=True)
class PolygonChain:
    """Iterated interior hulls with the terminal member classified."""

    members: tuple[RationalPolygon, ...]
    terminal_case: str | None
    level: Fraction
    keel: Fraction


def _classify_terminal(polygon: LatticePolygon) -> tuple[str, Fraction, Fraction]:
    """Endpoint subcase of a lattice polygon without interior points.

    Checked in decreasing order of the critical offset: supports moved
    to 3a+2 nonempty (offset rate 2/3), else 2a+1 nonempty (rate 1/2,
    split point/segment), else 3a+1 must hold a single point (rate 1/3).
    """
    fig32 = offset_scale(polygon, 3, 2)
    if not fig32.is_empty:
        return TERMINAL_SCALE3_HULL, Fraction(2, 3), Fraction(0)
    fig21 = offset_scale(polygon, 2, 1)
    if not fig21.is_empty:
        pts = lattice_points(fig21)
        if len(pts) <= 1:
            return TERMINAL_SCALE2_POINT, Fraction(1, 2), Fraction(0)
        return TERMINAL_SCALE2_SEGMENT, Fraction(1, 2), Fraction(len(pts) - 1, 2)
    fig31 = offset_scale(polygon, 3, 1)
    if fig31.is_empty:
        raise InvariantViolationError("terminal polygon admits no inward offset")
    return TERMINAL_SCALE3_POINT, Fraction(1, 3), Fraction(0)


def polygon_adjoint_chain(polygon: LatticePolygon) -> PolygonChain:
    """Iterate interior hulls until the result degenerates.

    The chain stops at an empty hull, a point, a segment, or a polygon
    without interior lattice points; in the last case the terminal
    member carries one of the four scale-by-2/scale-by-3 subcase tags.
    Level and keel are read off the terminal member and the chain depth.
    """
    members = [as_rational(polygon)]
    current = polygon
    while True:
        hull = interior_hull(current)
        if hull.is_empty:
            a = Fraction(len(members) - 1)
            case, frac, keel = _classify_terminal(current)
            return PolygonChain(tuple(members), case, a + frac, keel)
        members.append(hull)
        if hull.shape is Shape.POINT:
            a = Fraction(len(members) - 1)
            return PolygonChain(tuple(members), None, a, Fraction(0))
        if hull.shape is Shape.SEGMENT:
            a = Fraction(len(members) - 1)
            keel = Fraction(len(lattice_points(hull)) - 1)
            return PolygonChain(tuple(members), None, a, keel)
        current = normalize(hull.lattice_vertices())
