"""Tilings traversed by the billiard map: affine images of the integer
grid, and sunbursts (finite fans of rays through the origin).

Grid queries run in grid-local coordinates, where the edge set is the
integer grid itself.  A first-hit query then only compares the next
crossing on each axis, so it is O(1) and stays exact over rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import Escaped, InvalidSunburst, VertexHit
from .exact import Vec2, rational_circle_point


class GridEdge(NamedTuple):
    """One open unit edge of a grid, in grid-local coordinates.

    axis 'v': the segment x = line, cell < y < cell + 1.
    axis 'h': the segment y = line, cell < x < cell + 1.
    """

    axis: str
    line: int
    cell: int


@dataclass(frozen=True, slots=True)
class Particle:
    """A point on the open interior of a tiling edge plus a transverse
    direction.

    Only the side of the edge that the direction points into matters for
    the dynamics; the vector itself is kept for replay and drawing.
    """

    point: Vec2
    edge: object
    direction: Vec2


def _near_integer(x, tol) -> bool:
    if tol == 0:
        return x == math.floor(x)
    r = x - math.floor(x)
    return r <= tol or r >= 1.0 - tol


class GridTiling:
    """Image of the unit integer grid under an invertible linear map."""

    def __init__(self, e1: Vec2, e2: Vec2):
        e1, e2 = e1.exactify(), e2.exactify()
        det = e1.cross(e2)
        if det == 0:
            raise ValueError("grid basis is singular")
        self.e1 = e1
        self.e2 = e2
        self.det = det
        self.exact = e1.is_exact() and e2.is_exact()

    @classmethod
    def standard(cls) -> "GridTiling":
        return cls(Vec2(1, 0), Vec2(0, 1))

    @classmethod
    def rotated(cls, u: Vec2) -> "GridTiling":
        """Grid rotated by the unit vector u."""
        return cls(u, u.perp())

    @classmethod
    def from_parameter(cls, t) -> "GridTiling":
        """Grid rotated by the rational unit vector of circle parameter t."""
        return cls.rotated(rational_circle_point(t))

    def transformed(self, a, b, c, d) -> "GridTiling":
        """Image under the linear map with matrix rows (a, b), (c, d)."""
        def apply(v: Vec2) -> Vec2:
            return Vec2(a * v.x + b * v.y, c * v.x + d * v.y)

        return GridTiling(apply(self.e1), apply(self.e2))

    def to_world(self, p: Vec2) -> Vec2:
        return Vec2(self.e1.x * p.x + self.e2.x * p.y,
                    self.e1.y * p.x + self.e2.y * p.y)

    def to_local(self, p: Vec2) -> Vec2:
        return Vec2(p.cross(self.e2) / self.det, self.e1.cross(p) / self.det)

    def direction_of(self, edge: GridEdge) -> Vec2:
        return self.e2 if edge.axis == "v" else self.e1

    def edge_directions(self):
        return (self.e1, self.e2, -self.e1, -self.e2)

    def point_on(self, edge: GridEdge, frac) -> Vec2:
        """World point at position frac in (0, 1) along the edge."""
        if edge.axis == "v":
            return self.to_world(Vec2(edge.line, edge.cell + frac))
        return self.to_world(Vec2(edge.cell + frac, edge.line))

    def particle_on(self, edge: GridEdge, frac, side: int = 1) -> Particle:
        """Particle at frac along the edge, directed along the edge normal.

        side +1 points to the counterclockwise side of the edge direction.
        """
        direction = self.direction_of(edge).perp() * side
        return Particle(self.point_on(edge, frac), edge, direction)

    def first_hit(self, start: Vec2, travel: Vec2, min_advance=None):
        """First crossing of the open ray start + s * travel, s > 0, with a
        grid line.  Returns (point, edge) with the point in world
        coordinates and the edge labelled in grid-local coordinates.

        Raises VertexHit when the nearest crossing is a grid vertex.  In
        float mode, crossings with s below min_advance are treated as the
        start's own edge and skipped.
        """
        exact = self.exact and start.is_exact() and travel.is_exact()
        if min_advance is None:
            min_advance = 0 if exact else 1e-9
        tol = 0 if exact else 1e-9
        ls = self.to_local(start)
        lt = self.to_local(travel)
        if lt.x == 0 and lt.y == 0:
            raise ValueError("travel vector must be nonzero")
        best = None
        for axis, p0, d in (("v", ls.x, lt.x), ("h", ls.y, lt.y)):
            if d == 0:
                continue
            step = 1 if d > 0 else -1
            n = math.floor(p0) + 1 if d > 0 else math.ceil(p0) - 1
            s = (n - p0) / d
            if s <= min_advance:
                n += step
                s = (n - p0) / d
            if best is None or s < best[0]:
                best = (s, axis, n)
        s, axis, n = best
        cross = ls.y + s * lt.y if axis == "v" else ls.x + s * lt.x
        point = start + travel * s
        if _near_integer(cross, tol):
            raise VertexHit((float(point.x), float(point.y)))
        return point, GridEdge(axis, int(n), math.floor(cross))


class Sunburst:
    """N rays from the origin, counterclockwise, spanning the plane.

    Rays are direction vectors of any positive length.  Consecutive rays
    must turn counterclockwise by less than pi and the list must wrap
    around the circle exactly once; in particular the rays are never
    contained in a closed halfplane.
    """

    def __init__(self, rays):
        rays = tuple(r.exactify() for r in rays)
        if len(rays) < 3:
            raise InvalidSunburst("a sunburst needs at least 3 rays")
        n = len(rays)
        total = 0.0
        for i in range(n):
            a, b = rays[i], rays[(i + 1) % n]
            if a.is_zero() or a.cross(b) <= 0:
                raise InvalidSunburst(
                    f"rays {i} and {(i + 1) % n} do not turn counterclockwise "
                    "by less than pi")
            total += math.atan2(float(a.cross(b)), float(a.dot(b)))
        if round(total / (2.0 * math.pi)) != 1:
            raise InvalidSunburst("rays wrap around the circle more than once")
        self.rays = rays
        self.exact = all(r.is_exact() for r in rays)

    @property
    def n(self) -> int:
        return len(self.rays)

    def direction_of(self, edge: int) -> Vec2:
        return self.rays[edge]

    def edge_directions(self):
        return self.rays

    def particle_on(self, edge: int, radius, side: int = 1) -> Particle:
        ray = self.rays[edge]
        point = ray * (radius / ray.norm())
        return Particle(point, edge, ray.perp() * side)

    def first_hit(self, start: Vec2, travel: Vec2, min_advance=None):
        """First crossing of the open ray start + s * travel, s > 0, with
        one of the sunburst rays.  Returns (point, ray index); a crossing
        at the origin raises VertexHit, no crossing raises Escaped.
        """
        exact = self.exact and start.is_exact() and travel.is_exact()
        if min_advance is None:
            min_advance = 0 if exact else 1e-12
        utol = 0 if exact else 1e-12
        best = None
        for i, r in enumerate(self.rays):
            den = travel.cross(r)
            if den == 0:
                continue
            s = -start.cross(r) / den
            if s <= min_advance:
                continue
            hit = start + travel * s
            u = hit.dot(r) / r.norm2()
            if u < -utol or (utol == 0 and u < 0):
                continue
            at_origin = u <= utol
            if best is None or s < best[0]:
                best = (s, i, hit, at_origin)
        if best is None:
            raise Escaped("ray meets no sunburst ray")
        s, i, hit, at_origin = best
        if at_origin:
            raise VertexHit((float(hit.x), float(hit.y)))
        return hit, i


def is_transverse(a, b) -> bool:
    """No edge direction of one tiling is a positive multiple of an edge
    direction of the other.

    Grid edges contribute both orientations, so for two grids this is the
    usual parallel-free condition; sunburst rays are oriented, so a ray
    and its reverse do not clash.
    """
    for u in a.edge_directions():
        for v in b.edge_directions():
            if u.cross(v) == 0 and u.dot(v) > 0:
                return False
    return True
