"""Sunburst pair analysis: weave predicates, spiral holonomy, the phase
interval, and the phase solver that closes the orbit into a convex
polygon.

Conventions.  Both sunbursts list N rays counterclockwise.  For an
oriented weave, ray B[i] (after applying the pair's phase rotation)
lies strictly inside the open cone spanned by A[i] and -A[i-1]; that is
exactly the condition for a chord parallel to B[i] to carry a point
from ray A[i-1] to ray A[i] at positive radius.  The orbit therefore
visits the A-rays in counterclockwise order, the step from ray j to
ray j+1 traveling parallel to B[j+1] (indices mod N).  After one full
loop the radius is multiplied by the holonomy h; h = 1 closes the orbit
into a convex polygon inscribed in the A-rays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import DegenerateStep, EmptyInterval, InvalidSunburst
from .exact import Vec2, angle_of, rotate, unit_from_angle
from .tilings import Sunburst

TWO_PI = 2.0 * math.pi


def regular_sunburst(n: int, phase: float = 0.0) -> Sunburst:
    """Unit rays at the n-th roots of unity, rotated by phase."""
    return Sunburst(unit_from_angle(phase + TWO_PI * k / n) for k in range(n))


def sunburst_from_angles(angles) -> Sunburst:
    return Sunburst(unit_from_angle(t) for t in angles)


def ray_angles(s: Sunburst):
    return [angle_of(r) for r in s.rays]


def rotated_sunburst(s: Sunburst, theta: float) -> Sunburst:
    u = unit_from_angle(theta)
    return Sunburst(rotate(r, u) for r in s.rays)


def _unit(v: Vec2) -> Vec2:
    n = v.norm()
    return Vec2(float(v.x) / n, float(v.y) / n)


@dataclass(frozen=True)
class SunburstPair:
    """Two N-sunbursts plus a phase rotation applied to the second."""

    a: Sunburst
    b: Sunburst
    phase: float = 0.0

    def __post_init__(self):
        if self.a.n != self.b.n:
            raise InvalidSunburst("paired sunbursts must have equal ray counts")

    @property
    def n(self) -> int:
        return self.a.n

    @cached_property
    def rotated_b(self) -> Sunburst:
        if self.phase == 0.0:
            return self.b
        return rotated_sunburst(self.b, self.phase)

    def with_phase(self, phase: float) -> "SunburstPair":
        return SunburstPair(self.a, self.b, phase)


def is_oriented_weave(pair: SunburstPair) -> bool:
    """Each phased B-ray strictly inside the cone from A[i] to -A[i-1]."""
    a = pair.a.rays
    b = pair.rotated_b.rays
    return all(a[i].cross(b[i]) > 0 and a[i - 1].cross(b[i]) > 0
               for i in range(pair.n))


def orbit_points(pair: SunburstPair, r0=1.0, steps=None, start=None):
    """The a-projection of the orbit: points on rays A[0], A[1], ...

    Starts at distance r0 along ray A[0] (or at an explicit start point
    on that ray, which keeps exact scalars exact) and runs the given
    number of steps, one full loop by default.  Each step intersects the
    chord through the current point parallel to the phased ray B[j+1]
    with the next A-ray; a nonpositive intersection coefficient means
    the pair is not woven and raises DegenerateStep.
    """
    rays = pair.a.rays
    chords = pair.rotated_b.rays
    n = pair.n
    if steps is None:
        steps = n
    if start is None:
        a0 = rays[0]
        start = _unit(a0) * r0
    points = [start]
    p = start
    for j in range(steps):
        nxt = rays[(j + 1) % n]
        chord = chords[(j + 1) % n]
        den = nxt.cross(chord)
        if den == 0:
            raise DegenerateStep(
                f"chord B[{(j + 1) % n}] is parallel to ray A[{(j + 1) % n}]")
        s = p.cross(chord) / den
        if s <= 0:
            raise DegenerateStep(
                f"step {j} leaves ray A[{(j + 1) % n}] at nonpositive radius")
        p = nxt * s
        points.append(p)
    return points


def b_orbit_points(pair: SunburstPair, r0=1.0, steps=None):
    """The b-projection: points on the phased B-rays, the step from
    B[j] to B[j+1] traveling parallel to A[j].
    """
    rays = pair.rotated_b.rays
    chords = pair.a.rays
    n = pair.n
    if steps is None:
        steps = n
    p = _unit(rays[0]) * r0
    points = [p]
    for j in range(steps):
        nxt = rays[(j + 1) % n]
        chord = chords[j % n]
        den = nxt.cross(chord)
        if den == 0:
            raise DegenerateStep(f"chord A[{j % n}] is parallel to ray "
                                 f"B[{(j + 1) % n}]")
        s = p.cross(chord) / den
        if s <= 0:
            raise DegenerateStep(
                f"b-step {j} leaves ray B[{(j + 1) % n}] at nonpositive radius")
        p = nxt * s
        points.append(p)
    return points


@dataclass(frozen=True)
class HolonomyReport:
    h: float
    step_factors: tuple
    method: str


def holonomy_product(pair: SunburstPair) -> HolonomyReport:
    """Closed-form holonomy: per step j the radius ratio is
    cross(A[j], B[j+1]) / cross(A[j+1], B[j+1]) over unit rays.
    """
    a = [_unit(r) for r in pair.a.rays]
    b = [_unit(r) for r in pair.rotated_b.rays]
    n = pair.n
    factors = []
    for j in range(n):
        chord = b[(j + 1) % n]
        num = a[j].cross(chord)
        den = a[(j + 1) % n].cross(chord)
        if den == 0:
            raise DegenerateStep(f"chord B[{(j + 1) % n}] is parallel to "
                                 f"ray A[{(j + 1) % n}]")
        factors.append(num / den)
    h = 1.0
    for f in factors:
        h *= f
    return HolonomyReport(h, tuple(factors), "product")


def holonomy_iteration(pair: SunburstPair) -> HolonomyReport:
    """Holonomy measured by running the orbit once around: the distance
    from the origin after N steps, starting from distance 1.  Serves as
    an independent oracle for the product formula.
    """
    pts = orbit_points(pair, r0=1.0)
    radii = [p.norm() for p in pts]
    factors = tuple(radii[j + 1] / radii[j] for j in range(pair.n))
    return HolonomyReport(radii[-1], factors, "iteration")


def holonomy(pair: SunburstPair, check_tol: float = 1e-12) -> HolonomyReport:
    """Product-formula holonomy, cross-checked against the orbit
    iteration to check_tol relative error.
    """
    prod = holonomy_product(pair)
    it = holonomy_iteration(pair)
    if abs(prod.h - it.h) > check_tol * abs(it.h):
        raise ArithmeticError(
            f"holonomy mismatch: product {prod.h!r} vs iteration {it.h!r}")
    return prod


def left_times_right_holonomy(pair: SunburstPair) -> float:
    """Product of the a-side holonomy and the b-side holonomy (the
    latter computed over the role-swapped orbit).
    """
    left = holonomy_product(pair).h
    b = [_unit(r) for r in pair.rotated_b.rays]
    a = [_unit(r) for r in pair.a.rays]
    n = pair.n
    right = 1.0
    for j in range(n):
        chord = a[j]
        num = b[j].cross(chord)
        den = b[(j + 1) % n].cross(chord)
        if den == 0:
            raise DegenerateStep(f"chord A[{j}] is parallel to ray "
                                 f"B[{(j + 1) % n}]")
        right *= num / den
    return left * right


@dataclass(frozen=True)
class PhaseInterval:
    """Open arc (lo, lo + width) of phases making the pair a weave,
    together with the per-index arcs whose intersection it is.
    """

    lo: float
    width: float
    arcs: tuple

    @property
    def hi(self) -> float:
        return self.lo + self.width

    def contains(self, theta: float) -> bool:
        return 0.0 < (theta - self.lo) % TWO_PI < self.width

    def midpoint(self) -> float:
        return (self.lo + 0.5 * self.width) % TWO_PI


def phase_arcs(a: Sunburst, b: Sunburst):
    """Per-index arcs of phases theta with rot_theta(B[i]) inside the
    cone from A[i] to -A[i-1].  Each arc is (lo, width) with width =
    pi minus the gap from A[i-1] to A[i], hence always below pi.
    """
    n = a.n
    alpha = ray_angles(a)
    beta = ray_angles(b)
    arcs = []
    for i in range(n):
        gap = (alpha[i] - alpha[i - 1]) % TWO_PI
        lo = (alpha[i] - beta[i]) % TWO_PI
        arcs.append((lo, math.pi - gap))
    return arcs


def weave_interval(a: Sunburst, b: Sunburst) -> PhaseInterval:
    """Intersection of the per-index phase arcs.

    Every arc is shorter than pi, so the intersection is empty or a
    single open arc whose counterclockwise endpoint is one of the arc
    endpoints; testing each candidate endpoint for membership in all
    arcs settles it without unwrapping the circle.
    """
    if a.n != b.n:
        raise InvalidSunburst("paired sunbursts must have equal ray counts")
    arcs = phase_arcs(a, b)
    best = None
    for lo, _ in arcs:
        offsets = [(lo - alo) % TWO_PI for alo, _ in arcs]
        if any(off > aw for off, (_, aw) in zip(offsets, arcs)):
            continue
        width = min(aw - off for off, (_, aw) in zip(offsets, arcs))
        if width > 0 and (best is None or width > best.width):
            best = PhaseInterval(lo, width, tuple(arcs))
    if best is None:
        raise EmptyInterval(tuple(arcs))
    return best


def log_holonomy(a: Sunburst, b: Sunburst, theta: float) -> float:
    return math.log(holonomy_product(SunburstPair(a, b, theta)).h)


def solve_phase(a: Sunburst, b: Sunburst, tol: float = 1e-12) -> float:
    """The unique phase in the weave interval with holonomy 1.

    log h decreases strictly in the phase across the interval, blowing
    up to +inf at the clockwise end and down to -inf at the other, so
    bisection brackets the root; a final secant polish tightens it to
    |log h| <= tol.
    """
    interval = weave_interval(a, b)
    pad = interval.width * 1e-9
    lo, hi = interval.lo + pad, interval.hi - pad
    flo, fhi = log_holonomy(a, b, lo), log_holonomy(a, b, hi)
    if not (flo > 0 > fhi):
        raise DegenerateStep("holonomy does not change sign over the "
                             "weave interval")
    best, fbest = lo, flo
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fmid = log_holonomy(a, b, mid)
        if abs(fmid) < abs(fbest):
            best, fbest = mid, fmid
        if abs(fmid) <= tol or hi - lo < 1e-15:
            break
        if fmid > 0:
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    for _ in range(8):
        if abs(fbest) <= tol:
            break
        den = fhi - flo
        if den == 0:
            break
        cand = hi - fhi * (hi - lo) / den
        if not (lo < cand < hi):
            cand = 0.5 * (lo + hi)
        fcand = log_holonomy(a, b, cand)
        if abs(fcand) < abs(fbest):
            best, fbest = cand, fcand
        if fcand > 0:
            lo, flo = cand, fcand
        else:
            hi, fhi = cand, fcand
    return best % TWO_PI


def is_balanced(s: Sunburst, tol: float = 1e-12) -> bool:
    """Unit ray directions summing to zero (up to tol)."""
    sx = sum(float(u.x) for u in map(_unit, s.rays))
    sy = sum(float(u.y) for u in map(_unit, s.rays))
    return math.hypot(sx, sy) <= tol


def is_regular(s: Sunburst, tol: float = 1e-12) -> bool:
    """All consecutive ray gaps equal to 2 pi / N (up to tol)."""
    n = s.n
    target = TWO_PI / n
    ang = ray_angles(s)
    return all(abs((ang[(i + 1) % n] - ang[i]) % TWO_PI - target) <= tol
               for i in range(n))


def random_oriented_weave(rng, n: int, margin: float = 0.1) -> SunburstPair:
    """Random weave: a random sunburst A with all gaps under pi, and one
    B-ray placed uniformly (with relative margin) inside each cone.
    Rejection-samples until the B-rays themselves form a sunburst; the
    candidate angles are vetted with cheap float checks before any
    Sunburst object is built, since rejection dominates for large n.
    """
    while True:
        weights = [rng.uniform(0.2, 1.0) for _ in range(n)]
        total = sum(weights)
        gaps = [w * TWO_PI / total for w in weights]
        if max(gaps) >= 0.98 * math.pi:
            continue
        start = rng.uniform(0.0, TWO_PI)
        alpha = []
        acc = start
        for g in gaps:
            acc += g
            alpha.append(acc)
        beta = [alpha[i] + rng.uniform(margin, 1.0 - margin)
                * (math.pi - gaps[i]) for i in range(n)]
        bgaps = [beta[(i + 1) % n] - beta[i] for i in range(n)]
        bgaps[-1] += TWO_PI
        if min(bgaps) <= 0.0 or max(bgaps) >= math.pi:
            continue
        pair = SunburstPair(sunburst_from_angles(alpha),
                            sunburst_from_angles(beta))
        if is_oriented_weave(pair):
            return pair


def random_balanced_sunburst(rng, n: int, margin: float = 0.15,
                             tol: float = 1e-13) -> Sunburst:
    """Random sunburst whose unit rays sum to zero.

    Samples counterclockwise angles with comfortable gaps, then projects
    onto the two balance constraints by Gauss-Newton; rejects draws
    whose projection spoils the gap margins.
    """
    if n < 3:
        raise InvalidSunburst("a sunburst needs at least 3 rays")
    while True:
        weights = [rng.uniform(0.35, 1.0) for _ in range(n)]
        total = sum(weights)
        acc = rng.uniform(0.0, TWO_PI)
        ang = []
        for w in weights:
            acc += w * TWO_PI / total
            ang.append(acc)
        ok = True
        for _ in range(60):
            rx = sum(math.cos(t) for t in ang)
            ry = sum(math.sin(t) for t in ang)
            if math.hypot(rx, ry) <= tol:
                break
            jxx = sum(math.sin(t) ** 2 for t in ang)
            jxy = -sum(math.sin(t) * math.cos(t) for t in ang)
            jyy = sum(math.cos(t) ** 2 for t in ang)
            det = jxx * jyy - jxy * jxy
            if abs(det) < 1e-12:
                ok = False
                break
            lx = (jyy * rx - jxy * ry) / det
            ly = (-jxy * rx + jxx * ry) / det
            ang = [t - (-math.sin(t) * lx + math.cos(t) * ly) for t in ang]
        else:
            ok = False
        if not ok or math.hypot(sum(math.cos(t) for t in ang),
                                sum(math.sin(t) for t in ang)) > tol:
            continue
        gaps = [(ang[(i + 1) % n] - ang[i]) % TWO_PI for i in range(n)]
        if abs(sum(gaps) - TWO_PI) > 1e-9 or min(gaps) < margin:
            continue
        if max(gaps) >= math.pi - margin:
            continue
        return sunburst_from_angles(ang)
