"""Equiangular polygons as line-family offsets, the signed-area Lorentz
form, butterfly reflections, and the hyperboloid embedding.

Family k consists of lines parallel to the N-th root of unity
d_k = (cos 2 pi k/N, sin 2 pi k/N), encoded by the signed offset s_k of
the line {x : n_k . x = s_k} against the left normal n_k = rot90(d_k).
A choice of one line per family cuts out an equiangular N-gon whose
k-th vertex is the intersection of lines k and k+1.  Signed area is a
quadratic form in the offsets; its radical is the translation plane,
and on the quotient it has Lorentz signature (1, N-3).  Unit-area
convex polygons then live on a hyperboloid sheet: a hyperbolic space of
dimension N-3, with the butterfly moves acting as reflections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (NonPositiveArea, ParallelWitnessLines,
                     SignatureMismatch)
from .exact import Vec2
from .linkage import Polygon

TWO_PI = 2.0 * math.pi


def family_directions(n: int) -> np.ndarray:
    ang = TWO_PI * np.arange(n) / n
    return np.column_stack([np.cos(ang), np.sin(ang)])


def family_normals(n: int) -> np.ndarray:
    d = family_directions(n)
    return np.column_stack([-d[:, 1], d[:, 0]])


def translation_offsets(n: int) -> np.ndarray:
    """Columns: the offset changes induced by unit x and y translations."""
    return family_normals(n)


def line_intersection(n: int, s, i: int, j: int) -> np.ndarray:
    """Intersection of the lines of families i and j at offsets s."""
    nm = family_normals(n)
    m = np.array([nm[i % n], nm[j % n]])
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) < 1e-12:
        raise ParallelWitnessLines(f"families {i % n} and {j % n} are parallel")
    rhs = np.array([s[i % n], s[j % n]])
    return np.array([(m[1, 1] * rhs[0] - m[0, 1] * rhs[1]) / det,
                     (-m[1, 0] * rhs[0] + m[0, 0] * rhs[1]) / det])


def vertices_from_offsets(s) -> np.ndarray:
    n = len(s)
    return np.array([line_intersection(n, s, k, k + 1) for k in range(n)])


def polygon_from_offsets(s) -> Polygon:
    return Polygon(Vec2(float(x), float(y))
                   for x, y in vertices_from_offsets(s))


def signed_area(s) -> float:
    """Shoelace area of the offset polygon; quadratic in the offsets."""
    v = vertices_from_offsets(s)
    w = np.roll(v, -1, axis=0)
    return float(np.sum(v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1])) / 2.0


def signed_edge_lengths(s) -> np.ndarray:
    """Length of edge k measured along its counterclockwise traversal
    direction, which is -d_k under the left-normal convention; all
    positive iff the offsets cut out a convex polygon.
    """
    n = len(s)
    v = vertices_from_offsets(s)
    d = family_directions(n)
    prev = np.roll(v, 1, axis=0)
    return -np.sum((v - prev) * d, axis=1)


def is_convex_offsets(s) -> bool:
    return bool(np.all(signed_edge_lengths(s) > 0))


def random_convex_offsets(rng, n: int, spread: float = 0.35) -> np.ndarray:
    """Random offsets near the regular polygon, rejected until convex."""
    while True:
        s = 1.0 + np.array([rng.uniform(-spread, spread) for _ in range(n)])
        if is_convex_offsets(s):
            return s


@dataclass(frozen=True)
class AreaForm:
    """Signed area as a quadratic form on offset space.

    gram is the full N x N Gram matrix; the radical (translations) is
    quotiented away by fixing the two gauge offsets to zero, leaving
    the keep-indices as coordinates with Gram matrix quotient_gram of
    signature (1, N-3).
    """

    n: int
    gram: np.ndarray
    gauge: tuple
    keep: tuple
    quotient_gram: np.ndarray

    def value(self, s) -> float:
        s = np.asarray(s, dtype=float)
        return float(s @ self.gram @ s)

    def reduce(self, s) -> np.ndarray:
        """Quotient coordinates: translate until the gauge offsets
        vanish, then read off the kept components.
        """
        s = np.asarray(s, dtype=float)
        t = translation_offsets(self.n)
        g = list(self.gauge)
        v = np.linalg.solve(t[g], -s[g])
        return (s + t @ v)[list(self.keep)]

    def embed(self, x) -> np.ndarray:
        """Offset vector with zero gauge components representing x."""
        s = np.zeros(self.n)
        s[list(self.keep)] = np.asarray(x, dtype=float)
        return s

    def pairing(self, x, y) -> float:
        return float(np.asarray(x) @ self.quotient_gram @ np.asarray(y))


@lru_cache(maxsize=None)
def area_form(n: int, gauge: tuple = (0, 1)) -> AreaForm:
    """Gram matrix of signed area by polarization over basis offsets,
    with self-checks: the radical must be exactly the translation plane
    and the quotient signature must be (1, N-3).
    """
    if n < 4:
        raise ValueError("area form needs at least 4 families")
    basis_areas = [signed_area(np.eye(n)[i]) for i in range(n)]
    gram = np.empty((n, n))
    for i in range(n):
        gram[i, i] = basis_areas[i]
        for j in range(i + 1, n):
            both = signed_area(np.eye(n)[i] + np.eye(n)[j])
            gram[i, j] = gram[j, i] = (both - basis_areas[i]
                                       - basis_areas[j]) / 2.0
    t = translation_offsets(n)
    if np.max(np.abs(gram @ t)) > 1e-9:
        raise SignatureMismatch("translations do not annihilate the form")
    null_dim = int(np.sum(np.abs(np.linalg.eigvalsh(gram)) <= 1e-9))
    if null_dim != 2:
        raise SignatureMismatch(f"radical dimension {null_dim}, expected 2")
    keep = tuple(i for i in range(n) if i not in gauge)
    quotient = gram[np.ix_(keep, keep)]
    eig = np.linalg.eigvalsh(quotient)
    plus = int(np.sum(eig > 1e-9))
    minus = int(np.sum(eig < -1e-9))
    if (plus, minus) != (1, n - 3):
        raise SignatureMismatch(
            f"quotient signature ({plus},{minus}), expected (1,{n - 3})")
    return AreaForm(n, gram, tuple(gauge), keep, quotient)


def butterfly_matrix(n: int, k: int) -> np.ndarray:
    """Linear move replacing line k by its mirror image through the
    intersection of lines k-1 and k+1: s_k' = 2 n_k . p - s_k with all
    other offsets fixed.
    """
    nm = family_normals(n)
    k %= n
    a, b = nm[(k - 1) % n]
    c, d = nm[(k + 1) % n]
    det = a * d - b * c
    if abs(det) < 1e-12:
        raise ParallelWitnessLines(
            f"witness families {(k - 1) % n} and {(k + 1) % n} are parallel")
    nx, ny = nm[k]
    m = np.eye(n)
    m[k, k] = -1.0
    m[k, (k - 1) % n] = 2.0 * (nx * d - ny * c) / det
    m[k, (k + 1) % n] = 2.0 * (-nx * b + ny * a) / det
    return m


def butterfly(s, k: int) -> np.ndarray:
    return butterfly_matrix(len(s), k) @ np.asarray(s, dtype=float)


def quotient_map(form: AreaForm, matrix: np.ndarray) -> np.ndarray:
    """The map induced on gauge coordinates by a translation-equivariant
    linear map of offset space.
    """
    cols = []
    for i in form.keep:
        cols.append(form.reduce(matrix @ np.eye(form.n)[i]))
    return np.column_stack(cols)


def cyclic_matrix(n: int) -> np.ndarray:
    """Offset relabeling (Cs)_k = s_{k+1}; geometrically a rotation of
    the polygon by -2 pi / N, hence an area isometry.
    """
    m = np.zeros((n, n))
    for k in range(n):
        m[k, (k + 1) % n] = 1.0
    return m


@dataclass(frozen=True)
class HyperbolicPoint:
    """Point on the unit-area sheet in gauge coordinates."""

    n: int
    coords: tuple

    def as_array(self) -> np.ndarray:
        return np.array(self.coords)


def reference_point(form: AreaForm) -> np.ndarray:
    """Image of the regular polygon (all offsets equal), selecting the
    positive sheet.
    """
    ones = np.ones(form.n)
    return form.reduce(ones) / math.sqrt(form.value(ones))


def to_hyperbolic(s, form: AreaForm = None) -> HyperbolicPoint:
    """Gauge-reduce and normalize to unit area."""
    s = np.asarray(s, dtype=float)
    if form is None:
        form = area_form(len(s))
    area = form.value(s)
    if area <= 0:
        raise NonPositiveArea(f"signed area {area:.6g} is not positive")
    x = form.reduce(s) / math.sqrt(area)
    return HyperbolicPoint(form.n, tuple(x))


def hyperbolic_distance(p: HyperbolicPoint, q: HyperbolicPoint,
                        form: AreaForm = None) -> float:
    if form is None:
        form = area_form(p.n)
    return math.acosh(max(form.pairing(p.as_array(), q.as_array()), 1.0))


def wall_normal(form: AreaForm, k: int) -> np.ndarray:
    """Unit spacelike Q-normal of the fixed hyperplane of butterfly k in
    the quotient, oriented positively against the regular polygon.
    """
    bq = quotient_map(form, butterfly_matrix(form.n, k))
    dim = len(form.keep)
    u, svals, vt = np.linalg.svd(bq + np.eye(dim))
    w = vt[-1]
    if svals[-1] > 1e-9:
        raise SignatureMismatch(f"butterfly {k} has no -1 eigenvector")
    q = form.pairing(w, w)
    if q >= 0:
        raise SignatureMismatch(f"butterfly {k} mirror normal is not "
                                "spacelike")
    w = w / math.sqrt(-q)
    if form.pairing(reference_point(form), w) < 0:
        w = -w
    return w


def wall_intersection(form: AreaForm, wa: np.ndarray, wb: np.ndarray
                      ) -> np.ndarray:
    """Positive-sheet point lying on both walls (their common
    perpendicular foot), for three-dimensional quotients.
    """
    g = form.quotient_gram
    system = np.array([wa @ g, wb @ g])
    u, svals, vt = np.linalg.svd(system)
    v = vt[-1]
    q = form.pairing(v, v)
    if q <= 0:
        raise SignatureMismatch("walls do not meet on the hyperboloid")
    v = v / math.sqrt(q)
    if form.pairing(reference_point(form), v) < 0:
        v = -v
    return v


def pentagon_walls(form: AreaForm = None):
    if form is None:
        form = area_form(5)
    return [wall_normal(form, k) for k in range(5)]


def pentagon_wall_order():
    """Boundary order of the five walls: consecutive entries are
    non-consecutive butterflies, whose walls meet at right angles.
    """
    return [0, 2, 4, 1, 3]


def pentagon_report(form: AreaForm = None):
    """Vertices, interior angles, and side lengths of the right-angled
    pentagon bounded by the five butterfly walls.
    """
    if form is None:
        form = area_form(5)
    walls = pentagon_walls(form)
    order = pentagon_wall_order()
    verts = []
    angles = []
    for i in range(5):
        wa, wb = walls[order[i]], walls[order[(i + 1) % 5]]
        verts.append(wall_intersection(form, wa, wb))
        angles.append(math.acos(max(-1.0, min(1.0, -form.pairing(wa, wb)))))
    sides = [math.acosh(max(form.pairing(verts[i], verts[(i + 1) % 5]), 1.0))
             for i in range(5)]
    return {"walls": walls, "order": order, "vertices": verts,
            "angles": angles, "sides": sides}


def cyclic_fixed_point(form: AreaForm = None) -> HyperbolicPoint:
    """Fixed point of the induced cyclic relabeling isometry: its unique
    timelike eigendirection, normalized onto the positive sheet.
    """
    if form is None:
        form = area_form(5)
    cq = quotient_map(form, cyclic_matrix(form.n))
    vals, vecs = np.linalg.eig(cq)
    best = None
    for i, lam in enumerate(vals):
        if abs(lam.imag) > 1e-9 or abs(lam.real - 1.0) > 1e-6:
            continue
        v = vecs[:, i].real
        q = form.pairing(v, v)
        if q > 0 and (best is None or q > best[0]):
            best = (q, v)
    if best is None:
        raise SignatureMismatch("cyclic map has no timelike fixed direction")
    q, v = best
    v = v / math.sqrt(q)
    if form.pairing(reference_point(form), v) < 0:
        v = -v
    return HyperbolicPoint(form.n, tuple(v))


def chart_c_coordinate(s) -> float:
    """x-spacing between the intersections of line 0 with lines 2 and 3;
    a translation-invariant linear functional used as a chart check.
    """
    n = len(s)
    p = line_intersection(n, s, 0, 2)
    q = line_intersection(n, s, 0, 3)
    return float(p[0] - q[0])


def lorentz_frame(form: AreaForm) -> np.ndarray:
    """Rows map gauge coordinates to a frame where Q = diag(1,-1,...);
    the first row is the timelike axis through the reference point's
    sign choice.
    """
    vals, vecs = np.linalg.eigh(form.quotient_gram)
    order = np.argsort(-vals)
    rows = []
    for idx in order:
        scale = math.sqrt(abs(vals[idx]))
        rows.append(vecs[:, idx] * scale)
    frame = np.array(rows)
    if (frame[0] @ reference_point(form)) < 0:
        frame[0] = -frame[0]
    return frame


def to_disk(p: HyperbolicPoint, form: AreaForm = None) -> np.ndarray:
    """Poincare disk projection of a positive-sheet point (N = 5)."""
    if form is None:
        form = area_form(p.n)
    y = lorentz_frame(form) @ p.as_array()
    return y[1:] / (1.0 + y[0])
