"""End-to-end map from convex equilateral polygons to hyperbolic moduli.

Composes the pieces: solve the holonomy-1 phase to get the equiangular
partner polygon, rotate it so its edge lines fall into the canonical
root-of-unity families, read off the line offsets, and normalize onto
the unit-area hyperboloid sheet.  The output is invariant under plane
isometries of the input and under the orbit's dilation freedom.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .exact import Vec2
from .linkage import Polygon, solve_equiangular
from .moduli import (AreaForm, HyperbolicPoint, area_form, cyclic_matrix,
                     family_directions, family_normals, hyperbolic_distance,
                     quotient_map, to_hyperbolic)

TWO_PI = 2.0 * math.pi


def offsets_from_equiangular(poly: Polygon, tol: float = 1e-6) -> np.ndarray:
    """Offsets of the rotated copy of an equiangular polygon whose edge
    lines sit in the canonical direction families.

    Edge j runs from vertex j to vertex j+1; after the aligning rotation
    its traversal direction is -d_k for family k = j+1 mod N, matching
    the left-normal offset convention.  A misaligned input (not
    equiangular in traversal order) raises ValueError.
    """
    n = poly.n
    e = poly.edge_vectors()
    phi0 = math.atan2(float(e[0].y), float(e[0].x))
    rho = (TWO_PI / n + math.pi) - phi0
    rotated = poly.rotated(rho)
    verts = np.array([[float(v.x), float(v.y)] for v in rotated.vertices])
    d = family_directions(n)
    nm = family_normals(n)
    scale = max(1.0, float(np.max(np.abs(verts))))
    s = np.empty(n)
    for j in range(n):
        k = (j + 1) % n
        a = verts[j]
        b = verts[(j + 1) % n]
        u = b - a
        u = u / np.hypot(*u)
        if float(u @ d[k]) > -1.0 + tol:
            raise ValueError(f"edge {j} does not align with family {k}")
        sa = float(nm[k] @ a)
        sb = float(nm[k] @ b)
        if abs(sa - sb) > tol * scale:
            raise ValueError(f"edge {j} endpoints disagree on offset {k}")
        s[k] = (sa + sb) / 2.0
    return s


def equilateral_to_hyperbolic(poly: Polygon, tol: float = 1e-12,
                              radius: float = 1.0,
                              form: AreaForm = None) -> HyperbolicPoint:
    """Hyperbolic moduli point of a convex equilateral polygon."""
    sol = solve_equiangular(poly, tol, radius)
    s = offsets_from_equiangular(sol.polygon)
    if form is None:
        form = area_form(poly.n)
    return to_hyperbolic(s, form)


class RelabelReport(NamedTuple):
    image: HyperbolicPoint
    shifted_image: HyperbolicPoint
    discrepancy: float


def cyclic_relabel(poly: Polygon, shift: int = 1,
                   form: AreaForm = None) -> RelabelReport:
    """Relabel the polygon's vertices cyclically and compare moduli.

    The relabeled polygon's image equals the induced cyclic isometry
    applied to the original image; discrepancy is the hyperbolic
    distance between the two, which vanishes up to numerics.
    """
    n = poly.n
    if form is None:
        form = area_form(n)
    shift %= n
    shifted = Polygon(poly.vertices[shift:] + poly.vertices[:shift])
    img = equilateral_to_hyperbolic(poly, form=form)
    img_shift = equilateral_to_hyperbolic(shifted, form=form)
    cq = quotient_map(form, cyclic_matrix(n))
    mapped = np.linalg.matrix_power(cq, shift) @ img.as_array()
    moved = HyperbolicPoint(n, tuple(mapped))
    return RelabelReport(moved, img_shift,
                         hyperbolic_distance(moved, img_shift, form))
