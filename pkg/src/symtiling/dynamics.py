"""The pair billiard map on two tilings, orbit iteration, and orbit
classification.

A state is a particle on a tiling A plus a particle on a tiling B.  One
step moves each particle along the direction of the edge currently
holding the other particle, to its first hit on its own tiling.  The
travel sign is fixed by requiring the chord to leave the particle's own
edge on the side the particle is facing; transversality of the two
tilings makes that choice unambiguous.

Recurrence detection is exact over rationals: a state is keyed by its
position within the period lattice (edge axis, fractional position along
the edge, facing side), so both literal periodicity and periodicity up
to a common lattice translation (a drift orbit) become provable
verdicts.  In float mode the same tests run with a closure tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import Escaped, NonTransverseEdges, VertexHit
from .exact import Vec2, bit_length
from .tilings import GridTiling, Particle, Sunburst

PERIODIC = "periodic"
UNBOUNDED_DRIFT = "unbounded-drift"
BOUNDED_ATTRACTED = "bounded-attracted"
SINGULAR = "singular"
INCONCLUSIVE = "inconclusive"

VERDICTS = (PERIODIC, UNBOUNDED_DRIFT, BOUNDED_ATTRACTED, SINGULAR,
            INCONCLUSIVE)


@dataclass(frozen=True, slots=True)
class PairState:
    a: Particle
    b: Particle


@dataclass(frozen=True, slots=True)
class Termination:
    """Why an orbit run stopped.

    kind is one of 'periodic', 'translation', 'vertex', 'escaped',
    'max-steps'.  period and drift are set for the first two kinds; drift
    is the common translation in A-local integer coordinates.  residual
    is the float-mode closure error (0 in exact mode).
    """

    kind: str
    step: int
    period: Optional[int] = None
    drift: Optional[tuple] = None
    location: Optional[tuple] = None
    residual: Optional[float] = None


@dataclass(slots=True)
class OrbitRecord:
    start: PairState
    termination: Termination
    a_points: list
    b_points: list
    bit_lengths: list
    bbox_diameters: list
    exact: bool
    states: Optional[list] = None

    @property
    def steps(self) -> int:
        return len(self.a_points) - 1


@dataclass(frozen=True, slots=True)
class Classification:
    verdict: str
    evidence: dict = field(default_factory=dict)


def _advance(tiling, particle: Particle, chord_dir: Vec2) -> Particle:
    """Move a particle to its first hit along +-chord_dir, choosing the
    sign that keeps the chord on the particle's facing side of its own
    edge line.
    """
    edge_dir = tiling.direction_of(particle.edge)
    facing = edge_dir.cross(particle.direction)
    lean = edge_dir.cross(chord_dir)
    if lean == 0:
        raise NonTransverseEdges(
            "chord direction is parallel to the particle's edge")
    travel = chord_dir if (lean > 0) == (facing > 0) else -chord_dir
    point, edge = tiling.first_hit(particle.point, travel)
    return Particle(point, edge, travel)


def step(a_tiling, b_tiling, state: PairState) -> PairState:
    """One move of each particle, each along the direction of the edge
    currently holding the other particle.  The two moves commute; the
    update reads only the incoming state.
    """
    a = _advance(a_tiling, state.a, b_tiling.direction_of(state.b.edge))
    b = _advance(b_tiling, state.b, a_tiling.direction_of(state.a.edge))
    return PairState(a, b)


def _side(tiling, particle: Particle) -> int:
    return 1 if tiling.direction_of(particle.edge).cross(
        particle.direction) > 0 else -1


def _signature(tiling, particle: Particle):
    """Hashable state key, invariant under period-lattice translations."""
    if isinstance(tiling, GridTiling):
        loc = tiling.to_local(particle.point)
        along = loc.y if particle.edge.axis == "v" else loc.x
        frac = along - particle.edge.cell
        return (particle.edge.axis, frac, _side(tiling, particle))
    return (particle.edge, particle.point.x, particle.point.y,
            _side(tiling, particle))


def _integer_components(v: Vec2):
    xi, yi = int(v.x), int(v.y)
    if v.x != xi or v.y != yi:
        return None
    return (xi, yi)


def _drift_of(a_tiling, v: Vec2):
    if isinstance(a_tiling, GridTiling):
        return _integer_components(a_tiling.to_local(v))
    return (0, 0) if v.is_zero() else None


def _float_match(a_tiling, b_tiling, now, prev, tol):
    """Closure residual between two loosely keyed states, or None.

    Returns (residual, drift_ints) where drift_ints is the common
    translation rounded to A-local integers.
    """
    va = now[1] - prev[1]
    vb = now[2] - prev[2]
    gap = vb - va
    residual = max(abs(float(gap.x)), abs(float(gap.y)))
    ints = None
    for tiling, v in ((a_tiling, va), (b_tiling, vb)):
        if isinstance(tiling, GridTiling):
            loc = tiling.to_local(v)
            cand = (round(float(loc.x)), round(float(loc.y)))
            residual = max(residual, abs(float(loc.x) - cand[0]),
                           abs(float(loc.y) - cand[1]))
            if tiling is a_tiling:
                ints = cand
        else:
            residual = max(residual, abs(float(v.x)), abs(float(v.y)))
            if tiling is a_tiling:
                ints = (0, 0)
    if residual > tol:
        return None
    return residual, ints


def run_orbit(a_tiling, b_tiling, start: PairState, max_steps: int = 1000,
              closure_tol: float = 1e-9, keep_states: bool = True
              ) -> OrbitRecord:
    """Iterate the pair map until recurrence, a singularity, or max_steps.

    Exact inputs get exact recurrence detection: a repeat of the state
    signature is confirmed only when both particles moved by one and the
    same translation, integral in both period lattices.  Zero translation
    is a periodic orbit, nonzero a drift orbit.  Vertex hits and escapes
    terminate the run and are recorded rather than raised.
    """
    exact = (start.a.point.is_exact() and start.b.point.is_exact()
             and getattr(a_tiling, "exact", False)
             and getattr(b_tiling, "exact", False))

    states = [start] if keep_states else None
    a_points = []
    b_points = []
    bit_lengths = []
    bbox_diameters = []
    lo_x = lo_y = math.inf
    hi_x = hi_y = -math.inf
    seen = {}
    history = []
    termination = None
    state = start
    index = 0

    def record_state(st: PairState):
        nonlocal lo_x, lo_y, hi_x, hi_y
        pa = (float(st.a.point.x), float(st.a.point.y))
        pb = (float(st.b.point.x), float(st.b.point.y))
        a_points.append(pa)
        b_points.append(pb)
        for x, y in (pa, pb):
            lo_x, hi_x = min(lo_x, x), max(hi_x, x)
            lo_y, hi_y = min(lo_y, y), max(hi_y, y)
        bbox_diameters.append(math.hypot(hi_x - lo_x, hi_y - lo_y))
        bit_lengths.append(max(bit_length(st.a.point.x),
                               bit_length(st.a.point.y),
                               bit_length(st.b.point.x),
                               bit_length(st.b.point.y)))

    def check_recurrence(st: PairState, idx: int):
        key = (_signature(a_tiling, st.a), _signature(b_tiling, st.b))
        entry = (idx, st.a.point, st.b.point, st.a.direction, st.b.direction)
        if exact:
            for prev in seen.get(key, ()):
                if prev[3] != st.a.direction or prev[4] != st.b.direction:
                    continue
                va = st.a.point - prev[1]
                vb = st.b.point - prev[2]
                if va != vb:
                    continue
                drift = _drift_of(a_tiling, va)
                if drift is None:
                    continue
                kind = "periodic" if va.is_zero() else "translation"
                return Termination(kind, idx, period=idx - prev[0],
                                   drift=None if va.is_zero() else drift,
                                   residual=0.0)
            seen.setdefault(key, []).append(entry)
            return None
        loose = (st.a.edge if not isinstance(a_tiling, GridTiling)
                 else st.a.edge.axis,
                 st.b.edge if not isinstance(b_tiling, GridTiling)
                 else st.b.edge.axis,
                 _side(a_tiling, st.a), _side(b_tiling, st.b))
        for prev_loose, prev in history:
            if prev_loose != loose:
                continue
            hit = _float_match(a_tiling, b_tiling, entry, prev, closure_tol)
            if hit is None:
                continue
            residual, ints = hit
            if ints == (0, 0):
                return Termination("periodic", idx, period=idx - prev[0],
                                   residual=residual)
            return Termination("translation", idx, period=idx - prev[0],
                               drift=ints, residual=residual)
        history.append((loose, entry))
        return None

    record_state(start)
    check_recurrence(start, 0)
    while termination is None and index < max_steps:
        try:
            state = step(a_tiling, b_tiling, state)
        except VertexHit as hit:
            termination = Termination("vertex", index + 1,
                                      location=hit.location)
            break
        except Escaped:
            termination = Termination("escaped", index + 1)
            break
        index += 1
        if keep_states:
            states.append(state)
        record_state(state)
        termination = check_recurrence(state, index)
    if termination is None:
        termination = Termination("max-steps", index)
    return OrbitRecord(start, termination, a_points, b_points, bit_lengths,
                       bbox_diameters, exact, states)


def classify(record: OrbitRecord) -> Classification:
    """Verdict for an orbit record.

    Recurrence terminations map directly to exact verdicts.  A run that
    hit the step budget is called bounded-attracted when the coordinate
    complexity keeps climbing (the running-max bit-length growth over the
    start at least doubled during the second half) while the orbit's
    bounding box has settled (diameter grew by less than 1 percent); that
    verdict is heuristic and ships its evidence.  The growth measure is
    baseline-subtracted so that steady linear bit growth from a simple
    start counts as climbing.
    """
    t = record.termination
    if t.kind == "periodic":
        return Classification(PERIODIC, {"period": t.period,
                                         "residual": t.residual})
    if t.kind == "translation":
        return Classification(UNBOUNDED_DRIFT, {
            "period": t.period, "drift": t.drift, "residual": t.residual})
    if t.kind == "vertex":
        return Classification(SINGULAR, {"step": t.step,
                                         "location": t.location})
    if t.kind == "escaped":
        return Classification(INCONCLUSIVE, {"escaped_at": t.step})
    n = len(record.bit_lengths)
    if n < 4:
        return Classification(INCONCLUSIVE, {"steps": n - 1})
    half = n // 2
    base = record.bit_lengths[0]
    peak_half = max(record.bit_lengths[:half]) - base
    peak_end = max(record.bit_lengths) - base
    diam_half = record.bbox_diameters[half - 1]
    diam_end = record.bbox_diameters[-1]
    growth = peak_end / peak_half if peak_half > 0 else math.inf
    spread = (diam_end - diam_half) / diam_end if diam_end > 0 else 0.0
    evidence = {"bit_growth": growth, "bbox_spread": spread,
                "steps": n - 1, "diameter": diam_end}
    if peak_end > 0 and growth >= 2.0 and spread < 0.01:
        return Classification(BOUNDED_ATTRACTED, evidence)
    return Classification(INCONCLUSIVE, evidence)


def portrait_cell(a_tiling, b_tiling, edge_a, edge_b, frac_a, frac_b,
                  max_steps: int, closure_tol: float = 1e-9) -> str:
    """Classify the orbit started at the given edge fractions.  Pure; the
    portrait grid may evaluate cells in any order or in parallel.
    """
    state = PairState(a_tiling.particle_on(edge_a, frac_a),
                      b_tiling.particle_on(edge_b, frac_b))
    record = run_orbit(a_tiling, b_tiling, state, max_steps,
                       closure_tol=closure_tol, keep_states=False)
    return classify(record).verdict


def phase_portrait(a_tiling, b_tiling, edge_a, edge_b, resolution,
                   max_steps: int = 200, closure_tol: float = 1e-9):
    """Verdict raster over (position along edge_a) x (position along
    edge_b), sampled at cell centers (2i+1)/2w by (2j+1)/2h.  Returns h
    rows of w verdict strings, row j holding edge_b fraction (2j+1)/2h.
    """
    if a_tiling.direction_of(edge_a).cross(b_tiling.direction_of(edge_b)) == 0:
        raise NonTransverseEdges("portrait edges are parallel")
    w, h = resolution
    exact = getattr(a_tiling, "exact", False) and getattr(
        b_tiling, "exact", False)

    def frac(i, n):
        return Fraction(2 * i + 1, 2 * n) if exact else (2 * i + 1) / (2 * n)

    return [[portrait_cell(a_tiling, b_tiling, edge_a, edge_b,
                           frac(i, w), frac(j, h), max_steps, closure_tol)
             for i in range(w)]
            for j in range(h)]
