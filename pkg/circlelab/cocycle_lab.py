"""
From an action to its orientation cocycle on boundary samples and back.

Boundary samples are limit points of random walks. The orientation cocycle of
those points is then treated as the only data: interval sets and the maps f_a
are built from it, rectified into a chart phi, and the generators are rebuilt as
monotone circle maps through the graphs {(phi(x), phi(gx))}.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd
from sklearn.isotonic import isotonic_regression

from circlelab.boundary import WalkConfig, default_nu, push_batch
from circlelab.circle_core import (
    EPS_CIRCLE,
    EmpiricalMeasure,
    circle_distance,
    covering_midpoint,
    orient,
    quasi_conjugacy_eval,
    smallest_covering_arc,
)
from circlelab.exceptions import (
    DegenerateBoundaryError,
    GraphNotHomeomorphismError,
    PreconditionError,
)
from circlelab.group_action import ActionSpec, enumerate_words, word_translation_numbers
from circlelab.homeo import (
    CompositionLift,
    Homeo,
    PiecewiseLinearLift,
    RotationLift,
    euler_cocycle,
    sup_distance,
)

logger = logging.getLogger(__name__)

SAMPLE_DIRAC_TOL = 1e-6
# long enough for nearly every PSL(2, Z) walk to reach SAMPLE_DIRAC_TOL
SAMPLE_WALK_LENGTH = 600
MOVE_TOL = 1e-4
COVERAGE_MIN = 0.3
DEGENERATE_FRACTION = 0.1
COLLISION_BUDGET = 0.02
GRAPH_SLACK = 0.01
AUDIT_TRIPLES = 1000
# generic base point for comparing Euler cocycle values
EULER_BASE_POINT = 0.3183098861837907


def _nearest(sorted_points: np.ndarray, order: np.ndarray, queries: np.ndarray):
    n = sorted_points.size
    idx = np.searchsorted(sorted_points, queries)
    right, left = idx % n, (idx - 1) % n
    d_right = circle_distance(queries, sorted_points[right])
    d_left = circle_distance(queries, sorted_points[left])
    pick = np.where(d_right <= d_left, right, left)
    return order[pick], np.minimum(d_right, d_left)


def _first_occurrences(points: np.ndarray, eps: float = EPS_CIRCLE) -> np.ndarray:
    """Indices of points not within eps of an earlier point, in their original order."""
    order = np.argsort(points, kind="stable")
    sorted_points = points[order]
    run = np.cumsum(np.append(True, np.diff(sorted_points) >= eps)) - 1
    if run[-1] > 0 and sorted_points[0] + 1.0 - sorted_points[-1] < eps:
        run[run == run[-1]] = 0
    first = np.full(run[-1] + 1, points.size)
    np.minimum.at(first, run, order)
    return np.sort(first[first < points.size])


@dataclass(frozen=True, eq=False)
class SampledBoundary:
    """
    Converged walk limits together with their one-letter variants l.w, so that the
    image of a sample under a generator is often another sample.

    `moves[label][i]` is the id matching g . points[i] within move_tol, or -1.
    """
    spec: ActionSpec
    points: np.ndarray
    base_of: np.ndarray
    letter_of: np.ndarray
    moves: dict[str, np.ndarray]
    move_tol: float = MOVE_TOL

    def __len__(self) -> int:
        return int(self.points.size)

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.points.size, 1.0 / self.points.size)

    @property
    def coverage(self) -> dict[str, float]:
        return {label: float(np.mean(m >= 0)) for label, m in self.moves.items()}

    @classmethod
    def from_points(cls, spec: ActionSpec, points, move_tol: float = MOVE_TOL) -> "SampledBoundary":
        points = np.mod(np.asarray(points, dtype=float), 1.0)
        order = np.argsort(points, kind="stable")
        sorted_points = points[order]
        moves = {}
        for label, g in spec.generators:
            target, dist = _nearest(sorted_points, order, np.atleast_1d(g(points)))
            moves[label] = np.where(dist < move_tol, target, -1)
        n = points.size
        return cls(spec, points, np.arange(n), np.full(n, -1), moves, move_tol)

    @classmethod
    def build(cls, spec: ActionSpec, cfg: WalkConfig, nu: Optional[EmpiricalMeasure] = None,
              dirac_tol: float = SAMPLE_DIRAC_TOL, move_tol: float = MOVE_TOL) -> "SampledBoundary":
        nu = nu or default_nu()
        trajectories = cfg.trajectories(spec)
        pushed = push_batch(spec, trajectories, nu.points)
        _, diameters = smallest_covering_arc(pushed)
        keep = np.flatnonzero(diameters < dirac_tol)
        if keep.size < 3:
            raise DegenerateBoundaryError("too few converged walks", operation="SampledBoundary",
                                          evidence={"converged": int(keep.size),
                                                    "walks": cfg.sample_count})
        pushed = pushed[keep]

        points, base_of, letter_of = [covering_midpoint(pushed)[0]], [keep], [np.full(keep.size, -1)]
        for letter in range(len(spec.letters)):
            variant = spec.apply_letters(np.full(keep.size, letter), pushed)
            mid, d = covering_midpoint(variant)
            ok = d < dirac_tol
            points.append(mid[ok])
            base_of.append(keep[ok])
            letter_of.append(np.full(int(ok.sum()), letter))

        points = np.concatenate(points)
        # letters acting alike (S and S^-1 in PSL(2, Z)) give repeated samples
        distinct = _first_occurrences(points)
        boundary = cls.from_points(spec, points[distinct], move_tol)
        boundary = cls(spec, boundary.points, np.concatenate(base_of)[distinct],
                       np.concatenate(letter_of)[distinct], boundary.moves, move_tol)
        logger.info("Sampled boundary of %s: %d points from %d converged walks, coverage %s.",
                    spec.name, len(boundary), keep.size, boundary.coverage)
        return boundary

    def to_frame(self, phi: Optional[np.ndarray] = None) -> pd.DataFrame:
        frame = pd.DataFrame({"id": np.arange(len(self)), "limit_point": self.points,
                              "walk": self.base_of, "prefix_letter": self.letter_of})
        if phi is not None:
            frame["phi"] = phi
        return frame


@dataclass(frozen=True, eq=False)
class SampledCocycle:
    """Orientation cocycle of sample points, evaluated on demand from the points."""
    points: np.ndarray
    eps: float = EPS_CIRCLE

    def __len__(self) -> int:
        return int(self.points.size)

    def __call__(self, x, y, z):
        p = self.points
        return orient(p[x], p[y], p[z], self.eps)

    def coincident(self, i, j):
        return np.asarray(circle_distance(self.points[i], self.points[j])) < self.eps

    def random_tuples(self, rng: np.random.Generator, count: int, width: int = 3) -> np.ndarray:
        return rng.integers(0, len(self), size=(count, width))


def extract_cocycle(sb: SampledBoundary, eps: float = EPS_CIRCLE, audit_triples: int = AUDIT_TRIPLES,
                    seed: int = 0, max_degenerate: float = DEGENERATE_FRACTION) -> SampledCocycle:
    """Orientation of limit points; fails when too many audit triples coincide."""
    if len(sb) < 3:
        raise PreconditionError("need at least 3 samples", operation="extract_cocycle")
    omega = SampledCocycle(sb.points.copy(), eps)
    t = omega.random_tuples(np.random.default_rng(seed), audit_triples)
    t = t[(t[:, 0] != t[:, 1]) & (t[:, 1] != t[:, 2]) & (t[:, 0] != t[:, 2])]
    degenerate = float(np.mean(omega(t[:, 0], t[:, 1], t[:, 2]) == 0)) if t.size else 1.0
    if degenerate > max_degenerate:
        raise DegenerateBoundaryError("degenerate boundary", operation="extract_cocycle",
                                      evidence={"degenerate_fraction": degenerate})
    return omega


@dataclass(frozen=True)
class CocycleAudit:
    triples: int
    alternating_violations: int
    identity_violations: int
    value_violations: int
    invariance_checked: dict[str, int]
    invariance_violations: dict[str, int]
    degenerate_fraction: float

    @property
    def passed(self) -> bool:
        return (self.alternating_violations == 0 and self.identity_violations == 0
                and self.value_violations == 0 and not any(self.invariance_violations.values()))

    def to_dict(self) -> dict[str, Any]:
        return {**asdict(self), "passed": self.passed}


def _separated(points: np.ndarray, t: np.ndarray, band: float) -> np.ndarray:
    """Rows of id triples whose points are pairwise farther apart than band."""
    p = points[t]
    return ((np.asarray(circle_distance(p[:, 0], p[:, 1])) > band)
            & (np.asarray(circle_distance(p[:, 1], p[:, 2])) > band)
            & (np.asarray(circle_distance(p[:, 0], p[:, 2])) > band))


def _outside_band(values: np.ndarray, ends, band: float, reference: Optional[np.ndarray] = None):
    """Entries of values farther than band from the points of the given end ids."""
    reference = values if reference is None else reference
    keep = np.ones(values.size, dtype=bool)
    for e in ends:
        keep &= np.asarray(circle_distance(values, reference[e])) > band
    return keep


def audit_cocycle(omega: SampledCocycle, sb: Optional[SampledBoundary] = None,
                  triples: int = AUDIT_TRIPLES, seed: int = 0) -> CocycleAudit:
    rng = np.random.default_rng(seed)
    q = omega.random_tuples(rng, triples, 4)
    x, y, z, w = q.T
    xyz = omega(x, y, z)
    alternating = int(np.sum(omega(y, x, z) != -xyz))

    clean = xyz != 0
    for a, b in ((x, w), (y, w), (z, w)):
        clean &= ~omega.coincident(a, b)
    identity = omega(y, z, w) - omega(x, z, w) + omega(x, y, w) - xyz
    identity_violations = int(np.sum(identity[clean] != 0))
    distinct = (x != y) & (y != z) & (x != z)
    values = xyz[distinct & (xyz != 0)]
    value_violations = int(np.sum(np.abs(values) != 1))

    checked, violations = {}, {}
    if sb is not None:
        for label, m in sb.moves.items():
            ids = np.flatnonzero(m >= 0)
            if ids.size < 3:
                checked[label], violations[label] = 0, 0
                continue
            t = ids[rng.integers(0, ids.size, size=(triples, 3))]
            before = omega(t[:, 0], t[:, 1], t[:, 2])
            after = omega(m[t[:, 0]], m[t[:, 1]], m[t[:, 2]])
            ok = (before != 0) & (after != 0) & _separated(omega.points, t, 2 * sb.move_tol)
            ok &= _separated(omega.points, m[t], 2 * sb.move_tol)
            checked[label] = int(ok.sum())
            violations[label] = int(np.sum(before[ok] != after[ok]))

    return CocycleAudit(triples, alternating, identity_violations, value_violations, checked,
                        violations, float(np.mean(xyz[distinct] == 0)) if distinct.any() else 0.0)


def interval_mask(omega: SampledCocycle, a: int, x: int) -> np.ndarray:
    p = omega.points
    return np.asarray(orient(p[a], p, p[x], omega.eps)) == 1


def interval_set(omega: SampledCocycle, a: int, x: int) -> set[int]:
    """Ids z with omega(a, z, x) = +1."""
    if a == x:
        raise PreconditionError("interval endpoints must differ", operation="interval_set")
    return set(np.flatnonzero(interval_mask(omega, a, x)).tolist())


@dataclass(frozen=True)
class IntervalAudit:
    checked: int
    cover_violations: int
    overlap_violations: int
    trivial_mass: int
    nesting_checked: int
    nesting_violations: int
    split_violations: int
    dichotomy_violations: int
    invariance_violations: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not (self.cover_violations or self.overlap_violations or self.nesting_violations
                    or self.split_violations
                    or self.dichotomy_violations or any(self.invariance_violations.values()))

    def to_dict(self) -> dict[str, Any]:
        return {**asdict(self), "passed": self.passed}


def audit_intervals(omega: SampledCocycle, weights: Optional[np.ndarray] = None,
                    sb: Optional[SampledBoundary] = None, triples: int = 200,
                    seed: int = 0) -> IntervalAudit:
    """
    Check that the sets I(a, c) behave like arcs: complementary, nested along
    their interior points, ordered by mass, and carried to each other by the moves.
    """
    n = len(omega)
    weights = np.full(n, 1.0 / n) if weights is None else np.asarray(weights, dtype=float)
    rng = np.random.default_rng(seed)
    ids = np.arange(n)
    counts = dict(checked=0, cover=0, overlap=0, trivial=0, nested=0, nesting=0, split=0,
                  dichotomy=0)
    invariance = {label: 0 for label in (sb.moves if sb is not None else {})}

    for a, b, c in rng.integers(0, n, size=(triples, 3)):
        if len({a, b, c}) < 3 or omega.coincident(a, c) or omega.coincident(a, b):
            continue
        counts["checked"] += 1
        i_ac, i_ca = interval_mask(omega, a, c), interval_mask(omega, c, a)
        endpoints = omega.coincident(ids, a) | omega.coincident(ids, c)
        counts["cover"] += int(np.any(~(i_ac | i_ca) & ~endpoints))
        counts["overlap"] += int(np.any(i_ac & i_ca))
        mass = weights[i_ac].sum()
        counts["trivial"] += int(mass <= 0.0 or mass >= 1.0)

        if i_ac[b]:
            counts["nested"] += 1
            i_ab, i_bc = interval_mask(omega, a, b), interval_mask(omega, b, c)
            counts["nesting"] += int(np.any((i_ab | i_bc) & ~i_ac) or np.any(i_ab & i_bc))
            interior = i_ac & ~omega.coincident(ids, b)
            counts["split"] += int(np.any(interior & ~(i_ab | i_bc)))

        # a, b, c play the roles a, x, y of the ordering dichotomy
        i_ab = interval_mask(omega, a, b)
        m_ab, m_ac = weights[i_ab].sum(), weights[i_ac].sum()
        first = bool(i_ac[b]) and m_ab < m_ac
        second = bool(i_ab[c]) and m_ac < m_ab
        counts["dichotomy"] += int(first == second and not omega.coincident(b, c))

        if sb is not None:
            for label, m in sb.moves.items():
                if m[a] < 0 or m[c] < 0:
                    continue
                moved = (m >= 0) & _outside_band(omega.points, (a, c), 2 * sb.move_tol)
                moved &= _outside_band(omega.points[np.maximum(m, 0)], (m[a], m[c]), 2 * sb.move_tol,
                                       omega.points)
                image = interval_mask(omega, m[a], m[c])
                invariance[label] += int(np.any(i_ac[moved] != image[m[moved]]))

    return IntervalAudit(counts["checked"], counts["cover"], counts["overlap"], counts["trivial"],
                         counts["nested"], counts["nesting"], counts["split"], counts["dichotomy"],
                         invariance)


def f_a_map(omega: SampledCocycle, a: int, weights: Optional[np.ndarray] = None) -> np.ndarray:
    """
    f_a(x) = weight of a plus the total weight of I(a, x), mod 1, for every id x.

    I(a, x) is the set of samples strictly between a and x counterclockwise, so
    the values are cumulative weights of [a, x) in the cyclic order starting at a,
    and with equal weights they are the ranks over N.
    """
    n = len(omega)
    weights = np.full(n, 1.0 / n) if weights is None else np.asarray(weights, dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-9:
        raise PreconditionError("weights must be a probability vector", operation="f_a_map")
    eps = omega.eps
    offsets = np.mod(omega.points - omega.points[a], 1.0)
    offsets = np.where((offsets < eps) | (offsets > 1.0 - eps), 0.0, offsets)
    order = np.argsort(offsets, kind="stable")
    sorted_offsets = offsets[order]
    cumulative = np.concatenate([[0.0], np.cumsum(weights[order])])
    below = np.searchsorted(sorted_offsets, offsets - eps, side="left")
    values = cumulative[below]
    return np.mod(np.where(offsets == 0.0, 0.0, values), 1.0)


def ks_to_uniform(values: np.ndarray, weights: np.ndarray) -> float:
    order = np.argsort(values, kind="stable")
    v, cdf = values[order], np.cumsum(weights[order])
    return float(np.max(np.maximum(np.abs(cdf - v), np.abs(cdf - weights[order] - v))))


def choose_base_point(omega: SampledCocycle, weights: Optional[np.ndarray] = None,
                      candidates: int = 16, seed: int = 0) -> int:
    """Among random candidates, the base point whose f_a values are closest to uniform."""
    n = len(omega)
    weights = np.full(n, 1.0 / n) if weights is None else np.asarray(weights, dtype=float)
    rng = np.random.default_rng(seed)
    pool = rng.choice(n, size=min(candidates, n), replace=False)
    scores = [ks_to_uniform(f_a_map(omega, int(a), weights), weights) for a in pool]
    return int(pool[int(np.argmin(scores))])


def collision_fraction(values: np.ndarray, threshold: Optional[float] = None) -> float:
    """Fraction of samples having another sample within threshold (default 1/(4N))."""
    n = values.size
    if n < 2:
        return 0.0
    threshold = 1.0 / (4 * n) if threshold is None else threshold
    v = np.sort(np.mod(values, 1.0))
    gaps = np.diff(np.append(v, v[0] + 1.0))
    close = gaps < threshold
    collided = close | np.roll(close, 1)
    return float(np.mean(collided))


def order_audit(omega: SampledCocycle, values: np.ndarray, triples: int = AUDIT_TRIPLES,
                seed: int = 0) -> float:
    """Fraction of non-degenerate triples where the chart preserves the cocycle."""
    rng = np.random.default_rng(seed)
    x, y, z = omega.random_tuples(rng, triples).T
    w = omega(x, y, z)
    o = orient(values[x], values[y], values[z], 1.0 / (4 * len(omega)))
    ok = (w != 0) & (o != 0)
    return float(np.mean(o[ok] == w[ok])) if ok.any() else 1.0


def rectify(f_values: np.ndarray, weights: Optional[np.ndarray] = None) -> np.ndarray:
    """phi = h_xi o f_a with xi the pushforward of the weights under f_a."""
    n = f_values.size
    weights = np.full(n, 1.0 / n) if weights is None else np.asarray(weights, dtype=float)
    xi = EmpiricalMeasure.from_atoms(f_values, weights)
    return np.asarray(quasi_conjugacy_eval(0.0, xi, f_values), dtype=float)


def max_gap(values: np.ndarray) -> float:
    v = np.sort(np.mod(values, 1.0))
    return float(np.max(np.diff(np.append(v, v[0] + 1.0))))


@dataclass(frozen=True, eq=False)
class Reconstruction:
    base_point: int
    f_values: np.ndarray
    phi: np.ndarray
    collision_fraction: float
    order_agreement: float
    rectified_order_agreement: float
    max_gap: float

    def to_dict(self) -> dict[str, Any]:
        return {"base_point": self.base_point, "collision_fraction": self.collision_fraction,
                "order_agreement": self.order_agreement,
                "rectified_order_agreement": self.rectified_order_agreement,
                "max_gap": self.max_gap}


def reconstruct(omega: SampledCocycle, weights: Optional[np.ndarray] = None,
                base_point: Optional[int] = None, seed: int = 0,
                collision_budget: float = COLLISION_BUDGET) -> Reconstruction:
    """Build the chart phi from the cocycle alone."""
    n = len(omega)
    weights = np.full(n, 1.0 / n) if weights is None else np.asarray(weights, dtype=float)
    a = choose_base_point(omega, weights, seed=seed) if base_point is None else base_point
    f_values = f_a_map(omega, a, weights)
    collisions = collision_fraction(f_values)
    if collisions >= collision_budget:
        raise DegenerateBoundaryError("f_a collides on too many samples", operation="reconstruct",
                                      evidence={"collision_fraction": collisions})
    phi = rectify(f_values, weights)
    result = Reconstruction(a, f_values, phi, collisions, order_audit(omega, f_values, seed=seed),
                            order_audit(omega, phi, seed=seed), max_gap(phi))
    logger.debug("Chart from base point %d: %s", a, result.to_dict())
    return result


def fit_circle_map(u, v) -> Homeo:
    """
    Monotone PL circle map through the graph points (u_i, v_i).

    Targets are unwrapped along increasing u with steps taken in [-1/2, 1/2), then
    made nondecreasing by isotonic regression with duplicate abscissae averaged.
    """
    u = np.mod(np.asarray(u, dtype=float), 1.0)
    v = np.mod(np.asarray(v, dtype=float), 1.0)
    if u.size < 2:
        raise PreconditionError("need at least two graph points", operation="fit_circle_map")
    order = np.argsort(u, kind="stable")
    u, v = u[order], v[order]
    steps = np.mod(np.diff(v) + 0.5, 1.0) - 0.5
    lifted = np.concatenate([[v[0]], v[0] + np.cumsum(steps)])
    ux, inverse, counts = np.unique(u, return_inverse=True, return_counts=True)
    means = np.bincount(inverse, weights=lifted) / counts
    fitted = isotonic_regression(means, sample_weight=counts.astype(float), increasing=True)
    return Homeo(PiecewiseLinearLift.from_samples(ux, fitted))


def graph_order_violations(u: np.ndarray, v: np.ndarray, triples: int, rng) -> float:
    if u.size < 3:
        return 0.0
    x, y, z = rng.integers(0, u.size, size=(triples, 3)).T
    before = orient(u[x], u[y], u[z])
    after = orient(v[x], v[y], v[z])
    ok = (before != 0) & (after != 0)
    return float(np.mean(before[ok] != after[ok])) if ok.any() else 0.0


def rebuild_action(phi: np.ndarray, sb: SampledBoundary, graph_slack: float = GRAPH_SLACK,
                   coverage_min: float = COVERAGE_MIN, triples: int = AUDIT_TRIPLES,
                   seed: int = 0) -> ActionSpec:
    """One monotone PL generator per label, fitted through {(phi(x), phi(g x))}."""
    rng = np.random.default_rng(seed)
    generators = []
    for label, m in sb.moves.items():
        covered = m >= 0
        if covered.mean() < coverage_min:
            raise PreconditionError("group moves cover too few samples", operation="rebuild_action",
                                    evidence={"generator": label, "coverage": float(covered.mean())})
        u, v = phi[covered], phi[m[covered]]
        violations = graph_order_violations(u, v, triples, rng)
        if violations > graph_slack:
            raise GraphNotHomeomorphismError("graph not a homeomorphism",
                                             operation="rebuild_action",
                                             evidence={"generator": label, "violations": violations})
        generators.append((label, fit_circle_map(u, v)))
    return ActionSpec(tuple(generators), f"rebuilt({sb.spec.name})")


def align_maps(phi: np.ndarray, psi: np.ndarray) -> Homeo:
    """The monotone map h with h(phi(x)) close to psi(x) for every sample."""
    return fit_circle_map(phi, psi)


def conjugate(h: Homeo, g: Homeo) -> Homeo:
    """h g h^-1."""
    return Homeo(CompositionLift((h.lift, g.lift, h.lift.inverse())))


def conjugacy_defect(phi: np.ndarray, psi: np.ndarray, first: ActionSpec, second: ActionSpec,
                     grid: int = 512) -> dict[str, float]:
    """Per generator, sup distance of h first(g) h^-1 from second(g), with h aligning phi to psi."""
    h = align_maps(phi, psi)
    return {label: sup_distance(conjugate(h, first.generator(label)), second.generator(label), grid)
            for label in first.labels}


@dataclass(frozen=True)
class RoundTrip:
    generator_distance: dict[str, float]
    euler_mismatches: int
    euler_pairs: int
    rotation_deviation: float
    words: int

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def round_trip(source: ActionSpec, rebuilt: ActionSpec, phi: np.ndarray, psi: np.ndarray,
               grid: int = 512, word_radius: int = 3, iterations: int = 2000) -> RoundTrip:
    """
    Compare the source action with the rebuilt one: generators after the aligning
    conjugacy, Euler cocycle values at a generic base point, and rotation numbers
    of short words, which need no alignment.
    """
    h = align_maps(phi, psi)
    distances = {label: sup_distance(conjugate(h, rebuilt.generator(label)), g, grid)
                 for label, g in source.generators}

    base = Homeo(RotationLift(EULER_BASE_POINT))

    def at_base(g):
        return conjugate(base.inverse(), g)

    letters = list(source.letters)
    mismatches = 0
    for s in letters:
        for t in letters:
            c_source = euler_cocycle(at_base(source.homeo(s)), at_base(source.homeo(t)))
            c_rebuilt = euler_cocycle(at_base(conjugate(h, rebuilt.homeo(s))),
                                      at_base(conjugate(h, rebuilt.homeo(t))))
            mismatches += int(c_source != c_rebuilt)

    words = [w for w in enumerate_words(source, word_radius) if w.letters]
    tau_source = word_translation_numbers(source, words, iterations)
    tau_rebuilt = word_translation_numbers(rebuilt, words, iterations)
    deviation = float(np.max(circle_distance(tau_source, tau_rebuilt))) if words else 0.0
    result = RoundTrip(distances, mismatches, len(letters) ** 2, deviation, len(words))
    logger.info("Round trip of %s: %s", source.name, result.to_dict())
    return result


def joint_limit_points(specs: Sequence[ActionSpec], cfg: WalkConfig,
                       nu: Optional[EmpiricalMeasure] = None,
                       dirac_tol: float = SAMPLE_DIRAC_TOL) -> np.ndarray:
    """
    Limit points of the same walks under several actions of one group, one row per
    action. Walks that fail to converge under some action are dropped.
    """
    labels = specs[0].labels
    if any(s.labels != labels for s in specs):
        raise PreconditionError("actions must share generator labels",
                                operation="joint_limit_points")
    nu = nu or default_nu()
    trajectories = cfg.trajectories(specs[0])
    rows, keep = [], np.ones(cfg.sample_count, dtype=bool)
    for spec in specs:
        mid, d = covering_midpoint(push_batch(spec, trajectories, nu.points))
        rows.append(mid)
        keep &= d < dirac_tol
    return np.stack(rows)[:, keep]


def cocycle_norm(points: np.ndarray, coefficients: Sequence[float], triples: int = 20_000,
                 seed: int = 0) -> float:
    """
    Sampled sup norm of sum_i n_i o(phi_i(x), phi_i(y), phi_i(z)) / 2 over random
    triples of joint boundary samples.
    """
    points = np.atleast_2d(points)
    if len(coefficients) != points.shape[0]:
        raise PreconditionError("one coefficient per action", operation="cocycle_norm")
    rng = np.random.default_rng(seed)
    x, y, z = rng.integers(0, points.shape[1], size=(triples, 3)).T
    total = np.zeros(triples)
    for n_i, p in zip(coefficients, points):
        total += n_i * orient(p[x], p[y], p[z])
    return float(np.max(np.abs(total)) / 2.0)
