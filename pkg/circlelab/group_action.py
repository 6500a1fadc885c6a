"""
Finitely generated actions on the circle.

A word l1 l2 ... ln acts as rho(l1) after rho(l2) after ... after rho(ln).
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator, Optional

import numpy as np
from scipy.optimize import brentq

from circlelab.circle_core import (
    EPS_CIRCLE,
    Arc,
    circle_distance,
    circle_floor,
    wrap,
)
from circlelab.exceptions import (
    CoveringRelationError,
    InconclusiveClassificationError,
    OrbitExplosionError,
    PreconditionError,
    QuotientInconsistentError,
    ThetaNotPeriodicError,
)
from circlelab.homeo import (
    CompositionLift,
    Homeo,
    Lift,
    PiecewiseLinearLift,
    cover_alpha,
)

logger = logging.getLogger(__name__)

EPS_ORBIT = 1e-7
ORBIT_GRID = 512
ORBIT_RADIUS = 8
WORD_CAP = 200_000
CONTRACT_TOL = 0.05


@dataclass(frozen=True, order=True)
class Letter:
    label: str
    exponent: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.label, -self.exponent)

    def __str__(self) -> str:
        return self.label if self.exponent == 1 else f"{self.label}^-1"

    @classmethod
    def parse(cls, token: str) -> "Letter":
        if token.endswith("^-1"):
            return cls(token[:-3], -1)
        return cls(token, 1)


@dataclass(frozen=True)
class Word:
    """Freely reduced word in the generators and their inverses."""
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        reduced: list[Letter] = []
        for letter in self.letters:
            if reduced and reduced[-1] == letter.inverse():
                reduced.pop()
            else:
                reduced.append(letter)
        object.__setattr__(self, "letters", tuple(reduced))

    @classmethod
    def parse(cls, text: str) -> "Word":
        tokens = text.split()
        if tokens in ([], ["e"]):
            return cls()
        return cls(tuple(Letter.parse(t) for t in tokens))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(letter.inverse() for letter in reversed(self.letters)))

    def __str__(self) -> str:
        return " ".join(str(letter) for letter in self.letters) or "e"


@dataclass(frozen=True, eq=False)
class ActionSpec:
    """
    Generators of an action, keyed by label. Inverses are closed automatically:
    letter index 2i is generator i and 2i + 1 its inverse.
    """
    generators: tuple[tuple[str, Homeo], ...]
    name: str = "custom"

    def __post_init__(self):
        labels = [label for label, _ in self.generators]
        if not labels:
            raise PreconditionError("an action needs at least one generator", operation="ActionSpec")
        if len(set(labels)) != len(labels):
            raise PreconditionError("generator labels must be unique", operation="ActionSpec",
                                    evidence={"labels": labels})
        for label in labels:
            if not label or any(ch.isspace() for ch in label) or "^" in label or label == "e":
                raise PreconditionError(f"invalid generator label '{label}'", operation="ActionSpec")
        letters, homeos = [], []
        for label, g in self.generators:
            letters += [Letter(label, 1), Letter(label, -1)]
            homeos += [g, g.inverse()]
        object.__setattr__(self, "_letters", tuple(letters))
        object.__setattr__(self, "_homeos", tuple(homeos))
        object.__setattr__(self, "_index", {letter: i for i, letter in enumerate(letters)})

    @classmethod
    def from_homeos(cls, generators: dict[str, Homeo], name: str = "custom") -> "ActionSpec":
        return cls(tuple(generators.items()), name)

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.generators]

    @property
    def letters(self) -> tuple[Letter, ...]:
        return self._letters

    def letter_index(self, letter: Letter) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise PreconditionError(f"unknown letter '{letter}'", operation="ActionSpec") from None

    @staticmethod
    def inverse_index(i):
        return np.bitwise_xor(i, 1)

    def homeo(self, letter: Letter | int) -> Homeo:
        i = letter if isinstance(letter, (int, np.integer)) else self.letter_index(letter)
        return self._homeos[i]

    def generator(self, label: str) -> Homeo:
        return self.homeo(Letter(label, 1))

    def evaluate(self, word: Word) -> Homeo:
        if not word.letters:
            return Homeo.identity()
        return Homeo(CompositionLift(tuple(self.homeo(letter).lift for letter in word.letters)))

    def apply(self, word: Word, x):
        x = np.asarray(x, dtype=float)
        for letter in reversed(word.letters):
            x = np.asarray(self.homeo(letter)(x))
        return wrap(x)

    def apply_letters(self, indices: np.ndarray, x: np.ndarray, lifted: bool = False) -> np.ndarray:
        """Apply letter indices[i] to row i of x (circle or lift level)."""
        out = np.array(x, dtype=float, copy=True)
        for i, g in enumerate(self._homeos):
            rows = indices == i
            if np.any(rows):
                out[rows] = g.lift(x[rows]) if lifted else g(x[rows])
        return out

    def describe(self) -> list[dict[str, Any]]:
        return [{"label": label, **g.describe()} for label, g in self.generators]

    @classmethod
    def from_descriptors(cls, descriptors: list[dict[str, Any]], name: str = "custom") -> "ActionSpec":
        generators = []
        for d in descriptors:
            d = dict(d)
            label = d.pop("label")
            generators.append((label, Homeo.from_descriptor(d)))
        return cls(tuple(generators), name)


def enumerate_words(spec: ActionSpec, radius: int) -> Iterator[Word]:
    """Reduced words of length <= radius, breadth first."""
    frontier = [Word()]
    yield Word()
    for _ in range(radius):
        nxt = []
        for word in frontier:
            for letter in spec.letters:
                if word.letters and word.letters[0] == letter.inverse():
                    continue
                w = Word((letter,) + word.letters)
                nxt.append(w)
                yield w
        frontier = nxt


def random_words(spec: ActionSpec, rng: np.random.Generator, count: int,
                 max_length: int) -> list[Word]:
    """Uniform letters with lengths uniform in 1..max_length, freely reduced."""
    lengths = rng.integers(1, max_length + 1, size=count)
    return [Word(tuple(spec.letters[i] for i in rng.integers(0, len(spec.letters), size=n)))
            for n in lengths]


class ClassificationKind(Enum):
    FINITE_ORBIT = "FiniteOrbit"
    MINIMAL = "Minimal"
    EXCEPTIONAL_MINIMAL = "ExceptionalMinimal"


@dataclass(frozen=True)
class Classification:
    kind: ClassificationKind
    size: Optional[int] = None
    gaps: tuple[Arc, ...] = ()
    evidence: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "size": self.size,
            "gaps": [gap.to_dict() for gap in self.gaps],
            "evidence": self.evidence,
        }


@dataclass(frozen=True, eq=False)
class OrbitClosure:
    occupancy: np.ndarray
    gaps: tuple[Arc, ...]
    points: np.ndarray
    evaluations: int
    max_gap: float


def _empty_runs(occupancy: np.ndarray) -> list[Arc]:
    n = occupancy.size
    if occupancy.all():
        return []
    if not occupancy.any():
        return [Arc.from_length(0.0, 1.0)]
    start = int(np.argmax(occupancy))
    rolled = np.roll(occupancy, -start)
    gaps, run = [], None
    for i, filled in enumerate(np.append(rolled, True)):
        if not filled and run is None:
            run = i
        elif filled and run is not None:
            gaps.append(Arc.from_length(((run + start) % n) / n, (i - run) / n))
            run = None
    return gaps


def _max_cyclic_gap(points: np.ndarray) -> float:
    if points.size < 2:
        return 1.0
    pts = np.sort(points)
    return float(np.max(np.diff(np.append(pts, pts[0] + 1.0))))


def orbit_closure(spec: ActionSpec, seed, radius: int = ORBIT_RADIUS, grid: int = ORBIT_GRID,
                  refine: int = 64, cap: int = WORD_CAP) -> OrbitClosure:
    """
    Apply reduced words of length <= radius to seed.

    Images are deduplicated on a lattice `refine` times finer than the grid; a word
    whose image lands in an already visited fine cell is not extended.
    """
    if radius < 1:
        raise PreconditionError("radius must be positive", operation="orbit_closure")
    fine = grid * refine
    visited = np.zeros(fine, dtype=bool)
    seed = float(wrap(float(seed)))
    visited[int(seed * fine) % fine] = True
    points = [np.array([seed])]
    frontier = np.array([seed])
    last = np.array([-1])
    n_letters = len(spec.letters)
    evaluations = 0

    for _ in range(radius):
        xs = np.repeat(frontier, n_letters)
        letters = np.tile(np.arange(n_letters), frontier.size)
        allowed = letters != ActionSpec.inverse_index(np.repeat(last, n_letters))
        xs, letters = xs[allowed], letters[allowed]
        evaluations += xs.size
        if evaluations > cap:
            raise OrbitExplosionError("orbit explosion", operation="orbit_closure",
                                      evidence={"evaluations": evaluations, "cap": cap})
        images = spec.apply_letters(letters, xs)
        cells = np.floor(images * fine).astype(np.int64) % fine
        fresh = ~visited[cells]
        cells, images, letters = cells[fresh], images[fresh], letters[fresh]
        cells, first = np.unique(cells, return_index=True)
        visited[cells] = True
        frontier, last = images[first], letters[first]
        if frontier.size == 0:
            break
        points.append(frontier)

    occupancy = visited.reshape(grid, refine).any(axis=1)
    all_points = np.concatenate(points)
    return OrbitClosure(occupancy, tuple(_empty_runs(occupancy)), all_points, evaluations,
                        _max_cyclic_gap(all_points))


def _nearest_distance(sorted_points: np.ndarray, queries: np.ndarray) -> np.ndarray:
    n = sorted_points.size
    idx = np.searchsorted(sorted_points, queries)
    right = sorted_points[idx % n]
    left = sorted_points[(idx - 1) % n]
    return np.minimum(circle_distance(queries, right), circle_distance(queries, left))


def finite_orbit_size(spec: ActionSpec, seed: float, max_size: int = 256,
                      eps: float = EPS_ORBIT) -> Optional[int]:
    """Cardinality of the orbit of seed if it closes up within max_size points."""
    points = np.array([float(wrap(seed))])
    frontier = points
    while frontier.size:
        images = np.concatenate([g(frontier) for g in spec._homeos])
        images = np.sort(np.atleast_1d(images))
        keep = np.append(True, np.diff(images) >= eps)
        images = images[keep]
        if images.size > 1 and images[0] + 1.0 - images[-1] < eps:
            images = images[:-1]
        fresh = images[_nearest_distance(np.sort(points), images) >= eps]
        if points.size + fresh.size > max_size:
            return None
        points = np.concatenate([points, fresh])
        frontier = fresh
    return int(points.size)


def periodic_points(g: Homeo, samples: int = 1024) -> list[float]:
    """Fixed points of a circle homeomorphism, by bracketing and root refinement."""
    lift = g.canonical_lift()
    x = np.linspace(0.0, 1.0, samples + 1)
    d = np.asarray(lift(x)) - x
    if np.max(np.abs(d - np.rint(d))) < 1e-9:
        # every point is fixed
        return []
    roots = []
    for m in range(int(np.floor(d.min())), int(np.ceil(d.max())) + 1):
        r = d - m
        for i in np.flatnonzero(r[:-1] * r[1:] <= 0):
            if r[i] == 0:
                roots.append(float(x[i]))
                continue
            roots.append(brentq(lambda s: float(lift(s)) - s - m, x[i], x[i + 1], xtol=1e-14))
    return sorted({round(float(wrap(r)), 12) for r in roots})


@dataclass(frozen=True)
class ClassifyParams:
    seeds: int = 4
    radii: tuple[int, int] = (4, ORBIT_RADIUS)
    grid: int = ORBIT_GRID
    refine: int = 64
    word_cap: int = WORD_CAP
    max_finite_orbit: int = 256
    eps_orbit: float = EPS_ORBIT
    shrink_ratio: float = 0.8
    persist_ratio: float = 0.9
    persist_cells: int = 4
    rng_seed: int = 0


def _finite_candidates(spec: ActionSpec, rng: np.random.Generator, count: int) -> list[float]:
    candidates = list(rng.random(count))
    words = [w for w in enumerate_words(spec, 2) if w.letters]
    for w in words:
        candidates += periodic_points(spec.evaluate(w))
    return candidates


def classify(spec: ActionSpec, params: ClassifyParams = ClassifyParams()) -> Classification:
    """Trichotomy by orbit evidence: finite orbit, minimal, or exceptional minimal set."""
    rng = np.random.default_rng(params.rng_seed)
    candidates = _finite_candidates(spec, rng, max(params.seeds, 8))
    sizes = [finite_orbit_size(spec, c, params.max_finite_orbit, params.eps_orbit)
             for c in candidates]
    closed = sorted({s for s in sizes if s is not None})
    logger.debug("Finite orbit sizes found: %s", closed)
    if closed:
        if len(closed) > 1:
            raise InconclusiveClassificationError(
                "inconclusive: finite orbits of different cardinalities",
                operation="classify", evidence={"sizes": closed})
        return Classification(ClassificationKind.FINITE_ORBIT, size=closed[0],
                              evidence={"candidates": len(candidates),
                                        "closed": sum(s is not None for s in sizes)})

    r1, r2 = params.radii
    per_seed = []
    last_closure = None
    for seed in rng.random(params.seeds):
        c1 = orbit_closure(spec, seed, r1, params.grid, params.refine, params.word_cap)
        c2 = orbit_closure(spec, seed, r2, params.grid, params.refine, params.word_cap)
        ratio = c2.max_gap / c1.max_gap if c1.max_gap > 0 else 0.0
        per_seed.append({
            "seed": float(seed),
            "full": bool(c2.occupancy.all()),
            "gap_small_radius": c1.max_gap,
            "gap_large_radius": c2.max_gap,
            "ratio": ratio,
        })
        last_closure = c2

    persist_min = params.persist_cells / params.grid
    minimal = [s["full"] or s["ratio"] <= params.shrink_ratio for s in per_seed]
    exceptional = [not s["full"] and s["ratio"] >= params.persist_ratio
                   and s["gap_large_radius"] >= persist_min for s in per_seed]
    evidence = {"radii": [r1, r2], "grid": params.grid, "seeds": per_seed}
    if all(minimal):
        return Classification(ClassificationKind.MINIMAL, evidence=evidence)
    if all(exceptional):
        gaps = tuple(g for g in last_closure.gaps if g.length >= persist_min)
        return Classification(ClassificationKind.EXCEPTIONAL_MINIMAL, gaps=gaps, evidence=evidence)
    raise InconclusiveClassificationError("inconclusive: orbit evidence conflicts",
                                          operation="classify", evidence=evidence)


@dataclass(frozen=True)
class ContractionResult:
    contracts: bool
    word: Word
    min_length: float

    def to_dict(self) -> dict[str, Any]:
        return {"contracts": self.contracts, "word": str(self.word), "min_length": self.min_length}


def _beam_contract(spec: ActionSpec, lefts: np.ndarray, lengths: np.ndarray, radius: int,
                   beam: int, tol: float, track_words: bool = False):
    """
    Beam search for words shrinking many arcs at once.

    Arcs are carried as lift endpoints (X, Y); the image of [X, Y] under a letter
    has length G(Y) - G(X). Returns the smallest length reached per arc and,
    when tracked, the witness letter sequences.
    """
    n = lefts.size
    lifts = [g.lift for g in spec._homeos]
    n_letters = len(lifts)
    inverse = ActionSpec.inverse_index(np.arange(n_letters))
    X = np.asarray(lefts, dtype=float)[:, None]
    Y = X + np.asarray(lengths, dtype=float)[:, None]
    last = np.full((n, 1), -1)
    best = np.asarray(lengths, dtype=float).copy()
    best_at = np.full((n, 2), -1)
    history = []
    rows = np.arange(n)[:, None]

    for depth in range(radius):
        width = X.shape[1]
        cx = np.empty((n, width, n_letters))
        cy = np.empty((n, width, n_letters))
        for i, lift in enumerate(lifts):
            cx[:, :, i] = lift(X)
            cy[:, :, i] = lift(Y)
        size = cy - cx
        size[last[:, :, None] == inverse[None, None, :]] = np.inf
        size = size.reshape(n, -1)
        cx = cx.reshape(n, -1)

        order = np.argsort(size, axis=1, kind="stable")
        ordered = np.take_along_axis(size, order, axis=1)
        starts = np.take_along_axis(cx, order, axis=1)
        duplicate = np.zeros_like(ordered, dtype=bool)
        duplicate[:, 1:] = (np.abs(np.diff(ordered, axis=1)) < 1e-13) & (
            circle_distance(starts[:, 1:], starts[:, :-1]) < 1e-12)
        ordered = np.where(duplicate, np.inf, ordered)
        order = np.take_along_axis(order, np.argsort(ordered, axis=1, kind="stable"), axis=1)
        chosen = order[:, :beam]

        parent, letter = chosen // n_letters, chosen % n_letters
        X = np.take_along_axis(cx, chosen, axis=1)
        Y = X + np.take_along_axis(size, chosen, axis=1)
        shift = np.floor(X)
        X, Y = X - shift, Y - shift
        last = letter
        if track_words:
            history.append((parent, letter))

        current = Y[:, 0] - X[:, 0]
        improved = current < best
        best = np.where(improved, current, best)
        best_at[improved] = np.column_stack([np.full(improved.sum(), depth),
                                             np.zeros(improved.sum(), dtype=int)])
        if np.all(best < tol) or not np.any(np.isfinite(Y)):
            break

    words = None
    if track_words:
        words = []
        for i in range(n):
            depth, pos = best_at[i]
            letters = []
            while depth >= 0:
                parent, letter = history[depth]
                letters.append(spec.letters[letter[i, pos]])
                pos = parent[i, pos]
                depth -= 1
            # letters were collected outermost first
            words.append(Word(tuple(letters)))
    return best, words


def contracts(spec: ActionSpec, arc: Arc, radius: int = 10, tol: float = CONTRACT_TOL,
              beam: int = 16) -> ContractionResult:
    """Search words of length <= radius for one shrinking arc below tol."""
    if not arc.is_proper:
        raise PreconditionError("arc must be proper", operation="contracts",
                                evidence={"length": arc.length})
    best, words = _beam_contract(spec, np.array([arc.left]), np.array([arc.length]),
                                 radius, beam, tol, track_words=True)
    return ContractionResult(bool(best[0] < tol), words[0], float(best[0]))


@dataclass(frozen=True)
class Dichotomy:
    elementary: bool
    reason: str
    classification: Classification

    def to_dict(self) -> dict[str, Any]:
        return {"elementary": self.elementary, "reason": self.reason,
                "classification": self.classification.to_dict()}


def has_contracting_arc(spec: ActionSpec, radius: int = 32, length: float = 0.25,
                        probes: int = 8, tol: float = CONTRACT_TOL, beam: int = 16) -> bool:
    lefts = (np.arange(probes) + 0.5) / probes
    best, _ = _beam_contract(spec, lefts, np.full(probes, length), radius, beam, tol)
    return bool(np.any(best < tol))


def dichotomy(spec: ActionSpec, classification: Optional[Classification] = None,
              params: ClassifyParams = ClassifyParams(), radius: int = 32) -> Dichotomy:
    """Elementary iff there is a finite orbit, or the action is minimal and no arc contracts."""
    classification = classification or classify(spec, params)
    if classification.kind is ClassificationKind.FINITE_ORBIT:
        return Dichotomy(True, "finite orbit", classification)
    if classification.kind is ClassificationKind.EXCEPTIONAL_MINIMAL:
        return Dichotomy(False, "exceptional minimal set", classification)
    if has_contracting_arc(spec, radius):
        return Dichotomy(False, "minimal with contracting arcs", classification)
    return Dichotomy(True, "minimal and equicontinuous", classification)


@dataclass(frozen=True)
class ThetaParams:
    samples: int = 128
    radius: int = 128
    beam: int = 16
    bisection_steps: int = 18
    contract_tol: float = CONTRACT_TOL
    order_tol: float = 1e-3
    max_order: int = 12
    grid: int = 512
    commute_tol: float = 0.05


@dataclass(frozen=True, eq=False)
class ThetaResult:
    k: int
    theta: Homeo
    samples_x: np.ndarray
    samples_y: np.ndarray
    order_residual: float
    commute_defect: dict[str, float]

    def to_dict(self) -> dict[str, Any]:
        return {"k": self.k, "order_residual": self.order_residual,
                "commute_defect": self.commute_defect,
                "theta": self.theta.describe()}


def _iterate_residual(lift: Lift, k: int, grid: int) -> float:
    x = np.arange(grid) / grid
    y = x
    for _ in range(k):
        y = np.asarray(lift(y))
    return float(np.max(np.abs(y - x - 1.0)))


def detect_theta(spec: ActionSpec, params: ThetaParams = ThetaParams(),
                 classification: Optional[Classification] = None) -> ThetaResult:
    """
    Fit the generator of the centralizer from maximal contractible arcs.

    For sampled x, theta(x) is the supremum of y with [x, y) contractible at the
    working radius, located by bisection on the arc length. The raw values are
    lower bounds; their monotone envelope is fitted by a PL map.
    """
    classification = classification or classify(spec)
    if classification.kind is not ClassificationKind.MINIMAL:
        raise PreconditionError("theta detection needs a minimal action", operation="detect_theta",
                                evidence={"kind": classification.kind.value})
    if not has_contracting_arc(spec, min(params.radius, 32), tol=params.contract_tol):
        raise PreconditionError("theta detection needs an unbounded action",
                                operation="detect_theta")

    n = params.samples
    xs = (np.arange(n) + 0.5) / n
    lo, hi = np.zeros(n), np.ones(n)
    for step in range(params.bisection_steps):
        mid = (lo + hi) / 2
        best, _ = _beam_contract(spec, xs, mid, params.radius, params.beam, params.contract_tol)
        ok = best < params.contract_tol
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
        logger.debug("theta bisection %d: mean length %.6f", step, float(lo.mean()))

    ys = xs + lo
    # lower bounds of an increasing map: take the running max, twice around
    for _ in range(2):
        ys = np.maximum.accumulate(ys)
        ys[0] = max(ys[0], ys[-1] - 1.0)
    lift = PiecewiseLinearLift.from_samples(xs, ys)
    theta = Homeo(lift)

    residuals = {k: _iterate_residual(lift, k, params.grid) for k in range(1, params.max_order + 1)}
    orders = [k for k, r in residuals.items() if r < params.order_tol]
    if not orders:
        raise ThetaNotPeriodicError("theta not periodic within tolerance", operation="detect_theta",
                                    evidence={"residuals": residuals})
    k = orders[0]

    grid = np.arange(params.grid) / params.grid
    defects = {}
    for label, g in spec.generators:
        defects[label] = float(np.max(circle_distance(theta(g(grid)), g(theta(grid)))))
    if max(defects.values()) > params.commute_tol:
        raise ThetaNotPeriodicError("theta does not commute with the generators",
                                    operation="detect_theta", evidence={"defects": defects, "k": k})
    return ThetaResult(k, theta, xs, ys, residuals[k], defects)


@dataclass(frozen=True, eq=False)
class QuotientResult:
    spec: ActionSpec
    conjugacy: Homeo
    alphas: dict[str, int]


def proximal_quotient(spec: ActionSpec, k: int, theta: Homeo, grid: int = 2048,
                      tol: float = 5e-3) -> QuotientResult:
    """
    Conjugate theta to the rotation by 1/k with the arc-mass map of the theta-orbit
    average of Lebesgue measure, then push every generator through z -> kz.
    """
    if k < 1:
        raise PreconditionError("order must be positive", operation="proximal_quotient")
    if k == 1:
        return QuotientResult(spec, Homeo.identity(), {label: 0 for label in spec.labels})

    theta_lift = theta.lift
    x = np.arange(grid) / grid
    backward = theta_lift.inverse()
    h_values = np.zeros(grid)
    y, y0 = x.copy(), np.array(0.0)
    for _ in range(k):
        h_values += y - y0
        y, y0 = np.asarray(backward(y)), np.asarray(backward(y0))
    h_values /= k
    conjugacy_lift = PiecewiseLinearLift.from_samples(x, h_values)
    conjugacy = Homeo(conjugacy_lift)
    conjugacy_inv = conjugacy_lift.inverse()

    generators, alphas = [], {}
    for label, g in spec.generators:
        conjugated = Homeo(CompositionLift((conjugacy_lift, g.lift, conjugacy_inv)))
        q_values = k * np.asarray(conjugated.lift(x / k))
        q_values -= circle_floor(q_values[0])
        try:
            quotient = Homeo(PiecewiseLinearLift.from_samples(x, q_values))
            alphas[label] = cover_alpha(conjugated, quotient, k, eps=tol)
        except CoveringRelationError as e:
            raise QuotientInconsistentError("quotient inconsistent", operation="proximal_quotient",
                                            evidence={"generator": label, **e.evidence}) from e
        generators.append((label, quotient))
    logger.debug("Quotient of degree %d built for %s.", k, spec.name)
    return QuotientResult(ActionSpec(tuple(generators), f"{spec.name}/theta"), conjugacy, alphas)


def word_translation_numbers(spec: ActionSpec, words: list[Word], iterations: int) -> np.ndarray:
    """Translation numbers of the canonical lifts of many words, iterated together."""
    n = len(words)
    depth = max((len(w) for w in words), default=0)
    table = np.full((n, max(depth, 1)), -1)
    for i, w in enumerate(words):
        for j, letter in enumerate(w.letters):
            table[i, depth - len(w) + j] = spec.letter_index(letter)

    def step(x):
        for col in reversed(range(table.shape[1])):
            x = spec.apply_letters(table[:, col], x, lifted=True)
        return x

    shifts = circle_floor(step(np.zeros(n)))
    x = np.zeros(n)
    for _ in range(iterations):
        x = step(x) - shifts
    return x / iterations
