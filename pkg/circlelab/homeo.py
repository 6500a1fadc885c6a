"""
Orientation-preserving circle homeomorphisms represented by lifts to R.

A lift is an increasing map F of the reals with F(x + 1) = F(x) + 1. Every kind
carries an integer `offset`, the power of the unit translation T absorbed into
evaluation.

Moebius chart: the point x of the circle is the line of slope angle pi*x, i.e.
t = cot(pi x) on the boundary of the upper half-plane. Under this chart the
rotation matrix by angle phi acts as the circle rotation by phi/pi, and
(0 -1; 1 0) is the rotation by 1/2.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, replace
from typing import Any, Sequence

import numpy as np

from circlelab.circle_core import (
    EPS_CIRCLE,
    circle_distance,
    circle_floor,
    coincide,
    orient,
    wrap,
)
from circlelab.exceptions import (
    AlphaOutOfBoundError,
    CoveringRelationError,
    InvalidLiftError,
    NonIntegerCocycleResidueError,
    PreconditionError,
)

logger = logging.getLogger(__name__)

RESIDUE_TOL = 1e-6
KNOT_STEP = 1e-12


@dataclass(frozen=True, eq=False)
class Lift(ABC):
    offset: int = field(default=0, kw_only=True)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        result = np.asarray(self._evaluate(x) + self.offset, dtype=float)
        return result.item() if result.ndim == 0 else result

    @abstractmethod
    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _inverse_candidate(self) -> "Lift":
        """A lift of the inverse circle map, correct up to a power of T."""
        pass

    @abstractmethod
    def _describe(self) -> dict[str, Any]:
        pass

    def inverse(self) -> "Lift":
        candidate = self._inverse_candidate()
        m = int(np.rint(self(candidate(0.0))))
        return candidate.shifted(-m)

    def shifted(self, n: int) -> "Lift":
        n = int(n)
        if n == 0:
            return self
        return replace(self, offset=self.offset + n)

    def compose(self, other: "Lift") -> "CompositionLift":
        """The lift of self after other."""
        left = self.parts if isinstance(self, CompositionLift) and self.offset == 0 else (self,)
        right = other.parts if isinstance(other, CompositionLift) and other.offset == 0 else (other,)
        return CompositionLift(tuple(left) + tuple(right))

    def describe(self) -> dict[str, Any]:
        descriptor = self._describe()
        if self.offset:
            descriptor["offset"] = self.offset
        return descriptor


@dataclass(frozen=True, eq=False)
class RotationLift(Lift):
    angle: float = 0.0

    def _evaluate(self, x):
        return x + self.angle

    def _inverse_candidate(self):
        return RotationLift(-self.angle)

    def _describe(self):
        return {"kind": "rotation", "angle": self.angle}


@dataclass(frozen=True, eq=False)
class MoebiusLift(Lift):
    matrix: tuple[tuple[float, float], tuple[float, float]] = ((1.0, 0.0), (0.0, 1.0))

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (2, 2) or not np.all(np.isfinite(m)):
            raise InvalidLiftError("a Moebius lift needs a finite 2x2 matrix",
                                   operation="MoebiusLift", evidence={"matrix": str(self.matrix)})
        det = float(np.linalg.det(m))
        if det <= 0:
            raise InvalidLiftError("Moebius matrix must have positive determinant",
                                   operation="MoebiusLift", evidence={"det": det})
        m = m / np.sqrt(det)
        object.__setattr__(self, "matrix", tuple(tuple(float(v) for v in row) for row in m))
        (a, b), (c, d) = self.matrix
        alpha = complex(a + d, b - c) / 2
        beta = complex(a - d, -(b + c)) / 2
        object.__setattr__(self, "_phase", float(np.angle(alpha)))
        object.__setattr__(self, "_ratio", beta / alpha)

    def _evaluate(self, x):
        twist = np.angle(1.0 + self._ratio * np.exp(2j * np.pi * x))
        return x - (self._phase + twist) / np.pi

    def _inverse_candidate(self):
        (a, b), (c, d) = self.matrix
        return MoebiusLift(((d, -b), (-c, a)))

    def _describe(self):
        return {"kind": "moebius", "matrix": [list(row) for row in self.matrix]}

    @property
    def trace(self) -> float:
        return self.matrix[0][0] + self.matrix[1][1]


@dataclass(frozen=True, eq=False)
class CyclicCoverLift(Lift):
    """Lift of the degree-k cover of `base`: x -> (base(kx) + branch) / k."""
    base: Lift = field(default_factory=RotationLift)
    k: int = 1
    branch: int = 0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise InvalidLiftError("cover degree must be a positive integer",
                                   operation="CyclicCoverLift", evidence={"k": self.k})

    def _evaluate(self, x):
        return (np.asarray(self.base(self.k * x)) + self.branch) / self.k

    def _inverse_candidate(self):
        return CyclicCoverLift(self.base.inverse(), self.k, -self.branch)

    def _describe(self):
        return {"kind": "cyclic_cover", "base": self.base.describe(), "k": self.k,
                "branch": self.branch}


@dataclass(frozen=True, eq=False)
class PiecewiseLinearLift(Lift):
    """
    Lift interpolating knots (x_i, y_i) over one period.

    Both coordinates must be strictly increasing with x_last = x_0 + 1 and
    y_last = y_0 + 1.
    """
    xs: np.ndarray = field(default_factory=lambda: np.array([0.0, 1.0]))
    ys: np.ndarray = field(default_factory=lambda: np.array([0.0, 1.0]))

    def __post_init__(self):
        xs = np.array(self.xs, dtype=float)
        ys = np.array(self.ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
            raise InvalidLiftError("breakpoints need matching coordinate lists of length >= 2",
                                   operation="PiecewiseLinearLift")
        if np.any(np.diff(xs) <= 0) or np.any(np.diff(ys) <= 0):
            raise InvalidLiftError("breakpoints must be strictly increasing in both coordinates",
                                   operation="PiecewiseLinearLift")
        if abs(xs[-1] - xs[0] - 1.0) > 1e-9 or abs(ys[-1] - ys[0] - 1.0) > 1e-9:
            raise InvalidLiftError("breakpoints must span exactly one period",
                                   operation="PiecewiseLinearLift",
                                   evidence={"x_span": float(xs[-1] - xs[0]),
                                             "y_span": float(ys[-1] - ys[0])})
        xs[-1] = xs[0] + 1.0
        ys[-1] = ys[0] + 1.0
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @classmethod
    def from_samples(cls, x, y) -> "PiecewiseLinearLift":
        """Knots from one period of samples; the closing knot is appended."""
        xs, ys = monotone_knots(x, y)
        return cls(np.append(xs, xs[0] + 1.0), np.append(ys, ys[0] + 1.0))

    def _evaluate(self, x):
        n = np.floor(x - self.xs[0])
        return np.interp(x - n, self.xs, self.ys) + n

    def _inverse_candidate(self):
        return PiecewiseLinearLift(self.ys.copy(), self.xs.copy())

    def _describe(self):
        return {"kind": "piecewise_linear",
                "breakpoints": [[float(a), float(b)] for a, b in zip(self.xs, self.ys)]}


@dataclass(frozen=True, eq=False)
class CompositionLift(Lift):
    """parts[0] after parts[1] after ... after parts[-1]."""
    parts: tuple[Lift, ...] = ()

    def _evaluate(self, x):
        for part in reversed(self.parts):
            x = np.asarray(part(x), dtype=float)
        return x

    def _inverse_candidate(self):
        return CompositionLift(tuple(p.inverse() for p in reversed(self.parts)))

    def _describe(self):
        return {"kind": "composition", "parts": [p.describe() for p in self.parts]}


def monotone_knots(x, y):
    """
    Sort samples by x, average duplicates, and make y strictly increasing within
    one period (y_last < y_0 + 1).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    order = np.argsort(x, kind="stable")
    x, y = x[order], y[order]
    ux, inverse, counts = np.unique(x, return_inverse=True, return_counts=True)
    uy = np.bincount(inverse, weights=y) / counts
    if ux.size == 0 or ux[-1] - ux[0] >= 1.0:
        raise InvalidLiftError("knot abscissae must lie in one half-open period",
                               operation="monotone_knots")
    uy = np.maximum.accumulate(uy) + KNOT_STEP * np.arange(uy.size)
    span = uy[-1] - uy[0]
    limit = 1.0 - KNOT_STEP * (uy.size + 1)
    if span > limit:
        uy = uy[0] + (uy - uy[0]) * (limit / span)
    return ux, uy


def lift_from_descriptor(descriptor: dict[str, Any]) -> Lift:
    """Build a lift from its config descriptor; the inverse of `Lift.describe`."""
    try:
        kind = descriptor["kind"]
        offset = int(descriptor.get("offset", 0))
        if kind == "rotation":
            lift = RotationLift(float(descriptor["angle"]))
        elif kind == "moebius":
            lift = MoebiusLift(tuple(tuple(float(v) for v in row) for row in descriptor["matrix"]))
        elif kind == "cyclic_cover":
            lift = CyclicCoverLift(lift_from_descriptor(descriptor["base"]),
                                   int(descriptor["k"]), int(descriptor.get("branch", 0)))
        elif kind == "piecewise_linear":
            points = np.asarray(descriptor["breakpoints"], dtype=float)
            lift = PiecewiseLinearLift(points[:, 0], points[:, 1])
        elif kind == "composition":
            lift = CompositionLift(tuple(lift_from_descriptor(p) for p in descriptor["parts"]))
        else:
            raise InvalidLiftError(f"unknown lift kind '{kind}'", operation="lift_from_descriptor")
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise InvalidLiftError(f"malformed lift descriptor: {e}",
                               operation="lift_from_descriptor") from e
    return lift.shifted(offset)


@dataclass(frozen=True, eq=False)
class Homeo:
    """Circle homeomorphism; circle evaluation is lift(x) mod 1."""
    lift: Lift

    def __call__(self, x):
        return wrap(self.lift(x))

    def canonical_lift(self, eps: float = EPS_CIRCLE) -> Lift:
        return self.lift.shifted(-int(circle_floor(self.lift(0.0), eps)))

    def compose(self, other: "Homeo") -> "Homeo":
        return Homeo(self.lift.compose(other.lift))

    def inverse(self) -> "Homeo":
        return Homeo(self.lift.inverse())

    def describe(self) -> dict[str, Any]:
        return self.lift.describe()

    @classmethod
    def identity(cls) -> "Homeo":
        return cls(RotationLift(0.0))

    @classmethod
    def rotation(cls, angle: float) -> "Homeo":
        return cls(RotationLift(float(angle)))

    @classmethod
    def moebius(cls, matrix) -> "Homeo":
        return cls(MoebiusLift(tuple(tuple(float(v) for v in row) for row in matrix)))

    @classmethod
    def cover(cls, base: "Homeo", k: int, branch: int = 0) -> "Homeo":
        return cls(CyclicCoverLift(base.canonical_lift(), int(k), int(branch)))

    @classmethod
    def piecewise_linear(cls, xs, ys) -> "Homeo":
        return cls(PiecewiseLinearLift(np.asarray(xs, float), np.asarray(ys, float)))

    @classmethod
    def from_descriptor(cls, descriptor: dict[str, Any]) -> "Homeo":
        return cls(lift_from_descriptor(descriptor))


def canonical_lift(f: Homeo, eps: float = EPS_CIRCLE) -> Lift:
    """The lift with value at 0 in [0, 1), up to the coincidence band."""
    return f.canonical_lift(eps)


def euler_cocycle(f: Homeo, g: Homeo, eps: float = EPS_CIRCLE) -> int:
    """Integer c with canonical(fg) T^c = canonical(f) canonical(g)."""
    value = canonical_lift(f, eps)(canonical_lift(g, eps)(0.0))
    composite = canonical_lift(f.compose(g), eps)(0.0)
    raw = value - composite
    c = int(np.rint(raw))
    if abs(raw - c) > RESIDUE_TOL:
        raise NonIntegerCocycleResidueError(
            "non-integer cocycle residue", operation="euler_cocycle",
            evidence={"value": value, "composite": composite},
        )
    return c


def euler_orientation_residual(f: Homeo, g: Homeo, eps: float = EPS_CIRCLE) -> int:
    """
    2c(f,g) + o(0, f0, fg0) - 1 - (d(fg0) - d(f0) - d(g0)), where d is the
    indicator of coincidence with 0. Vanishes for every pair.
    """
    f0, g0, fg0 = f(0.0), g(0.0), f.compose(g)(0.0)

    def delta(p):
        return int(bool(coincide(p, 0.0, eps)))

    c = euler_cocycle(f, g, eps)
    o = int(orient(0.0, f0, fg0, eps))
    return 2 * c + o - 1 - (delta(fg0) - delta(f0) - delta(g0))


@dataclass(frozen=True)
class RotationNumber:
    value: float
    error_bound: float
    translation: float
    iterations: int

    def to_dict(self) -> dict[str, Any]:
        return {"value": self.value, "error_bound": self.error_bound,
                "translation": self.translation, "iterations": self.iterations}


def rotation_number(f: Homeo, iterations: int = 100_000) -> RotationNumber:
    """Birkhoff quotient of the canonical lift at 0; drift error at most 1/n."""
    if iterations < 1:
        raise PreconditionError("iterations must be positive", operation="rotation_number",
                                evidence={"iterations": iterations})
    lift = canonical_lift(f)
    x = 0.0
    for _ in range(iterations):
        x = float(lift(x))
    translation = x / iterations
    return RotationNumber(float(wrap(translation)), 1.0 / iterations, translation, iterations)


def sup_distance(f: Homeo, g: Homeo, grid: int = 512) -> float:
    x = np.arange(grid) / grid
    return float(np.max(circle_distance(f(x), g(x))))


def cover_alpha(rho1_g: Homeo, rho0_g: Homeo, k: int, grid: int = 256,
                eps: float = 1e-7) -> int:
    """
    Offset a(g) = k * canonical(rho1 g)(0) - canonical(rho0 g)(0) of the degree-k
    covering relation rho0 g (kz) = k rho1 g (z).
    """
    z = np.arange(grid) / grid
    defect = float(np.max(circle_distance(rho0_g(np.mod(k * z, 1.0)), np.mod(k * rho1_g(z), 1.0))))
    if defect > eps:
        raise CoveringRelationError("covering relation violated", operation="cover_alpha",
                                    evidence={"defect": defect, "k": k})
    raw = k * canonical_lift(rho1_g)(0.0) - canonical_lift(rho0_g)(0.0)
    alpha = int(np.rint(raw))
    if abs(raw - alpha) > max(RESIDUE_TOL, k * eps):
        raise CoveringRelationError("covering offset is not an integer",
                                    operation="cover_alpha", evidence={"raw": raw})
    if abs(alpha) > k + 1:
        raise AlphaOutOfBoundError("alpha out of bound", operation="cover_alpha",
                                   evidence={"alpha": alpha, "k": k})
    return alpha


def euler_cover_defect(g1: Homeo, h1: Homeo, g0: Homeo, h0: Homeo, k: int) -> int:
    """c0(g,h) - k c1(g,h) - (a(gh) - a(g) - a(h)); zero for a degree-k cover pair."""
    c0 = euler_cocycle(g0, h0)
    c1 = euler_cocycle(g1, h1)
    a_g = cover_alpha(g1, g0, k)
    a_h = cover_alpha(h1, h0, k)
    a_gh = cover_alpha(g1.compose(h1), g0.compose(h0), k)
    return c0 - k * c1 - (a_gh - a_g - a_h)


def compose_all(homeos: Sequence[Homeo]) -> Homeo:
    if not homeos:
        return Homeo.identity()
    lift = homeos[0].lift
    for h in homeos[1:]:
        lift = lift.compose(h.lift)
    return Homeo(lift)
