"""
Circle arithmetic on Z\\R.

Points are reals in [0, 1). Everything here is vectorised over numpy arrays;
scalar inputs give scalar outputs.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from circlelab.exceptions import NoConvergentSubsequenceError, PreconditionError

logger = logging.getLogger(__name__)

EPS_CIRCLE = 1e-9
TOL_HELLY = 1e-3
HELLY_GRID = 257

ArrayLike = Union[float, np.ndarray, "CirclePoint"]


def _values(x) -> np.ndarray:
    if isinstance(x, CirclePoint):
        return np.asarray(x.value, dtype=float)
    return np.asarray(x, dtype=float)


def _scalar_or_array(result: np.ndarray):
    if result.ndim == 0:
        return result.item()
    return result


def wrap(x):
    """Reduce reals to their representative in [0, 1)."""
    r = np.mod(_values(x), 1.0)
    # np.mod returns 1.0 for tiny negative inputs
    r = np.where(r >= 1.0, 0.0, r)
    return _scalar_or_array(r)


def circle_floor(x, eps: float = EPS_CIRCLE):
    """Integer part with a coincidence band: values within eps below an integer round up."""
    return _scalar_or_array(np.floor(_values(x) + eps))


def circle_distance(x, y):
    """Arc distance, symmetric in x and y down to the last bit."""
    x, y = _values(x), _values(y)
    forward, backward = np.mod(y - x, 1.0), np.mod(x - y, 1.0)
    d = np.minimum(np.minimum(forward, backward), np.minimum(1.0 - forward, 1.0 - backward))
    return _scalar_or_array(d)


def coincide(x, y, eps: float = EPS_CIRCLE):
    return _scalar_or_array(np.asarray(circle_distance(x, y)) < eps)


@dataclass(frozen=True, eq=False)
class CirclePoint:
    """A coset of Z in R, stored by its representative in [0, 1)."""
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(wrap(self.value)))

    def coincides(self, other: "CirclePoint", eps: float = EPS_CIRCLE) -> bool:
        return bool(coincide(self.value, _values(other), eps))

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        return f"CirclePoint({self.value!r})"


def orient(x: ArrayLike, y: ArrayLike, z: ArrayLike, eps: float = EPS_CIRCLE):
    """Orientation cocycle: +1 for positive cyclic order, -1 for negative, 0 on coincidences."""
    x, y, z = _values(x), _values(y), _values(z)
    a = np.mod(y - x, 1.0)
    b = np.mod(z - x, 1.0)
    result = np.where(a < b, 1, -1)
    degenerate = (
        np.asarray(coincide(x, y, eps))
        | np.asarray(coincide(y, z, eps))
        | np.asarray(coincide(x, z, eps))
    )
    return _scalar_or_array(np.where(degenerate, 0, result).astype(int))


@dataclass(frozen=True)
class Arc:
    """
    Arc of the circle from `left` counterclockwise to `right`.

    `right` is stored at the lift level, so `left <= right <= left + 1`. A length of
    exactly 1 denotes the whole circle cut open at `left`.
    """
    left: float
    right: float
    closed_left: bool = False
    closed_right: bool = False

    def __post_init__(self):
        left = float(wrap(self.left))
        span = float(self.right) - float(self.left)
        if not 0.0 <= span <= 1.0:
            span = float(wrap(span))
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", left + span)

    @classmethod
    def between(cls, x, y, closed_left: bool = False, closed_right: bool = False) -> "Arc":
        x, y = float(_values(x)), float(_values(y))
        return cls(x, x + float(wrap(y - x)), closed_left, closed_right)

    @classmethod
    def from_length(cls, left, length: float, closed_left: bool = False) -> "Arc":
        if not 0.0 <= length <= 1.0:
            raise PreconditionError("arc length must lie in [0, 1]", operation="Arc",
                                    evidence={"length": length})
        left = float(_values(left))
        return cls(left, left + length, closed_left, False)

    @property
    def length(self) -> float:
        return self.right - self.left

    @property
    def is_proper(self) -> bool:
        return self.length < 1.0

    def contains(self, z, eps: float = EPS_CIRCLE):
        z = _values(z)
        right = wrap(self.right)
        if self.is_proper:
            inside = np.asarray(orient(self.left, z, right, eps)) == 1
        else:
            inside = ~np.asarray(coincide(z, self.left, eps))
        if self.closed_left:
            inside = inside | np.asarray(coincide(z, self.left, eps))
        if self.closed_right:
            inside = inside | np.asarray(coincide(z, right, eps))
        return _scalar_or_array(inside)

    def to_dict(self) -> dict:
        return {"left": self.left, "length": self.length}


def smallest_covering_arc(points: np.ndarray):
    """
    Smallest closed arcs containing each row of `points`.

    Returns `(left, length)` arrays over the leading axes. The arc starts right after
    the largest cyclic gap between consecutive sorted points.
    """
    pts = np.sort(np.mod(np.asarray(points, dtype=float), 1.0), axis=-1)
    closing = pts[..., :1] + 1.0
    gaps = np.diff(np.concatenate([pts, closing], axis=-1), axis=-1)
    widest = np.argmax(gaps, axis=-1)
    n = pts.shape[-1]
    left = np.take_along_axis(pts, ((widest + 1) % n)[..., None], axis=-1)[..., 0]
    length = 1.0 - np.take_along_axis(gaps, widest[..., None], axis=-1)[..., 0]
    length = np.where(n == 1, 0.0, np.maximum(length, 0.0))
    return left, length


def covering_midpoint(points: np.ndarray):
    left, length = smallest_covering_arc(points)
    return np.mod(left + length / 2.0, 1.0), length


@dataclass(frozen=True, eq=False)
class EmpiricalMeasure:
    """Finite probability measure given by weighted atoms, sorted and merged."""
    points: np.ndarray
    weights: np.ndarray

    @classmethod
    def from_atoms(cls, points, weights=None, eps: float = EPS_CIRCLE) -> "EmpiricalMeasure":
        pts = np.mod(np.atleast_1d(np.asarray(points, dtype=float)), 1.0)
        pts = np.where(pts >= 1.0, 0.0, pts)
        if pts.size == 0:
            raise PreconditionError("a measure needs at least one atom",
                                    operation="EmpiricalMeasure")
        if weights is None:
            w = np.full(pts.size, 1.0 / pts.size)
        else:
            w = np.atleast_1d(np.asarray(weights, dtype=float))
            if w.shape != pts.shape or np.any(w < 0) or w.sum() <= 0:
                raise PreconditionError("weights must be nonnegative with positive total",
                                        operation="EmpiricalMeasure")
            w = w / w.sum()

        order = np.argsort(pts, kind="stable")
        pts, w = pts[order], w[order]
        starts = np.concatenate([[True], np.diff(pts) >= eps])
        groups = np.cumsum(starts) - 1
        merged_w = np.bincount(groups, weights=w)
        merged_p = pts[starts]
        if merged_p.size > 1 and merged_p[0] + 1.0 - merged_p[-1] < eps:
            merged_w[0] += merged_w[-1]
            merged_p, merged_w = merged_p[:-1], merged_w[:-1]
        return cls(merged_p, merged_w)

    @classmethod
    def uniform(cls, n: int, offset: float = 0.5) -> "EmpiricalMeasure":
        return cls.from_atoms((np.arange(n) + offset) / n)

    def __len__(self) -> int:
        return int(self.points.size)

    def atoms(self) -> list[tuple[CirclePoint, float]]:
        return [(CirclePoint(p), float(w)) for p, w in zip(self.points, self.weights)]

    def mass(self, arc: Arc, eps: float = EPS_CIRCLE) -> float:
        return float(self.weights[np.asarray(arc.contains(self.points, eps), dtype=bool)].sum())

    def pushforward(self, f: Callable[[np.ndarray], np.ndarray]) -> "EmpiricalMeasure":
        return EmpiricalMeasure.from_atoms(f(self.points), self.weights)

    def covering_arc(self) -> Arc:
        left, length = smallest_covering_arc(self.points)
        return Arc.from_length(float(left), float(length), closed_left=True)

    @property
    def diameter(self) -> float:
        return float(smallest_covering_arc(self.points)[1])

    def folded(self, k: int) -> "EmpiricalMeasure":
        """Image under z -> kz."""
        return EmpiricalMeasure.from_atoms(k * self.points, self.weights)


def quasi_conjugacy_eval(b, mu: EmpiricalMeasure, x, eps: float = EPS_CIRCLE):
    """mu([b, x)) mod 1; an atom at b counts, an atom at x does not."""
    b = float(_values(b))
    offsets = np.mod(mu.points - b, 1.0)
    offsets = np.where(offsets > 1.0 - eps, 0.0, offsets)
    order = np.argsort(offsets, kind="stable")
    sorted_offsets = offsets[order]
    cumulative = np.concatenate([[0.0], np.cumsum(mu.weights[order])])

    dx = np.mod(_values(x) - b, 1.0)
    dx = np.where(dx > 1.0 - eps, 0.0, dx)
    counted = np.searchsorted(sorted_offsets, dx - eps, side="left")
    mass = np.where(dx < eps, 0.0, cumulative[counted])
    return wrap(mass)


@dataclass(frozen=True, eq=False)
class MonotoneSample:
    """A sequence of monotone maps sampled on a common grid, one row per map."""
    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.atleast_2d(np.asarray(self.values, dtype=float))
        if values.shape[1] != grid.size:
            raise PreconditionError("sample rows must match the grid",
                                    operation="MonotoneSample",
                                    evidence={"grid": grid.size, "columns": values.shape[1]})
        if np.any(np.diff(grid) <= 0):
            raise PreconditionError("grid must be strictly increasing", operation="MonotoneSample")
        if values.shape[0] and np.any(np.diff(values, axis=1) < -1e-12):
            raise PreconditionError("every row must be nondecreasing", operation="MonotoneSample")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_maps(cls, maps, grid=None) -> "MonotoneSample":
        grid = np.linspace(0.0, 1.0, HELLY_GRID) if grid is None else np.asarray(grid, float)
        return cls(grid, np.array([np.asarray(m(grid), dtype=float) for m in maps]))


def refinement_order(n: int) -> list[int]:
    """Grid indices coarse to fine: both ends, then successive midpoints."""
    if n <= 0:
        return []
    if n == 1:
        return [0]
    order = [0, n - 1]
    queue = deque([(0, n - 1)])
    while queue:
        lo, hi = queue.popleft()
        if hi - lo < 2:
            continue
        mid = (lo + hi) // 2
        order.append(mid)
        queue.append((lo, mid))
        queue.append((mid, hi))
    return order


def _dominant_cluster(column: np.ndarray, tol: float) -> np.ndarray:
    order = np.argsort(column, kind="stable")
    breaks = np.diff(column[order]) >= tol
    labels = np.empty(column.size, dtype=int)
    labels[order] = np.concatenate([[0], np.cumsum(breaks)])

    counts = np.bincount(labels)
    first = np.full(counts.size, column.size)
    np.minimum.at(first, labels, np.arange(column.size))
    best = min(range(counts.size), key=lambda c: (-counts[c], first[c]))

    keep = labels == best
    # a finite prefix never affects convergence
    keep[: first[best]] = True
    return keep


def helly_subsequence(sample: MonotoneSample, tol: float = TOL_HELLY, min_length: int = 2) -> list[int]:
    """
    Extract row indices along which the maps converge pointwise on the grid.

    Grid points are visited coarse to fine. At each one the rows are clustered by
    value (single linkage at `tol`) and the most populated cluster is kept,
    together with the rows that precede its first member.
    """
    rows = sample.values.shape[0]
    if rows == 0:
        raise PreconditionError("helly_subsequence needs at least one row",
                                operation="helly_subsequence")
    indices = np.arange(rows)
    for j in refinement_order(sample.grid.size):
        indices = indices[_dominant_cluster(sample.values[indices, j], tol)]
    if indices.size < min_length:
        raise NoConvergentSubsequenceError(
            "no convergent subsequence at tolerance",
            operation="helly_subsequence",
            evidence={"rows": rows, "extracted": int(indices.size), "min_length": min_length},
        )
    logger.debug("Extracted %d of %d rows.", indices.size, rows)
    return indices.tolist()
