"""
Random walks on an acting group and their boundary limits.

A trajectory x1, x2, ... of letters pushes a probability measure nu to
(x1 ... xn) nu. For proximal actions these pushes concentrate on a single
point, the limit point of the walk.
"""

import concurrent.futures
import logging
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
import pandas as pd

from circlelab.circle_core import (
    EmpiricalMeasure,
    circle_distance,
    covering_midpoint,
    smallest_covering_arc,
)
from circlelab.exceptions import PreconditionError
from circlelab.group_action import ActionSpec, Word

logger = logging.getLogger(__name__)

DIRAC_TOL = 1e-3
NU_ATOMS = 64
TAIL_ATOL = 1e-6
# PSL(2, Z) walks need about 240 steps before 95% of the pushes fall below DIRAC_TOL
WALK_LENGTH = 320
PROFILE_SNAPSHOTS = 64


def default_nu() -> EmpiricalMeasure:
    return EmpiricalMeasure.uniform(NU_ATOMS)


@dataclass(frozen=True)
class WalkConfig:
    walk_length: int = WALK_LENGTH
    sample_count: int = 200
    seed: int = 0
    # weights over letters in ActionSpec order: a, a^-1, b, b^-1, ...
    step_distribution: Optional[tuple[float, ...]] = None

    def __post_init__(self):
        if self.walk_length < 1 or self.sample_count < 1:
            raise PreconditionError("walk_length and sample_count must be positive",
                                    operation="WalkConfig")

    def weights(self, spec: ActionSpec) -> np.ndarray:
        n = len(spec.letters)
        if self.step_distribution is None:
            return np.full(n, 1.0 / n)
        w = np.asarray(self.step_distribution, dtype=float)
        if w.shape != (n,) or np.any(w <= 0) or abs(w.sum() - 1.0) > 1e-9:
            raise PreconditionError("step weights must be positive, one per letter, summing to 1",
                                    operation="WalkConfig", evidence={"letters": n})
        return w

    def is_symmetric(self, spec: ActionSpec) -> bool:
        w = self.weights(spec)
        return bool(np.allclose(w[0::2], w[1::2]))

    def trajectories(self, spec: ActionSpec) -> np.ndarray:
        """Letter indices, one row per sample, each drawn from its own spawned stream."""
        w = self.weights(spec)
        streams = np.random.SeedSequence(self.seed).spawn(self.sample_count)
        return np.stack([np.random.default_rng(s).choice(w.size, size=self.walk_length, p=w)
                         for s in streams])


@dataclass(frozen=True, eq=False)
class BoundarySample:
    id: int
    trajectory: np.ndarray
    limit_point: float
    converged: bool
    final_diameter: float
    diameters: np.ndarray = field(repr=False)

    def word(self, spec: ActionSpec) -> Word:
        return Word(tuple(spec.letters[i] for i in self.trajectory))

    def tail_nonincreasing(self, atol: float = TAIL_ATOL) -> bool:
        tail = self.diameters[3 * self.diameters.size // 4:]
        return bool(np.all(np.diff(tail) <= atol))


def push_batch(spec: ActionSpec, letters: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Push the atoms through x1 ... xn for every row of letters (innermost is last)."""
    x = np.broadcast_to(points, (letters.shape[0], points.size)).copy()
    for j in reversed(range(letters.shape[1])):
        x = spec.apply_letters(letters[:, j], x)
    return x


def push_measure(spec: ActionSpec, trajectory, nu: EmpiricalMeasure) -> list[EmpiricalMeasure]:
    """Snapshots (x1 ... xn) nu for every prefix of the trajectory."""
    if isinstance(trajectory, Word):
        letters = np.array([spec.letter_index(letter) for letter in trajectory.letters], dtype=int)
    else:
        letters = np.asarray(trajectory, dtype=int)
    snapshots = []
    for n in range(1, letters.size + 1):
        pushed = push_batch(spec, letters[None, :n], nu.points)[0]
        snapshots.append(EmpiricalMeasure(pushed, nu.weights.copy()))
    return snapshots


def profile_steps(length: int, snapshots: int = PROFILE_SNAPSHOTS) -> np.ndarray:
    """Prefix lengths at which a walk is snapshotted; always ends at the full length."""
    return np.unique(np.rint(np.linspace(1, length, min(length, snapshots))).astype(int))


def _diameter_profile(spec: ActionSpec, trajectories: np.ndarray, nu: EmpiricalMeasure,
                      fold: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Covering-arc diameters of the prefix pushes at profile_steps, and the final pushed atoms."""
    steps = profile_steps(trajectories.shape[1])
    diameters = np.empty((trajectories.shape[0], steps.size))
    final = None
    for j, n in enumerate(steps):
        pushed = push_batch(spec, trajectories[:, :n], nu.points)
        diameters[:, j] = smallest_covering_arc(np.mod(fold * pushed, 1.0))[1]
        final = pushed
    return diameters, final


@dataclass(frozen=True, eq=False)
class ProximalitySummary:
    fraction_converged: float
    median_final_diameter: float
    samples: list[BoundarySample]
    fold: int = 1
    dirac_tol: float = DIRAC_TOL

    def to_dict(self) -> dict[str, Any]:
        converged = [s for s in self.samples if s.converged]
        return {
            "fraction_converged": self.fraction_converged,
            "median_final_diameter": self.median_final_diameter,
            "sample_count": len(self.samples),
            "fold": self.fold,
            "dirac_tol": self.dirac_tol,
            "tail_nonincreasing_fraction":
                float(np.mean([s.tail_nonincreasing() for s in converged])) if converged else None,
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "sample_id": [s.id for s in self.samples],
            "final_diameter": [s.final_diameter for s in self.samples],
            "limit_point": [s.limit_point for s in self.samples],
            "converged": [s.converged for s in self.samples],
        })


def proximality_experiment(spec: ActionSpec, cfg: WalkConfig = WalkConfig(),
                           nu: Optional[EmpiricalMeasure] = None, dirac_tol: float = DIRAC_TOL,
                           fold: int = 1, workers: int = 1) -> ProximalitySummary:
    """
    Run independent walks and record whether their pushed measures become Dirac.

    With fold = k the diameter is measured after z -> kz, which detects measures
    concentrating on k-point orbits of a rotation by 1/k.
    """
    nu = nu or default_nu()
    trajectories = cfg.trajectories(spec)
    chunks = np.array_split(np.arange(cfg.sample_count), max(1, workers))
    chunks = [c for c in chunks if c.size]

    def run(chunk):
        return chunk, _diameter_profile(spec, trajectories[chunk], nu, fold)

    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(run, chunks))
    else:
        results = [run(c) for c in chunks]

    samples: list[Optional[BoundarySample]] = [None] * cfg.sample_count
    for chunk, (diameters, final) in results:
        mids, _ = covering_midpoint(np.mod(fold * final, 1.0))
        for row, i in enumerate(chunk):
            d = float(diameters[row, -1])
            samples[i] = BoundarySample(int(i), trajectories[i], float(mids[row]),
                                        d < dirac_tol, d, diameters[row])
    finals = np.array([s.final_diameter for s in samples])
    summary = ProximalitySummary(float(np.mean(finals < dirac_tol)), float(np.median(finals)),
                                 samples, fold, dirac_tol)
    logger.info("Walks on %s: %.3f converged, median diameter %.3g.", spec.name,
                summary.fraction_converged, summary.median_final_diameter)
    return summary


def limit_points(spec: ActionSpec, trajectories: np.ndarray,
                 nu: Optional[EmpiricalMeasure] = None) -> tuple[np.ndarray, np.ndarray]:
    """Midpoints and diameters of the full-length pushes, one per trajectory row."""
    nu = nu or default_nu()
    pushed = push_batch(spec, np.atleast_2d(trajectories), nu.points)
    return covering_midpoint(pushed)


def stability_check(sample: BoundarySample, spec: ActionSpec, extra_elements: list[Word],
                    nu: Optional[EmpiricalMeasure] = None) -> float:
    """Largest displacement of the limit point when each extra word is pushed first."""
    if not sample.converged:
        raise PreconditionError("stability check needs a converged sample",
                                operation="stability_check",
                                evidence={"final_diameter": sample.final_diameter})
    nu = nu or default_nu()
    deviation = 0.0
    for w in extra_elements:
        target = EmpiricalMeasure(np.asarray(spec.apply(w, nu.points)), nu.weights)
        point, _ = limit_points(spec, sample.trajectory[None, :], target)
        deviation = max(deviation, float(circle_distance(point[0], sample.limit_point)))
    return deviation
