from dataclasses import dataclass
from typing import Any

from typing_extensions import override

from circlelab.group_action import (
    EPS_ORBIT,
    ORBIT_GRID,
    ORBIT_RADIUS,
    WORD_CAP,
    ActionSpec,
    ClassifyParams,
    classify,
    dichotomy,
)

from .base import BaseExperiment, RunContext


@dataclass(frozen=True)
class ClassifyExperimentParams:
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
    dichotomy_radius: int = 32

    def __post_init__(self):
        if self.seeds < 1 or self.grid < 8 or self.refine < 1 or self.word_cap < 1:
            raise ValueError("seeds, grid, refine and word_cap must be positive")
        if not 0 < self.radii[0] < self.radii[1]:
            raise ValueError("radii must be increasing and positive")
        if not 0 < self.shrink_ratio < self.persist_ratio <= 1:
            raise ValueError("need 0 < shrink_ratio < persist_ratio <= 1")

    def classify_params(self, rng_seed: int) -> ClassifyParams:
        return ClassifyParams(self.seeds, self.radii, self.grid, self.refine, self.word_cap,
                              self.max_finite_orbit, self.eps_orbit, self.shrink_ratio,
                              self.persist_ratio, self.persist_cells, rng_seed)


class ClassifyExperiment(BaseExperiment):
    """Orbit trichotomy of the action, and whether it is elementary."""
    key = "classify"
    params_type = ClassifyExperimentParams

    @override
    def run(self, action: ActionSpec, ctx: RunContext) -> dict[str, Any]:
        p: ClassifyExperimentParams = self.params
        classification = classify(action, p.classify_params(ctx.rng_seed))
        split = dichotomy(action, classification, radius=p.dichotomy_radius)
        self.result = {
            "action": action.name,
            "classification": classification.to_dict(),
            "dichotomy": {"elementary": split.elementary, "reason": split.reason},
        }
        return self.result
