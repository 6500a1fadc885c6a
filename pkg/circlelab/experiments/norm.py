from dataclasses import dataclass
from typing import Any, Optional

import pandas as pd
from typing_extensions import override

from circlelab.config import build_action
from circlelab.group_action import ActionSpec
from circlelab.norm_lp import (
    BALL_CAP,
    BALL_GRID,
    LP_TOL,
    TRANSLATION_ITERATIONS,
    NormBound,
    build_joint_tables,
    build_table,
    norm_of_combination,
    quantization_check,
    sweep_bounds,
)

from .base import BaseExperiment, RunContext


@dataclass(frozen=True)
class NormParams:
    radii: tuple[int, ...] = (2, 3)
    grid: int = BALL_GRID
    cap: int = BALL_CAP
    iterations: int = TRANSLATION_ITERATIONS
    pin_translation: bool = True
    # other actions of the same group; coefficients start with the main action's
    compare_actions: tuple[dict[str, Any], ...] = ()
    coefficients: tuple[int, ...] = ()
    cover_degree: int = 0
    base_action: Optional[dict[str, Any]] = None

    def __post_init__(self):
        if not self.radii or min(self.radii) < 1:
            raise ValueError("radii must be positive")
        if min(self.grid, self.cap, self.iterations) < 1:
            raise ValueError("grid, cap and iterations must be positive")
        if self.compare_actions and len(self.coefficients) != len(self.compare_actions) + 1:
            raise ValueError("need one coefficient per action, the main action first")
        if (self.cover_degree > 0) != (self.base_action is not None):
            raise ValueError("cover_degree and base_action must be given together")


class NormExperiment(BaseExperiment):
    """Certified lower bounds for the norm of the Euler class over growing word balls."""
    key = "norm"
    params_type = NormParams

    def __init__(self):
        super().__init__()
        self.others: list[ActionSpec] = []
        self.base: Optional[ActionSpec] = None

    @override
    def configure(self, raw_params: Optional[dict[str, Any]]) -> Any:
        params = super().configure(raw_params)
        self.others = [build_action(entry) for entry in params.compare_actions]
        self.base = build_action(params.base_action) if params.base_action is not None else None
        return params

    def _entry(self, bound: NormBound, name: str) -> dict[str, Any]:
        self.timing[f"{name}_radius_{bound.radius}"] = bound.runtime
        entry = bound.to_dict()
        entry.pop("runtime")
        return entry

    @override
    def run(self, action: ActionSpec, ctx: RunContext) -> dict[str, Any]:
        p: NormParams = self.params
        ball = dict(grid=p.grid, cap=p.cap, iterations=p.iterations)
        balls = [build_table(action, r, **ball) for r in sorted(p.radii)]
        sweep = sweep_bounds(balls, p.pin_translation)
        bounds = [b.lower_bound for b in sweep]
        radius = max(p.radii)

        combination = None
        if self.others:
            tables = build_joint_tables([action] + self.others, radius, **ball)
            bound = norm_of_combination(tables, p.coefficients, p.pin_translation)
            combination = {"actions": [t.name for t in tables],
                           "coefficients": list(p.coefficients),
                           **self._entry(bound, "combination")}

        quantization = None
        if self.base is not None:
            cover_table, base_table = build_joint_tables([action, self.base], radius, **ball)
            quantization = quantization_check(cover_table, base_table, p.cover_degree).to_dict()

        largest = sweep[-1]
        self.tables = {
            "sweep": pd.DataFrame([{"radius": b.radius, "ball_size": b.ball_size,
                                    "lower_bound": b.lower_bound} for b in sweep]),
            "certificate": pd.DataFrame({"word": [str(w) for w in largest.words],
                                         "b": largest.b}),
            "cocycle": balls[-1].to_frame(),
        }
        self.result = {
            "action": action.name,
            "pinned": p.pin_translation,
            "sweep": [self._entry(b, "sweep") for b in sweep],
            "lower_bounds": bounds,
            "nondecreasing": all(lo <= hi + LP_TOL for lo, hi in zip(bounds, bounds[1:])),
            "combination": combination,
            "quantization": quantization,
        }
        return self.result
