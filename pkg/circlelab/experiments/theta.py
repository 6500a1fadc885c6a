from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
import pandas as pd
from typing_extensions import override

from circlelab.circle_core import Arc
from circlelab.cocycle_lab import align_maps, conjugate
from circlelab.config import build_action
from circlelab.exceptions import BallMismatchError
from circlelab.group_action import (
    CONTRACT_TOL,
    ActionSpec,
    ClassifyParams,
    ThetaParams,
    classify,
    contracts,
    detect_theta,
    proximal_quotient,
)
from circlelab.homeo import Homeo, sup_distance

from .base import BaseExperiment, RunContext


@dataclass(frozen=True)
class ThetaExperimentParams:
    samples: int = 128
    radius: int = 128
    beam: int = 16
    bisection_steps: int = 18
    contract_tol: float = CONTRACT_TOL
    order_tol: float = 1e-3
    max_order: int = 12
    grid: int = 512
    commute_tol: float = 0.05
    quotient_grid: int = 2048
    quotient_tol: float = 5e-3
    test_arcs: int = 8
    test_arc_length: float = 0.9
    test_arc_radius: int = 32
    # when set, quotient generators are compared with this action's generators
    base_action: Optional[dict[str, Any]] = None

    def __post_init__(self):
        if min(self.samples, self.radius, self.beam, self.bisection_steps, self.max_order,
               self.grid, self.quotient_grid, self.test_arc_radius) < 1:
            raise ValueError("counts and radii must be positive")
        if not 0 < self.test_arc_length < 1:
            raise ValueError("test_arc_length must lie in (0, 1)")

    def theta_params(self) -> ThetaParams:
        return ThetaParams(self.samples, self.radius, self.beam, self.bisection_steps,
                           self.contract_tol, self.order_tol, self.max_order, self.grid,
                           self.commute_tol)


class ThetaExperiment(BaseExperiment):
    """Centralizer generator of a minimal unbounded action and the proximal quotient."""
    key = "theta"
    params_type = ThetaExperimentParams

    def __init__(self):
        super().__init__()
        self.base: Optional[ActionSpec] = None

    @override
    def configure(self, raw_params: Optional[dict[str, Any]]) -> Any:
        params = super().configure(raw_params)
        self.base = build_action(params.base_action) if params.base_action is not None else None
        return params

    @override
    def run(self, action: ActionSpec, ctx: RunContext) -> dict[str, Any]:
        p: ThetaExperimentParams = self.params
        classification = classify(action, ClassifyParams(rng_seed=ctx.rng_seed))
        detected = detect_theta(action, p.theta_params(), classification)
        k = detected.k
        quotient = proximal_quotient(action, k, detected.theta, p.quotient_grid, p.quotient_tol)

        lefts = np.arange(p.test_arcs) / p.test_arcs
        arcs = [contracts(quotient.spec, Arc.from_length(left, p.test_arc_length),
                          radius=p.test_arc_radius, tol=p.contract_tol) for left in lefts]

        base_distance = None
        if self.base is not None:
            if self.base.labels != action.labels:
                raise BallMismatchError("base action has different generators", operation="theta",
                                        evidence={"action": action.labels, "base": self.base.labels})
            # quotient = Q g Q^-1 with Q(z) = k H(z / k); undo Q before comparing
            z = np.arange(p.grid) / p.grid
            chart = k * np.asarray(quotient.conjugacy.lift(z / k))
            h = align_maps(chart, z)
            base_distance = {label: sup_distance(conjugate(h, quotient.spec.generator(label)), g,
                                                 p.grid)
                             for label, g in self.base.generators}

        self.tables = {"theta": pd.DataFrame({"x": detected.samples_x,
                                              "theta": detected.samples_y})}
        self.result = {
            "action": action.name,
            "k": k,
            "order_residual": detected.order_residual,
            "commute_defect": detected.commute_defect,
            "rotation_distance": sup_distance(detected.theta, Homeo.rotation(1.0 / k), p.grid),
            "quotient": {
                "name": quotient.spec.name,
                "alphas": quotient.alphas,
                "base_distance": base_distance,
                "test_arcs": [{"left": float(left), "length": p.test_arc_length, **r.to_dict()}
                              for left, r in zip(lefts, arcs)],
                "all_arcs_contract": all(r.contracts for r in arcs),
            },
        }
        return self.result
