from dataclasses import dataclass
from typing import Any, Optional

from typing_extensions import override

from circlelab.boundary import (
    DIRAC_TOL,
    NU_ATOMS,
    WALK_LENGTH,
    WalkConfig,
    proximality_experiment,
    stability_check,
)
from circlelab.circle_core import EmpiricalMeasure
from circlelab.group_action import ActionSpec, Word

from .base import BaseExperiment, RunContext


@dataclass(frozen=True)
class ProximalParams:
    walk_length: int = WALK_LENGTH
    sample_count: int = 200
    dirac_tol: float = DIRAC_TOL
    fold: int = 1
    nu_atoms: int = NU_ATOMS
    step_distribution: Optional[tuple[float, ...]] = None
    stability_samples: int = 10

    def __post_init__(self):
        if min(self.walk_length, self.sample_count, self.fold, self.nu_atoms) < 1:
            raise ValueError("walk_length, sample_count, fold and nu_atoms must be positive")
        if self.dirac_tol <= 0 or self.stability_samples < 0:
            raise ValueError("dirac_tol must be positive and stability_samples non-negative")


class ProximalExperiment(BaseExperiment):
    """Random walks pushing a measure on the circle, and whether the pushes become Dirac."""
    key = "proximal"
    params_type = ProximalParams

    @override
    def run(self, action: ActionSpec, ctx: RunContext) -> dict[str, Any]:
        p: ProximalParams = self.params
        cfg = WalkConfig(p.walk_length, p.sample_count, ctx.rng_seed, p.step_distribution)
        nu = EmpiricalMeasure.uniform(p.nu_atoms)
        summary = proximality_experiment(action, cfg, nu, p.dirac_tol, p.fold, ctx.workers)

        stability = None
        if p.fold == 1:
            extra = [Word((letter,)) for letter in action.letters]
            checked = [s for s in summary.samples if s.converged][:p.stability_samples]
            deviations = [stability_check(s, action, extra, nu) for s in checked]
            stability = {
                "checked": len(checked),
                "max_deviation": max(deviations, default=0.0),
                "bound": 10 * p.dirac_tol,
            }

        self.tables = {"walks": summary.to_frame()}
        self.result = {
            "action": action.name,
            "symmetric_steps": cfg.is_symmetric(action),
            "summary": summary.to_dict(),
            "stability": stability,
        }
        return self.result
