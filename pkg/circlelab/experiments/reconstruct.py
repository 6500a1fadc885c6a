import logging
from dataclasses import dataclass
from typing import Any

from typing_extensions import override

from circlelab.boundary import NU_ATOMS, WalkConfig
from circlelab.circle_core import EmpiricalMeasure
from circlelab.cocycle_lab import (
    AUDIT_TRIPLES,
    COLLISION_BUDGET,
    COVERAGE_MIN,
    GRAPH_SLACK,
    MOVE_TOL,
    SAMPLE_DIRAC_TOL,
    SAMPLE_WALK_LENGTH,
    SampledBoundary,
    audit_cocycle,
    audit_intervals,
    choose_base_point,
    conjugacy_defect,
    extract_cocycle,
    reconstruct,
    rebuild_action,
    round_trip,
)
from circlelab.group_action import ActionSpec

from .base import BaseExperiment, RunContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReconstructParams:
    walk_length: int = SAMPLE_WALK_LENGTH
    sample_count: int = 1000
    dirac_tol: float = SAMPLE_DIRAC_TOL
    move_tol: float = MOVE_TOL
    nu_atoms: int = NU_ATOMS
    audit_triples: int = AUDIT_TRIPLES
    interval_triples: int = 200
    collision_budget: float = COLLISION_BUDGET
    graph_slack: float = GRAPH_SLACK
    coverage_min: float = COVERAGE_MIN
    grid: int = 512
    word_radius: int = 3
    iterations: int = 2000
    # rebuild from a second base point and measure how far the two are from conjugate
    check_uniqueness: bool = True

    def __post_init__(self):
        if min(self.walk_length, self.sample_count, self.nu_atoms, self.audit_triples,
               self.interval_triples, self.grid, self.word_radius, self.iterations) < 1:
            raise ValueError("counts must be positive")
        if self.dirac_tol <= 0 or self.move_tol <= 0:
            raise ValueError("tolerances must be positive")


class ReconstructExperiment(BaseExperiment):
    """Boundary cocycle extraction, audits, and the rebuild of the action from the cocycle."""
    key = "reconstruct"
    params_type = ReconstructParams

    @override
    def run(self, action: ActionSpec, ctx: RunContext) -> dict[str, Any]:
        p: ReconstructParams = self.params
        seed = ctx.rng_seed
        cfg = WalkConfig(p.walk_length, p.sample_count, seed)
        sb = SampledBoundary.build(action, cfg, EmpiricalMeasure.uniform(p.nu_atoms),
                                   p.dirac_tol, p.move_tol)
        omega = extract_cocycle(sb, audit_triples=p.audit_triples, seed=seed)
        audit = audit_cocycle(omega, sb, p.audit_triples, seed)
        intervals = audit_intervals(omega, sb.weights, sb, p.interval_triples, seed)

        chart = reconstruct(omega, sb.weights, seed=seed, collision_budget=p.collision_budget)
        rebuilt = rebuild_action(chart.phi, sb, p.graph_slack, p.coverage_min, p.audit_triples,
                                 seed)
        trip = round_trip(action, rebuilt, chart.phi, sb.points, p.grid, p.word_radius,
                          p.iterations)

        uniqueness = None
        if p.check_uniqueness:
            other = choose_base_point(omega, sb.weights, seed=seed + 1)
            if other == chart.base_point:
                other = (other + 1) % len(sb)
            second = reconstruct(omega, sb.weights, base_point=other,
                                 collision_budget=p.collision_budget)
            rebuilt_second = rebuild_action(second.phi, sb, p.graph_slack, p.coverage_min,
                                            p.audit_triples, seed)
            uniqueness = {
                "base_points": [chart.base_point, second.base_point],
                "conjugacy_defect": conjugacy_defect(chart.phi, second.phi, rebuilt,
                                                     rebuilt_second, p.grid),
            }

        self.tables = {"boundary": sb.to_frame(chart.phi)}
        self.result = {
            "action": action.name,
            "samples": len(sb),
            "coverage": sb.coverage,
            "cocycle_audit": audit.to_dict(),
            "interval_audit": intervals.to_dict(),
            "reconstruction": chart.to_dict(),
            "round_trip": trip.to_dict(),
            "round_trip_max_distance": max(trip.generator_distance.values()),
            "uniqueness": uniqueness,
        }
        logger.info("Reconstruction of %s finished: max generator distance %.3g.", action.name,
                    self.result["round_trip_max_distance"])
        return self.result
