import numpy as np
import pytest

from circlelab import catalog
from circlelab.boundary import WalkConfig
from circlelab.cocycle_lab import (
    COLLISION_BUDGET,
    SAMPLE_WALK_LENGTH,
    SampledBoundary,
    SampledCocycle,
    audit_cocycle,
    audit_intervals,
    cocycle_norm,
    collision_fraction,
    conjugacy_defect,
    extract_cocycle,
    f_a_map,
    fit_circle_map,
    interval_set,
    joint_limit_points,
    max_gap,
    rebuild_action,
    reconstruct,
    rectify,
    round_trip,
)
from circlelab.exceptions import DegenerateBoundaryError, PreconditionError
from circlelab.homeo import Homeo, sup_distance

POINTS = np.array([0.1, 0.2, 0.35, 0.6, 0.9])


@pytest.fixture
def eighth_turn():
    return catalog.rotation(0.125)


@pytest.fixture
def lattice_boundary(eighth_turn):
    """64 equally spaced points, carried to each other by the eighth turn."""
    return SampledBoundary.from_points(eighth_turn, np.arange(64) / 64)


def test_When_FaMapFromFirstPoint_Expect_RanksOverN():
    omega = SampledCocycle(POINTS)
    assert f_a_map(omega, 0) == pytest.approx([0.0, 0.2, 0.4, 0.6, 0.8])
    assert f_a_map(omega, 3) == pytest.approx([0.4, 0.6, 0.8, 0.0, 0.2])
    assert collision_fraction(f_a_map(omega, 2)) == 0.0


def test_When_FaMapWeighted_Expect_BasePointWeightCounted():
    omega = SampledCocycle(POINTS)
    weights = np.array([0.4, 0.15, 0.15, 0.15, 0.15])
    assert f_a_map(omega, 0, weights) == pytest.approx([0.0, 0.4, 0.55, 0.7, 0.85])


def test_When_Rectified_Expect_CoincidentValuesShareMass():
    phi = rectify(np.array([0.0, 0.2, 0.2, 0.4, 0.6]))
    assert phi == pytest.approx([0.0, 0.2, 0.2, 0.6, 0.8])
    assert rectify(np.array([0.0, 0.2, 0.4, 0.6, 0.8])) == pytest.approx([0.0, 0.2, 0.4, 0.6, 0.8])


def test_When_WeightsNotProbability_Expect_PreconditionError():
    with pytest.raises(PreconditionError):
        f_a_map(SampledCocycle(POINTS), 0, np.full(5, 0.3))


def test_When_IntervalSetBuilt_Expect_PointsStrictlyBetween():
    omega = SampledCocycle(POINTS)
    assert interval_set(omega, 0, 3) == {1, 2}
    assert interval_set(omega, 3, 0) == {4}
    with pytest.raises(PreconditionError):
        interval_set(omega, 2, 2)


def test_When_ValuesCollide_Expect_FractionOfNeighbours():
    assert collision_fraction(np.array([0.0, 0.001, 0.5, 0.75])) == pytest.approx(0.5)
    assert collision_fraction(np.array([0.3])) == 0.0
    assert max_gap(np.array([0.1, 0.2, 0.9])) == pytest.approx(0.7)


def test_When_AllSamplesCoincide_Expect_DegenerateBoundaryError(eighth_turn):
    sb = SampledBoundary.from_points(eighth_turn, np.full(10, 0.5))
    with pytest.raises(DegenerateBoundaryError):
        extract_cocycle(sb)
    with pytest.raises(PreconditionError):
        extract_cocycle(SampledBoundary.from_points(eighth_turn, [0.1, 0.2]))


def test_When_LatticeInvariant_Expect_MovesCoverEverySample(lattice_boundary):
    assert lattice_boundary.coverage == {"r": 1.0}
    assert np.array_equal(lattice_boundary.moves["r"], (np.arange(64) + 8) % 64)


def test_When_LatticeAudited_Expect_NoViolations(lattice_boundary):
    omega = extract_cocycle(lattice_boundary)
    audit = audit_cocycle(omega, lattice_boundary)
    assert audit.passed
    assert audit.invariance_checked["r"] > 0
    intervals = audit_intervals(omega, sb=lattice_boundary)
    assert intervals.passed
    assert intervals.checked > 0
    assert intervals.to_dict()["passed"]


def test_When_LatticeReconstructed_Expect_RoundTripToRotation(lattice_boundary, eighth_turn):
    omega = extract_cocycle(lattice_boundary)
    chart = reconstruct(omega)
    assert chart.collision_fraction == 0.0
    assert chart.order_agreement == 1.0
    assert chart.rectified_order_agreement == 1.0
    rebuilt = rebuild_action(chart.phi, lattice_boundary)
    assert rebuilt.labels == ["r"]
    result = round_trip(eighth_turn, rebuilt, chart.phi, lattice_boundary.points,
                        word_radius=2, iterations=200)
    assert result.generator_distance["r"] < 1e-6
    assert result.euler_mismatches == 0
    assert result.rotation_deviation < 1e-3


def test_When_SameChartTwice_Expect_ZeroConjugacyDefect(lattice_boundary, eighth_turn):
    points = lattice_boundary.points
    defects = conjugacy_defect(points, points, eighth_turn, eighth_turn)
    assert defects["r"] < 1e-6


def test_When_RotationGraphFitted_Expect_Rotation(rng):
    u = rng.random(50)
    fitted = fit_circle_map(u, u + 0.3)
    assert sup_distance(fitted, Homeo.rotation(0.3)) < 1e-6
    with pytest.raises(PreconditionError):
        fit_circle_map([0.1], [0.2])


def test_When_MovesCoverTooLittle_Expect_PreconditionError(eighth_turn):
    sb = SampledBoundary.from_points(eighth_turn, [0.0, 0.3, 0.55, 0.8])
    with pytest.raises(PreconditionError):
        rebuild_action(sb.points, sb)


def test_When_CombinationCancels_Expect_ZeroNorm(rng):
    points = rng.random((1, 64))
    assert cocycle_norm(np.vstack([points, points]), [1, -1]) == 0.0
    assert cocycle_norm(points, [1]) == pytest.approx(0.5)
    with pytest.raises(PreconditionError):
        cocycle_norm(points, [1, 1])


def test_When_JointWalksOnOneAction_Expect_IdenticalRows(psl2z, golden_rotation):
    rows = joint_limit_points([psl2z, psl2z], WalkConfig(walk_length=320, sample_count=40),
                              dirac_tol=1e-3)
    assert rows.shape[0] == 2
    assert rows.shape[1] > 0
    assert np.array_equal(rows[0], rows[1])
    with pytest.raises(PreconditionError):
        joint_limit_points([psl2z, golden_rotation], WalkConfig(sample_count=4))


def test_When_Psl2zBoundarySampled_Expect_DistinctPointsAndMoves(psl2z):
    sb = SampledBoundary.build(psl2z, WalkConfig(walk_length=SAMPLE_WALK_LENGTH, sample_count=60))
    gaps = np.diff(np.sort(sb.points))
    assert np.all(gaps >= 1e-9)
    assert min(sb.coverage.values()) >= 0.3
    assert len(sb.to_frame()) == len(sb)


@pytest.mark.slow
def test_When_LargePsl2zBoundaryAudited_Expect_ExactAuditsAndFewCollisions(psl2z):
    sb = SampledBoundary.build(psl2z, WalkConfig(walk_length=SAMPLE_WALK_LENGTH, sample_count=1100))
    assert len(sb) >= 4000
    omega = extract_cocycle(sb)
    audit = audit_cocycle(omega, sb, triples=10_000)
    assert audit.passed
    assert min(audit.invariance_checked.values()) > 0
    intervals = audit_intervals(omega, sb.weights, sb, triples=10_000)
    assert intervals.passed
    assert intervals.nesting_checked > 0
    assert reconstruct(omega, sb.weights).collision_fraction < COLLISION_BUDGET
