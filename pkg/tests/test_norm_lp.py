import numpy as np
import pytest

from circlelab import catalog
from circlelab.exceptions import BallMismatchError, BallTooLargeError, PreconditionError
from circlelab.norm_lp import (
    build_joint_tables,
    build_table,
    cover_offsets,
    norm_of_combination,
    quantization_check,
    quantization_defects,
    radius_sweep,
    solve_norm_lp,
)


@pytest.mark.parametrize("radius", [2, 3, 4])
def test_When_RotationAction_Expect_ZeroBound(golden_rotation, radius):
    table = build_table(golden_rotation, radius)
    assert table.ball_size == 2 * radius + 1
    assert solve_norm_lp(table).lower_bound <= 1e-8


def test_When_Psl2zBall_Expect_BoundAtMostHalf(psl2z):
    bound = solve_norm_lp(build_table(psl2z, 2))
    assert 0.0 < bound.lower_bound <= 0.5 + 1e-9
    assert bound.pinned
    assert len(bound.certificate()) == bound.ball_size


def test_When_RadiiGrow_Expect_NondecreasingBounds(psl2z):
    bounds = [b.lower_bound for b in radius_sweep(psl2z, [3, 2])]
    assert bounds[0] <= bounds[1] + 1e-9
    assert bounds[0] > 0.0
    assert max(bounds) <= 0.5 + 1e-9


@pytest.mark.parametrize("radius", [2, 3])
def test_When_TableBuilt_Expect_ZeroOneValuesAndTrivialIdentityColumn(psl2z, golden_rotation, radius):
    for spec in (psl2z, golden_rotation):
        table = build_table(spec, radius)
        assert set(np.unique(table.values)) <= {0, 1}
        g, h, _ = table.pairs.T
        assert np.all(table.values[h == 0] == 0)
        assert np.all(table.values[g == 0] == 0)
        assert np.all((table.origin_values >= -1e-9) & (table.origin_values < 1.0))


def test_When_HalfTurnSquared_Expect_CocycleOne(psl2z):
    table = build_table(psl2z, 2)
    frame = table.to_frame()
    row = frame[(frame["g"] == "S") & (frame["h"] == "S")]
    assert list(row["c"]) == [1]


def test_When_UnpinnedLp_Expect_NoLargerThanPinned(psl2z):
    table = build_table(psl2z, 2)
    assert (solve_norm_lp(table, pin_translation=False).lower_bound
            <= solve_norm_lp(table).lower_bound + 1e-9)


def test_When_TableExported_Expect_OneRowPerPair(psl2z):
    table = build_table(psl2z, 2)
    frame = table.to_frame()
    assert list(frame.columns) == ["g", "h", "c"]
    assert len(frame) == len(table.pairs)
    assert set(frame["c"]) <= {0, 1}


def test_When_ActionMinusItself_Expect_ZeroBound(psl2z):
    tables = build_joint_tables([psl2z, psl2z], 2)
    assert norm_of_combination(tables, [1, -1]).lower_bound <= 1e-8
    assert norm_of_combination(tables, [1, 1]).lower_bound <= 1.0 + 1e-9


def test_When_DifferentGenerators_Expect_BallMismatchError(psl2z, golden_rotation):
    with pytest.raises(BallMismatchError):
        build_joint_tables([psl2z, golden_rotation], 2)
    with pytest.raises(BallMismatchError):
        norm_of_combination([build_table(psl2z, 2), build_table(psl2z, 3)], [1, -1])


def test_When_CoefficientsMissing_Expect_PreconditionError(psl2z):
    with pytest.raises(PreconditionError):
        norm_of_combination([build_table(psl2z, 2)], [1, 1])
    with pytest.raises(PreconditionError):
        build_table(psl2z, 0)


def test_When_BallExceedsCap_Expect_BallTooLargeError(psl2z):
    with pytest.raises(BallTooLargeError):
        build_table(psl2z, 3, cap=5)


def test_When_DoubleCoverQuantized_Expect_ScaledBound(psl2z, double_cover):
    cover_table, base_table = build_joint_tables([double_cover, psl2z], 2)
    alpha = cover_offsets(cover_table, base_table, 2)
    assert np.all(np.abs(alpha) <= 3)
    assert not np.any(quantization_defects(cover_table, base_table, 2))
    report = quantization_check(cover_table, base_table, 2)
    assert report.max_defect == 0
    assert report.scaled_ok
    assert report.cap_ok


def test_When_LatticeAndSchottkyCombined_Expect_PositiveBoundGrowingWithRadius(schottky):
    gamma2 = catalog.gamma2()
    bounds = [norm_of_combination(build_joint_tables([gamma2, schottky], r), [1, -1]).lower_bound
              for r in (2, 3)]
    assert 0.0 < bounds[0] <= bounds[1] + 1e-9
    assert bounds[1] <= 1.0 + 1e-9
    same = build_joint_tables([schottky, schottky], 2)
    assert norm_of_combination(same, [1, -1]).lower_bound <= 1e-8
