import numpy as np
import pytest

from circlelab import catalog
from circlelab.circle_core import circle_distance
from circlelab.exceptions import InvalidLiftError, PreconditionError
from circlelab.group_action import enumerate_words
from circlelab.homeo import (
    Homeo,
    PiecewiseLinearLift,
    cover_alpha,
    euler_cocycle,
    euler_cover_defect,
    euler_orientation_residual,
    rotation_number,
    sup_distance,
)

from .conftest import LIFT_KINDS, random_homeo, random_moebius


@pytest.mark.parametrize("kind", LIFT_KINDS)
def test_When_LiftEvaluated_Expect_CommutesWithUnitTranslation(rng, kind):
    f = random_homeo(rng, kind)
    x = rng.random(64) * 4 - 2
    assert np.allclose(f.lift(x + 1.0), np.asarray(f.lift(x)) + 1.0, atol=1e-9)
    assert np.all(np.diff(f.lift(np.sort(x))) >= -1e-12)


@pytest.mark.parametrize("kind", LIFT_KINDS)
def test_When_ComposedWithInverse_Expect_Identity(rng, kind):
    f = random_homeo(rng, kind)
    assert sup_distance(f.compose(f.inverse()), Homeo.identity()) < 1e-8
    assert sup_distance(f.inverse().compose(f), Homeo.identity()) < 1e-8


@pytest.mark.parametrize("kind", LIFT_KINDS)
def test_When_CanonicalLift_Expect_ValueAtZeroInUnitInterval(rng, kind):
    for _ in range(20):
        value = random_homeo(rng, kind).canonical_lift()(0.0)
        assert -1e-9 <= value < 1.0


def test_When_MoebiusChart_Expect_SIsHalfTurnAndTFixesZero():
    s = Homeo.moebius([[0.0, -1.0], [1.0, 0.0]])
    t = Homeo.moebius([[1.0, 1.0], [0.0, 1.0]])
    x = np.linspace(0.0, 1.0, 11, endpoint=False)
    assert np.allclose(circle_distance(s(x), np.mod(x + 0.5, 1.0)), 0.0, atol=1e-12)
    assert circle_distance(t(0.0), 0.0) < 1e-12


def test_When_MoebiusDeterminantNonPositive_Expect_InvalidLiftError():
    with pytest.raises(InvalidLiftError):
        Homeo.moebius([[1.0, 0.0], [0.0, -1.0]])
    with pytest.raises(InvalidLiftError):
        Homeo.moebius([[1.0, 2.0], [2.0, 4.0]])


def test_When_BreakpointsNotIncreasing_Expect_InvalidLiftError():
    with pytest.raises(InvalidLiftError):
        PiecewiseLinearLift(np.array([0.0, 0.5, 0.4, 1.0]), np.array([0.0, 0.2, 0.3, 1.0]))
    with pytest.raises(InvalidLiftError):
        PiecewiseLinearLift(np.array([0.0, 0.5, 1.5]), np.array([0.0, 0.5, 1.5]))


def test_When_DescriptorMalformed_Expect_InvalidLiftError():
    with pytest.raises(InvalidLiftError):
        Homeo.from_descriptor({"kind": "spiral"})
    with pytest.raises(InvalidLiftError):
        Homeo.from_descriptor({"kind": "rotation"})
    with pytest.raises(InvalidLiftError):
        Homeo.from_descriptor({"kind": "cyclic_cover", "base": {"kind": "rotation", "angle": 0.1},
                               "k": 0})


@pytest.mark.parametrize("kind", LIFT_KINDS)
def test_When_RebuiltFromDescriptor_Expect_SameLift(rng, kind):
    f = random_homeo(rng, kind)
    g = Homeo.from_descriptor(f.describe())
    x = np.linspace(-1.0, 1.0, 41)
    assert np.allclose(f.lift(x), g.lift(x), atol=1e-12)


@pytest.mark.parametrize("kind", LIFT_KINDS)
def test_When_RandomPairs_Expect_CocycleValuesZeroOrOne(rng, kind):
    for _ in range(1000):
        f, g = random_homeo(rng, kind), random_homeo(rng, kind)
        assert euler_cocycle(f, g) in (0, 1)
        assert euler_orientation_residual(f, g) == 0


def test_When_RandomTriples_Expect_CocycleIdentity(rng):
    for _ in range(1000):
        f, g, h = (random_homeo(rng, kind) for kind in rng.choice(LIFT_KINDS, size=3))
        left = euler_cocycle(f, g) + euler_cocycle(f.compose(g), h)
        right = euler_cocycle(f, g.compose(h)) + euler_cocycle(g, h)
        assert left == right


def test_When_RotationsWrapPastOne_Expect_CocycleOne():
    assert euler_cocycle(Homeo.rotation(0.6), Homeo.rotation(0.7)) == 1
    assert euler_cocycle(Homeo.rotation(0.2), Homeo.rotation(0.3)) == 0
    assert euler_cocycle(Homeo.rotation(0.5), Homeo.rotation(0.5)) == 1


def test_When_PointsCoincideWithZero_Expect_ResidualStillZero(rng):
    t = Homeo.moebius([[1.0, 1.0], [0.0, 1.0]])
    f = Homeo.rotation(0.3)
    assert euler_cocycle(t, t) == 0
    assert euler_orientation_residual(t, t) == 0
    assert euler_cocycle(f, f.inverse()) == 1
    assert euler_orientation_residual(f, f.inverse()) == 0
    g = random_moebius(rng)
    assert euler_orientation_residual(g, g.inverse()) == 0
    assert euler_orientation_residual(Homeo.identity(), g) == 0


def test_When_RotationNumberOfRotation_Expect_AngleWithinBound():
    result = rotation_number(Homeo.rotation(0.3), iterations=100_000)
    assert circle_distance(result.value, 0.3) <= result.error_bound
    assert result.error_bound == pytest.approx(1e-5)


def test_When_RotationConjugated_Expect_RotationNumberUnchanged(rng):
    h = random_moebius(rng)
    f = h.compose(Homeo.rotation(0.3)).compose(h.inverse())
    n = 100_000
    assert circle_distance(rotation_number(f, iterations=n).value, 0.3) <= 2.0 / n


def test_When_ParabolicMap_Expect_RotationNumberZero():
    t = Homeo.moebius([[1.0, 1.0], [0.0, 1.0]])
    assert circle_distance(rotation_number(t, iterations=5_000).value, 0.0) <= 1.0 / 5_000


def test_When_RotationNumberIterationsZero_Expect_PreconditionError():
    with pytest.raises(PreconditionError) as info:
        rotation_number(Homeo.rotation(0.1), iterations=0)
    assert info.value.operation == "rotation_number"


def test_When_CoverLiftGivenScalar_Expect_ScalarImage():
    cover = Homeo.cover(Homeo.rotation(0.3), 2)
    value = cover.lift(0.1)
    assert isinstance(value, float)
    assert value == pytest.approx(0.25)
    assert cover.inverse().lift(value) == pytest.approx(0.1)
    assert 0.0 <= cover.canonical_lift()(0.0) < 1.0


@pytest.mark.parametrize("k", [2, 3])
def test_When_CoverOfPsl2z_Expect_BoundedAlphaAndZeroDefect(psl2z, k):
    cover = catalog.cover(psl2z, k)
    by_length = {}
    for w in enumerate_words(psl2z, 4):
        by_length.setdefault(len(w), []).append((cover.evaluate(w), psl2z.evaluate(w)))
    for g1, g0 in (pair for words in by_length.values() for pair in words):
        assert abs(cover_alpha(g1, g0, k)) <= k + 1
    for a in range(5):
        for b in range(5 - a):
            for g1, g0 in by_length[a]:
                for h1, h0 in by_length[b]:
                    assert euler_cover_defect(g1, h1, g0, h0, k) == 0
