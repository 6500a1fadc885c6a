import numpy as np
import pytest

from circlelab import catalog
from circlelab.circle_core import Arc, circle_distance
from circlelab.exceptions import OrbitExplosionError, PreconditionError
from circlelab.group_action import (
    ActionSpec,
    Classification,
    ClassificationKind,
    ThetaParams,
    Word,
    classify,
    contracts,
    detect_theta,
    dichotomy,
    enumerate_words,
    finite_orbit_size,
    orbit_closure,
    periodic_points,
    proximal_quotient,
    random_words,
    word_translation_numbers,
)
from circlelab.homeo import Homeo, sup_distance

MINIMAL = Classification(ClassificationKind.MINIMAL)


def test_When_WordParsed_Expect_FreelyReducedAndPrintable():
    assert str(Word.parse("a b^-1")) == "a b^-1"
    assert str(Word.parse("a a^-1 b")) == "b"
    assert Word.parse("e") == Word()
    assert str(Word()) == "e"
    w = Word.parse("a b")
    assert len(w * w.inverse()) == 0


def test_When_WordApplied_Expect_RightmostLetterFirst():
    spec = ActionSpec.from_homeos({"a": Homeo.rotation(0.1),
                                   "b": Homeo.moebius([[2.0, 0.0], [0.0, 0.5]])})
    x = np.linspace(0.0, 1.0, 7, endpoint=False)
    expected = spec.generator("a")(spec.generator("b")(x))
    assert np.allclose(spec.apply(Word.parse("a b"), x), expected)
    assert np.allclose(spec.evaluate(Word.parse("a b"))(x), expected)


def test_When_LetterIndexNegative_Expect_Padding(psl2z):
    x = np.array([0.1, 0.2, 0.3])
    out = psl2z.apply_letters(np.array([-1, 0, -1]), x)
    assert out[0] == 0.1 and out[2] == 0.3
    assert out[1] == pytest.approx(0.7)


@pytest.mark.parametrize("labels", [["a", "a"], ["e"], ["a b"], ["x^2"]])
def test_When_LabelsInvalid_Expect_PreconditionError(labels):
    with pytest.raises(PreconditionError):
        ActionSpec(tuple((label, Homeo.rotation(0.1)) for label in labels))


def test_When_WordsEnumerated_Expect_ReducedBallSize(psl2z, golden_rotation):
    words = list(enumerate_words(psl2z, 2))
    assert len(words) == 1 + 4 + 12
    assert len({str(w) for w in words}) == len(words)
    assert len(list(enumerate_words(golden_rotation, 3))) == 7


def test_When_RandomWordsDrawn_Expect_LengthsWithinBound(psl2z, rng):
    words = random_words(psl2z, rng, 50, 4)
    assert len(words) == 50
    assert all(len(w) <= 4 for w in words)


def test_When_RotationsOfOrderFour_Expect_FiniteOrbitOfFour():
    spec = catalog.rotation_pair(0.25, 0.5)
    assert finite_orbit_size(spec, 0.1) == 4
    assert finite_orbit_size(spec, 0.1, max_size=3) is None
    assert finite_orbit_size(catalog.rotation(), 0.1, max_size=50) is None


def test_When_OrbitClosureRadiusZero_Expect_PreconditionError(psl2z):
    with pytest.raises(PreconditionError):
        orbit_closure(psl2z, 0.1, radius=0)


def test_When_WordBudgetExceeded_Expect_OrbitExplosionError(psl2z):
    with pytest.raises(OrbitExplosionError):
        orbit_closure(psl2z, 0.123, radius=8, cap=100)


def test_When_HyperbolicMap_Expect_TwoFixedPoints():
    h = Homeo.moebius([[2.0, 0.0], [0.0, 0.5]])
    points = periodic_points(h)
    assert all(min(circle_distance(p, 0.0), circle_distance(p, 0.5)) < 1e-9 for p in points)
    assert any(circle_distance(p, 0.5) < 1e-9 for p in points)
    assert any(circle_distance(p, 0.0) < 1e-9 for p in points)
    assert periodic_points(Homeo.rotation(0.3)) == []


def test_When_RotationByFifth_Expect_FiniteOrbitClassification():
    result = classify(catalog.rotation(0.2))
    assert result.kind is ClassificationKind.FINITE_ORBIT
    assert result.size == 5
    assert result.to_dict()["kind"] == "FiniteOrbit"


def test_When_GoldenRotation_Expect_Minimal(golden_rotation):
    assert classify(golden_rotation).kind is ClassificationKind.MINIMAL


def test_When_Psl2z_Expect_Minimal(psl2z):
    assert classify(psl2z).kind is ClassificationKind.MINIMAL


def test_When_Schottky_Expect_ExceptionalMinimalWithGaps(schottky):
    result = classify(schottky)
    assert result.kind is ClassificationKind.EXCEPTIONAL_MINIMAL
    assert result.gaps


def test_When_ParabolicAvailable_Expect_ArcContracts(psl2z, golden_rotation):
    result = contracts(psl2z, Arc.from_length(0.1, 0.3), radius=10)
    assert result.contracts
    assert result.min_length < 0.05
    assert len(result.word) <= 10
    assert not contracts(golden_rotation, Arc.from_length(0.1, 0.3)).contracts


def test_When_ContractWitnessApplied_Expect_ShortImage(psl2z):
    arc = Arc.from_length(0.1, 0.3)
    result = contracts(psl2z, arc, radius=10)
    lift = psl2z.evaluate(result.word).lift
    assert lift(arc.left + arc.length) - lift(arc.left) == pytest.approx(result.min_length)


def test_When_DichotomyEvaluated_Expect_ElementaryOnlyForEquicontinuous(
        psl2z, golden_rotation, schottky):
    assert dichotomy(golden_rotation, MINIMAL).elementary
    assert not dichotomy(psl2z, MINIMAL).elementary
    finite = Classification(ClassificationKind.FINITE_ORBIT, size=3)
    assert dichotomy(catalog.rotation(1 / 3), finite).reason == "finite orbit"
    exceptional = Classification(ClassificationKind.EXCEPTIONAL_MINIMAL)
    assert not dichotomy(schottky, exceptional).elementary


def test_When_ThetaOnFiniteOrbitAction_Expect_PreconditionError():
    finite = Classification(ClassificationKind.FINITE_ORBIT, size=5)
    with pytest.raises(PreconditionError):
        detect_theta(catalog.rotation(0.2), classification=finite)


def test_When_ThetaOnEquicontinuousAction_Expect_PreconditionError(golden_rotation):
    with pytest.raises(PreconditionError):
        detect_theta(golden_rotation, ThetaParams(samples=8), classification=MINIMAL)


@pytest.mark.slow
def test_When_DoubleCover_Expect_ThetaOfOrderTwo(double_cover):
    result = detect_theta(double_cover, ThetaParams(samples=32), classification=MINIMAL)
    assert result.k == 2
    assert sup_distance(result.theta, Homeo.rotation(0.5)) < 5e-3


def test_When_QuotientByHalfTurn_Expect_BaseGenerators(double_cover, psl2z):
    quotient = proximal_quotient(double_cover, 2, Homeo.rotation(0.5))
    assert quotient.spec.labels == psl2z.labels
    for label in psl2z.labels:
        assert sup_distance(quotient.spec.generator(label), psl2z.generator(label)) < 5e-3
    assert all(abs(a) <= 3 for a in quotient.alphas.values())
    assert sup_distance(quotient.conjugacy, Homeo.identity()) < 1e-6


def test_When_QuotientOfOrderOne_Expect_SameAction(psl2z):
    quotient = proximal_quotient(psl2z, 1, Homeo.identity())
    assert quotient.spec is psl2z
    assert quotient.alphas == {"S": 0, "T": 0}


def test_When_TranslationNumbersOfRotations_Expect_SumsOfAngles():
    spec = catalog.rotation_pair(0.25, 0.5)
    words = [Word.parse(t) for t in ("a", "b", "a b", "a^-1")]
    values = word_translation_numbers(spec, words, iterations=100)
    assert values == pytest.approx([0.25, 0.5, 0.75, 0.75])
