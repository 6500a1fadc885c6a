import pytest

from circlelab.exceptions import BallMismatchError

PSL2Z = {"catalog": "psl2z"}
DOUBLE_COVER = {"catalog": "cover", "base": PSL2Z, "k": 2}


def test_When_RotationSwept_Expect_ZeroBounds(run_experiment):
    output = run_experiment("norm", {"catalog": "rotation"}, {"radii": [2, 3, 4]})
    assert max(output.result["lower_bounds"]) <= 1e-8
    assert len(output.tables["sweep"]) == 3


def test_When_Psl2zSwept_Expect_NondecreasingBoundsAtMostHalf(run_experiment):
    output = run_experiment("norm", PSL2Z, {"radii": [2, 3]})
    result = output.result
    assert result["nondecreasing"]
    assert 0.0 < min(result["lower_bounds"])
    assert max(result["lower_bounds"]) <= 0.5 + 1e-9
    assert "runtime" not in result["sweep"][0]
    assert "sweep_radius_2" in output.timing
    assert len(output.tables["certificate"]) == result["sweep"][-1]["ball_size"]
    cocycle = output.tables["cocycle"]
    assert list(cocycle.columns) == ["g", "h", "c"]
    assert set(cocycle["c"]) == {0, 1}
    assert (cocycle[cocycle["h"] == "e"]["c"] == 0).all()


def test_When_CoverComparedWithBase_Expect_QuantizedBound(run_experiment):
    output = run_experiment("norm", DOUBLE_COVER, {
        "radii": [2], "compare_actions": [PSL2Z], "coefficients": [2, -1],
        "cover_degree": 2, "base_action": PSL2Z,
    })
    result = output.result
    assert result["combination"]["actions"] == ["cover(psl2z,2)", "psl2z"]
    assert result["combination"]["lower_bound"] <= 1.5 + 1e-9
    quantization = result["quantization"]
    assert quantization["max_defect"] == 0
    assert quantization["scaled_ok"]
    assert quantization["cap_ok"]


def test_When_ComparedActionHasOtherGenerators_Expect_BallMismatchError(run_experiment):
    with pytest.raises(BallMismatchError):
        run_experiment("norm", PSL2Z, {"radii": [2], "compare_actions": [{"catalog": "rotation"}],
                                       "coefficients": [1, -1]})


def test_When_FreeGroupActionsCompared_Expect_PositiveBoundWithinCap(run_experiment):
    output = run_experiment("norm", {"catalog": "gamma2"}, {
        "radii": [2], "compare_actions": [{"catalog": "schottky"}], "coefficients": [1, -1],
    })
    combination = output.result["combination"]
    assert combination["actions"] == ["gamma2", "schottky(1.5)"]
    assert 0.0 < combination["lower_bound"] <= 1.0 + 1e-9
