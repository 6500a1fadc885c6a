import pytest

from circlelab.exceptions import PreconditionError

CUSTOM = {"name": "rotation and parabolic", "generators": [
    {"label": "a", "kind": "rotation", "angle": 0.25},
    {"label": "p", "kind": "moebius", "matrix": [[1.0, 1.0], [0.0, 1.0]]},
]}


def test_When_WordsListed_Expect_RotationNumbersAndZeroDefects(run_experiment):
    output = run_experiment("rotnum", CUSTOM, {"words": ["a", "a a", "p"], "iterations": 1000})
    result = output.result
    numbers = {w["word"]: w["rotation_number"] for w in result["words"]}
    assert numbers["a"] == pytest.approx(0.25, abs=1e-3)
    assert numbers["a a"] == pytest.approx(0.5, abs=1e-3)
    assert min(numbers["p"], 1.0 - numbers["p"]) <= 1e-3
    assert result["error_bound"] == pytest.approx(1e-3)
    assert abs(result["additivity"][0]["defect"]) <= 1e-9
    assert len(output.tables["rotation_numbers"]) == 3


def test_When_NoWordsGiven_Expect_WholeBall(run_experiment):
    output = run_experiment("rotnum", {"catalog": "psl2z"}, {"word_radius": 1, "iterations": 500})
    assert [w["word"] for w in output.result["words"]] == ["S", "S^-1", "T", "T^-1"]
    s = output.result["words"][0]
    assert s["rotation_number"] == pytest.approx(0.5, abs=2e-3)


def test_When_WordUsesUnknownGenerator_Expect_PreconditionError(run_experiment):
    with pytest.raises(PreconditionError):
        run_experiment("rotnum", CUSTOM, {"words": ["a b"], "iterations": 10})
