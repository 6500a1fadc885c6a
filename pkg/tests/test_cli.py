import json

import pytest

from circlelab.cli import EXIT_CONFIG_ERROR, EXIT_DOMAIN_ERROR, EXIT_OK, main

ROTATION_THIRD = {"catalog": "rotation", "angle": 1 / 3}


def read_report(tmp_path, experiment):
    return json.loads((tmp_path / f"{experiment}_report.json").read_text())


def test_When_RotationByThirdClassified_Expect_FiniteOrbitReport(tmp_path, write_config):
    path = write_config("classify", ROTATION_THIRD)
    assert main(["classify", "--config", str(path)]) == EXIT_OK
    report = read_report(tmp_path, "classify")
    assert report["result"]["classification"]["kind"] == "FiniteOrbit"
    assert report["result"]["classification"]["size"] == 3
    assert report["experiment"] == "classify"


def test_When_SeedAndOutOverridden_Expect_ReportUsesThem(tmp_path, write_config):
    path = write_config("classify", ROTATION_THIRD)
    out = tmp_path / "nested" / "custom.json"
    assert main(["classify", "--config", str(path), "--seed", "7", "--out", str(out)]) == EXIT_OK
    report = json.loads(out.read_text())
    assert report["seed"] == 7
    assert report["config"]["rng_seed"] == 7


def test_When_RunTwice_Expect_IdenticalReportsApartFromTiming(tmp_path, write_config):
    path = write_config("classify", {"catalog": "rotation"}, rng_seed=5)
    texts = []
    for name in ("first.json", "second.json"):
        assert main(["classify", "--config", str(path), "--out", str(tmp_path / name)]) == EXIT_OK
        report = json.loads((tmp_path / name).read_text())
        report.pop("timing")
        report["config"]["output"].pop("report")
        texts.append(json.dumps(report, sort_keys=True))
    assert texts[0] == texts[1]


def test_When_ConfigHasUnknownKey_Expect_ConfigExitAndErrorRecord(tmp_path, write_config, capsys):
    path = write_config("classify", ROTATION_THIRD, colour="red")
    assert main(["classify", "--config", str(path), "--out", str(tmp_path / "err.json")]) \
        == EXIT_CONFIG_ERROR
    record = json.loads((tmp_path / "err.json").read_text())
    assert record["error"] == "UnknownConfigKeyError"
    assert record["key"] == "colour"
    assert "UnknownConfigKeyError" in capsys.readouterr().err


def test_When_CommandDiffersFromConfig_Expect_ConfigExit(write_config):
    path = write_config("classify", ROTATION_THIRD)
    assert main(["norm", "--config", str(path)]) == EXIT_CONFIG_ERROR


def test_When_ConfigFileMissing_Expect_ConfigExit(tmp_path):
    assert main(["classify", "--config", str(tmp_path / "absent.json")]) == EXIT_CONFIG_ERROR


def test_When_WalksNeverConverge_Expect_DomainExitAndEvidence(tmp_path, write_config):
    path = write_config("reconstruct", {"catalog": "rotation"},
                        {"walk_length": 5, "sample_count": 10})
    assert main(["reconstruct", "--config", str(path)]) == EXIT_DOMAIN_ERROR
    record = read_report(tmp_path, "reconstruct")
    assert record["error"] == "DegenerateBoundaryError"
    assert record["evidence"]["converged"] == 0


def test_When_NormSweepRun_Expect_NondecreasingBoundsAndCsv(tmp_path, write_config):
    path = write_config("norm", {"catalog": "psl2z"}, {"radii": [2, 3]},
                        csv=str(tmp_path / "norm.csv"))
    assert main(["norm", "--config", str(path), "--workers", "2"]) == EXIT_OK
    result = read_report(tmp_path, "norm")["result"]
    assert result["nondecreasing"]
    assert max(result["lower_bounds"]) <= 0.5 + 1e-9
    assert (tmp_path / "norm_sweep.csv").exists()
    assert (tmp_path / "norm_certificate.csv").exists()


def test_When_VersionRequested_Expect_ExitZero(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["--version"])
    assert exc_info.value.code == 0
    assert "circlelab" in capsys.readouterr().out
