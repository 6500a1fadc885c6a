import pytest

from circlelab.exceptions import DegenerateBoundaryError


def test_When_WalksDoNotConverge_Expect_DegenerateBoundaryError(run_experiment):
    with pytest.raises(DegenerateBoundaryError):
        run_experiment("reconstruct", {"catalog": "rotation"},
                       {"walk_length": 10, "sample_count": 20})


@pytest.mark.slow
def test_When_Psl2zReconstructed_Expect_RoundTripWithinTolerances(run_experiment):
    output = run_experiment("reconstruct", {"catalog": "psl2z"})
    result = output.result
    assert result["samples"] >= 3500
    assert result["cocycle_audit"]["passed"]
    assert result["interval_audit"]["passed"]
    assert result["reconstruction"]["collision_fraction"] == 0.0
    assert result["reconstruction"]["order_agreement"] >= 0.99
    trip = result["round_trip"]
    assert result["round_trip_max_distance"] < 5e-3
    assert trip["euler_mismatches"] == 0
    assert trip["euler_pairs"] == 16
    assert trip["rotation_deviation"] < 2e-3
    assert len(result["uniqueness"]["base_points"]) == 2
    assert list(output.tables["boundary"].columns) == ["id", "limit_point", "walk",
                                                       "prefix_letter", "phi"]
