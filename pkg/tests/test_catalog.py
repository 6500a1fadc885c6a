import numpy as np
import pytest

from circlelab import catalog
from circlelab.circle_core import circle_distance
from circlelab.exceptions import InvalidConfigValueError
from circlelab.homeo import Homeo, sup_distance


def test_When_Psl2zBuilt_Expect_SOfOrderTwo(psl2z):
    s = psl2z.generator("S")
    assert sup_distance(s.compose(s), Homeo.identity()) < 1e-12
    assert psl2z.labels == ["S", "T"]


def test_When_CoverBuilt_Expect_CoveringRelation(psl2z):
    cover = catalog.cover(psl2z, 3)
    z = np.linspace(0.0, 1.0, 33, endpoint=False)
    for label in psl2z.labels:
        base, lifted = psl2z.generator(label), cover.generator(label)
        assert np.all(circle_distance(base(np.mod(3 * z, 1.0)), np.mod(3 * lifted(z), 1.0)) < 1e-9)
    assert cover.name == "cover(psl2z,3)"


def test_When_CatalogEntryNested_Expect_Cover():
    spec = catalog.from_catalog({"catalog": "cover", "base": {"catalog": "gamma2"}, "k": 2})
    assert spec.labels == ["a", "b"]
    assert spec.name == "cover(gamma2,2)"


def test_When_CatalogParametersPassed_Expect_Used():
    spec = catalog.from_catalog({"catalog": "rotation", "angle": 0.25})
    assert spec.generator("r")(0.5) == pytest.approx(0.75)


@pytest.mark.parametrize("entry", [
    {"catalog": "hyperbolic"},
    {"catalog": "rotation", "slope": 2},
    {"catalog": "cover", "base": {"catalog": "psl2z"}},
])
def test_When_CatalogEntryInvalid_Expect_InvalidConfigValueError(entry):
    with pytest.raises(InvalidConfigValueError):
        catalog.from_catalog(entry)
