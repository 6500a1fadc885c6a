import json

import numpy as np
import pytest

from circlelab import catalog
from circlelab.engine import Engine
from circlelab.homeo import Homeo


def random_moebius(rng: np.random.Generator) -> Homeo:
    a, b, c = rng.normal(size=3)
    a = a if abs(a) > 0.2 else 0.2 + abs(a)
    # ad - bc = 1
    return Homeo.moebius([[a, b], [c, (1.0 + b * c) / a]])


def random_piecewise_linear(rng: np.random.Generator, knots: int = 6) -> Homeo:
    xs = np.sort(rng.random(knots))
    ys = np.sort(rng.random(knots)) + rng.integers(-1, 2)
    return Homeo.piecewise_linear(np.append(xs, xs[0] + 1.0), np.append(ys, ys[0] + 1.0))


def random_homeo(rng: np.random.Generator, kind: str) -> Homeo:
    if kind == "rotation":
        return Homeo.rotation(rng.random())
    if kind == "moebius":
        return random_moebius(rng)
    if kind == "piecewise_linear":
        return random_piecewise_linear(rng)
    if kind == "cyclic_cover":
        return Homeo.cover(random_moebius(rng), int(rng.integers(2, 4)), int(rng.integers(0, 2)))
    if kind == "composition":
        return random_moebius(rng).compose(random_piecewise_linear(rng))
    raise ValueError(kind)


LIFT_KINDS = ("rotation", "moebius", "piecewise_linear", "cyclic_cover", "composition")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def psl2z():
    return catalog.psl2z()


@pytest.fixture
def double_cover(psl2z):
    return catalog.cover(psl2z, 2)


@pytest.fixture
def golden_rotation():
    return catalog.rotation()


@pytest.fixture
def schottky():
    return catalog.schottky(1.5)


@pytest.fixture
def write_config(tmp_path):
    """Write a config document into tmp_path, pointing its report there as well."""
    def write(experiment, action, params=None, name="config.json", **extra):
        document = {
            "schema_version": 1,
            "experiment": experiment,
            "action": action,
            "params": params or {},
            "rng_seed": extra.pop("rng_seed", 0),
            "output": {"report": str(tmp_path / f"{experiment}_report.json"),
                       "csv": extra.pop("csv", None)},
            **extra,
        }
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return path
    return write


@pytest.fixture
def run_experiment():
    """Initialize an engine on one experiment and return its output."""
    def run(experiment, action, params=None, rng_seed=0, workers=1):
        engine = Engine()
        engine.initialize({"schema_version": 1, "experiment": experiment, "action": action,
                           "params": params or {}, "rng_seed": rng_seed, "workers": workers})
        return engine.run()
    return run
