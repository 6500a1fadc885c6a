"""Named actions used by configs and tests."""

from typing import Any, Callable

import numpy as np

from circlelab.exceptions import InvalidConfigValueError
from circlelab.group_action import ActionSpec
from circlelab.homeo import Homeo


def _rotation_matrix(phi: float) -> np.ndarray:
    return np.array([[np.cos(phi), -np.sin(phi)], [np.sin(phi), np.cos(phi)]])


def rotation(angle: float = (np.sqrt(5) - 1) / 2) -> ActionSpec:
    return ActionSpec((("r", Homeo.rotation(angle)),), f"rotation({angle:g})")


def rotation_pair(a: float, b: float) -> ActionSpec:
    return ActionSpec((("a", Homeo.rotation(a)), ("b", Homeo.rotation(b))),
                      f"rotations({a:g},{b:g})")


def identity() -> ActionSpec:
    return ActionSpec((("e0", Homeo.identity()),), "identity")


def psl2z() -> ActionSpec:
    """The modular group on the projective line, generated by S (order 2) and T."""
    return ActionSpec((
        ("S", Homeo.moebius([[0.0, -1.0], [1.0, 0.0]])),
        ("T", Homeo.moebius([[1.0, 1.0], [0.0, 1.0]])),
    ), "psl2z")


def gamma2() -> ActionSpec:
    """Level-2 principal congruence subgroup, free on two parabolics."""
    return ActionSpec((
        ("a", Homeo.moebius([[1.0, 2.0], [0.0, 1.0]])),
        ("b", Homeo.moebius([[1.0, 0.0], [2.0, 1.0]])),
    ), "gamma2")


def schottky(r: float = 1.5) -> ActionSpec:
    """
    Two hyperbolic generators with axes a quarter turn apart. For r above
    roughly 0.9 the ping-pong arcs are disjoint and the limit set is a Cantor set.
    """
    a = np.array([[np.cosh(r), np.sinh(r)], [np.sinh(r), np.cosh(r)]])
    k = _rotation_matrix(np.pi / 4)
    b = k @ a @ k.T
    return ActionSpec((("a", Homeo.moebius(a)), ("b", Homeo.moebius(b))), f"schottky({r:g})")


def cover(base: ActionSpec, k: int, branch: int = 0) -> ActionSpec:
    """Degree-k cyclic cover: every generator lifted through z -> kz."""
    generators = tuple((label, Homeo.cover(g, k, branch if i == 0 else 0))
                       for i, (label, g) in enumerate(base.generators))
    return ActionSpec(generators, f"cover({base.name},{k})")


CATALOG: dict[str, Callable[..., ActionSpec]] = {
    "rotation": rotation,
    "rotation_pair": rotation_pair,
    "identity": identity,
    "psl2z": psl2z,
    "gamma2": gamma2,
    "schottky": schottky,
}


def from_catalog(entry: dict[str, Any]) -> ActionSpec:
    """
    Build a catalog action from a config entry such as
    {"catalog": "cover", "base": {"catalog": "psl2z"}, "k": 2}.
    """
    entry = dict(entry)
    name = entry.pop("catalog")
    if name == "cover":
        try:
            base = from_catalog(entry.pop("base"))
            return cover(base, int(entry.pop("k")), int(entry.pop("branch", 0)))
        except KeyError as e:
            raise InvalidConfigValueError(f"cover entry is missing {e}", key="action") from None
    if name not in CATALOG:
        raise InvalidConfigValueError(f"unknown catalog action '{name}'", key="action")
    try:
        return CATALOG[name](**entry)
    except TypeError as e:
        raise InvalidConfigValueError(f"bad parameters for '{name}': {e}", key="action") from e
