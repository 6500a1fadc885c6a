"""
Run configuration: a JSON document validated into a frozen `Config` before
any computation starts.

    {
        "schema_version": 1,
        "experiment": "classify",
        "action": {"catalog": "rotation", "angle": 0.3333333333333333},
        "params": {"radii": [4, 8]},
        "rng_seed": 7,
        "workers": 1,
        "output": {"report": "report.json", "csv": null}
    }
"""

import dataclasses
import json
import logging
import types
import typing
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional, Union

from circlelab.catalog import from_catalog
from circlelab.exceptions import (
    ConfigError,
    InvalidConfigValueError,
    InvalidLiftError,
    MissingConfigKeyError,
    PreconditionError,
    SchemaVersionError,
    UnknownConfigKeyError,
    UnknownExperimentError,
)
from circlelab.group_action import ActionSpec

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
TOP_LEVEL_KEYS = ("schema_version", "experiment", "action", "params", "rng_seed", "workers",
                  "output")


@dataclass(frozen=True)
class OutputConfig:
    report: str = "report.json"
    csv: Optional[str] = None


@dataclass(frozen=True)
class Config:
    experiment: str
    action: dict[str, Any]
    params: dict[str, Any] = field(default_factory=dict)
    rng_seed: int = 0
    workers: int = 1
    output: OutputConfig = OutputConfig()
    schema_version: int = SCHEMA_VERSION

    def echo(self) -> dict[str, Any]:
        """The config as a JSON document; parsing it back gives an equal Config."""
        return {
            "schema_version": self.schema_version,
            "experiment": self.experiment,
            "action": json.loads(json.dumps(self.action)),
            "params": json.loads(json.dumps(self.params)),
            "rng_seed": self.rng_seed,
            "workers": self.workers,
            "output": dataclasses.asdict(self.output),
        }

    def with_overrides(self, seed: Optional[int] = None, out: Optional[str] = None,
                       workers: Optional[int] = None) -> "Config":
        changes: dict[str, Any] = {}
        if seed is not None:
            changes["rng_seed"] = _check_int(seed, "rng_seed", minimum=0)
        if workers is not None:
            changes["workers"] = _check_int(workers, "workers", minimum=1)
        if out is not None:
            changes["output"] = dataclasses.replace(self.output, report=str(out))
        return dataclasses.replace(self, **changes) if changes else self


def _check_int(value: Any, key: str, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidConfigValueError(f"'{key}' must be an integer", key=key)
    if minimum is not None and value < minimum:
        raise InvalidConfigValueError(f"'{key}' must be at least {minimum}", key=key)
    return value


def _reject_unknown(raw: dict[str, Any], allowed: Iterable[str], path: str) -> None:
    unknown = sorted(set(raw) - set(allowed))
    if unknown:
        raise UnknownConfigKeyError(f"unknown key '{unknown[0]}' in {path}", key=unknown[0],
                                    path=f"{path}.{unknown[0]}")


def _coerce(value: Any, tp: Any, path: str) -> Any:
    origin = typing.get_origin(tp)
    args = typing.get_args(tp)
    if tp is Any:
        return value
    if origin is Union or isinstance(tp, types.UnionType):
        if value is None and type(None) in args:
            return None
        errors = []
        for arg in args:
            if arg is type(None):
                continue
            try:
                return _coerce(value, arg, path)
            except InvalidConfigValueError as e:
                errors.append(str(e))
        raise InvalidConfigValueError("; ".join(errors), key=path.rsplit(".", 1)[-1], path=path)
    key = path.rsplit(".", 1)[-1]
    if tp is bool:
        if not isinstance(value, bool):
            raise InvalidConfigValueError(f"'{path}' must be a boolean", key=key, path=path)
        return value
    if tp is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidConfigValueError(f"'{path}' must be an integer", key=key, path=path)
        return value
    if tp is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise InvalidConfigValueError(f"'{path}' must be a number", key=key, path=path)
        return float(value)
    if tp is str:
        if not isinstance(value, str):
            raise InvalidConfigValueError(f"'{path}' must be a string", key=key, path=path)
        return value
    if origin in (tuple, list):
        if not isinstance(value, (list, tuple)):
            raise InvalidConfigValueError(f"'{path}' must be a list", key=key, path=path)
        if origin is list or (len(args) == 2 and args[1] is Ellipsis):
            items = [_coerce(v, args[0] if args else Any, f"{path}[{i}]")
                     for i, v in enumerate(value)]
        else:
            if len(value) != len(args):
                raise InvalidConfigValueError(f"'{path}' must have {len(args)} entries",
                                              key=key, path=path)
            items = [_coerce(v, a, f"{path}[{i}]") for i, (v, a) in enumerate(zip(value, args))]
        return tuple(items) if origin is tuple else items
    if origin is dict or tp is dict:
        if not isinstance(value, dict):
            raise InvalidConfigValueError(f"'{path}' must be an object", key=key, path=path)
        return value
    if dataclasses.is_dataclass(tp):
        return parse_dataclass(tp, value, path)
    raise InvalidConfigValueError(f"unsupported field type at '{path}'", key=key, path=path)


def parse_dataclass(cls: type, raw: Optional[dict[str, Any]], path: str):
    """
    Build a params dataclass from raw JSON, field by field.

    Missing fields take their defaults. Unknown keys, wrong types and values
    rejected by the dataclass itself raise ConfigError subclasses.
    """
    raw = {} if raw is None else raw
    if not isinstance(raw, dict):
        raise InvalidConfigValueError(f"'{path}' must be an object", key=path, path=path)
    fields = {f.name: f for f in dataclasses.fields(cls)}
    _reject_unknown(raw, fields, path)
    hints = typing.get_type_hints(cls)
    values = {name: _coerce(raw[name], hints[name], f"{path}.{name}")
              for name in fields if name in raw}
    try:
        return cls(**values)
    except (ValueError, PreconditionError) as e:
        raise InvalidConfigValueError(str(e), key=path, path=path) from e


def build_action(raw: dict[str, Any]) -> ActionSpec:
    """Turn the `action` entry into an ActionSpec; every failure is a config error."""
    if not isinstance(raw, dict):
        raise InvalidConfigValueError("'action' must be an object", key="action")
    if ("catalog" in raw) == ("generators" in raw):
        raise InvalidConfigValueError("'action' needs exactly one of 'catalog' or 'generators'",
                                      key="action")
    try:
        if "catalog" in raw:
            return from_catalog(raw)
        _reject_unknown(raw, ("generators", "name"), "action")
        generators = raw["generators"]
        if not isinstance(generators, list) or not all(isinstance(g, dict) for g in generators):
            raise InvalidConfigValueError("'action.generators' must be a list of descriptors",
                                          key="generators", path="action.generators")
        return ActionSpec.from_descriptors(generators, str(raw.get("name", "custom")))
    except (InvalidLiftError, PreconditionError) as e:
        raise InvalidConfigValueError(f"invalid action: {e}", key="action") from e
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidConfigValueError(f"malformed action entry: {e}", key="action") from e


class ConfigParser:
    """Validates raw config documents. `experiments` restricts the allowed selectors."""

    def __init__(self, experiments: Optional[Iterable[str]] = None):
        self.experiments = None if experiments is None else tuple(experiments)

    def parse(self, raw: dict[str, Any]) -> Config:
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        _reject_unknown(raw, TOP_LEVEL_KEYS, "config")
        for key in ("schema_version", "experiment", "action"):
            if key not in raw:
                raise MissingConfigKeyError(f"missing required key '{key}'", key=key,
                                            path=f"config.{key}")
        if raw["schema_version"] != SCHEMA_VERSION or isinstance(raw["schema_version"], bool):
            raise SchemaVersionError(f"unsupported schema_version {raw['schema_version']!r}",
                                     key="schema_version")
        experiment = raw["experiment"]
        if not isinstance(experiment, str):
            raise InvalidConfigValueError("'experiment' must be a string", key="experiment")
        if self.experiments is not None and experiment not in self.experiments:
            raise UnknownExperimentError(f"unknown experiment '{experiment}'", key="experiment")
        if not isinstance(raw["action"], dict):
            raise InvalidConfigValueError("'action' must be an object", key="action")
        params = raw.get("params", {})
        if not isinstance(params, dict):
            raise InvalidConfigValueError("'params' must be an object", key="params")
        output = parse_dataclass(OutputConfig, raw.get("output"), "output")
        config = Config(
            experiment=experiment,
            action=raw["action"],
            params=params,
            rng_seed=_check_int(raw.get("rng_seed", 0), "rng_seed", minimum=0),
            workers=_check_int(raw.get("workers", 1), "workers", minimum=1),
            output=output,
        )
        logger.debug("Config parsed for experiment '%s'.", experiment)
        return config

    def load(self, path: Union[str, Path]) -> Config:
        path = Path(path)
        try:
            with path.open("r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as e:
            raise ConfigError(f"cannot read config: {e}", path=str(path)) from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"config is not valid JSON: {e}", path=str(path)) from e
        return self.parse(raw)
