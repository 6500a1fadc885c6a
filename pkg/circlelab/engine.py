import json
import logging
import platform
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import pandas as pd
import scipy
import sklearn

from circlelab.config import SCHEMA_VERSION, Config, ConfigParser, build_action
from circlelab.exceptions import CircleLabError
from circlelab.experiment_registry import ExperimentRegistry
from circlelab.experiments import BaseExperiment, RunContext
from circlelab.group_action import ActionSpec
from circlelab.version import __version__

logger = logging.getLogger(__name__)


@dataclass
class EngineOutput:
    metadata: Dict[str, Any]
    result: Dict[str, Any]
    tables: Dict[str, pd.DataFrame] = field(default_factory=dict)
    timing: Dict[str, float] = field(default_factory=dict)


def versions() -> dict[str, str]:
    return {
        "circlelab": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pandas": pd.__version__,
        "scikit-learn": sklearn.__version__,
    }


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def dumps_report(report: dict[str, Any]) -> str:
    """Sorted keys and fixed indentation, so equal reports serialise to equal bytes."""
    return json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n"


class Engine:
    def __init__(self):
        self.initialized = False
        self.registry = ExperimentRegistry()
        self.config: Optional[Config] = None
        self.action: Optional[ActionSpec] = None
        self.experiment: Optional[BaseExperiment] = None

    def register_default_experiments(self) -> None:
        """Register the built-in experiments: classify, cocycle, rotnum, theta, proximal, reconstruct and norm."""
        self.registry.register_default_experiments()

    def initialize(self, config: Union[Config, dict[str, Any]], seed: Optional[int] = None,
                   out: Optional[str] = None, workers: Optional[int] = None) -> Config:
        """
        Validate the config, apply command-line overrides, build the action and
        configure the selected experiment. Nothing is computed before this passes.

        Example:
        ```
        engine = Engine()
        engine.initialize({"schema_version": 1, "experiment": "classify",
                           "action": {"catalog": "rotation", "angle": 0.2}})
        output = engine.run()
        ```
        """
        if not self.registry.experiments:
            self.register_default_experiments()
        parser = ConfigParser(self.registry.keys())
        if not isinstance(config, Config):
            config = parser.parse(config)
        elif config.experiment not in self.registry.keys():
            parser.parse(config.echo())
        config = config.with_overrides(seed, out, workers)

        self.experiment = self.registry.get(config.experiment)
        self.experiment.configure(config.params)
        self.action = build_action(config.action)
        self.config = config
        self.initialized = True
        logger.debug("Engine initialized: %s on %s.", config.experiment, self.action.name)
        return config

    def run(self) -> EngineOutput:
        if not self.initialized:
            raise CircleLabError("Please call initialize() before running the engine.")
        self.experiment.timing = {}
        start = time.perf_counter()
        self.experiment.run(self.action, RunContext(self.config.rng_seed, self.config.workers))
        elapsed = time.perf_counter() - start
        logger.info("Experiment %s finished in %.2fs.", self.config.experiment, elapsed)
        return self.generate_output(elapsed)

    def generate_output(self, elapsed: float = 0.0) -> EngineOutput:
        """
            Collect the experiment's result, resolved parameters, tables and timings.
        """
        experiments = {self.config.experiment: self.experiment}
        return EngineOutput(
            metadata=ExperimentRegistry.generate_metadatas(experiments)[self.config.experiment],
            result=ExperimentRegistry.generate_outputs(experiments)[self.config.experiment],
            tables=dict(self.experiment.generate_tables()),
            timing={"total_seconds": elapsed, **self.experiment.timing},
        )

    def build_report(self, output: EngineOutput) -> dict[str, Any]:
        """The JSON report; everything except `timing` is a function of config and seed."""
        return {
            "schema_version": SCHEMA_VERSION,
            "experiment": self.config.experiment,
            "config": self.config.echo(),
            "seed": self.config.rng_seed,
            "versions": versions(),
            "action": {"name": self.action.name, "generators": self.action.describe()},
            "params": output.metadata["params"],
            "result": output.result,
            "timing": output.timing,
        }

    @staticmethod
    def write_report(report: dict[str, Any], path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps_report(report), encoding="utf-8")
        return path

    @staticmethod
    def write_tables(tables: dict[str, pd.DataFrame], path: Union[str, Path]) -> list[Path]:
        """One table goes to `path`; several go to `<stem>_<name>.csv` beside it."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        written = []
        for name, frame in tables.items():
            target = path if len(tables) == 1 else path.with_name(f"{path.stem}_{name}{path.suffix}")
            frame.to_csv(target, index=False)
            written.append(target)
        return written
