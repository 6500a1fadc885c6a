"""
Base classes for engine experiments.
"""

from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass
from typing import Any, Optional

import pandas as pd

from circlelab.config import parse_dataclass
from circlelab.group_action import ActionSpec


@dataclass(frozen=True)
class RunContext:
    rng_seed: int = 0
    workers: int = 1


class BaseExperiment(ABC):
    """
    Base class for experiments run by the engine.

    An experiment is configured once with its raw `params`, then run on an
    action. Results are kept on the instance and collected through the
    generate_* methods, the same way for every experiment.
    """
    key: str
    params_type: type

    def __init__(self):
        self.params: Any = None
        self.result: Optional[dict[str, Any]] = None
        self.tables: dict[str, pd.DataFrame] = {}
        self.timing: dict[str, float] = {}

    def configure(self, raw_params: Optional[dict[str, Any]]) -> Any:
        """Validate raw params into this experiment's params dataclass."""
        self.params = parse_dataclass(self.params_type, raw_params, "params")
        return self.params

    @abstractmethod
    def run(self, action: ActionSpec, ctx: RunContext) -> dict[str, Any]:
        """
        Run the experiment on an action.

        Returns:
            The JSON-ready result section of the report.
        """

    def generate_output(self) -> Optional[dict[str, Any]]:
        """
        Returns:
            The result of the last run, or None before any run.
        """
        return self.result

    def generate_metadata(self) -> Optional[dict[str, Any]]:
        """
        Returns:
            The resolved parameters, defaults included.
        """
        if self.params is None:
            return None
        return {"experiment": self.key, "params": asdict(self.params)}

    def generate_tables(self) -> dict[str, pd.DataFrame]:
        return self.tables
