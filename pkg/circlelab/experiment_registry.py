import logging
from typing import Any, Dict, Iterable

from circlelab.exceptions import UnknownExperimentError
from circlelab.experiments import (
    BaseExperiment,
    ClassifyExperiment,
    CocycleExperiment,
    NormExperiment,
    ProximalExperiment,
    ReconstructExperiment,
    RotnumExperiment,
    ThetaExperiment,
)

logger = logging.getLogger(__name__)

DEFAULT_EXPERIMENTS = (
    ClassifyExperiment,
    CocycleExperiment,
    RotnumExperiment,
    ThetaExperiment,
    ProximalExperiment,
    ReconstructExperiment,
    NormExperiment,
)


class ExperimentRegistry:
    def __init__(self):
        self.experiments: Dict[str, BaseExperiment] = {}

    def register(self, name: str, experiment: BaseExperiment) -> None:
        if not isinstance(experiment, BaseExperiment):
            raise ValueError(f"Experiment '{name}' must be an instance of BaseExperiment")
        self.experiments[name] = experiment

    def register_default_experiments(self) -> None:
        """Initialize and register the built-in experiments under their keys."""
        for cls in DEFAULT_EXPERIMENTS:
            self.register(cls.key, cls())
        logger.debug("Default experiments registered.")

    def keys(self) -> Iterable[str]:
        return tuple(self.experiments)

    def get(self, name: str) -> BaseExperiment:
        try:
            return self.experiments[name]
        except KeyError:
            raise UnknownExperimentError(f"unknown experiment '{name}'", key="experiment") from None

    @staticmethod
    def generate_outputs(experiments: dict[str, BaseExperiment]) -> dict[str, Any]:
        outputs = {}
        for name, experiment in experiments.items():
            output = experiment.generate_output()
            if output is not None:
                outputs[name] = output
        return outputs

    @staticmethod
    def generate_metadatas(experiments: dict[str, BaseExperiment]) -> dict[str, Any]:
        outputs = {}
        for name, experiment in experiments.items():
            output = experiment.generate_metadata()
            if output is not None:
                outputs[name] = output
        return outputs
