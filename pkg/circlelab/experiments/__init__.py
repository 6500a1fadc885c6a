"""Experiments run by the engine, one per CLI subcommand."""

from .base import BaseExperiment, RunContext
from .classify import ClassifyExperiment, ClassifyExperimentParams
from .cocycle import CocycleExperiment, CocycleParams
from .norm import NormExperiment, NormParams
from .proximal import ProximalExperiment, ProximalParams
from .reconstruct import ReconstructExperiment, ReconstructParams
from .rotnum import RotnumExperiment, RotnumParams
from .theta import ThetaExperiment, ThetaExperimentParams

__all__ = [
    'BaseExperiment',
    'RunContext',
    'ClassifyExperiment',
    'ClassifyExperimentParams',
    'CocycleExperiment',
    'CocycleParams',
    'NormExperiment',
    'NormParams',
    'ProximalExperiment',
    'ProximalParams',
    'ReconstructExperiment',
    'ReconstructParams',
    'RotnumExperiment',
    'RotnumParams',
    'ThetaExperiment',
    'ThetaExperimentParams',
]
