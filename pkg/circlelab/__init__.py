from .version import __version__
from .circle_core import Arc, CirclePoint, EmpiricalMeasure, orient
from .homeo import Homeo, euler_cocycle, rotation_number
from .group_action import ActionSpec, Word, classify

from .config import Config, ConfigParser
from .engine import Engine
from .experiment_registry import ExperimentRegistry
from . import catalog
