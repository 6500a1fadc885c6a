"""Configuration-related exceptions."""
from .base import CircleLabError


class ConfigError(CircleLabError):
    """Raised when a configuration document fails validation."""
    def __init__(self, message, key=None, path=None):
        super().__init__(message)
        self.key = key
        self.path = path


class SchemaVersionError(ConfigError):
    """Raised when the config declares an unsupported schema version."""
    pass

class UnknownConfigKeyError(ConfigError):
    """Raised when the config contains a key the schema does not know."""
    pass

class MissingConfigKeyError(ConfigError):
    """Raised when a required key is absent."""
    pass

class InvalidConfigValueError(ConfigError):
    """Raised when a value has the wrong type or lies outside its range."""
    pass

class UnknownExperimentError(ConfigError):
    """Raised when the experiment selector names no registered experiment."""
    pass
