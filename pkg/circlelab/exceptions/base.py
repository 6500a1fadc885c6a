"""Base exception for circlelab."""

class CircleLabError(Exception):
    """Base class for all circlelab exceptions."""
    pass
