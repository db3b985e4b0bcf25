"""
The exceptions subpackage contains the errors raised by the laboratory.

Argument and domain violations raise the builtin :class:`ValueError`.
"""
from anticoncentration.exceptions.capacity_exceeded import CapacityExceeded
from anticoncentration.exceptions.config_error import ConfigError
from anticoncentration.exceptions.empty_sample_error import EmptySampleError
from anticoncentration.exceptions.numerical_failure import NumericalFailure

__all__ = [
    "CapacityExceeded",
    "ConfigError",
    "EmptySampleError",
    "NumericalFailure",
]
