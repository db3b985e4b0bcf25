"""
The base subpackage contains classes that provide base functionality for all the drivers of the laboratory.

"""
from anticoncentration.base.lab_class import LabClass

__all__ = [
    "LabClass",
]
