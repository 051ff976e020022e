"""Finite localities and fusion systems: construction, classification,
expansion of object sets, partial normal subgroup theory, and a CLI."""

__version__ = "0.1.0"
