"""Singularity analysis and algebraic entropy of second-order birational maps."""

__version__ = "1.0.0"
