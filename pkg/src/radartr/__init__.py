"""Radar teach-and-repeat navigation stack with a deterministic 2D simulator."""

__version__ = "0.1.0"
