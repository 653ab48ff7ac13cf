"""Cops and robbers with speed, reach and a protected ball: engine, solver, strategies."""

__version__ = "0.1.0"
