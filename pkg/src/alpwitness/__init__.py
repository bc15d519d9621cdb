"""Witness-based inversion of fifth-force and axion-like couplings."""

__version__ = "0.1.0"
