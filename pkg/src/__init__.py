"""Granulum - granular rough sets, rough inclusion functions and GRIFs."""

__version__ = "1.0.0"
__author__ = "Granulum Team"
__license__ = "MIT"

SCHEMA = "granulum/1"

__all__ = ["SCHEMA"]
