"""Rough inclusion: norms, RIF axioms and granular matrices."""

__all__ = []
