"""Granular structures: information tables, spaces and parthood."""

__all__ = []
