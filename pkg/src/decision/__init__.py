"""Decision making on top of granular inclusion: inverse problems and the pilot."""

__all__ = []
