"""Tests for granulum."""
