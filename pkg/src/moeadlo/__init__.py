"""Decomposition-based multiobjective evolution with language-model and linear operators."""

__version__ = "0.1.0"
