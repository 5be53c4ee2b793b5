"""Minkowski BPV - sharp Brezis-Poincare-Vazquez inequalities on Minkowski spaces."""

__version__ = "0.1.0"
