"""Certified complexity bounds for torus bundles over the circle with
monodromy [[2, 1], [1, 1]]^n and their punctured versions."""

__version__ = "0.1.0"
