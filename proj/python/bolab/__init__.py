"""Numerical laboratory for the damped Benjamin-Ono equation on the torus."""

try:
    from ._bolab import *  # installed layout: extension inside the package
except ImportError:
    from _bolab import *  # in-tree runs: extension on PYTHONPATH from the build dir

__all__ = [name for name in dir() if not name.startswith("_")]
