"""Deterministic-equivalent spectral distributions of percolated lattice graphs."""

from ._latspec import *  # noqa: F401,F403
from ._latspec import __doc__  # noqa: F401

__version__ = "0.1.0"
