"""Symmetry groups of Schroedinger-type equations with time-dependent potentials."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
