"""Ewens-Pitman two-parameter Poisson-Dirichlet partition model."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
