"""Self-ordering of laser-driven atoms along a waveguide."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
