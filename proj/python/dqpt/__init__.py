"""Python bindings for the Ising-ring dephasing simulator."""

from ._dqpt import *  # noqa: F401,F403
from ._dqpt import __version__  # noqa: F401
