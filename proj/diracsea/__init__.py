"""Dirac-sea pilot-wave numerical laboratory."""

from ._diracsea import *  # noqa: F401,F403
from ._diracsea import __version__  # noqa: F401
