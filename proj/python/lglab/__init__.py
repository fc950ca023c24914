"""Mach-Zehnder Leggett-Garg, weak-value and quasiprobability toolkit."""

from ._lglab import *  # noqa: F401,F403
from ._lglab import __version__  # noqa: F401
