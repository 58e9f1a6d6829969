"""Phase-encoded logic on self-sustaining oscillators: python interface."""

from ._shilsim import *  # noqa: F401,F403
from ._shilsim import __version__  # noqa: F401
