from ._fluxatom import *  # noqa: F401,F403
from ._fluxatom import __version__  # noqa: F401
