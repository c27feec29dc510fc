from ._taskstop import *  # noqa: F401,F403
from ._taskstop import __doc__  # noqa: F401
