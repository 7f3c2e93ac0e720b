from ._tschls import *  # noqa: F401,F403
from ._tschls import __doc__  # noqa: F401
