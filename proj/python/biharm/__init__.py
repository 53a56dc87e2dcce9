from ._biharm import *  # noqa: F401,F403
from ._biharm import BiharmError, __doc__  # noqa: F401
