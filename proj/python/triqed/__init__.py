"""Python surface of the triqed simulation core.

Everything is implemented in the C++ extension; this package just re-exports
it under a stable name.
"""

from ._triqed import *  # noqa: F401,F403
from ._triqed import __version__  # noqa: F401
