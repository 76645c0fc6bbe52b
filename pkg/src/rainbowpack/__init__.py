"""Rainbow spanning tree packing: matroid tools, exact solvers, reductions and verifiers."""

from .errors import *  # noqa: F401,F403
from .formats import *  # noqa: F401,F403
from .generators import *  # noqa: F401,F403
from .graphs import *  # noqa: F401,F403
from .matroid import *  # noqa: F401,F403
from .rainbow import *  # noqa: F401,F403
from .reductions import *  # noqa: F401,F403
from .targets import *  # noqa: F401,F403
from .verify import *  # noqa: F401,F403

__version__ = "0.1.0"
