"""Variable-pitch quadrotor design and simulation toolkit.

Thin Python surface over the C++ core: rotor hover performance and inverse
solvers, the sizing pipeline, PD gain synthesis and control allocation, the
closed-loop simulator, and the JSON/CSV file boundary.
"""

from ._vpq import *  # noqa: F401,F403
from ._vpq import __doc__  # noqa: F401

__version__ = "0.1.0"
