"""Energy-aware fixed-interval VM placement.

Interval algebra, multi-resource feasibility checking, a linear power model
with exact energy accounting, a family of placement heuristics, an exact
small-instance oracle, and workload tooling (SWF traces plus a seeded
synthetic generator). The heavy lifting lives in the compiled ``_core``
extension; this package re-exports its public surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
