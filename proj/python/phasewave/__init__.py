"""Hilbert-space classical mechanics laboratory.

Thin re-export of the compiled core: phase-space wave functions and their
advection, the dual (q, lambda) representation, Wigner/Moyal evolution,
six-vector field states, beam correlations, hybrid measurement models, and
the scenario runner shared with the CLI.
"""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
