"""multirot: multi-rotation circle orbits, box dimension, and affine
embeddings of self-similar sets, on an exact-arithmetic core.

Submodules
----------
exact        declared-basis reals, Q-rank, mod-1 independence, commensurability
orbit        step systems, orbit generation, counting sequences, reduction
boxdim       dyadic covering profiles, dimension estimates, interval covers
diophantine  pigeonhole simultaneous approximation, separation diagnostics
ifs          self-similar IFSs (d <= 2), separation certificates, sampling
embedtrace   point coding, the s_n trace, induced orbits, the threshold
cli          JSON experiment configs and the command-line runner
"""

from . import boxdim, diophantine, embedtrace, exact, ifs, orbit
from .errors import (
    ConfigError,
    DomainError,
    FactorLimitError,
    GuardError,
    NotInAttractorError,
    UsageError,
)

__version__ = "0.1.0"

__all__ = [
    "exact",
    "orbit",
    "boxdim",
    "diophantine",
    "ifs",
    "embedtrace",
    "UsageError",
    "DomainError",
    "GuardError",
    "ConfigError",
    "FactorLimitError",
    "NotInAttractorError",
    "__version__",
]
