"""mfgap: spectral-gap verification for mapping class group actions on
rank-one measured foliation spaces.

Exact models (integer slopes, rational polygons, rational projective arcs)
carry every certification step; floats appear only in reported lengths,
norms and ratios.  The FastAPI service in `mfgap.service` and the CLI in
`mfgap.cli` wrap the verification suites in `mfgap.suites`.
"""

__version__ = "0.1.0"

from .fricke import MODULAR_POINT, TracePoint
from .gap import EPSILON_FREE, ETA_CONTINUOUS, ETA_DISCRETE, FinSuppVector
from .schottky import DEFAULT_PAIR, SchottkyPair, verify_ping_pong
from .slopes import MappingClass, Slope, act_slope, canonicalize_slope

__all__ = [
    "__version__",
    "MODULAR_POINT",
    "TracePoint",
    "EPSILON_FREE",
    "ETA_CONTINUOUS",
    "ETA_DISCRETE",
    "FinSuppVector",
    "DEFAULT_PAIR",
    "SchottkyPair",
    "verify_ping_pong",
    "MappingClass",
    "Slope",
    "act_slope",
    "canonicalize_slope",
]
