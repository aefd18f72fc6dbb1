"""Numerical toolkit for the SU(3) triple reduced product as an integrable system.

Construct orbit triples on the zero level of the moment map, integrate the
Lax flow, extract spectral data and divisor coordinates, and assemble
period/action profiles.
"""

from . import actionvars, flow, mat3, orbits, spectral
from .errors import (
    ConsistencyFailure,
    DegenerateA,
    DivisorUndefined,
    Infeasible,
    LoopThroughPole,
    NoReturn,
    NotHermitian,
    NotUnitary,
    StepUnderflow,
    TrpError,
)

__all__ = [
    "actionvars",
    "flow",
    "mat3",
    "orbits",
    "spectral",
    "ConsistencyFailure",
    "DegenerateA",
    "DivisorUndefined",
    "Infeasible",
    "LoopThroughPole",
    "NoReturn",
    "NotHermitian",
    "NotUnitary",
    "StepUnderflow",
    "TrpError",
]

__version__ = "0.1.0"
