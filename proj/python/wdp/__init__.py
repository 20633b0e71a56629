"""Exceptional toric systems on weak del Pezzo surfaces."""

from ._wdp import (
    ParseError,
    ToricError,
    ToricSystem,
    enumerate,
    first_kind,
    is_admissible,
    is_effective,
    is_first_kind,
    reduce,
    run,
    surface,
    surfaces,
)

__all__ = [
    "ParseError",
    "ToricError",
    "ToricSystem",
    "enumerate",
    "first_kind",
    "is_admissible",
    "is_effective",
    "is_first_kind",
    "reduce",
    "run",
    "surface",
    "surfaces",
]
