"""Finite semigroup enumeration: Froidure-Pin, Closure and a phased concurrent variant."""

from .elements import (
    BooleanMatrix,
    GeneratorFormatError,
    Transformation,
    digest,
    multiply,
    parse_generators,
)
from .snapshot import Snapshot, SnapshotFormatError, load, minimal_snapshot, save, validate
from .fropin import enumerate_until_member, froidure_pin, update
from .closure import closure
from .concurrent import concurrent_froidure_pin

__all__ = [
    "BooleanMatrix",
    "GeneratorFormatError",
    "Snapshot",
    "SnapshotFormatError",
    "Transformation",
    "closure",
    "concurrent_froidure_pin",
    "digest",
    "enumerate_until_member",
    "froidure_pin",
    "load",
    "minimal_snapshot",
    "multiply",
    "parse_generators",
    "save",
    "update",
    "validate",
]
