"""Exact noncommutative Donaldson-Thomas invariants of brane tilings."""

from ._core import (
    builtin_names,
    consistency,
    log_z_specialized,
    partition_function,
    perfect_matchings,
    validate,
    z_via_matchings,
)

__all__ = [
    "builtin_names",
    "consistency",
    "log_z_specialized",
    "partition_function",
    "perfect_matchings",
    "validate",
    "z_via_matchings",
]
