"""Overpartition counts via a convergent series, exactly and modulo odd
integers, plus a hunter for divisibility congruences at cubes of primes."""

from .recurrence import product_expansion_table, recursion_table
from .series import overpartition, overpartition_mod

__all__ = [
    "overpartition",
    "overpartition_mod",
    "recursion_table",
    "product_expansion_table",
]
