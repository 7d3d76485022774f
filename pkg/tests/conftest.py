"""Shared cached builders so expensive runs are computed once per session."""

from functools import lru_cache

from ysyslab.builders import FamilySpec, build
from ysyslab.numeric import NumericRun
from ysyslab.tropical import TropicalRun


@lru_cache(maxsize=None)
def cached_model(family, rank, level):
    return build(FamilySpec(family, rank, level))


@lru_cache(maxsize=None)
def cached_tropical(family, rank, level):
    return TropicalRun(family, rank, level)


@lru_cache(maxsize=None)
def cached_numeric(family, rank, level, seed, tracked):
    return NumericRun(family, rank, level, seed=seed, tracked=tracked)


CASES = (
    [("C", r, lev) for r in (2, 3, 4) for lev in (2, 3, 4)]
    + [("F4", 4, 2), ("F4", 4, 3)]
    + [("G2", 2, lev) for lev in (2, 3, 4)]
)
