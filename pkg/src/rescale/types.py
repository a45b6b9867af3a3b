"""Foundational value types: uncertain scalars, copy-count lattices, and
measurement series.

A series always stores the TOTAL resource of N copies. Per-copy data (the
usual form in published tables) is converted on ingestion behind an explicit
flag. Uncertain values carry one-sigma errors but deliberately do not
overload arithmetic; propagation happens only inside the dedicated fit and
extrapolation routines, which know what is and is not independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import MissingPoint, NotOnLattice, OutOfRange


@dataclass(frozen=True)
class UncertainValue:
    """A real measurement with a one-sigma uncertainty."""

    value: float
    sigma: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.value) and math.isfinite(self.sigma)):
            raise OutOfRange("value and sigma must be finite")
        if self.sigma < 0:
            raise OutOfRange(f"sigma must be >= 0, got {self.sigma}")

    def __str__(self):
        return f"{self.value:g} +/- {self.sigma:g}"


@dataclass(frozen=True)
class CopyLattice:
    """Copy counts of the form base * ratio**n for n = 0, 1, 2, ..."""

    base: int
    ratio: int

    def __post_init__(self):
        if not isinstance(self.base, int) or self.base < 1:
            raise OutOfRange(f"base must be a positive integer, got {self.base}")
        if not isinstance(self.ratio, int) or self.ratio < 2:
            raise OutOfRange(f"ratio must be an integer >= 2, got {self.ratio}")

    def __contains__(self, copies: int) -> bool:
        try:
            lattice_index(self, copies)
        except NotOnLattice:
            return False
        return True

    def member(self, index: int) -> int:
        """The lattice point base * ratio**index."""
        return self.base * self.ratio**index


def lattice_index(lattice: CopyLattice, copies: int) -> int:
    """Invert copies = base * ratio**n.

    Integer arithmetic throughout, so large lattice points (base * ratio**30
    and beyond) resolve exactly.
    """
    if not isinstance(copies, int) or copies < 1:
        raise NotOnLattice(f"copy count must be a positive integer, got {copies}")
    q, r = divmod(copies, lattice.base)
    if r != 0 or q < 1:
        raise NotOnLattice(
            f"{copies} is not a multiple of the lattice base {lattice.base}"
        )
    n = 0
    while q > 1:
        q, r = divmod(q, lattice.ratio)
        if r != 0:
            raise NotOnLattice(
                f"{copies} is not base*ratio**n on the "
                f"(base={lattice.base}, ratio={lattice.ratio}) lattice"
            )
        n += 1
    return n


@dataclass(frozen=True)
class ResourceSeries:
    """Measured total resource values indexed by copy count on a lattice."""

    lattice: CopyLattice
    points: Mapping[int, UncertainValue]

    def __post_init__(self):
        checked = {}
        for copies in sorted(self.points):
            lattice_index(self.lattice, copies)
            val = self.points[copies]
            if val.value < 0:
                raise OutOfRange(
                    f"resource at N={copies} must be non-negative, got {val.value}"
                )
            checked[copies] = val
        object.__setattr__(self, "points", MappingProxyType(checked))

    @classmethod
    def from_measurements(cls, lattice, measurements, per_copy=False):
        """Build a series from {N: UncertainValue | (value, sigma)} data.

        With per_copy=True the inputs are per-copy figures and get scaled to
        totals by N.
        """
        converted = {}
        for copies, val in measurements.items():
            if not isinstance(val, UncertainValue):
                val = UncertainValue(*val)
            if per_copy:
                val = total_from_per_copy(val, copies)
            converted[copies] = val
        return cls(lattice, converted)

    def copy_counts(self) -> tuple[int, ...]:
        return tuple(self.points)


def per_copy(series: ResourceSeries, copies: int) -> UncertainValue:
    """Total at `copies` divided down to a per-copy figure."""
    if copies not in series.points:
        raise MissingPoint(f"no measurement at N={copies}")
    val = series.points[copies]
    return UncertainValue(val.value / copies, val.sigma / copies)


def total_from_per_copy(val: UncertainValue, copies: int) -> UncertainValue:
    """Scale a per-copy figure back up to the total of `copies` copies."""
    return UncertainValue(val.value * copies, val.sigma * copies)
