"""The periodic lattice (ℝ/2πℤ)⁴."""
from __future__ import annotations
from dataclasses import dataclass
import enum
from fractions import Fraction
from functools import cached_property

import numpy as np

from ..exceptions import InvalidGridError

PERIOD = 2.0 * np.pi


class Scheme(enum.Enum):
    """Differentiation scheme."""

    SPECTRAL = "spectral"
    CENTRAL4 = "central4"


@dataclass(frozen=True)
class GridSpec:
    """An n⁴ periodic lattice with spacing h = 2π/n.

    Attributes:
        n (int): Points per axis, a power of two of at least 4.
        scheme (Scheme): How derivatives are taken.
    """

    n: int = 8
    scheme: Scheme = Scheme.SPECTRAL

    def __post_init__(self) -> None:
        if self.n < 4 or self.n & (self.n - 1):
            raise InvalidGridError(self.n)

    @property
    def spacing_fraction(self) -> Fraction:
        """h/π as an exact rational, so that h·n = 2π holds exactly."""
        return Fraction(2, self.n)

    @property
    def h(self) -> float:
        """Grid spacing."""
        return float(self.spacing_fraction) * np.pi

    @property
    def shape(self) -> tuple[int, int, int, int]:
        """Batch shape of a field."""
        return (self.n,) * 4

    @property
    def points(self) -> int:
        """Total number of lattice points."""
        return self.n**4

    @property
    def volume(self) -> float:
        """Vol(T⁴) = (2π)⁴."""
        return PERIOD**4

    @property
    def cell_volume(self) -> float:
        """Quadrature weight h⁴."""
        return self.h**4

    @cached_property
    def axis(self) -> np.ndarray:
        """The n coordinates 0, h, …, (n−1)h of one axis."""
        return self.h * np.arange(self.n)

    def coordinates(self) -> np.ndarray:
        """Coordinate arrays x₁…x₄, shape ``(4, n, n, n, n)``."""
        return np.stack(np.meshgrid(*([self.axis] * 4), indexing="ij"))

    def with_scheme(self, scheme: Scheme) -> GridSpec:
        """The same lattice with another differentiation scheme."""
        return GridSpec(self.n, scheme)

    def refined(self, factor: int = 2) -> GridSpec:
        """The lattice with ``factor`` times as many points per axis."""
        return GridSpec(self.n * factor, self.scheme)
