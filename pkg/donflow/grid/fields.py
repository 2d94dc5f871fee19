"""k-form fields sampled on a :class:`GridSpec`."""
from __future__ import annotations
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..algebra.forms import KForm
from ..algebra.tables import RANKS
from ..exceptions import FieldMismatchError
from .spec import GridSpec


@dataclass(frozen=True, eq=False)
class KFormField(KForm):
    """A k-form whose coefficients are arrays over the lattice.

    Attributes:
        grid (GridSpec): The lattice; coefficients have shape ``(rank, n, n, n, n)``.
    """

    grid: GridSpec = GridSpec()

    def __post_init__(self) -> None:
        super().__post_init__()
        full_shape = (RANKS[self.degree],) + self.grid.shape
        if self.coefficients.shape != full_shape:
            try:
                coefficients = np.broadcast_to(self.coefficients, full_shape)
            except ValueError as error:
                raise FieldMismatchError(
                    f"coefficients of shape {full_shape}",
                    f"shape {self.coefficients.shape}",
                ) from error
            object.__setattr__(self, "coefficients", np.array(coefficients))

    def domain(self) -> GridSpec:
        return self.grid

    def is_finite(self) -> bool:
        """Whether every coefficient is finite."""
        return bool(np.all(np.isfinite(self.coefficients)))

    @classmethod
    def zeros(cls, grid: GridSpec, degree: int) -> KFormField:
        """The zero k-form."""
        return cls(degree, np.zeros((RANKS[degree],) + grid.shape), grid)

    @classmethod
    def constant(cls, grid: GridSpec, value: KForm) -> KFormField:
        """A constant-coefficient field."""
        coefficients = np.broadcast_to(
            value.coefficients.reshape((RANKS[value.degree],) + (1,) * 4),
            (RANKS[value.degree],) + grid.shape,
        )
        return cls(value.degree, np.array(coefficients), grid)

    @classmethod
    def scalar(cls, grid: GridSpec, values: np.ndarray) -> KFormField:
        """A 0-form from an ``(n, n, n, n)`` array."""
        return cls(0, np.asarray(values, dtype=float)[None], grid)

    @classmethod
    def from_function(
        cls,
        grid: GridSpec,
        degree: int,
        function: Callable[[np.ndarray], np.ndarray],
    ) -> KFormField:
        """Sample ``function(x)`` where x has shape ``(4, n, n, n, n)``.

        The function returns the coefficients, shape ``(rank, n, n, n, n)``.
        """
        return cls(degree, np.asarray(function(grid.coordinates()), dtype=float), grid)

    @property
    def values(self) -> np.ndarray:
        """The ``(n, n, n, n)`` array of a 0-form or 4-form."""
        if RANKS[self.degree] != 1:
            raise FieldMismatchError("scalar field", f"degree {self.degree}")
        return self.coefficients[0]

    def mean(self) -> np.ndarray:
        """Per-component average over the lattice."""
        return self.coefficients.mean(axis=(1, 2, 3, 4))

    def copy(self) -> KFormField:
        return KFormField(self.degree, self.coefficients.copy(), self.grid)
