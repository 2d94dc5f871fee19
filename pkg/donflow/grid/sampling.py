"""Seeded random band-limited fields."""
from __future__ import annotations

import numpy as np

from ..algebra.tables import RANKS
from .calculus import SPATIAL_AXES, d, wavenumbers
from .fields import KFormField
from .spec import GridSpec

GENERATOR_NAME = "philox4x64"
DEFAULT_DECAY = 3.0


def make_rng(seed: int) -> np.random.Generator:
    """The counter-based generator used for every random field."""
    return np.random.Generator(np.random.Philox(seed))


def band_limited(
    rng: np.random.Generator,
    grid: GridSpec,
    degree: int,
    max_mode: int,
    decay: float = DEFAULT_DECAY,
) -> KFormField:
    """A random mean-zero k-form with Fourier support in |k_a| ≤ ``max_mode``.

    Mode k is weighted by (1 + |k|²)^(−decay).

    Raises:
        ValueError: If ``max_mode`` is not below n/2.
    """
    if not 1 <= max_mode < grid.n // 2:
        raise ValueError(f"max_mode must be in 1..{grid.n // 2 - 1}, got {max_mode}")
    k = wavenumbers(grid)
    axes = np.meshgrid(*([k] * 4), indexing="ij")
    squared = sum(axis**2 for axis in axes)
    inside = np.all([np.abs(axis) <= max_mode for axis in axes], axis=0) & (squared > 0)
    weight = np.where(inside, (1.0 + squared) ** (-decay), 0.0)
    shape = (RANKS[degree],) + grid.shape
    spectrum = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * weight[None]
    values = np.fft.ifftn(spectrum, axes=SPATIAL_AXES).real * grid.points
    return KFormField(degree, values, grid)


def random_exact(
    rng: np.random.Generator, grid: GridSpec, max_mode: int, decay: float = DEFAULT_DECAY
) -> KFormField:
    """dλ for a random band-limited 1-form λ."""
    return d(band_limited(rng, grid, 1, max_mode, decay))
