"""Exterior calculus on the periodic lattice.

Both schemes are translation invariant, so every operator here is a Fourier
multiplier. The spectral scheme uses ik with the Nyquist mode removed, which
keeps the discrete derivative skew-adjoint; central4 is the five-point stencil
(8 sin kh − sin 2kh)/(6h).
"""
from __future__ import annotations
import logging

import numpy as np

from ..algebra import tables
from ..algebra.forms import star
from ..exceptions import DegreeError
from .fields import KFormField
from .spec import GridSpec, Scheme

logger = logging.getLogger(__name__)

SPATIAL_AXES = (1, 2, 3, 4)


def wavenumbers(grid: GridSpec) -> np.ndarray:
    """Integer wavenumbers in FFT order."""
    return np.fft.fftfreq(grid.n, d=1.0 / grid.n)


def derivative_symbol(grid: GridSpec) -> np.ndarray:
    """Real symbol σ(k) of one axis, the derivative acting as iσ(k)."""
    k = wavenumbers(grid)
    if grid.scheme is Scheme.SPECTRAL:
        symbol = k.copy()
        symbol[grid.n // 2] = 0.0
        return symbol
    theta = k * grid.h
    return (8.0 * np.sin(theta) - np.sin(2.0 * theta)) / (6.0 * grid.h)


def axis_symbol(grid: GridSpec, axis: int) -> np.ndarray:
    """σ along ``axis`` shaped to broadcast over ``(n, n, n, n)``."""
    shape = [1, 1, 1, 1]
    shape[axis] = grid.n
    return derivative_symbol(grid).reshape(shape)


def laplacian_symbol(grid: GridSpec) -> np.ndarray:
    """Σ_a σ_a², the symbol of the flat Laplacian −Σ∂_a²."""
    return sum(axis_symbol(grid, axis) ** 2 for axis in range(4)) * np.ones(grid.shape)


def spectral_radius(grid: GridSpec) -> float:
    """Largest eigenvalue of the discrete Laplacian."""
    return float(4 * np.max(derivative_symbol(grid) ** 2))


def _to_fourier(coefficients: np.ndarray) -> np.ndarray:
    return np.fft.fftn(coefficients, axes=SPATIAL_AXES)


def _from_fourier(transform: np.ndarray) -> np.ndarray:
    return np.fft.ifftn(transform, axes=SPATIAL_AXES).real


def _without_constant(coefficients: np.ndarray) -> np.ndarray:
    # constants differentiate to exactly zero
    return coefficients - coefficients[:, :1, :1, :1, :1]


def apply_multiplier(field: KFormField, multiplier: np.ndarray) -> KFormField:
    """Apply a real Fourier multiplier componentwise."""
    transform = _to_fourier(field.coefficients) * multiplier[None]
    return field.with_coefficients(field.degree, _from_fourier(transform))


def gradient(field: KFormField) -> np.ndarray:
    """All first partials, shape ``(4, rank, n, n, n, n)``."""
    grid = field.grid
    data = _without_constant(field.coefficients)
    if grid.scheme is Scheme.CENTRAL4:
        partials = []
        for axis in SPATIAL_AXES:
            ahead = np.roll(data, -1, axis) - np.roll(data, 1, axis)
            far = np.roll(data, -2, axis) - np.roll(data, 2, axis)
            partials.append((8.0 * ahead - far) / (12.0 * grid.h))
        return np.stack(partials)
    transform = _to_fourier(data)
    return np.stack(
        [
            _from_fourier(transform * (1j * axis_symbol(grid, axis))[None])
            for axis in range(4)
        ]
    )


def partial(field: KFormField, axis: int) -> KFormField:
    """∂_a of every coefficient, with ``axis`` in 0..3 for x₁..x₄."""
    return field.with_coefficients(field.degree, gradient(field)[axis])


def d(field: KFormField) -> KFormField:  # pylint: disable=invalid-name
    """Exterior derivative, d(f dx^I) = df∧dx^I.

    Raises:
        DegreeError: For 4-forms.
    """
    if field.degree > 3:
        raise DegreeError(field.degree, "0..3")
    coefficients = np.einsum(
        "cai,ai...->c...", tables.wedge_table(1, field.degree), gradient(field)
    )
    return field.with_coefficients(field.degree + 1, coefficients)


def codifferential(field: KFormField) -> KFormField:
    """Background codifferential d* = −*d* (every degree, dimension four).

    Raises:
        DegreeError: For 0-forms.
    """
    if field.degree < 1:
        raise DegreeError(field.degree, "1..4")
    return -star(d(star(field)))  # type: ignore[arg-type,return-value]


def laplacian(field: KFormField) -> KFormField:
    """Flat Hodge Laplacian dd* + d*d, computed componentwise."""
    centered = field.with_coefficients(field.degree, _without_constant(field.coefficients))
    return apply_multiplier(centered, laplacian_symbol(field.grid))


def inverse_laplacian(field: KFormField) -> KFormField:
    """Componentwise pseudo-inverse of :func:`laplacian` (zero on its kernel)."""
    symbol = laplacian_symbol(field.grid)
    safe = np.where(symbol > 0.0, symbol, 1.0)
    return apply_multiplier(field, np.where(symbol > 0.0, 1.0 / safe, 0.0))


def resolvent(field: KFormField, shift: float) -> KFormField:
    """(I + shift·Δ)⁻¹ applied componentwise, for shift ≥ 0."""
    base = field.coefficients[:, :1, :1, :1, :1]
    centered = field.with_coefficients(field.degree, field.coefficients - base)
    smoothed = apply_multiplier(centered, 1.0 / (1.0 + shift * laplacian_symbol(field.grid)))
    return smoothed.with_coefficients(field.degree, smoothed.coefficients + base)
