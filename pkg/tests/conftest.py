from __future__ import annotations
from typing import Callable

import numpy as np
import pytest

from donflow.algebra import STANDARD_FRAME
from donflow.grid import GridSpec, KFormField, Scheme, make_rng, random_exact

PerturbedFactory = Callable[..., KFormField]


@pytest.fixture
def rng() -> np.random.Generator:
    return make_rng(1234)


@pytest.fixture
def grid8() -> GridSpec:
    return GridSpec(8)


@pytest.fixture
def grid16() -> GridSpec:
    return GridSpec(16)


def minimum(grid: GridSpec) -> KFormField:
    return KFormField.constant(grid, STANDARD_FRAME.form(1))


@pytest.fixture
def omega8(grid8: GridSpec) -> KFormField:
    return minimum(grid8)


@pytest.fixture
def perturbed() -> PerturbedFactory:
    """ω₁ + ε dλ with dλ a seeded band-limited exact field of unit sup norm."""

    def build(
        n: int = 8,
        amplitude: float = 0.05,
        max_mode: int = 1,
        seed: int = 7,
        scheme: Scheme = Scheme.SPECTRAL,
    ) -> KFormField:
        grid = GridSpec(n, scheme)
        exact = random_exact(make_rng(seed), grid, max_mode)
        exact = exact / float(np.max(np.abs(exact.coefficients)))
        return minimum(grid) + exact * amplitude

    return build
