"""Discrete W^{k,p} norms."""
from __future__ import annotations
import math

import numpy as np

from ..exceptions import FieldMismatchError
from .calculus import partial
from .fields import KFormField

MAX_ORDER = 4


def _derivatives(field: KFormField, order: int) -> list[KFormField]:
    """∂^α field for every multi-index |α| ≤ order, each α once."""
    collected = [field]
    frontier = [(field, 0)]
    for _ in range(order):
        next_frontier = []
        for current, first_axis in frontier:
            # nondecreasing axis sequences enumerate multi-indices without repeats
            for axis in range(first_axis, 4):
                derived = partial(current, axis)
                collected.append(derived)
                next_frontier.append((derived, axis))
        frontier = next_frontier
    return collected


def sobolev_norm(field: KFormField, k: int, p: float) -> float:
    """(Σ_{|α|≤k} ‖∂^α field‖_p^p)^{1/p}, with the pointwise Euclidean norm.

    ``p = math.inf`` gives the largest pointwise value over all α.

    Raises:
        ValueError: If ``k`` is outside 0..4 or ``p < 1``.
    """
    if not 0 <= k <= MAX_ORDER:
        raise ValueError(f"Derivative order must be in 0..{MAX_ORDER}, got {k}")
    if p < 1:
        raise ValueError(f"Exponent must be at least 1, got {p}")
    magnitudes = [
        np.sqrt(np.sum(derived.coefficients**2, axis=0))
        for derived in _derivatives(field, k)
    ]
    if math.isinf(p):
        return float(max(np.max(magnitude) for magnitude in magnitudes))
    total = sum(float(np.sum(magnitude**p)) for magnitude in magnitudes)
    return (total * field.grid.cell_volume) ** (1.0 / p)


def product_rule_constant(first: KFormField, second: KFormField, p: float = 2.0) -> float:
    """Ratio ‖fg‖_{W^{1,p}} / (‖f‖_∞‖g‖_{W^{1,p}} + ‖f‖_{W^{1,p}}‖g‖_∞) for functions."""
    if first.degree != 0 or second.degree != 0:
        raise FieldMismatchError("two functions", f"degrees {first.degree}, {second.degree}")
    product = KFormField.scalar(first.grid, first.values * second.values)
    bound = sobolev_norm(first, 0, math.inf) * sobolev_norm(second, 1, p) + sobolev_norm(
        first, 1, p
    ) * sobolev_norm(second, 0, math.inf)
    if bound == 0.0:
        return 0.0
    return sobolev_norm(product, 1, p) / bound
