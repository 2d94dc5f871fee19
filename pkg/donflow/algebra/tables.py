"""Basis orderings and sign tables for the exterior algebra of ℝ⁴.

Every sign used by donflow is derived here from the permutation oracle
:func:`permutation_sign`; nothing is written out by hand.
"""
from __future__ import annotations
from itertools import combinations
from typing import Sequence

import numpy as np

DIM = 4

BASIS: dict[int, list[tuple[int, ...]]] = {
    k: list(combinations(range(DIM), k)) for k in range(DIM + 1)
}
"""Lexicographic basis of Λ^k; Λ² is [12, 13, 14, 23, 24, 34]."""

RANKS: dict[int, int] = {k: len(basis) for k, basis in BASIS.items()}


def permutation_sign(indices: Sequence[int]) -> int:
    """Sign of the permutation sorting ``indices``; 0 if an index repeats.

    Args:
        indices (Sequence[int]): Indices of a wedge monomial.

    Returns:
        int: +1, -1 or 0.
    """
    if len(set(indices)) != len(indices):
        return 0
    inversions = sum(
        1
        for i, first in enumerate(indices)
        for second in indices[i + 1 :]
        if first > second
    )
    return -1 if inversions % 2 else 1


def basis_label(degree: int, index: int) -> str:
    """Human-readable name such as ``dx13`` of a basis element."""
    if degree == 0:
        return "1"
    return "dx" + "".join(str(i + 1) for i in BASIS[degree][index])


def _wedge_table(left: int, right: int) -> np.ndarray:
    table = np.zeros((RANKS[left + right], RANKS[left], RANKS[right]))
    position = {multi: c for c, multi in enumerate(BASIS[left + right])}
    for a, first in enumerate(BASIS[left]):
        for b, second in enumerate(BASIS[right]):
            merged = first + second
            sign = permutation_sign(merged)
            if sign:
                table[position[tuple(sorted(merged))], a, b] = sign
    return table


def _star_table(degree: int) -> np.ndarray:
    table = np.zeros((RANKS[DIM - degree], RANKS[degree]))
    position = {multi: c for c, multi in enumerate(BASIS[DIM - degree])}
    for a, multi in enumerate(BASIS[degree]):
        complement = tuple(i for i in range(DIM) if i not in multi)
        # e_I ∧ (±e_{I^c}) = dvol fixes the sign
        table[position[complement], a] = permutation_sign(multi + complement)
    return table


WEDGE_TABLES: dict[tuple[int, int], np.ndarray] = {
    (left, right): _wedge_table(left, right)
    for left in range(DIM + 1)
    for right in range(DIM + 1 - left)
}
"""``WEDGE_TABLES[j, k][c, a, b]`` is the coefficient of e_c in e_a ∧ e_b."""

STAR_TABLES: dict[int, np.ndarray] = {k: _star_table(k) for k in range(DIM + 1)}
"""``STAR_TABLES[k][c, a]`` is the coefficient of e_c in *e_a."""


def wedge_table(left: int, right: int) -> np.ndarray:
    """Look up the wedge sign table of Λ^left × Λ^right → Λ^(left+right)."""
    return WEDGE_TABLES[left, right]


def star_table(degree: int) -> np.ndarray:
    """Look up the background Hodge star table on Λ^degree."""
    return STAR_TABLES[degree]
