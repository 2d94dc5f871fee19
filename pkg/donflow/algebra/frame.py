"""The constant hyperKähler frame of the flat 4-torus."""
from __future__ import annotations
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .forms import KForm, monomial, two_form_matrix

if TYPE_CHECKING:
    from .rho import RhoContext


FRAME_INDICES = (1, 2, 3)
CYCLIC = ((1, 2, 3), (2, 3, 1), (3, 1, 2))


@dataclass(frozen=True, eq=False)
class FrameTriple:
    """Three self-dual 2-forms with their complex structures.

    Indices passed to the accessor methods are 1-based, matching ω₁, ω₂, ω₃;
    the tuples themselves are ordinary 0-based Python tuples.

    Attributes:
        omega (tuple[KForm, KForm, KForm]): The 2-forms.
        J (tuple[np.ndarray, np.ndarray, np.ndarray]): The 4×4 (or batched
            ``(4, 4, *batch)``) matrices with g(X, Y) = ω_i(J_i X, Y).
    """

    omega: tuple[KForm, KForm, KForm]
    J: tuple[np.ndarray, np.ndarray, np.ndarray]

    @classmethod
    def standard(cls) -> FrameTriple:
        """ω₁ = dx12+dx34, ω₂ = dx13−dx24, ω₃ = dx14+dx23.

        With ω(X, Y) = XᵀΩY, J_i is the coefficient matrix Ω_i itself.
        """
        omega = (
            monomial(1, 2) + monomial(3, 4),
            monomial(1, 3) - monomial(2, 4),
            monomial(1, 4) + monomial(2, 3),
        )
        return cls(omega, tuple(two_form_matrix(form) for form in omega))  # type: ignore[arg-type]

    @classmethod
    def adapted(cls, ctx: RhoContext) -> FrameTriple:
        """The ρ-adapted triple (ω_i^ρ, J_i^ρ) = (R^ρω_i, J_i^ρ)."""
        from .rho import J_rho, omega_rho

        return cls(
            tuple(omega_rho(ctx, i) for i in FRAME_INDICES),  # type: ignore[arg-type]
            tuple(J_rho(ctx, i) for i in FRAME_INDICES),  # type: ignore[arg-type]
        )

    def form(self, index: int) -> KForm:
        """ω_index for index in 1..3."""
        return self.omega[_position(index)]

    def complex_structure(self, index: int) -> np.ndarray:
        """J_index for index in 1..3."""
        return self.J[_position(index)]


def _position(index: int) -> int:
    if index not in FRAME_INDICES:
        raise ValueError(f"Frame index must be 1, 2 or 3, got {index}")
    return index - 1


STANDARD_FRAME = FrameTriple.standard()

ANTI_SELF_DUAL_FRAME: tuple[KForm, KForm, KForm] = (
    monomial(1, 2) - monomial(3, 4),
    monomial(1, 3) + monomial(2, 4),
    monomial(1, 4) - monomial(2, 3),
)
