"""Invert the K-map by damped Gauss-Newton iteration."""
from __future__ import annotations
from dataclasses import dataclass, field
import logging

import numpy as np

from ..algebra.frame import FRAME_INDICES, STANDARD_FRAME
from ..exceptions import DonflowError, NewtonDivergence
from ..flow.operators import context_of
from ..grid.fields import KFormField
from ..grid.hodge import hodge_project
from ..grid.inner import l2_norm
from ..grid.solve import solve_spd
from .kmap import kmap, kmap_linearized, kmap_linearized_adjoint

logger = logging.getLogger(__name__)

MAX_BACKTRACKS = 20
FORCING = 1e-3


@dataclass(frozen=True, eq=False)
class NewtonResult:
    """Outcome of an inversion.

    Attributes:
        rho (KFormField): The field found.
        residuals (list[float]): ‖K(ρ) − η‖_{L²} at the start and after each iteration.
        iterations (int): Accepted Newton steps.
    """

    rho: KFormField
    residuals: list[float] = field(default_factory=list)
    iterations: int = 0


class KInverter:
    """Solve K(ρ) = η for ρ in an affine space of closed forms.

    The search space is ρ_init + (exact fields), extended by the three
    constant self-dual directions ω_i when ``vary_class`` is set. Each
    iteration solves the least-squares problem min ‖J δ + F‖ through the
    normal equations by conjugate gradients, using only K̂ and its adjoint.

    Attributes:
        target (KFormField): η, a self-dual field.
        rho_init (KFormField): Closed, nondegenerate starting field.
        tol (float): L² residual at which the iteration stops.
        max_iter (int): Newton iterations allowed.
        vary_class (bool): Whether the harmonic self-dual part may change.
    """

    def __init__(
        self,
        target: KFormField,
        rho_init: KFormField,
        tol: float = 1e-9,
        max_iter: int = 30,
        vary_class: bool = True,
    ) -> None:
        self.target = target
        self.rho_init = rho_init
        self.tol = tol
        self.max_iter = max_iter
        self.vary_class = vary_class
        self.grid = rho_init.grid
        self._frame = [
            KFormField.constant(self.grid, STANDARD_FRAME.form(index))
            for index in FRAME_INDICES
        ]
        # class shifts are scaled so that their columns match exact directions
        self._class_scale = 1.0 / np.sqrt(self.grid.points)

    @property
    def _field_size(self) -> int:
        return 6 * self.grid.points

    def _unpack(self, vector: np.ndarray) -> KFormField:
        beta = KFormField(2, vector[: self._field_size].reshape((6,) + self.grid.shape), self.grid)
        shift = hodge_project(beta).exact
        if self.vary_class:
            for omega, weight in zip(self._frame, vector[self._field_size :]):
                shift = shift + omega * (weight * self._class_scale)
        return shift

    def _pack_adjoint(self, two_form: KFormField) -> np.ndarray:
        parts = [hodge_project(two_form).exact.coefficients.ravel()]
        if self.vary_class:
            parts.append(
                np.array(
                    [
                        float(np.sum(omega.coefficients * two_form.coefficients))
                        * self._class_scale
                        for omega in self._frame
                    ]
                )
            )
        return np.concatenate(parts)

    def residual(self, rho: KFormField) -> KFormField:
        """F(ρ) = K(ρ) − η."""
        return kmap(rho) - self.target

    def newton_direction(self, rho: KFormField, residual: KFormField, rtol: float) -> KFormField:
        """Least-squares solution δ of K̂δ = −F over the search space."""
        ctx = context_of(rho)

        def normal(vector: np.ndarray) -> np.ndarray:
            image = kmap_linearized(rho, self._unpack(vector), ctx)
            return self._pack_adjoint(kmap_linearized_adjoint(rho, image, ctx))

        rhs = -self._pack_adjoint(kmap_linearized_adjoint(rho, residual, ctx))
        return self._unpack(solve_spd("K-map normal equations", normal, rhs, rtol=rtol))

    def solve(self) -> NewtonResult:
        """Run the iteration.

        Raises:
            NewtonDivergence: If a step cannot reduce the residual or the
                iteration budget runs out.
            NondegeneracyError: If the starting field is degenerate.
        """
        rho = self.rho_init
        residual = self.residual(rho)
        norm = l2_norm(residual)
        residuals = [norm]
        for iteration in range(1, self.max_iter + 1):
            if norm <= self.tol:
                return NewtonResult(rho, residuals, iteration - 1)
            direction = self.newton_direction(rho, residual, min(FORCING, norm))
            rho, residual, norm = self._line_search(rho, direction, norm, residuals)
            residuals.append(norm)
            logger.debug("Newton iteration %d: residual %.3g", iteration, norm)
        if norm <= self.tol:
            return NewtonResult(rho, residuals, self.max_iter)
        raise NewtonDivergence(residuals)

    def _line_search(
        self, rho: KFormField, direction: KFormField, norm: float, residuals: list[float]
    ) -> tuple[KFormField, KFormField, float]:
        step = 1.0
        for _ in range(MAX_BACKTRACKS):
            candidate = rho + direction * step
            try:
                residual = self.residual(candidate)
            except DonflowError:
                step /= 2
                continue
            candidate_norm = l2_norm(residual)
            if candidate_norm < norm:
                return candidate, residual, candidate_norm
            step /= 2
        raise NewtonDivergence(residuals)


def newton_invert_k(
    eta: KFormField,
    rho_init: KFormField,
    tol: float = 1e-9,
    max_iter: int = 30,
    vary_class: bool = True,
) -> KFormField:
    """A closed ρ near ``rho_init`` with K(ρ) = η.

    See :class:`KInverter` for the search space and the solver.

    Raises:
        NewtonDivergence: If the residual cannot be brought below ``tol``.
    """
    return KInverter(eta, rho_init, tol, max_iter, vary_class).solve().rho
