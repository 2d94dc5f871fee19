"""Time steppers for the Donaldson flow.

Both steppers keep the cohomology class fixed: the harmonic part of the
initial field is frozen and every ``projection_cadence`` steps ρ is replaced by
the exact part of its Hodge decomposition plus that frozen part.
"""
from __future__ import annotations
import logging
from typing import Protocol

import numpy as np

from ..algebra.forms import KForm
from ..exceptions import BlowUpError, DonflowError, FixedPointDivergence
from ..grid.calculus import laplacian, resolvent
from ..grid.fields import KFormField
from ..grid.hodge import hodge_project
from ..grid.inner import l2_norm
from .config import FlowConfig, Integrator
from .operators import context_of, flow_rhs, stiffness_scale
from .state import FlowState

logger = logging.getLogger(__name__)


class Stepper(Protocol):
    """Advances a :class:`FlowState` by one step."""

    def step(self, state: FlowState, dt: float) -> FlowState:
        """Take one step of size ``dt``.

        Raises:
            BlowUpError: If the new field is degenerate or not finite.
        """
        ...  # pylint: disable=unnecessary-ellipsis


class _ClassPreserving:
    """Shared projection and blow-up handling."""

    def __init__(self, config: FlowConfig, harmonic: np.ndarray) -> None:
        self.config = config
        self.harmonic = np.asarray(harmonic, dtype=float).copy()

    def project(self, rho: KFormField) -> KFormField:
        """Exact part of ρ plus the frozen harmonic part."""
        parts = hodge_project(rho)
        frozen = KFormField.constant(rho.grid, KForm(2, self.harmonic))
        return parts.exact + frozen

    def finish(self, state: FlowState, rho: KFormField, dt: float) -> FlowState:
        """Project if due and check the new field."""
        following = state.advanced(rho, dt)
        if following.step % self.config.schedule.projection_cadence == 0:
            following = FlowState(self.project(following.rho), following.t, following.step)
        if not following.rho.is_finite():
            raise BlowUpError(state, [], "non-finite values")
        try:
            context_of(following.rho, eps_deg=self.config.tolerances.eps_deg)
        except DonflowError as error:
            raise BlowUpError(state, [], str(error)) from error
        return following


class RungeKutta4Stepper(_ClassPreserving):
    """The classical four-stage explicit Runge-Kutta method."""

    def step(self, state: FlowState, dt: float) -> FlowState:
        eps_deg = self.config.tolerances.eps_deg

        def rhs(rho: KFormField) -> KFormField:
            try:
                return flow_rhs(rho, context_of(rho, eps_deg=eps_deg))
            except DonflowError as error:
                raise BlowUpError(state, [], f"stage evaluation: {error}") from error

        rho = state.rho
        k1 = rhs(rho)
        k2 = rhs(rho + k1 * (dt / 2))
        k3 = rhs(rho + k2 * (dt / 2))
        k4 = rhs(rho + k3 * dt)
        increment = (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6)
        logger.debug("RK4 step %d at t=%.6g", state.step, state.t)
        return self.finish(state, rho + increment, dt)


class ImexStepper(_ClassPreserving):
    """Backward Euler solved by a frozen-coefficient fixed-point iteration.

    Each iterate solves (I + dt·c·Δ) x_{k+1} = ρⁿ + dt(F(x_k) + c·Δx_k), where F
    is the flow vector field and c = imex_factor·s with s the larger of the
    stiffness scale and max 1/u at ρⁿ. The constant-coefficient operator is
    inverted exactly in Fourier space; a fixed point solves ρ = ρⁿ + dt·F(ρ).

    Attributes:
        last_ratios (list[float]): Contraction ratios ‖x_{k+1} − x_k‖/‖x_k − x_{k−1}‖
            observed in the latest step.
        last_iterations (int): Iterations used by the latest step.
    """

    def __init__(self, config: FlowConfig, harmonic: np.ndarray) -> None:
        super().__init__(config, harmonic)
        self.last_ratios: list[float] = []
        self.last_iterations = 0

    def coefficient(self, rho: KFormField) -> float:
        """The implicit coefficient c at ρ."""
        ctx = context_of(rho, eps_deg=self.config.tolerances.eps_deg)
        scale = max(stiffness_scale(ctx), float(np.max(1.0 / ctx.u)))
        return self.config.tolerances.imex_factor * scale

    def step(self, state: FlowState, dt: float) -> FlowState:
        tolerances = self.config.tolerances
        try:
            c = self.coefficient(state.rho)
        except DonflowError as error:
            raise BlowUpError(state, [], str(error)) from error
        iterate = state.rho
        ratios: list[float] = []
        previous_increment: float | None = None
        for iteration in range(1, tolerances.fixed_point_max_iter + 1):
            try:
                explicit = flow_rhs(iterate, context_of(iterate, eps_deg=tolerances.eps_deg))
            except DonflowError as error:
                raise BlowUpError(state, [], f"fixed-point iterate: {error}") from error
            source = state.rho + (explicit + laplacian(iterate) * c) * dt
            updated = resolvent(source, dt * c)
            increment = l2_norm(updated - iterate)
            if not np.isfinite(increment):
                raise FixedPointDivergence(ratios)
            if previous_increment:
                ratios.append(increment / previous_increment)
            previous_increment = increment
            iterate = updated
            logger.debug("IMEX inner iteration %d: increment %.3g", iteration, increment)
            if increment <= tolerances.fixed_point_tol * l2_norm(updated):
                self.last_ratios = ratios
                self.last_iterations = iteration
                return self.finish(state, iterate, dt)
        raise FixedPointDivergence(ratios)


def make_stepper(config: FlowConfig, initial: KFormField) -> RungeKutta4Stepper | ImexStepper:
    """The stepper the configuration selects, with the class of ``initial`` frozen."""
    harmonic = hodge_project(initial).harmonic
    if config.schedule.integrator is Integrator.IMEX:
        return ImexStepper(config, harmonic)
    return RungeKutta4Stepper(config, harmonic)


def step_rk4(state: FlowState, dt: float, config: FlowConfig | None = None) -> FlowState:
    """One explicit step, freezing the harmonic part of ``state.rho``."""
    config = config or FlowConfig(grid=state.rho.grid)
    return RungeKutta4Stepper(config, hodge_project(state.rho).harmonic).step(state, dt)


def step_imex(state: FlowState, dt: float, config: FlowConfig | None = None) -> FlowState:
    """One semi-implicit step, freezing the harmonic part of ``state.rho``."""
    config = config or FlowConfig(grid=state.rho.grid)
    return ImexStepper(config, hodge_project(state.rho).harmonic).step(state, dt)
