"""Invariant suites behind ``donflow check``.

Each check measures one defect and compares it with its tolerance. The fast
level runs the pointwise algebra on random batches; the full level adds the
grid identities at n = 8 and n = 16.
"""
from __future__ import annotations
from dataclasses import dataclass
import enum
import logging
import time
from typing import Callable, TextIO

import numpy as np

from ..algebra.chords import negative_chords_defect, sample_constraint_pairs
from ..algebra.forms import KForm, star, wedge_scalar
from ..algebra.frame import FRAME_INDICES, STANDARD_FRAME
from ..algebra.rho import (
    J_rho,
    J_rho_from_star,
    R_rho,
    make_context,
    star_rho,
    theta_rho,
    theta_selfdual,
)
from ..flow.operators import energy, flow_rhs, linearized_operator
from ..grid.calculus import codifferential, d
from ..grid.fields import KFormField
from ..grid.inner import donaldson_inner, l2_inner, l2_norm, relative_defect, rho_pairing
from ..grid.sampling import band_limited, make_rng, random_exact
from ..grid.spec import PERIOD, GridSpec
from ..kmap.kmap import kmap, kmap_linearized
from ..kmap.reduced import reduced_consistency
from ..kmap.soperator import s_rho, s_rho_adjoint

logger = logging.getLogger(__name__)

POINTWISE_SAMPLES = 10_000
FAST_BUDGET_SECONDS = 10.0
CHECK_SEED = 20240601

Measure = Callable[[np.random.Generator], float]


class CheckLevel(enum.Enum):
    """How much of the suite to run."""

    FAST = "fast"
    FULL = "full"


@dataclass(frozen=True)
class InvariantCheck:
    """One named defect measurement.

    Attributes:
        name (str): Shown in the table.
        tolerance (float): Largest passing defect.
        level (CheckLevel): The lowest level that runs the check.
        measure (Measure): Computes the defect from a seeded generator.
    """

    name: str
    tolerance: float
    level: CheckLevel
    measure: Measure


@dataclass(frozen=True)
class CheckResult:
    name: str
    defect: float
    tolerance: float
    seconds: float

    @property
    def passed(self) -> bool:
        return bool(self.defect <= self.tolerance)


REGISTRY: list[InvariantCheck] = []


def invariant(
    name: str, tolerance: float, level: CheckLevel = CheckLevel.FAST
) -> Callable[[Measure], Measure]:
    """Register a measurement in :data:`REGISTRY`."""

    def register(measure: Measure) -> Measure:
        REGISTRY.append(InvariantCheck(name, tolerance, level, measure))
        return measure

    return register


def random_symplectic(rng: np.random.Generator, size: int, spread: float = 0.4) -> KForm:
    """A batch of 2-forms near ω₁ with u > 0.2."""
    omega = STANDARD_FRAME.form(1).coefficients[:, None]
    coefficients = omega + spread * rng.standard_normal((6, size))
    u = 0.5 * wedge_scalar(KForm(2, coefficients), KForm(2, coefficients))
    return KForm(2, coefficients[:, u > 0.2])


def _relative(left: np.ndarray, right: np.ndarray) -> float:
    scale = np.maximum(1.0, np.maximum(np.abs(left), np.abs(right)))
    return float(np.max(np.abs(left - right) / scale))


@invariant("R^rho involution", 1e-12)
def _involution(rng: np.random.Generator) -> float:
    ctx = make_context(random_symplectic(rng, POINTWISE_SAMPLES))
    w = KForm(2, rng.standard_normal(ctx.rho.coefficients.shape))
    return _relative(R_rho(ctx, R_rho(ctx, w)).coefficients, w.coefficients)


@invariant("R^rho preserves wedge", 1e-12)
def _wedge_preserved(rng: np.random.Generator) -> float:
    ctx = make_context(random_symplectic(rng, POINTWISE_SAMPLES))
    shape = ctx.rho.coefficients.shape
    a = KForm(2, rng.standard_normal(shape))
    b = KForm(2, rng.standard_normal(shape))
    return _relative(
        wedge_scalar(R_rho(ctx, a), R_rho(ctx, b)), wedge_scalar(a, b)
    )


@invariant("star_rho compositions", 1e-12)
def _star_compositions(rng: np.random.Generator) -> float:
    ctx = make_context(random_symplectic(rng, POINTWISE_SAMPLES))
    batch = ctx.rho.batch_shape
    two_form = KForm(2, rng.standard_normal((6,) + batch))
    one_form = KForm(1, rng.standard_normal((4,) + batch))
    return max(
        _relative(star_rho(ctx, star_rho(ctx, two_form)).coefficients, two_form.coefficients),
        _relative(star_rho(ctx, star_rho(ctx, one_form)).coefficients, -one_form.coefficients),
    )


@invariant("Theta forms agree", 1e-12)
def _theta_forms(rng: np.random.Generator) -> float:
    ctx = make_context(random_symplectic(rng, POINTWISE_SAMPLES))
    return _relative(theta_rho(ctx).coefficients, theta_selfdual(ctx).coefficients)


@invariant("J^rho two ways", 1e-10)
def _complex_structures(rng: np.random.Generator) -> float:
    ctx = make_context(random_symplectic(rng, POINTWISE_SAMPLES))
    return max(_relative(J_rho(ctx, i), J_rho_from_star(ctx, i)) for i in FRAME_INDICES)


@invariant("negative chords", 1e-12)
def _negative_chords(rng: np.random.Generator) -> float:
    sample = sample_constraint_pairs(rng, POINTWISE_SAMPLES)
    chords = negative_chords_defect(sample.theta, sample.rho1, sample.rho2, tolerance=1e-9)
    return max(float(np.max(chords)), 0.0)


def perturbed_minimum(
    rng: np.random.Generator, grid: GridSpec, amplitude: float, max_mode: int
) -> KFormField:
    """ω₁ + ε dλ with a random band-limited λ, dλ scaled to unit sup norm."""
    exact = random_exact(rng, grid, max_mode)
    exact = exact / max(float(np.max(np.abs(exact.coefficients))), 1e-300)
    return KFormField.constant(grid, STANDARD_FRAME.form(1)) + exact * amplitude


@invariant("flow_rhs(omega1) = 0", 1e-11, CheckLevel.FULL)
def _critical_point(_: np.random.Generator) -> float:
    omega = KFormField.constant(GridSpec(8), STANDARD_FRAME.form(1))
    return l2_norm(flow_rhs(omega)) / l2_norm(omega)


@invariant("E(omega1) = 2(2pi)^4", 1e-12, CheckLevel.FULL)
def _minimum_energy(_: np.random.Generator) -> float:
    expected = 2.0 * PERIOD**4
    omega = KFormField.constant(GridSpec(8), STANDARD_FRAME.form(1))
    return abs(energy(omega) - expected) / expected


@invariant("L at omega1 = dd*", 1e-10, CheckLevel.FULL)
def _linearization_at_minimum(rng: np.random.Generator) -> float:
    grid = GridSpec(8)
    omega = KFormField.constant(grid, STANDARD_FRAME.form(1))
    rhohat = random_exact(rng, grid, 2)
    return relative_defect(linearized_operator(omega, rhohat), d(codifferential(rhohat)))


@invariant("gradient structure", 1e-4, CheckLevel.FULL)
def _gradient_structure(rng: np.random.Generator) -> float:
    grid = GridSpec(8)
    rho = perturbed_minimum(rng, grid, 0.05, 2)
    ctx = make_context(rho)
    direction = random_exact(rng, grid, 2)
    step = 1e-5
    slope = (energy(rho + direction * step) - energy(rho - direction * step)) / (2 * step)
    expected = -donaldson_inner(rho, flow_rhs(rho, ctx), direction, ctx=ctx)
    return abs(slope - expected) / max(abs(expected), 1e-300)


@invariant("K-map linearization", 1e-6, CheckLevel.FULL)
def _kmap_linearization(rng: np.random.Generator) -> float:
    grid = GridSpec(8)
    rho = perturbed_minimum(rng, grid, 0.05, 2)
    direction = random_exact(rng, grid, 2)
    step = 1e-4
    difference = (kmap(rho + direction * step) - kmap(rho - direction * step)) / (2 * step)
    return relative_defect(difference, kmap_linearized(rho, direction))


@invariant("S^rho adjointness", 1e-7, CheckLevel.FULL)
def _s_adjoint(rng: np.random.Generator) -> float:
    grid = GridSpec(16)
    rho = perturbed_minimum(rng, grid, 0.05, 1)
    ctx = make_context(rho)
    one_form = band_limited(rng, grid, 1, 2)
    xi = band_limited(rng, grid, 2, 2)
    xi = (xi + star(xi)) * 0.5
    left = l2_inner(s_rho(rho, one_form, ctx), xi)
    right = rho_pairing(ctx, one_form, s_rho_adjoint(rho, xi, ctx))
    return abs(left - right) / max(abs(left), abs(right), 1e-300)


@invariant("reduced routes agree", 1e-6, CheckLevel.FULL)
def _reduced_routes(rng: np.random.Generator) -> float:
    rho = perturbed_minimum(rng, GridSpec(16), 0.05, 1)
    return reduced_consistency(rho).max_defect


def selected(level: CheckLevel) -> list[InvariantCheck]:
    """The checks a level runs, in registration order."""
    if level is CheckLevel.FULL:
        return list(REGISTRY)
    return [check for check in REGISTRY if check.level is CheckLevel.FAST]


def run_checks(level: CheckLevel, seed: int = CHECK_SEED) -> list[CheckResult]:
    """Run every check of ``level``, each with its own generator seeded by ``seed``.

    An exception inside a measurement counts as an infinite defect.
    """
    results = []
    for check in selected(level):
        start = time.perf_counter()
        try:
            defect = float(check.measure(make_rng(seed)))
        except Exception:  # pylint: disable=broad-except
            logger.exception("Check %r raised", check.name)
            defect = float("inf")
        if not np.isfinite(defect):
            defect = float("inf")
        elapsed = time.perf_counter() - start
        logger.debug("%s: defect %.3g in %.2fs", check.name, defect, elapsed)
        results.append(CheckResult(check.name, defect, check.tolerance, elapsed))
    if level is CheckLevel.FAST:
        total = sum(result.seconds for result in results)
        if total > FAST_BUDGET_SECONDS:
            logger.warning("Fast checks took %.1fs (budget %.0fs)", total, FAST_BUDGET_SECONDS)
    return results


def render_table(results: list[CheckResult], stream: TextIO) -> None:
    """A fixed-width table of defects against tolerances."""
    stream.write(f"{'check':<28} {'defect':>12} {'tolerance':>12}  status\n")
    for result in results:
        status = "ok" if result.passed else "FAIL"
        stream.write(
            f"{result.name:<28} {result.defect:>12.3e} {result.tolerance:>12.1e}  {status}\n"
        )
