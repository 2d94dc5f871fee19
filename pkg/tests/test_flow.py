import math

import numpy as np
import pytest

from donflow.algebra import STANDARD_FRAME, make_context
from donflow.exceptions import BlowUpError, ConfigValueError
from donflow.flow import (
    DiagnosticsRecord,
    FlowConfig,
    FlowState,
    ImexStepper,
    Integrator,
    Schedule,
    Tolerances,
    cfl_time_step,
    decay_rate_fit,
    energy,
    flow_rhs,
    grad_norm_sq,
    linearized_operator,
    lower_order_part,
    principal_part,
    read_diagnostics_csv,
    run,
    step_rk4,
    stiffness_scale,
    write_diagnostics_csv,
)
from donflow.grid import (
    PERIOD,
    GridSpec,
    KFormField,
    codifferential,
    d,
    donaldson_inner,
    hodge_project,
    l2_norm,
    make_rng,
    random_exact,
    relative_defect,
    require_exact,
)

MINIMUM_ENERGY = 2.0 * PERIOD**4


def unit_direction(grid: GridSpec, seed: int, max_mode: int = 1) -> KFormField:
    exact = random_exact(make_rng(seed), grid, max_mode)
    return exact / float(np.max(np.abs(exact.coefficients)))


def test_energy_at_the_minimum(omega8):
    assert energy(omega8) == pytest.approx(MINIMUM_ENERGY, rel=1e-12)


def test_energy_is_bounded_below_in_the_class(perturbed):
    amplitudes = make_rng(99).uniform(0.01, 0.2, size=100)
    for seed, amplitude in enumerate(amplitudes):
        rho = perturbed(amplitude=float(amplitude), max_mode=2, seed=seed)
        assert energy(rho) > MINIMUM_ENERGY, f"seed {seed}"


def test_the_minimum_is_a_critical_point(omega8):
    assert np.all(flow_rhs(omega8).coefficients == 0.0)
    assert grad_norm_sq(omega8) == 0.0


def test_flow_vector_field_is_exact(perturbed):
    require_exact(flow_rhs(perturbed(amplitude=0.1)))


@pytest.mark.parametrize("seed", range(20))
def test_flow_descends_the_energy_gradient(perturbed, seed):
    rho = perturbed(amplitude=0.05, max_mode=2)
    ctx = make_context(rho)
    direction = unit_direction(rho.grid, 100 + seed, 2)
    step = 1e-5
    slope = (energy(rho + direction * step) - energy(rho - direction * step)) / (2 * step)
    expected = -donaldson_inner(rho, flow_rhs(rho, ctx), direction, ctx=ctx)
    assert slope == pytest.approx(expected, rel=1e-4)


def test_grad_norm_matches_the_donaldson_metric(perturbed):
    rho = perturbed(amplitude=0.05)
    ctx = make_context(rho)
    rhs = flow_rhs(rho, ctx)
    assert grad_norm_sq(rho, ctx) == pytest.approx(
        donaldson_inner(rho, rhs, rhs, ctx=ctx), rel=1e-8
    )


def test_linearization_at_the_minimum_is_dd_star(omega8, rng):
    rhohat = random_exact(rng, omega8.grid, 2)
    assert relative_defect(linearized_operator(omega8, rhohat), d(codifferential(rhohat))) <= 1e-10


def test_linearization_remainder_is_quadratic(perturbed):
    rho = perturbed(amplitude=0.1)
    ctx = make_context(rho)
    direction = unit_direction(rho.grid, 12)
    base = flow_rhs(rho, ctx)
    applied = linearized_operator(rho, direction, ctx)

    def remainder(step: float) -> float:
        return l2_norm(flow_rhs(rho + direction * step) - base + applied * step)

    steps = np.array([1e-1, 3e-2, 1e-2, 3e-3, 1e-3])
    slope, _ = np.polyfit(np.log(steps), np.log([remainder(step) for step in steps]), 1)
    assert slope == pytest.approx(2.0, abs=0.15)


def test_linearization_splits_into_principal_and_lower_order(perturbed):
    rho = perturbed(n=16, amplitude=0.05)
    ctx = make_context(rho)
    direction = unit_direction(rho.grid, 13)
    split = principal_part(rho, direction, ctx) + lower_order_part(rho, direction, ctx)
    assert relative_defect(split, linearized_operator(rho, direction, ctx)) <= 1e-6


def test_cfl_step_at_the_minimum(omega8):
    # the pairing matrix is the identity and u = 1, so s_max = h²·36
    assert stiffness_scale(make_context(omega8)) == pytest.approx(1.0, rel=1e-12)
    assert cfl_time_step(0.2, omega8) == pytest.approx(0.2 / 36, rel=1e-12)


def test_cfl_step_shrinks_with_resolution(perturbed):
    coarse = cfl_time_step(0.2, perturbed(n=8))
    fine = cfl_time_step(0.2, perturbed(n=16))
    assert fine < coarse / 3


def test_run_from_the_minimum_stays_put(omega8):
    config = FlowConfig(grid=omega8.grid, schedule=Schedule(dt=0.01, t_end=0.05))
    state, records = run(config, omega8)
    np.testing.assert_array_equal(state.rho.coefficients, omega8.coefficients)
    assert state.t == pytest.approx(0.05)
    assert len(records) == 6
    for record in records:
        assert record.energy == pytest.approx(MINIMUM_ENERGY, rel=1e-12)
        assert record.dist_to_min == 0.0
        assert record.harm_drift == 0.0


def test_run_records_at_the_output_cadence(perturbed):
    rho = perturbed()
    config = FlowConfig(
        grid=rho.grid, schedule=Schedule(dt=0.01, t_end=0.05, output_cadence=2)
    )
    visited = []
    state, records = run(config, rho, on_snapshot=visited.append)
    assert [record.t for record in records] == pytest.approx([0.0, 0.02, 0.04, 0.05])
    assert state.step == 5
    # the initial and final states
    assert [snapshot.step for snapshot in visited] == [0, 5]


def test_runs_are_deterministic(perturbed):
    config = FlowConfig(grid=GridSpec(8), schedule=Schedule(dt=0.005, t_end=0.02))
    first, first_records = run(config, perturbed())
    second, second_records = run(config, perturbed())
    np.testing.assert_array_equal(first.rho.coefficients, second.rho.coefficients)
    assert first_records == second_records


def test_rk4_decreases_energy_and_keeps_the_class(perturbed):
    rho = perturbed(amplitude=0.1)
    config = FlowConfig(
        grid=rho.grid, schedule=Schedule(dt=0.005, t_end=0.1, projection_cadence=5)
    )
    _, records = run(config, rho)
    energies = [record.energy for record in records]
    assert all(later <= earlier * (1 + 1e-12) for earlier, later in zip(energies, energies[1:]))
    assert energies[-1] < energies[0]
    assert max(record.harm_drift for record in records) <= 1e-10
    assert max(record.norm_drho for record in records) <= 1e-9
    assert records[-1].dist_to_min < records[0].dist_to_min


def test_rk4_step_adds_an_exact_increment(perturbed):
    rho = perturbed(amplitude=0.1)
    following = step_rk4(FlowState(rho), 0.005)
    assert following.step == 1 and following.t == 0.005
    require_exact(following.rho - rho)


def test_imex_fixed_point_contracts(perturbed):
    rho = perturbed(amplitude=0.1)
    config = FlowConfig(grid=rho.grid, schedule=Schedule(integrator=Integrator.IMEX))
    stepper = ImexStepper(config, hodge_project(rho).harmonic)
    following = stepper.step(FlowState(rho), 0.05)
    assert stepper.last_iterations >= 2
    assert stepper.last_ratios and max(stepper.last_ratios) < 1.0
    assert energy(following.rho) < energy(rho)


def test_imex_fixed_point_contracts_geometrically(perturbed):
    rho = perturbed(amplitude=0.05)
    config = FlowConfig(grid=rho.grid, schedule=Schedule(integrator=Integrator.IMEX))
    stepper = ImexStepper(config, hodge_project(rho).harmonic)
    stepper.step(FlowState(rho), 10 * cfl_time_step(0.2, rho))
    ratios = stepper.last_ratios
    assert ratios and max(ratios) < 1.0
    # iterations a constant rate of max(ratios) needs to reach the tolerance
    needed = math.log(config.tolerances.fixed_point_tol) / math.log(max(ratios))
    assert stepper.last_iterations <= needed + 3


def test_imex_follows_the_rk4_trajectory(perturbed):
    rho = perturbed(amplitude=0.05)
    explicit_dt = cfl_time_step(0.2, rho)
    reference, _ = run(FlowConfig(grid=rho.grid, schedule=Schedule(t_end=0.1)), rho)
    semi_implicit, _ = run(
        FlowConfig(
            grid=rho.grid,
            schedule=Schedule(integrator=Integrator.IMEX, dt=10 * explicit_dt, t_end=0.1),
        ),
        rho,
    )
    assert semi_implicit.t == pytest.approx(reference.t)
    assert relative_defect(semi_implicit.rho, reference.rho) <= 1e-3


def test_imex_takes_steps_beyond_the_explicit_limit(perturbed):
    rho = perturbed(amplitude=0.05)
    dt = 20 * cfl_time_step(0.2, rho)
    config = FlowConfig(
        grid=rho.grid, schedule=Schedule(integrator=Integrator.IMEX, dt=dt, t_end=3 * dt)
    )
    state, records = run(config, rho)
    assert state.step == 3
    assert records[-1].energy < records[0].energy


def test_explicit_steps_far_too_large_blow_up(perturbed):
    rho = perturbed(amplitude=0.2, max_mode=3)
    config = FlowConfig(grid=rho.grid, schedule=Schedule(dt=5.0, t_end=5.0))
    with pytest.raises(BlowUpError) as info:
        run(config, rho)
    assert info.value.state.step == 0
    assert len(info.value.records) == 1


def test_diagnostics_csv_round_trip(tmp_path, perturbed):
    rho = perturbed()
    config = FlowConfig(grid=rho.grid, schedule=Schedule(dt=0.01, t_end=0.03))
    _, records = run(config, rho)
    path = write_diagnostics_csv(tmp_path / "diagnostics.csv", records)
    write_diagnostics_csv(path, records)
    assert list(tmp_path.iterdir()) == [path]
    header = path.read_text(encoding="utf-8").splitlines()[0]
    assert header == ",".join(DiagnosticsRecord.columns())
    assert read_diagnostics_csv(path) == records


def synthetic(times, rate):
    return [
        DiagnosticsRecord(t, 0.0, 1.0, 0.0, 0.0, 0.0, 0.3 * math.exp(-rate * t), 0.0)
        for t in times
    ]


def test_decay_rate_fit_recovers_an_exponential():
    assert decay_rate_fit(synthetic(np.linspace(0.0, 2.0, 21), 1.5)) == pytest.approx(1.5)


def test_decay_rate_fit_needs_two_points():
    assert math.isnan(decay_rate_fit([]))
    assert math.isnan(decay_rate_fit(synthetic([0.0, 1.0], 1.0)[:1]))


@pytest.mark.parametrize(
    "build",
    [
        lambda: Schedule(dt=-0.1),
        lambda: Schedule(cfl=0.0),
        lambda: Schedule(output_cadence=0),
        lambda: Schedule(snapshot_cadence=-1),
        lambda: Tolerances(imex_factor=0.5),
        lambda: Tolerances(eps_deg=0.0),
    ],
)
def test_invalid_run_parameters_name_their_key(build):
    with pytest.raises(ConfigValueError) as info:
        build()
    assert info.value.key.startswith(("flow.", "tolerances."))


@pytest.mark.slow
def test_distance_decays_at_the_first_eigenvalue(perturbed):
    rho = perturbed(amplitude=0.01)
    config = FlowConfig(
        grid=rho.grid,
        schedule=Schedule(integrator=Integrator.IMEX, dt=0.02, t_end=2.0, output_cadence=5),
    )
    _, records = run(config, rho)
    assert max(record.norm_drho for record in records) <= 1e-9
    assert decay_rate_fit(records) == pytest.approx(1.0, abs=0.2)
    assert records[-1].dist_to_min < records[0].dist_to_min * math.exp(-0.8 * 2.0)
    assert max(record.harm_drift for record in records) <= 1e-10


@pytest.mark.slow
def test_rk4_converges_at_fourth_order(perturbed):
    rho = perturbed(amplitude=0.05)
    finals = []
    for dt in (0.025, 0.0125, 0.00625):
        config = FlowConfig(
            grid=rho.grid, schedule=Schedule(dt=dt, t_end=0.1, output_cadence=1000)
        )
        finals.append(run(config, rho)[0].rho)
    ratio = l2_norm(finals[0] - finals[1]) / l2_norm(finals[1] - finals[2])
    assert 12.0 <= ratio <= 20.0
