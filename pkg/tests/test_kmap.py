import math

import numpy as np
import pytest

from donflow.algebra import (
    FRAME_INDICES,
    STANDARD_FRAME,
    J_rho,
    R_rho,
    compose_covector,
    hamiltonian_vector,
    make_context,
    star,
    star_rho,
    two_form_evaluate,
    wedge,
)
from donflow.exceptions import NewtonDivergence
from donflow.flow import flow_potential
from donflow.grid import (
    KFormField,
    Scheme,
    band_limited,
    d,
    l2_inner,
    l2_norm,
    make_rng,
    random_exact,
    relative_defect,
    rho_pairing,
)
from donflow.kmap import (
    ROUTES,
    KInverter,
    ReducedVariant,
    evolution_routes,
    k_triple,
    kmap,
    kmap_injectivity_search,
    kmap_linearized,
    kmap_linearized_adjoint,
    linearization_lower_bound,
    newton_invert_k,
    poisson_bracket,
    reduced_consistency,
    reduced_rhs,
    s_rho,
    s_rho_adjoint,
    s_rho_adjoint_selfdual,
)


def self_dual(field: KFormField) -> KFormField:
    return (field + star(field)) * 0.5


def test_kmap_fixes_the_minimum(omega8):
    np.testing.assert_allclose(kmap(omega8).coefficients, omega8.coefficients, atol=1e-15)


def test_kmap_is_self_dual_and_scales_inversely(perturbed):
    rho = perturbed(amplitude=0.1)
    image = kmap(rho)
    np.testing.assert_allclose(star(image).coefficients, image.coefficients, atol=1e-14)
    assert relative_defect(kmap(rho * 2.0), image * 0.5) <= 1e-14


def test_k_triple_recombines_to_kmap(perturbed):
    rho = perturbed(amplitude=0.1)
    assert relative_defect(k_triple(rho).recombine(), kmap(rho)) <= 1e-13


def test_k_triple_at_the_minimum(omega8):
    triple = k_triple(omega8)
    np.testing.assert_allclose(triple.function(1).values, 2.0, atol=1e-14)
    np.testing.assert_allclose(triple.function(2).values, 0.0, atol=1e-14)
    np.testing.assert_allclose(triple.function(3).values, 0.0, atol=1e-14)


def test_linearization_matches_finite_differences(perturbed):
    rho = perturbed(amplitude=0.05, max_mode=2)
    direction = random_exact(make_rng(21), rho.grid, 2)
    step = 1e-4
    difference = (kmap(rho + direction * step) - kmap(rho - direction * step)) / (2 * step)
    assert relative_defect(difference, kmap_linearized(rho, direction)) <= 1e-6


def test_linearization_adjoint_pairing(perturbed, rng):
    rho = perturbed(amplitude=0.1)
    ctx = make_context(rho)
    rhohat = band_limited(rng, rho.grid, 2, 2)
    xi = band_limited(rng, rho.grid, 2, 2)
    left = l2_inner(kmap_linearized(rho, rhohat, ctx), xi)
    right = l2_inner(rhohat, kmap_linearized_adjoint(rho, xi, ctx))
    assert left == pytest.approx(right, rel=1e-10)


def test_linearization_is_bounded_below_at_the_minimum(omega8, rng):
    # exact fields split evenly between their self-dual and anti-self-dual parts
    assert linearization_lower_bound(omega8, rng) == pytest.approx(math.sqrt(0.5), rel=1e-10)


def test_injectivity_search_finds_no_collisions(omega8):
    report = kmap_injectivity_search(make_rng(22), omega8, samples=8)
    assert report.samples > 0
    assert report.counterexamples == 0
    assert report.min_ratio > 0.5


@pytest.mark.parametrize("seed", range(10))
def test_newton_recovers_a_field_from_its_image(perturbed, omega8, seed):
    expected = perturbed(amplitude=0.05, seed=seed)
    result = KInverter(kmap(expected), omega8, vary_class=False).solve()
    assert result.residuals[-1] <= 1e-9
    assert all(later < earlier for earlier, later in zip(result.residuals, result.residuals[1:]))
    assert relative_defect(result.rho, expected) <= 1e-8


def test_newton_can_move_the_class(perturbed, omega8):
    expected = perturbed(amplitude=0.05) * 1.1
    found = newton_invert_k(kmap(expected), omega8)
    assert relative_defect(found, expected) <= 1e-8


def test_newton_without_budget_diverges(perturbed, omega8):
    target = kmap(perturbed(amplitude=0.05))
    with pytest.raises(NewtonDivergence) as info:
        KInverter(target, omega8, max_iter=1, vary_class=False).solve()
    assert len(info.value.residuals) == 2


def test_s_operator_adjoint_pairing(perturbed, rng):
    rho = perturbed(n=16, amplitude=0.05)
    ctx = make_context(rho)
    one_form = band_limited(rng, rho.grid, 1, 2)
    xi = self_dual(band_limited(rng, rho.grid, 2, 2))
    left = l2_inner(s_rho(rho, one_form, ctx), xi)
    right = rho_pairing(ctx, one_form, s_rho_adjoint(rho, xi, ctx))
    assert left == pytest.approx(right, rel=1e-7)


def test_s_operator_adjoint_has_a_self_dual_form(perturbed, rng):
    rho = perturbed(n=16, amplitude=0.05)
    ctx = make_context(rho)
    xi = self_dual(band_limited(rng, rho.grid, 2, 1))
    assert relative_defect(s_rho_adjoint(rho, xi, ctx), s_rho_adjoint_selfdual(rho, xi, ctx)) <= 1e-6


def test_s_operator_adjoint_of_twice_eta_is_the_flow_potential(perturbed):
    rho = perturbed(n=16, amplitude=0.05)
    ctx = make_context(rho)
    applied = s_rho_adjoint(rho, ctx.eta * 2.0, ctx)
    assert relative_defect(applied, flow_potential(rho, ctx)) <= 1e-7


def test_s_operator_adjoint_satisfies_the_leibniz_rule(perturbed, rng):
    rho = perturbed(n=16, amplitude=0.05)
    ctx = make_context(rho)
    function = band_limited(rng, rho.grid, 0, 1)
    xi = self_dual(band_limited(rng, rho.grid, 2, 1))
    left = s_rho_adjoint(rho, xi.scaled(function.values), ctx)
    right = star_rho(ctx, wedge(d(function), R_rho(ctx, xi))) + s_rho_adjoint(
        rho, xi, ctx
    ).scaled(function.values)
    assert relative_defect(left, right) <= 1e-7


def test_s_operator_adjoint_in_the_hyperkahler_frame(perturbed, rng):
    rho = perturbed(n=16, amplitude=0.05)
    ctx = make_context(rho)
    functions = [band_limited(rng, rho.grid, 0, 1) for _ in FRAME_INDICES]
    frame = [KFormField.constant(rho.grid, STANDARD_FRAME.form(i)) for i in FRAME_INDICES]
    combination = sum(
        (form.scaled(f.values) for f, form in zip(functions, frame)),
        KFormField.zeros(rho.grid, 2),
    )
    expected = sum(
        (
            compose_covector(d(f), J_rho(ctx, i)) + s_rho_adjoint(rho, form, ctx).scaled(f.values)
            for i, f, form in zip(FRAME_INDICES, functions, frame)
        ),
        KFormField.zeros(rho.grid, 1),
    )
    assert relative_defect(s_rho_adjoint(rho, combination, ctx), expected) <= 1e-7


@pytest.mark.parametrize("index", FRAME_INDICES)
def test_s_operator_adjoint_annihilates_the_parallel_frame(perturbed, index):
    rho = perturbed(n=16, amplitude=0.05)
    omega = KFormField.constant(rho.grid, STANDARD_FRAME.form(index))
    # the scale of either term of the adjoint
    assert l2_norm(s_rho_adjoint(rho, omega)) <= 1e-7 * l2_norm(omega)


def test_poisson_bracket_is_antisymmetric(perturbed, rng):
    rho = perturbed(amplitude=0.1)
    first = band_limited(rng, rho.grid, 0, 2)
    second = band_limited(rng, rho.grid, 0, 2)
    forward = poisson_bracket(rho, first, second)
    backward = poisson_bracket(rho, second, first)
    np.testing.assert_allclose(forward.coefficients, -backward.coefficients, atol=1e-14)
    np.testing.assert_allclose(poisson_bracket(rho, first, first).coefficients, 0.0, atol=1e-14)


def test_poisson_bracket_evaluates_the_hamiltonian_vectors(perturbed, rng):
    rho = perturbed(amplitude=0.1)
    ctx = make_context(rho)
    first = band_limited(rng, rho.grid, 0, 2)
    second = band_limited(rng, rho.grid, 0, 2)
    expected = two_form_evaluate(
        rho, hamiltonian_vector(ctx, d(first)), hamiltonian_vector(ctx, d(second))
    )
    np.testing.assert_allclose(poisson_bracket(rho, first, second, ctx).values, expected, atol=1e-10)


def test_coordinate_bracket_at_the_minimum(omega8):
    coordinates = omega8.grid.coordinates()
    # sin keeps the coordinate functions periodic
    first = KFormField.scalar(omega8.grid, np.sin(coordinates[0]))
    second = KFormField.scalar(omega8.grid, np.sin(coordinates[1]))
    expected = np.cos(coordinates[0]) * np.cos(coordinates[1])
    np.testing.assert_allclose(poisson_bracket(omega8, first, second).values, expected, atol=1e-12)


def test_every_route_vanishes_at_the_minimum(omega8):
    routes = evolution_routes(omega8)
    assert sorted(routes) == sorted(ROUTES)
    for route in routes.values():
        np.testing.assert_allclose(route.coefficients, 0.0, atol=1e-14)
    report = reduced_consistency(omega8)
    assert report.max_defect <= 1e-12


def test_reduced_rhs_variants_coincide_at_the_minimum(omega8):
    for variant in ReducedVariant:
        triple = reduced_rhs(omega8, variant)
        for index in (1, 2, 3):
            np.testing.assert_allclose(triple.function(index).values, 0.0, atol=1e-14)


def test_routes_agree_near_the_minimum(perturbed):
    rho = perturbed(n=16, amplitude=0.05)
    report = reduced_consistency(rho, seed=7)
    assert report.max_defect <= 1e-6
    assert report.defect("chain_rule", "s_operator") <= 1e-6
    assert len(report.route_pairs) == 6


def test_only_the_derived_bracket_sign_matches(perturbed):
    rho = perturbed(n=16, amplitude=0.05)
    report = reduced_consistency(rho)
    assert report.bracket_variant == ReducedVariant.DERIVED.value
    derived = report.variant_defects["derived"]
    assert report.variant_defects["statement"] > 100 * derived
    assert report.variant_defects["proof"] > 100 * derived


@pytest.mark.slow
def test_central_differences_converge_at_fourth_order(perturbed):
    coarse, fine = (
        reduced_consistency(perturbed(n=n, amplitude=0.01, scheme=Scheme.CENTRAL4)).max_defect
        for n in (8, 16)
    )
    assert fine < coarse
    assert math.log2(coarse / fine) == pytest.approx(4.0, abs=0.5)


def test_consistency_report_json(perturbed):
    report = reduced_consistency(perturbed(), seed=7)
    payload = report.to_json()
    assert payload["seed"] == 7
    assert payload["generator"] == "philox4x64"
    assert payload["grid_n"] == 8 and payload["scheme"] == "spectral"
    assert payload["route_pairs"][0] == ["chain_rule", "closed_form"]
    with pytest.raises(KeyError):
        report.defect("chain_rule", "chain_rule")


def test_standard_frame_has_constant_k_functions(grid8):
    rho = KFormField.constant(grid8, STANDARD_FRAME.form(2).scaled(2.0))
    triple = k_triple(rho)
    # K(cω₂) = ω₂/c
    np.testing.assert_allclose(triple.function(2).values, 1.0, atol=1e-14)
