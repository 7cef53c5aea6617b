import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polphase import (CompositeState, EnergyBasis, PhaseDistribution, PhaseGrid,
                      UnderResolutionError, UnsupportedInputError, ValidationError,
                      build_phase_operator, coherent_state, distribution_decomposed,
                      distribution_direct, distribution_traced, fock_state, interference_term,
                      london_state, phase_moments, phase_state, polarization_state,
                      resolution_of_identity_check, tensor_embed, thermal_state,
                      uncertainty_report)
from polphase.phase import moment_weights, phase_powers, resolve_interference_sign

from conftest import random_field, random_polarization, seeds

TWO_PI = 2 * math.pi


def direct(f, pol, M=2048):
    return distribution_direct(tensor_embed(f, polarization_state(pol)), PhaseGrid(M))


def test_grid_layout():
    g = PhaseGrid(8)
    assert g.nodes[0] == -math.pi and g.nodes[-1] < math.pi
    np.testing.assert_allclose(np.diff(g.nodes), g.weight)
    np.testing.assert_allclose(-g.nodes[1:], g.nodes[g.reflection_index()][1:], atol=1e-15)


def test_phase_powers_match_exponentials():
    g = PhaseGrid(512)
    labels = np.arange(-41, 41)
    e = phase_powers(g.nodes, labels)
    ref = np.exp(1j * np.outer(g.nodes, labels))
    assert np.max(np.abs(e - ref)) < labels.size * np.finfo(float).eps * 4


def test_phase_state_components():
    b = EnergyBasis(5)
    np.testing.assert_allclose(phase_state(0.0, b).amplitudes, TWO_PI ** -0.5, atol=1e-15)
    assert phase_state(math.pi / 2, b)[-1] == pytest.approx(TWO_PI ** -0.5 * -1j, abs=1e-15)
    # wraps into [-pi, pi)
    np.testing.assert_allclose(phase_state(0.3 + TWO_PI, b).amplitudes,
                               phase_state(0.3, b).amplitudes, atol=1e-14)


def test_discrete_completeness():
    rng = np.random.default_rng(3)
    b = EnergyBasis(6)
    psi = rng.normal(size=b.dimension) + 1j * rng.normal(size=b.dimension)
    g = PhaseGrid(b.dimension)
    overlaps = np.array([np.vdot(phase_state(p, b).amplitudes, psi) for p in g.nodes])
    assert g.weight * np.sum(np.abs(overlaps) ** 2) == pytest.approx(np.vdot(psi, psi).real,
                                                                     rel=1e-13)


def test_london_state():
    assert london_state(0.7, 4)[0] == pytest.approx(TWO_PI ** -0.5)
    g = PhaseGrid(256)
    c = coherent_state(1.0, 40).amplitudes
    total = sum(abs(np.vdot(london_state(p, 40), c)) ** 2 for p in g.nodes) * g.weight
    assert total == pytest.approx(1.0, abs=1e-12)
    for n in range(5):
        assert abs(london_state(1.1, 10)[n]) ** 2 == pytest.approx(1 / TWO_PI)


@pytest.mark.parametrize("factor", [1, 4])
def test_resolution_of_identity(factor):
    b = EnergyBasis(40)
    assert resolution_of_identity_check(b, PhaseGrid(factor * b.dimension)) <= 1e-12


def test_resolution_of_identity_rejects_aliasing():
    b = EnergyBasis(4)
    with pytest.raises(UnderResolutionError):
        resolution_of_identity_check(b, PhaseGrid(b.dimension - 1))


def test_coherent_circular_peak():
    # brute force with exact factorials: p+(0) = exp(-1) (sum 1/sqrt(n!))^2 / (2 pi)
    oracle = math.exp(-1) * sum(1 / math.sqrt(math.factorial(n)) for n in range(41)) ** 2 / TWO_PI
    assert oracle == pytest.approx(0.7047920785720191, abs=1e-15)
    d = direct(coherent_state(1.0, 40), "circular")
    assert d.density[1024] == pytest.approx(oracle, abs=1e-13)  # node 1024 is phi = 0


@pytest.mark.parametrize("n", [0, 1, 5, 40])
def test_circular_fock_uniform(n):
    d = direct(fock_state(n, 40), "circular")
    np.testing.assert_allclose(d.density, 1 / TWO_PI, atol=1e-12, rtol=0)


def test_horizontal_vacuum_closed_form():
    d = direct(fock_state(0, 40), "horizontal")
    np.testing.assert_allclose(d.density, (1 + np.cos(d.nodes)) / TWO_PI, atol=1e-12, rtol=0)
    assert d.density[1024] == pytest.approx(1 / math.pi)
    assert abs(d.density[0]) < 1e-15


def test_decomposed_special_cases():
    f, g = coherent_state(0.8 + 0.5j, 30), PhaseGrid(256)
    p_plus = distribution_decomposed(f, polarization_state("circular"), g)
    anti = distribution_decomposed(f, polarization_state("anticircular"), g)
    unpol = distribution_decomposed(f, polarization_state("unpolarized"), g)
    np.testing.assert_allclose(anti.density, p_plus.reflected(), atol=1e-13)
    np.testing.assert_allclose(unpol.density, 0.5 * (p_plus.density + p_plus.reflected()),
                               atol=1e-13)
    assert not np.any(unpol.terms["interference"])
    assert not np.any(p_plus.terms["anticircular"])


def test_interference_single_photon_is_cos3phi():
    # hand evaluation: +<phi|1><1|-phi>+ = exp(-2 i phi)/2pi, prefactor exp(-i phi), P+- = 1/2
    g = PhaseGrid(128)
    term = interference_term(fock_state(1, 10), polarization_state("horizontal"), g)
    np.testing.assert_allclose(term, np.cos(3 * g.nodes) / TWO_PI, atol=1e-14)


def test_interference_vanishes_for_diagonal_polarization():
    for pol in ("circular", "anticircular", "unpolarized"):
        term = interference_term(coherent_state(1.0, 20), polarization_state(pol), PhaseGrid(64))
        assert not np.any(term)


def test_interference_prefactor_resolution():
    assert resolve_interference_sign() == -1
    assert resolve_interference_sign(PhaseGrid(97)) == -1


def test_decomposed_rejects_composite_states():
    state = tensor_embed(fock_state(0, 3), polarization_state("circular"))
    with pytest.raises(UnsupportedInputError):
        distribution_decomposed(state, polarization_state("circular"), PhaseGrid(16))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(0, 10), st.booleans())
def test_route_equivalence_random_products(seed, N, pure):
    rng = np.random.default_rng(seed)
    f, P = random_field(rng, N, pure), random_polarization(rng)
    g = PhaseGrid(2 * (2 * N + 2) + 3)
    np.testing.assert_allclose(distribution_decomposed(f, P, g).density,
                               distribution_direct(tensor_embed(f, P), g).density,
                               atol=1e-12, rtol=0)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(0, 10))
def test_parity_swap_reflects(seed, N):
    rng = np.random.default_rng(seed)
    f, P = random_field(rng, N), random_polarization(rng)
    g = PhaseGrid(64)
    d = distribution_direct(tensor_embed(f, P), g)
    swapped = distribution_direct(tensor_embed(f, P.swapped()), g)
    np.testing.assert_allclose(swapped.density, d.reflected(), atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(seeds, st.floats(0, 1))
def test_mixture_linearity(seed, t):
    rng = np.random.default_rng(seed)
    N, g = 6, PhaseGrid(40)
    f1, f2 = random_field(rng, N, False), random_field(rng, N, False)
    P1, P2 = random_polarization(rng), random_polarization(rng)
    mix_f = type(f1).mixed(t * f1.density() + (1 - t) * f2.density())
    lhs = distribution_decomposed(mix_f, P1, g).density
    rhs = (t * distribution_decomposed(f1, P1, g).density
           + (1 - t) * distribution_decomposed(f2, P1, g).density)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)
    mix_P = type(P1)(t * P1.matrix + (1 - t) * P2.matrix)
    lhs = distribution_decomposed(f1, mix_P, g).density
    rhs = (t * distribution_decomposed(f1, P1, g).density
           + (1 - t) * distribution_decomposed(f1, P2, g).density)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_horizontal_vertical_average(seed):
    f = random_field(np.random.default_rng(seed), 8)
    h, v, u = (direct(f, p, 64).density for p in ("horizontal", "vertical", "unpolarized"))
    np.testing.assert_allclose(0.5 * (h + v), u, atol=1e-12)


def test_traced_distribution():
    g = PhaseGrid(512)
    f = coherent_state(1.0, 40)
    traced = distribution_traced(tensor_embed(f, polarization_state("horizontal")), g)
    unpol = distribution_direct(tensor_embed(f, polarization_state("unpolarized")), g)
    np.testing.assert_allclose(traced.density, unpol.density, atol=1e-12)
    vac = distribution_traced(tensor_embed(fock_state(0, 40), polarization_state("vertical")), g)
    np.testing.assert_allclose(vac.density, 1 / TWO_PI, atol=1e-12)


def test_traced_distribution_entangled_state():
    # (|1,+> + |0,->)/sqrt2 is not a product state; tracing keeps only the diagonal blocks
    b = EnergyBasis(3)
    psi = np.zeros(b.dimension, dtype=complex)
    psi[b.offset(1)] = psi[b.offset(-1)] = 2 ** -0.5
    d = distribution_traced(CompositeState.from_vector(psi, b), PhaseGrid(32))
    np.testing.assert_allclose(d.density, 1 / TWO_PI, atol=1e-14)


def test_moment_weights_against_brute_force():
    # fine midpoint rule on the non-periodic integrands as an independent oracle
    M = 64
    w1, w2 = moment_weights(M)
    x = np.linspace(-np.pi, np.pi, 2_000_001)
    for k in range(-(M // 2 - 1), M // 2):
        f_nodes = np.cos(k * PhaseGrid(M).nodes + 0.3)
        f_fine = np.cos(k * x + 0.3)
        assert w1 @ f_nodes == pytest.approx(np.trapezoid(x * f_fine, x), abs=1e-9)
        assert w2 @ f_nodes == pytest.approx(np.trapezoid(x * x * f_fine, x), abs=1e-9)


def test_uniform_moments():
    d = PhaseDistribution(PhaseGrid(2048), np.full(2048, 1 / TWO_PI))
    mean, var = phase_moments(d)
    assert abs(mean) < 1e-12
    assert var == pytest.approx(math.pi ** 2 / 3, abs=1e-10)


def test_horizontal_vacuum_variance():
    x = np.linspace(-np.pi, np.pi, 2_000_001)
    oracle = np.trapezoid(x ** 2 * (1 + np.cos(x)) / TWO_PI, x)
    assert oracle == pytest.approx(math.pi ** 2 / 3 - 2, abs=1e-9)
    _, var = phase_moments(direct(fock_state(0, 40), "horizontal"))
    assert var == pytest.approx(math.pi ** 2 / 3 - 2, abs=1e-10)


def test_symmetric_distribution_has_zero_mean():
    mean, _ = phase_moments(direct(coherent_state(1.0, 40), "unpolarized"))
    assert abs(mean) < 1e-13


def test_mean_matches_phase_operator():
    f = coherent_state(1.2 * np.exp(0.9j), 40)
    state = tensor_embed(f, polarization_state("horizontal"))
    mean, _ = phase_moments(distribution_direct(state, PhaseGrid(2048)))
    Phi = build_phase_operator(state.basis)
    assert mean == pytest.approx(Phi.expectation(state.rho).real, abs=1e-12)


def test_moments_reject_unnormalized():
    with pytest.raises(ValidationError):
        phase_moments(PhaseDistribution(PhaseGrid(16), np.ones(16)))


def test_uncertainty_fock():
    r = uncertainty_report(tensor_embed(fock_state(3, 40), polarization_state("circular")), 1.0)
    assert r.delta_e == 0 and r.delta_e_delta_t == 0
    assert r.delta_t == pytest.approx(math.pi / math.sqrt(3), abs=1e-10)
    assert r.below_bound and r.bound == 0.5


def test_uncertainty_coherent_poisson():
    r = uncertainty_report(tensor_embed(coherent_state(1.0, 40), polarization_state("circular")))
    assert r.delta_e == pytest.approx(1.0, abs=1e-10)
    assert r.mean_energy == pytest.approx(1.5, abs=1e-10)
    r2 = uncertainty_report(tensor_embed(coherent_state(1.0, 40), polarization_state("circular")),
                            omega=2.0)
    assert r2.delta_t == pytest.approx(r.delta_t / 2)
    assert r2.phase_variance == pytest.approx(r.phase_variance)


def test_uncertainty_vacuum_any_polarization():
    for pol in ("circular", "horizontal", "unpolarized"):
        r = uncertainty_report(tensor_embed(fock_state(0, 10), polarization_state(pol)))
        if pol == "circular":
            assert r.delta_e == 0
        else:
            # superposition of labels 0 and -1 has number spread 1/2
            assert r.delta_e == pytest.approx(0.5)


def test_thermal_circular_flat():
    d = direct(thermal_state(2.0, 40), "circular")
    np.testing.assert_allclose(d.density, 1 / TWO_PI, atol=1e-12)
