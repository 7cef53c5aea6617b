import numpy as np
import pytest
from hypothesis import given

from polphase import (CompositeState, DimensionError, EnergyBasis, IndexRangeError, Polarization,
                      ValidationError, fock_state, partial_trace_polarization, polarization_state,
                      tensor_embed)

from conftest import cutoffs, random_field, random_polarization, seeds

PLUS, MINUS = Polarization.PLUS, Polarization.MINUS


@pytest.mark.parametrize("n, sigma, k", [(0, PLUS, 0), (0, MINUS, -1), (3, MINUS, -4), (3, PLUS, 3)])
def test_energy_index(n, sigma, k):
    b = EnergyBasis(5)
    assert b.energy_index(n, sigma) == k
    assert b.fock_label(k) == (n, sigma)


def test_fock_label_boundary():
    b = EnergyBasis(7)
    assert b.fock_label(7) == (7, PLUS)
    assert b.fock_label(-8) == (7, MINUS)


@pytest.mark.parametrize("bad", [-1, 6])
def test_energy_index_range(bad):
    with pytest.raises(IndexRangeError):
        EnergyBasis(5).energy_index(bad, PLUS)


@pytest.mark.parametrize("bad", [-7, 6])
def test_fock_label_range(bad):
    with pytest.raises(IndexRangeError):
        EnergyBasis(5).fock_label(bad)


@given(cutoffs)
def test_bijection_and_ordering(N):
    b = EnergyBasis(N)
    assert b.dimension == 2 * (N + 1)
    seen = set()
    for n in range(N + 1):
        for s in Polarization:
            k = b.energy_index(n, s)
            assert b.fock_label(k) == (n, s)
            seen.add(k)
    assert seen == set(b.labels.tolist())
    plus = [b.energy_index(n, PLUS) for n in range(N + 1)]
    minus = [b.energy_index(n, MINUS) for n in range(N + 1)]
    assert np.all(np.diff(plus) > 0) and np.all(np.diff(minus) < 0)
    assert max(minus) < min(plus)
    assert [b.offset(k) for k in b.labels] == list(range(b.dimension))


def test_embed_vacuum():
    vac = fock_state(0, 3)
    b = EnergyBasis(3)
    rho = tensor_embed(vac, polarization_state("circular")).rho
    expected = np.zeros_like(rho)
    expected[b.offset(0), b.offset(0)] = 1
    assert np.array_equal(rho, expected)

    rho = tensor_embed(vac, polarization_state("anticircular")).rho
    expected = np.zeros_like(rho)
    expected[b.offset(-1), b.offset(-1)] = 1
    assert np.array_equal(rho, expected)

    rho = tensor_embed(vac, polarization_state("unpolarized")).rho
    expected = np.zeros_like(rho)
    expected[b.offset(0), b.offset(0)] = expected[b.offset(-1), b.offset(-1)] = 0.5
    assert np.array_equal(rho, expected)


def test_embed_cutoff_mismatch():
    with pytest.raises(DimensionError):
        tensor_embed(fock_state(0, 3), polarization_state("circular"), EnergyBasis(4))


def test_partial_trace_discards_polarization_coherence():
    # hand calculation: the 2x2 block on {e_-1, e_0} is [[1/2, 1/2], [1/2, 1/2]];
    # summing its diagonal gives |0><0| and the off-diagonal coherence is dropped
    b = EnergyBasis(2)
    psi = np.zeros(b.dimension, dtype=complex)
    psi[b.offset(0)] = psi[b.offset(-1)] = 1 / np.sqrt(2)
    reduced = partial_trace_polarization(CompositeState.from_vector(psi, b)).density()
    expected = np.zeros((3, 3))
    expected[0, 0] = 1
    np.testing.assert_allclose(reduced, expected, atol=1e-15)


def test_partial_trace_maximally_mixed():
    b = EnergyBasis(4)
    reduced = partial_trace_polarization(CompositeState.maximally_mixed(b)).density()
    np.testing.assert_allclose(reduced, np.eye(5) / 5, atol=1e-15)


@given(seeds, cutoffs)
def test_embed_then_trace_roundtrip(seed, N):
    rng = np.random.default_rng(seed)
    f = random_field(rng, N, pure=bool(seed % 2))
    P = random_polarization(rng)
    state = tensor_embed(f, P)
    assert abs(np.trace(state.rho) - 1) < 1e-12
    np.testing.assert_allclose(partial_trace_polarization(state).density(), f.density(),
                               atol=1e-12)


def test_composite_validation():
    b = EnergyBasis(1)
    with pytest.raises(ValidationError):
        CompositeState(b, np.eye(4))  # trace 4
    with pytest.raises(ValidationError):
        CompositeState(b, np.diag([1.5, -0.5, 0, 0]))
    with pytest.raises(DimensionError):
        CompositeState(b, np.eye(3) / 3)


def test_tail_mass_flags_edge_states():
    b = EnergyBasis(10)
    edge = tensor_embed(fock_state(10, 10), polarization_state("circular"))
    inner = tensor_embed(fock_state(3, 10), polarization_state("circular"))
    assert not edge.interior_valid
    assert inner.interior_valid
    assert edge.tail_mass() == pytest.approx(1.0)


def test_containers_are_immutable():
    state = tensor_embed(fock_state(0, 2), polarization_state("circular"))
    with pytest.raises(ValueError):
        state.rho[0, 0] = 1
