"""Phase states, phase probability densities, moments and uncertainty products.

Densities are sampled on a uniform periodic grid over [-pi, pi). Every density
of a truncated state is a trigonometric polynomial of degree below the basis
dimension, so with at least ``dimension`` nodes the rectangle rule integrates
it exactly. Moments use spectral weights (see :func:`moment_weights`) that
stay exact even though ``phi * p(phi)`` is not periodic.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .constants import DEFAULT_GRID_POINTS, TOL_ALG, TOL_QUAD
from .errors import DimensionError, DomainError, UnderResolutionError, UnsupportedInputError, ValidationError
from .hilbert import (CompositeState, EnergyBasis, StateVector, partial_trace_polarization,
                      tensor_embed)
from .states import FieldState, PolarizationState, polarization_state

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

#: Sign ``s`` of the interference prefactor exp(s i phi). Fixed to the value
#: that makes the three-term decomposition agree with the direct quadratic form;
#: see :func:`resolve_interference_sign`.
INTERFERENCE_SIGN = -1


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform nodes ``phi_j = -pi + 2 pi j / M``; ``-pi`` included, ``+pi`` excluded."""

    points: int = DEFAULT_GRID_POINTS

    def __post_init__(self):
        if int(self.points) != self.points or self.points < 1:
            raise DomainError(f"grid needs a positive integer node count, got {self.points!r}")
        object.__setattr__(self, "points", int(self.points))

    @property
    def weight(self) -> float:
        return 2.0 * math.pi / self.points

    @property
    def nodes(self) -> np.ndarray:
        return -math.pi + self.weight * np.arange(self.points)

    def reflection_index(self) -> np.ndarray:
        """Index ``r`` with ``nodes[r[j]] == -nodes[j]`` modulo 2 pi."""
        return (-np.arange(self.points)) % self.points

    def require(self, dimension: int) -> None:
        if self.points < dimension:
            raise UnderResolutionError(
                f"{self.points} grid points cannot resolve a {dimension}-dimensional space")


def phase_powers(nodes: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """``exp(i phi_j k)`` for each node (rows) and consecutive labels ``k`` (columns).

    Built per node by repeated multiplication with ``exp(+-i phi)``; the
    accumulated rounding is bounded by ``len(labels)`` machine epsilons.
    """
    nodes = np.asarray(nodes, dtype=float)
    labels = np.asarray(labels)
    kmin, kmax = int(labels[0]), int(labels[-1])
    z = np.exp(1j * nodes)[:, None]
    out = np.empty((nodes.size, labels.size), dtype=complex)
    zero = -kmin  # column of k = 0 (may be outside)
    if kmax >= 0:
        pos = np.ones((nodes.size, kmax + 1), dtype=complex)
        if kmax:
            pos[:, 1:] = np.cumprod(np.broadcast_to(z, (nodes.size, kmax)), axis=1)
        lo = max(kmin, 0)
        out[:, lo - kmin:] = pos[:, lo:]
    if kmin < 0:
        hi = min(kmax, -1)
        neg = np.cumprod(np.broadcast_to(z.conj(), (nodes.size, -kmin)), axis=1)
        # neg[:, i] = z^-(i+1); column of label k<0 is zero + k
        for k in range(kmin, hi + 1):
            out[:, zero + k] = neg[:, -k - 1]
    return out


def _wrap(phi: float) -> float:
    return (phi + math.pi) % (2 * math.pi) - math.pi


def phase_state(phi: float, basis: EnergyBasis) -> StateVector:
    """Truncated phase eigenvector ``(2 pi)^-1/2 sum_k exp(i phi k) |e_k>`` (not normalised)."""
    amps = phase_powers(np.array([_wrap(phi)]), basis.labels)[0] * _INV_SQRT_2PI
    return StateVector(basis, amps, normalized=False)


def london_state(phi: float, cutoff: int) -> np.ndarray:
    """Single-mode London state amplitudes ``<n|phi>+`` for ``n = 0 .. cutoff``."""
    return phase_powers(np.array([_wrap(phi)]), np.arange(cutoff + 1))[0] * _INV_SQRT_2PI


def resolution_of_identity_check(basis: EnergyBasis, grid: PhaseGrid) -> float:
    """Max-abs deviation of ``w * sum_j |phi_j><phi_j|`` from the identity."""
    grid.require(basis.dimension)
    u = phase_powers(grid.nodes, basis.labels) * _INV_SQRT_2PI   # u[j, k] = <e_k|phi_j>
    resolved = grid.weight * (u.T @ u.conj())
    return float(np.max(np.abs(resolved - np.eye(basis.dimension))))


# -- distributions --------------------------------------------------------------

@functools.lru_cache(maxsize=16)
def moment_weights(points: int) -> tuple[np.ndarray, np.ndarray]:
    """Weights ``(W1, W2)`` with ``sum_j Wr[j] f(phi_j) = int phi^r f(phi) dphi``.

    Exact for trigonometric polynomials ``f`` of degree below ``points / 2``.
    Derived from the Fourier integrals of ``phi`` and ``phi^2`` over [-pi, pi).
    """
    m = points
    kmax = (m - 1) // 2
    theta = 2 * np.pi * np.arange(m) / m
    k = np.arange(1, kmax + 1)
    angle = np.outer(theta, k)
    w1 = -(4 * np.pi / m) * (np.sin(angle) @ (1.0 / k))
    w2 = (2 * np.pi ** 3 / 3 + 8 * np.pi * (np.cos(angle) @ (1.0 / k ** 2))) / m
    w1.flags.writeable = False
    w2.flags.writeable = False
    return w1, w2


@dataclass(frozen=True)
class PhaseDistribution:
    """Probability density per radian sampled on a :class:`PhaseGrid`.

    For decomposed distributions ``terms`` holds the circular, anti-circular
    and interference contributions; they sum to ``density``.
    """

    grid: PhaseGrid
    density: np.ndarray
    provenance: str = "direct"
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        p = np.array(self.density, dtype=float)
        if p.shape != (self.grid.points,):
            raise DimensionError(f"density has {p.size} samples for {self.grid.points} nodes")
        if np.min(p) < -TOL_ALG:
            raise ValidationError(f"negative density {np.min(p):.3g}")
        p.flags.writeable = False
        object.__setattr__(self, "density", p)

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def normalization(self) -> float:
        return float(self.grid.weight * np.sum(self.density))

    def reflected(self) -> np.ndarray:
        """``p(-phi_j)`` on the same nodes."""
        return self.density[self.grid.reflection_index()]

    def moments(self) -> tuple[float, float]:
        return phase_moments(self)


def _check_grid(grid: PhaseGrid, dimension: int) -> None:
    grid.require(dimension)


def distribution_direct(state: CompositeState, grid: PhaseGrid) -> PhaseDistribution:
    """``p(phi_j) = <phi_j|rho|phi_j>`` as a quadratic form per node."""
    if not isinstance(state, CompositeState):
        raise UnsupportedInputError("distribution_direct expects a CompositeState")
    basis = state.basis
    _check_grid(grid, basis.dimension)
    u = phase_powers(grid.nodes, basis.labels) * _INV_SQRT_2PI
    # <phi|rho|phi> = sum_mn conj(u_m) rho_mn u_n
    p = np.real(np.einsum("jm,jm->j", u.conj(), u @ state.rho.T))
    return PhaseDistribution(grid, p, provenance="direct")


def _decomposition(field_state: FieldState, pol: PolarizationState, grid: PhaseGrid):
    if isinstance(field_state, CompositeState) or not isinstance(field_state, FieldState):
        raise UnsupportedInputError(
            "the three-term decomposition needs a product state (FieldState, PolarizationState);"
            " use distribution_direct for general composite states")
    _check_grid(grid, 2 * (field_state.cutoff + 1))
    rho = field_state.density()
    lon = phase_powers(grid.nodes, np.arange(field_state.cutoff + 1)) * _INV_SQRT_2PI
    P = pol.matrix
    rho_lon = lon @ rho.T                                            # (rho |phi>+)_m per node
    at_phi = np.real(np.einsum("jm,jm->j", lon.conj(), rho_lon))
    at_minus = np.real(np.einsum("jm,jm->j", lon, lon.conj() @ rho.T))
    cross = np.einsum("jm,jm->j", lon.conj(), lon.conj() @ rho.T)   # +<phi|rho|-phi>+
    prefactor = np.exp(INTERFERENCE_SIGN * 1j * grid.nodes)
    return {
        "circular": at_phi * P[0, 0].real,
        "anticircular": at_minus * P[1, 1].real,
        "interference": 2 * np.real(prefactor * cross * P[0, 1]),
    }


def interference_term(field_state: FieldState, pol: PolarizationState, grid: PhaseGrid) -> np.ndarray:
    """Signed polarization-interference contribution to the density."""
    return _decomposition(field_state, pol, grid)["interference"]


def distribution_decomposed(field_state: FieldState, pol: PolarizationState,
                            grid: PhaseGrid) -> PhaseDistribution:
    """Density of ``rho_field (x) P`` from single-mode London overlaps.

    p(phi) = p+(phi) P++  +  p+(-phi) P--  +  2 Re[exp(-i phi) +<phi|rho|-phi>+ P+-]
    """
    terms = _decomposition(field_state, pol, grid)
    p = terms["circular"] + terms["anticircular"] + terms["interference"]
    return PhaseDistribution(grid, p, provenance="decomposed", terms=terms)


def distribution_traced(state: CompositeState, grid: PhaseGrid) -> PhaseDistribution:
    """Density after discarding polarization: the reduced field, unpolarized."""
    reduced = partial_trace_polarization(state)
    embedded = tensor_embed(reduced, polarization_state("unpolarized"))
    dist = distribution_direct(embedded, grid)
    return PhaseDistribution(grid, dist.density, provenance="traced")


def resolve_interference_sign(grid: PhaseGrid | None = None) -> int:
    """Pick the interference prefactor sign that reproduces the direct route.

    Probed on a horizontally polarized single photon, whose interference term
    is ``cos(phi)`` for one sign and ``cos(3 phi)`` for the other.
    """
    from .states import fock_state

    grid = grid or PhaseGrid(64)
    field_state = fock_state(1, 2)
    pol = polarization_state("horizontal")
    direct = distribution_direct(tensor_embed(field_state, pol), grid).density
    lon = phase_powers(grid.nodes, np.arange(3)) * _INV_SQRT_2PI
    rho = field_state.density()
    cross = np.einsum("jm,jm->j", lon.conj(), lon.conj() @ rho.T)
    base = 0.5 * (np.real(np.einsum("jm,jm->j", lon.conj(), lon @ rho.T))
                  + np.real(np.einsum("jm,jm->j", lon, lon.conj() @ rho.T)))
    errors = {}
    for sign in (-1, +1):
        trial = base + 2 * np.real(np.exp(sign * 1j * grid.nodes) * cross * pol.matrix[0, 1])
        errors[sign] = float(np.max(np.abs(trial - direct)))
    return min(errors, key=errors.get)


# -- moments and uncertainty ---------------------------------------------------

def phase_moments(dist: PhaseDistribution) -> tuple[float, float]:
    """Mean and variance of the phase on the fixed window [-pi, pi).

    No circular re-centering. Uses :func:`moment_weights`, exact whenever the
    grid has at least twice as many nodes as the basis dimension.
    """
    norm = dist.normalization
    if abs(norm - 1.0) > TOL_QUAD:
        raise ValidationError(f"distribution normalisation {norm!r} differs from 1")
    w1, w2 = moment_weights(dist.grid.points)
    mean = float(w1 @ dist.density)
    second = float(w2 @ dist.density)
    return mean, second - 2 * mean * mean + mean * mean * norm


@dataclass(frozen=True)
class UncertaintyReport:
    """Energy and time spreads of a state, with the hbar/2 reference value.

    ``delta_e_delta_t`` is reported as computed; ``below_bound`` flags
    products under ``bound`` rather than treating them as errors.
    """

    mean_phase: float
    phase_variance: float
    mean_energy: float
    energy_variance: float
    delta_e: float
    delta_t: float
    delta_e_delta_t: float
    bound: float
    omega: float
    hbar: float

    @property
    def below_bound(self) -> bool:
        return self.delta_e_delta_t < self.bound

    def as_dict(self) -> dict:
        return {
            "mean_phase": self.mean_phase,
            "phase_variance": self.phase_variance,
            "mean_energy": self.mean_energy,
            "energy_variance": self.energy_variance,
            "delta_E": self.delta_e,
            "delta_T": self.delta_t,
            "delta_E_delta_T": self.delta_e_delta_t,
            "bound": self.bound,
            "below_bound": self.below_bound,
            "omega": self.omega,
            "hbar": self.hbar,
        }


def _clip_variance(v: float) -> float:
    if v < -TOL_ALG:
        raise ValidationError(f"negative variance {v!r}")
    return max(v, 0.0)


def uncertainty_report(state: CompositeState, omega: float = 1.0, hbar: float = 1.0,
                       grid: PhaseGrid | None = None) -> UncertaintyReport:
    if not omega > 0:
        raise DomainError(f"omega must be > 0, got {omega!r}")
    if grid is None:
        grid = PhaseGrid(max(DEFAULT_GRID_POINTS, 2 * state.basis.dimension))
    labels = state.basis.labels.astype(float)
    occ = np.real(np.diag(state.rho))
    mean_n = float(occ @ labels)
    var_n = float(occ @ labels ** 2) - mean_n ** 2
    energy_var = _clip_variance((hbar * omega) ** 2 * var_n)
    mean_phase, phase_var = phase_moments(distribution_direct(state, grid))
    phase_var = _clip_variance(phase_var)
    delta_e = math.sqrt(energy_var)
    delta_t = math.sqrt(phase_var) / omega
    return UncertaintyReport(
        mean_phase=mean_phase, phase_variance=phase_var,
        mean_energy=hbar * omega * (mean_n + 0.5), energy_variance=energy_var,
        delta_e=delta_e, delta_t=delta_t, delta_e_delta_t=delta_e * delta_t,
        bound=hbar / 2, omega=float(omega), hbar=float(hbar))
