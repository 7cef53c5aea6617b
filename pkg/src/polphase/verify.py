"""Registry of identity checks run by ``polphase verify``.

Each check measures a max-abs defect and compares it to a fixed threshold.
The registry is fixed; every check appears exactly once in each report.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import operators as ops
from .constants import TOL_ALG, TOL_QUAD
from .hilbert import EnergyBasis, Polarization, embed_product, tensor_embed
from .phase import (INTERFERENCE_SIGN, PhaseGrid, distribution_decomposed, distribution_direct,
                    distribution_traced, phase_moments, resolution_of_identity_check,
                    resolve_interference_sign)
from .states import coherent_state, fock_state, polarization_state, thermal_state

PANEL_POLARIZATIONS = ("circular", "anticircular", "horizontal", "vertical", "unpolarized")
#: Cutoff used for the functional commutator check when the run cutoff is smaller.
FUNCTIONAL_CHECK_MIN_CUTOFF = 64
FUNCTIONAL_CHECK_WIDTH = 0.5


@dataclass
class Check:
    name: str
    relation: str
    max_defect: float
    threshold: float
    passed: bool = field(init=False)
    notes: str = ""

    def __post_init__(self):
        self.max_defect = float(self.max_defect)
        self.passed = bool(self.max_defect <= self.threshold)


@dataclass
class VerificationReport:
    config: dict
    checks: list[Check]
    conventions: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "config": self.config,
            "passed": self.passed,
            "conventions": self.conventions,
            "checks": [asdict(c) for c in self.checks],
        }

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def field_panel(cutoff: int) -> list[tuple[str, object]]:
    """Field states used by the panel checks; Fock numbers above the cutoff are skipped."""
    panel = [(f"fock_{n}", fock_state(n, cutoff)) for n in (0, 1, 5) if n <= cutoff]
    for label, alpha in (("coherent_1", 1), ("coherent_i", 1j), ("coherent_2", 2)):
        panel.append((label, coherent_state(alpha, cutoff)))
    panel.append(("thermal_1", thermal_state(1.0, cutoff)))
    return panel


def state_panel(cutoff: int):
    for fname, f in field_panel(cutoff):
        for pname in PANEL_POLARIZATIONS:
            yield f"{fname}/{pname}", f, polarization_state(pname)


def projector(basis: EnergyBasis, k: int) -> np.ndarray:
    e = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    e[basis.offset(k), basis.offset(k)] = 1
    return e


def commutator_structure(basis: EnergyBasis) -> np.ndarray:
    """Expected ``[Phi, n]``: ``-i (delta_mn - (-1)^(m-n))``."""
    k = basis.labels[:, None] - basis.labels[None, :]
    parity = np.where(k % 2 == 0, 1.0, -1.0)
    return -1j * (np.eye(basis.dimension) - parity)


def periodic_gaussian_coefficients(basis: EnergyBasis, width: float = FUNCTIONAL_CHECK_WIDTH,
                                   nodes: int = 4096) -> np.ndarray:
    """Coefficients ``u_k`` of ``u(phi) = sum_k u_k exp(-i k phi)`` for a Gaussian bump at 0."""
    grid = PhaseGrid(nodes)
    phi = grid.nodes
    u = np.exp(-phi ** 2 / (2 * width ** 2))
    return (np.exp(1j * np.outer(basis.labels, phi)) @ u) / nodes


def functional_commutator_defect(cutoff: int, width: float = FUNCTIONAL_CHECK_WIDTH) -> float:
    """``||([Phi, n] + i) u|| / ||u||`` for a smooth bump that vanishes near +-pi."""
    basis = EnergyBasis(cutoff)
    u = periodic_gaussian_coefficients(basis, width)
    c = ops.commutator(ops.build_phase_operator(basis), ops.build_number_operator(basis)).entries
    r = (c + 1j * np.eye(basis.dimension)) @ u
    return float(np.linalg.norm(r) / np.linalg.norm(u))


def run_verification(cutoff: int = 40, grid_points: int = 2048, omega: float = 1.0,
                     hbar: float = 1.0, *, corrupt_phase_sign: bool = False) -> VerificationReport:
    """Run the full check registry.

    ``corrupt_phase_sign`` flips the closed-form phase operator before it is
    compared with the quadrature reference; a negative control for tests.
    """
    basis = EnergyBasis(cutoff)
    grid = PhaseGrid(grid_points)
    N = cutoff
    eye = np.eye(basis.dimension)
    S = ops.OperatorSet.build(basis, omega, hbar)
    V, n, Phi = S.exp_phase.entries, S.number.entries, S.phase.entries
    checks: list[Check] = []

    left, right = ops.unitarity_defect(V)
    checks.append(Check("exp_phase_left_unitarity", "V^dag V - 1 = -|e_-(N+1)><e_-(N+1)|",
                        np.max(np.abs(left + projector(basis, basis.kmin))), 0.0,
                        notes="single edge projector from truncation"))
    checks.append(Check("exp_phase_right_unitarity", "V V^dag - 1 = -|e_N><e_N|",
                        np.max(np.abs(right + projector(basis, basis.kmax))), 0.0,
                        notes="single edge projector from truncation"))
    interior = ~basis.edge_mask(1)
    cvn = ops.commutator(V, n) - V
    checks.append(Check("exp_phase_number_commutator", "[V, n] = V (non-edge rows)",
                        np.max(np.abs(cvn[interior]), initial=0.0), 0.0,
                        notes=f"all rows: {np.max(np.abs(cvn)):.3g}"))
    checks.append(Check("exp_phase_block_decomposition",
                        "V = V+ x |+><+| + |0><0| x |-><+| + V+^dag x |-><-|",
                        ops.block_decomposition_check(basis), 1e-14))

    sg = S.sg_plus.entries
    sg_expected = (embed_product(np.diag([1.0] + [0.0] * N), ops._PP, basis)
                   - projector(basis, basis.kmax))
    checks.append(Check("sg_commutator", "[V+, V+^dag] = |0,+><0,+| - |N,+><N,+|",
                        np.max(np.abs(ops.commutator(sg, sg.conj().T) - sg_expected)), 0.0,
                        notes="-|N,+><N,+| is the truncation term"))

    checks.append(Check("annihilation_block_form", "V n^(1/2) = a+ x |+><+| + i a+^dag x |-><-|",
                        ops.annihilation_block_check(basis), 1e-14,
                        notes="sqrt(-1) = +i on negative labels"))
    root = ops.sqrt_number_operator(basis).entries
    checks.append(Check("sqrt_number_squared", "(n^(1/2))^2 = n",
                        np.max(np.abs(root @ root - n)), TOL_ALG))

    checks.append(Check("phase_hermitian", "Phi = Phi^dag",
                        np.max(np.abs(Phi - Phi.conj().T)), TOL_ALG))
    closed = -Phi if corrupt_phase_sign else Phi
    oracle = ops.phase_operator_quadrature(basis)
    checks.append(Check("phase_closed_form_vs_quadrature",
                        "<m|Phi|n> = cos(pi(m-n)) / (i(m-n)) = Gauss-Legendre integral",
                        np.max(np.abs(closed - oracle)), 1e-10,
                        notes="surviving convention: denominator i(m-n)"))
    checks.append(Check("phase_diagonal_zero", "<m|Phi|m> = 0",
                        np.max(np.abs(np.diag(Phi))), 1e-12))
    k = basis.labels[:, None] - basis.labels[None, :]
    off = k != 0
    checks.append(Check("phase_offdiag_modulus", "|<m|Phi|n>| = 1/|m-n|",
                        np.max(np.abs(np.abs(Phi[off]) - 1.0 / np.abs(k[off])), initial=0.0),
                        1e-12))
    lam = np.linalg.eigvalsh(Phi)
    checks.append(Check("phase_spectrum_in_window", "spec(Phi) in [-pi, pi]",
                        max(0.0, np.max(np.abs(lam)) - math.pi), TOL_ALG,
                        notes=f"max |eigenvalue| = {np.max(np.abs(lam)):.12f}"))

    cphin = ops.commutator(Phi, n)
    checks.append(Check("phase_number_commutator_structure", "[Phi, n] = -i (delta_mn - (-1)^(m-n))",
                        np.max(np.abs(cphin - commutator_structure(basis))), 1e-10,
                        notes="off-diagonal +i(-1)^(m-n) is the boundary term at phi = +-pi"))
    n_func = max(N, FUNCTIONAL_CHECK_MIN_CUTOFF)
    checks.append(Check("phase_number_commutator_functional",
                        "||([Phi, n] + i) u|| / ||u|| -> 0 for smooth u vanishing at +-pi",
                        functional_commutator_defect(n_func), 1e-3,
                        notes=f"cutoff {n_func}, Gaussian width {FUNCTIONAL_CHECK_WIDTH}"))
    cth = ops.commutator(S.time.entries, S.hamiltonian.entries)
    checks.append(Check("time_hamiltonian_commutator", "[T, H] = hbar [Phi, n]",
                        np.max(np.abs(cth - hbar * cphin)), TOL_ALG,
                        notes="functionally [T, H] -> -i hbar"))

    checks.append(Check("pvm_identity_minimal_grid", "w sum_j |phi_j><phi_j| = 1, M = dimension",
                        resolution_of_identity_check(basis, PhaseGrid(basis.dimension)), 1e-12))
    checks.append(Check("pvm_identity_run_grid", f"w sum_j |phi_j><phi_j| = 1, M = {grid_points}",
                        resolution_of_identity_check(basis, grid), 1e-12))

    route = traced = norm = moment = 0.0
    unpolarized = polarization_state("unpolarized")
    for _, f, P in state_panel(N):
        state = tensor_embed(f, P)
        direct = distribution_direct(state, grid)
        route = max(route, np.max(np.abs(distribution_decomposed(f, P, grid).density
                                         - direct.density)))
        tr = distribution_traced(state, grid).density
        traced = max(traced, np.max(np.abs(tr - distribution_decomposed(f, unpolarized, grid).density)))
        norm = max(norm, abs(direct.normalization - 1.0))
        mean, _ = phase_moments(direct)
        moment = max(moment, abs(mean - np.trace(state.rho @ Phi).real))
    resolved = resolve_interference_sign()
    checks.append(Check("route_equivalence_panel", "decomposed = direct, node-wise", route, 1e-12,
                        notes=f"interference prefactor exp({'-' if INTERFERENCE_SIGN < 0 else '+'}i phi)"))
    checks.append(Check("traced_distribution_identity", "traced = unpolarized, node-wise",
                        traced, 1e-12))
    checks.append(Check("distribution_normalization", "w sum_j p(phi_j) = 1", norm, TOL_QUAD))
    checks.append(Check("moment_cross_check", "mean phase = tr(rho Phi)", moment, 1e-8))

    uniform = 0.0
    for f in [fock_state(m, N) for m in range(N + 1)] + [thermal_state(1.0, N)]:
        p = distribution_direct(tensor_embed(f, polarization_state("circular")), grid).density
        uniform = max(uniform, np.max(np.abs(p - 1 / (2 * math.pi))))
    checks.append(Check("fock_uniformity", "circular Fock-diagonal states: p = 1/(2 pi)",
                        uniform, 1e-12))
    hv = distribution_direct(tensor_embed(fock_state(0, N), polarization_state("horizontal")), grid)
    checks.append(Check("horizontal_vacuum_closed_form", "p = (1 + cos phi) / (2 pi)",
                        np.max(np.abs(hv.density - (1 + np.cos(grid.nodes)) / (2 * math.pi))),
                        1e-10))

    conventions = {
        "phase_matrix_element": "cos(pi(m-n)) / (i(m-n))",
        "phase_element_0_1": [Phi[basis.offset(0), basis.offset(min(1, N))].real,
                              Phi[basis.offset(0), basis.offset(min(1, N))].imag]
        if N >= 1 else None,
        "rejected_phase_denominator": "i(n-m)",
        "interference_prefactor": "exp(-i phi)" if INTERFERENCE_SIGN < 0 else "exp(+i phi)",
        "interference_prefactor_resolved": "exp(-i phi)" if resolved < 0 else "exp(+i phi)",
        "sqrt_branch": "sqrt(-k) = i sqrt(k)",
        "polarization_order": [p.name for p in Polarization],
    }
    config = {"cutoff": N, "grid_points": grid_points, "omega": omega, "hbar": hbar}
    return VerificationReport(config, checks, conventions)
