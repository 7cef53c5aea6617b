"""Operators of the two-polarization phase construction.

All builders return :class:`OperatorMatrix` values on an :class:`EnergyBasis`
and are plain truncations of the infinite matrices (no cyclic wrap), so the
identities that fail do so only at the cutoff labels.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .constants import PHASE_ORACLE_NODES, TOL_ALG
from .errors import DimensionError, DomainError
from .hilbert import EnergyBasis, OperatorMatrix, Polarization, embed_product

# 2x2 polarization operators |s><t| in the ordered basis (sigma+, sigma-)
_PP = np.array([[1, 0], [0, 0]], dtype=complex)
_MM = np.array([[0, 0], [0, 1]], dtype=complex)
_MP = np.array([[0, 0], [1, 0]], dtype=complex)

#: Sign convention of the phase-operator matrix elements,
#: <m|Phi|n> = cos(pi (m-n)) / (PHASE_SIGN * i (m-n)). The Gauss-Legendre
#: reference construction fixes it to +1.
PHASE_SIGN = +1


# -- single-mode helpers ------------------------------------------------------

def single_mode_shift(cutoff: int) -> np.ndarray:
    """Truncated one-sided shift sum_k |k-1><k| on Fock labels 0..cutoff."""
    return np.eye(cutoff + 1, k=1, dtype=complex)


def single_mode_lowering(cutoff: int) -> np.ndarray:
    """Truncated lowering operator with <n-1|a|n> = sqrt(n)."""
    return np.diag(np.sqrt(np.arange(1, cutoff + 1)), k=1).astype(complex)


# -- builders -------------------------------------------------------------------

def build_number_operator(basis: EnergyBasis) -> OperatorMatrix:
    return OperatorMatrix(basis, np.diag(basis.labels.astype(complex)), name="n",
                          hermitian=True)


def build_hamiltonian(basis: EnergyBasis, omega: float = 1.0, hbar: float = 1.0) -> OperatorMatrix:
    """``hbar * omega * (n + 1/2)``."""
    if not omega > 0:
        raise DomainError(f"omega must be > 0, got {omega!r}")
    diag = hbar * omega * (basis.labels + 0.5)
    return OperatorMatrix(basis, np.diag(diag.astype(complex)), name="H", hermitian=True)


def build_exp_phase_operator(basis: EnergyBasis) -> OperatorMatrix:
    """Unit shift V = sum_m |e_m><e_{m+1}| restricted to the truncated labels."""
    return OperatorMatrix(basis, np.eye(basis.dimension, k=1, dtype=complex), name="V",
                          unitary_interior=True, edge_labels=(basis.kmin, basis.kmax))


def sg_exponential_operator(basis: EnergyBasis) -> OperatorMatrix:
    """Single-mode one-sided shift V+ acting on the sigma+ block only."""
    v = embed_product(single_mode_shift(basis.cutoff), _PP, basis)
    return OperatorMatrix(basis, v, name="V+", edge_labels=(0, basis.kmax))


def build_phase_operator(basis: EnergyBasis) -> OperatorMatrix:
    """Hermitian phase operator from its closed-form Fock matrix elements.

    Off-diagonal elements are ``(-1)^(m-n) / (i (m-n))``, diagonal zero.
    """
    k = basis.labels[:, None] - basis.labels[None, :]
    phi = np.zeros(k.shape, dtype=complex)
    off = k != 0
    phi[off] = np.where(k[off] % 2 == 0, 1.0, -1.0) / (PHASE_SIGN * 1j * k[off])
    asym = np.max(np.abs(phi - phi.conj().T), initial=0.0)
    if asym > TOL_ALG:
        warnings.warn(f"phase operator asymmetry {asym:.3g} exceeds tolerance; symmetrizing",
                      RuntimeWarning, stacklevel=2)
        phi = (phi + phi.conj().T) / 2
    return OperatorMatrix(basis, phi, name="Phi", hermitian=True)


def gauss_legendre_nodes(n_nodes: int = PHASE_ORACLE_NODES, panel: int = 16):
    """Composite Gauss-Legendre nodes and weights on [-pi, pi].

    ``n_nodes`` is rounded up to a multiple of ``panel``.
    """
    x, w = np.polynomial.legendre.leggauss(panel)
    n_panels = -(-n_nodes // panel)
    edges = np.linspace(-np.pi, np.pi, n_panels + 1)
    half = np.diff(edges)[:, None] / 2
    mid = (edges[:-1] + edges[1:])[:, None] / 2
    return (mid + half * x).ravel(), (half * w).ravel()


def phase_operator_quadrature(basis: EnergyBasis, n_nodes: int = PHASE_ORACLE_NODES) -> np.ndarray:
    """Reference phase operator: integral of phi |phi><phi| by Gauss-Legendre.

    Independent of the closed form; the integrand phi * exp(i k phi) is smooth
    on [-pi, pi] so the composite rule is accurate to rounding for the label
    differences of any desk-scale basis.
    """
    nodes, weights = gauss_legendre_nodes(n_nodes)
    # <e_k|phi_j> = exp(i phi_j k) / sqrt(2 pi)
    u = np.exp(1j * np.outer(nodes, basis.labels)) / np.sqrt(2 * np.pi)
    return u.T @ ((weights * nodes)[:, None] * u.conj())


def build_time_operator(basis: EnergyBasis, omega: float = 1.0) -> OperatorMatrix:
    if not omega > 0:
        raise DomainError(f"omega must be > 0, got {omega!r}")
    return OperatorMatrix(basis, build_phase_operator(basis).entries / omega, name="T",
                          hermitian=True)


def sqrt_number_operator(basis: EnergyBasis) -> OperatorMatrix:
    """n^(1/2) on the principal branch: sqrt(k) for k >= 0, i sqrt(|k|) for k < 0."""
    k = basis.labels
    root = np.where(k >= 0, np.sqrt(np.abs(k)) + 0j, 1j * np.sqrt(np.abs(k)))
    return OperatorMatrix(basis, np.diag(root), name="n^1/2")


def build_annihilation_operator(basis: EnergyBasis) -> OperatorMatrix:
    """Compound annihilation operator ``V @ n^(1/2)``."""
    a = build_exp_phase_operator(basis).entries @ sqrt_number_operator(basis).entries
    return OperatorMatrix(basis, a, name="a", edge_labels=(basis.kmin,))


# -- identity checks ------------------------------------------------------------

def _entries(op) -> np.ndarray:
    return op.entries if isinstance(op, OperatorMatrix) else np.asarray(op)


def commutator(a, b) -> OperatorMatrix | np.ndarray:
    """``ab - ba``. Returns an OperatorMatrix when both inputs are OperatorMatrix."""
    ea, eb = _entries(a), _entries(b)
    if ea.shape != eb.shape or ea.ndim != 2 or ea.shape[0] != ea.shape[1]:
        raise DimensionError(f"cannot commute shapes {ea.shape} and {eb.shape}")
    if isinstance(a, OperatorMatrix) and isinstance(b, OperatorMatrix):
        if a.basis != b.basis:
            raise DimensionError("operators live on different bases")
        return OperatorMatrix(a.basis, ea @ eb - eb @ ea,
                              name=f"[{a.name},{b.name}]" if a.name and b.name else "")
    return ea @ eb - eb @ ea


def unitarity_defect(v) -> tuple[np.ndarray, np.ndarray]:
    """``(V^dag V - 1, V V^dag - 1)``."""
    e = _entries(v)
    if e.ndim != 2 or e.shape[0] != e.shape[1]:
        raise DimensionError(f"unitarity needs a square matrix, got shape {e.shape}")
    one = np.eye(e.shape[0])
    return e.conj().T @ e - one, e @ e.conj().T - one


def block_decomposition_check(basis: EnergyBasis) -> float:
    """Max-abs gap between V and its single-mode block assembly.

    V = V+ (x) |+><+|  +  |0><0| (x) |-><+|  +  V+^dag (x) |-><-|
    """
    vp = single_mode_shift(basis.cutoff)
    vac = np.zeros_like(vp)
    vac[0, 0] = 1
    rhs = (embed_product(vp, _PP, basis) + embed_product(vac, _MP, basis)
           + embed_product(vp.conj().T, _MM, basis))
    return float(np.max(np.abs(rhs - build_exp_phase_operator(basis).entries)))


def annihilation_block_form(basis: EnergyBasis, minus_phase: complex = 1j) -> np.ndarray:
    """a+ (x) |+><+|  +  minus_phase * a+^dag (x) |-><-|."""
    a = single_mode_lowering(basis.cutoff)
    return embed_product(a, _PP, basis) + minus_phase * embed_product(a.conj().T, _MM, basis)


def annihilation_block_check(basis: EnergyBasis) -> float:
    """Max-abs gap between ``V n^(1/2)`` and its polarization block form."""
    diff = annihilation_block_form(basis) - build_annihilation_operator(basis).entries
    return float(np.max(np.abs(diff)))


@dataclass(frozen=True)
class OperatorSet:
    """Every operator of the construction on one basis.

    ``hamiltonian`` is in units of ``hbar * omega`` scaled by the given
    ``hbar`` and ``omega``; ``time`` is in units of ``1/omega``.
    """

    basis: EnergyBasis
    number: OperatorMatrix
    hamiltonian: OperatorMatrix
    exp_phase: OperatorMatrix
    phase: OperatorMatrix
    time: OperatorMatrix
    annihilation: OperatorMatrix
    sg_plus: OperatorMatrix
    omega: float = 1.0
    hbar: float = 1.0

    @classmethod
    def build(cls, basis: EnergyBasis, omega: float = 1.0, hbar: float = 1.0) -> "OperatorSet":
        return cls(basis,
                   number=build_number_operator(basis),
                   hamiltonian=build_hamiltonian(basis, omega, hbar),
                   exp_phase=build_exp_phase_operator(basis),
                   phase=build_phase_operator(basis),
                   time=build_time_operator(basis, omega),
                   annihilation=build_annihilation_operator(basis),
                   sg_plus=sg_exponential_operator(basis),
                   omega=omega, hbar=hbar)

    def by_name(self, name: str) -> OperatorMatrix:
        return {"n": self.number, "H": self.hamiltonian, "V": self.exp_phase,
                "Phi": self.phase, "T": self.time, "a": self.annihilation,
                "sg": self.sg_plus}[name]


OPERATOR_NAMES = ("n", "H", "V", "Phi", "T", "a", "sg")
