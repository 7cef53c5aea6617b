"""Truncated two-polarization Hilbert space and its energy-label basis.

Photon number ``n`` in polarization sigma+ or sigma- is relabelled by an
integer energy label ``k``::

    (n, +)  ->  k = n
    (n, -)  ->  k = -n - 1

With a per-polarization cutoff ``N`` the labels run over ``[-(N+1), N]`` and
are stored at array offset ``k + N + 1``, i.e. in increasing energy.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .constants import EDGE_TAIL_MAX, K_EDGE, TOL_ALG, TOL_NORM, TOL_PSD
from .errors import DimensionError, IndexRangeError, ValidationError


class Polarization(enum.IntEnum):
    """Circular polarization; the integer value is the row in 2x2 matrices."""

    PLUS = 0
    MINUS = 1


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class EnergyBasis:
    """Energy labels ``-(N+1) .. N`` for Fock cutoff ``N`` per polarization."""

    cutoff: int

    def __post_init__(self):
        if int(self.cutoff) != self.cutoff or self.cutoff < 0:
            raise IndexRangeError(f"cutoff must be a non-negative integer, got {self.cutoff!r}")
        object.__setattr__(self, "cutoff", int(self.cutoff))

    @property
    def dimension(self) -> int:
        return 2 * (self.cutoff + 1)

    @property
    def kmin(self) -> int:
        return -(self.cutoff + 1)

    @property
    def kmax(self) -> int:
        return self.cutoff

    @property
    def labels(self) -> np.ndarray:
        """Energy labels in storage order."""
        return np.arange(self.kmin, self.kmax + 1)

    def offset(self, k: int) -> int:
        """Array offset of energy label ``k``."""
        if not self.kmin <= k <= self.kmax:
            raise IndexRangeError(f"energy label {k} outside [{self.kmin}, {self.kmax}]")
        return int(k) + self.cutoff + 1

    def energy_index(self, n: int, sigma: Polarization) -> int:
        if not 0 <= n <= self.cutoff:
            raise IndexRangeError(f"Fock number {n} outside [0, {self.cutoff}]")
        return int(n) if Polarization(sigma) is Polarization.PLUS else -int(n) - 1

    def fock_label(self, k: int) -> tuple[int, Polarization]:
        if not self.kmin <= k <= self.kmax:
            raise IndexRangeError(f"energy label {k} outside [{self.kmin}, {self.kmax}]")
        if k >= 0:
            return int(k), Polarization.PLUS
        return -int(k) - 1, Polarization.MINUS

    def block_offsets(self, sigma: Polarization) -> np.ndarray:
        """Array offsets of ``(n, sigma)`` for ``n = 0 .. N``."""
        n = np.arange(self.cutoff + 1)
        if Polarization(sigma) is Polarization.PLUS:
            return n + self.cutoff + 1
        return self.cutoff - n

    def edge_mask(self, k_edge: int = K_EDGE) -> np.ndarray:
        """Boolean mask of labels within ``k_edge`` of either end of the range."""
        idx = np.arange(self.dimension)
        return (idx < k_edge) | (idx >= self.dimension - k_edge)


@dataclass(frozen=True)
class StateVector:
    """Amplitudes over an :class:`EnergyBasis`.

    Phase states are not normalisable, so they are built with
    ``normalized=False`` which skips the unit-norm check.
    """

    basis: EnergyBasis
    amplitudes: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        amps = _frozen(self.amplitudes).reshape(-1)
        if amps.shape != (self.basis.dimension,):
            raise DimensionError(
                f"expected {self.basis.dimension} amplitudes, got {amps.shape[0]}")
        if self.normalized and abs(np.linalg.norm(amps) - 1.0) > TOL_NORM:
            raise ValidationError(f"state norm {np.linalg.norm(amps)!r} differs from 1")
        object.__setattr__(self, "amplitudes", amps)

    def __getitem__(self, k: int) -> complex:
        return complex(self.amplitudes[self.basis.offset(k)])

    def tail_mass(self, k_edge: int = K_EDGE) -> float:
        return float(np.sum(np.abs(self.amplitudes[self.basis.edge_mask(k_edge)]) ** 2))

    @property
    def interior_valid(self) -> bool:
        return self.tail_mass() < EDGE_TAIL_MAX

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense complex operator on an :class:`EnergyBasis`.

    ``edge_labels`` lists the energy labels at which a truncated identity is
    known to fail (e.g. the cutoff ends for shift operators).
    """

    basis: EnergyBasis
    entries: np.ndarray
    name: str = ""
    hermitian: bool = False
    unitary_interior: bool = False
    edge_labels: tuple[int, ...] = field(default=())

    def __post_init__(self):
        m = _frozen(self.entries)
        d = self.basis.dimension
        if m.shape != (d, d):
            raise DimensionError(f"operator must be {d}x{d}, got {m.shape}")
        if self.hermitian and np.max(np.abs(m - m.conj().T), initial=0.0) > TOL_ALG:
            raise ValidationError(f"operator {self.name!r} flagged Hermitian but is not")
        object.__setattr__(self, "entries", m)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def at(self, m: int, n: int) -> complex:
        """Matrix element between energy labels ``m`` (row) and ``n`` (column)."""
        return complex(self.entries[self.basis.offset(m), self.basis.offset(n)])

    def dagger(self) -> "OperatorMatrix":
        name = f"{self.name}^dag" if self.name else ""
        return OperatorMatrix(self.basis, self.entries.conj().T, name=name,
                              hermitian=self.hermitian,
                              unitary_interior=self.unitary_interior,
                              edge_labels=self.edge_labels)

    def apply(self, state: StateVector | np.ndarray) -> np.ndarray:
        vec = state.amplitudes if isinstance(state, StateVector) else np.asarray(state)
        return self.entries @ vec

    def expectation(self, rho: np.ndarray) -> complex:
        return complex(np.trace(rho @ self.entries))

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            _same_basis(self, other)
            return OperatorMatrix(self.basis, self.entries @ other.entries)
        return self.entries @ np.asarray(other)


def _same_basis(a: OperatorMatrix, b: OperatorMatrix) -> None:
    if a.basis != b.basis or a.shape != b.shape:
        raise DimensionError(f"operators live on different bases: {a.basis} vs {b.basis}")


@dataclass(frozen=True)
class CompositeState:
    """Density matrix of field and polarization, in energy-label order."""

    basis: EnergyBasis
    rho: np.ndarray

    def __post_init__(self):
        rho = _frozen(self.rho)
        d = self.basis.dimension
        if rho.shape != (d, d):
            raise DimensionError(f"density matrix must be {d}x{d}, got {rho.shape}")
        _check_density(rho)
        object.__setattr__(self, "rho", rho)

    @classmethod
    def from_vector(cls, state: StateVector | np.ndarray,
                    basis: EnergyBasis | None = None) -> "CompositeState":
        if isinstance(state, StateVector):
            basis, vec = state.basis, state.amplitudes
        else:
            vec = np.asarray(state, dtype=complex)
            if basis is None:
                raise DimensionError("a basis is required for raw amplitude vectors")
        return cls(basis, np.outer(vec, vec.conj()))

    @classmethod
    def maximally_mixed(cls, basis: EnergyBasis) -> "CompositeState":
        return cls(basis, np.eye(basis.dimension) / basis.dimension)

    def tail_mass(self, k_edge: int = K_EDGE) -> float:
        diag = np.real(np.diag(self.rho))
        return float(np.sum(diag[self.basis.edge_mask(k_edge)]))

    @property
    def interior_valid(self) -> bool:
        return self.tail_mass() < EDGE_TAIL_MAX


def _check_density(rho: np.ndarray) -> None:
    if np.max(np.abs(rho - rho.conj().T), initial=0.0) > TOL_ALG:
        raise ValidationError("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > TOL_NORM:
        raise ValidationError(f"density matrix trace {tr.real!r} differs from 1")
    lam = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    if lam[0] < -TOL_PSD:
        raise ValidationError(f"density matrix has negative eigenvalue {lam[0]!r}")


def tensor_embed(field_state, pol, basis: EnergyBasis | None = None) -> CompositeState:
    """Product state ``rho_field (x) P`` re-indexed into the energy basis.

    Parameters
    ----------
    field_state : FieldState
        Single-polarization field state with cutoff ``N``.
    pol : PolarizationState
        2x2 density matrix in the ordered basis (sigma+, sigma-).
    basis : EnergyBasis, optional
        Target basis; its cutoff must equal the field cutoff.
    """
    if basis is None:
        basis = EnergyBasis(field_state.cutoff)
    elif basis.cutoff != field_state.cutoff:
        raise DimensionError(
            f"field cutoff {field_state.cutoff} does not match basis cutoff {basis.cutoff}")
    rho_f = field_state.density()
    P = np.asarray(pol.matrix)
    if rho_f.shape != (basis.cutoff + 1,) * 2:
        raise DimensionError("field density does not match its cutoff")
    return CompositeState(basis, embed_product(rho_f, P, basis))


def partial_trace_polarization(state: CompositeState):
    """Reduce a composite state to its field factor by summing polarization blocks."""
    from .states import FieldState

    basis = state.basis
    rho_f = np.zeros((basis.cutoff + 1,) * 2, dtype=complex)
    for s in Polarization:
        off = basis.block_offsets(s)
        rho_f += state.rho[np.ix_(off, off)]
    return FieldState.mixed(rho_f)


def embed_product(field_op: np.ndarray, pol_op: np.ndarray, basis: EnergyBasis) -> np.ndarray:
    """Matrix of ``field_op (x) pol_op`` in energy-label order.

    ``field_op`` acts on Fock labels ``0 .. N``; ``pol_op`` is 2x2 in the
    ordered basis (sigma+, sigma-).
    """
    field_op = np.asarray(field_op)
    pol_op = np.asarray(pol_op)
    if field_op.shape != (basis.cutoff + 1,) * 2 or pol_op.shape != (2, 2):
        raise DimensionError("factor shapes do not match the basis")
    out = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    offs = [basis.block_offsets(s) for s in Polarization]
    for s in Polarization:
        for t in Polarization:
            if pol_op[s, t] != 0:
                out[np.ix_(offs[s], offs[t])] += field_op * pol_op[s, t]
    return out
