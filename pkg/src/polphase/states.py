"""Field and polarization states, and the declarative state-spec document."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from .constants import (DEFAULT_CUTOFF, DEFAULT_GRID_POINTS, EDGE_TAIL_MAX, K_EDGE,
                        TOL_ALG, TOL_NORM, TOL_PSD)
from .errors import DomainError, IndexRangeError, SpecParseError, ValidationError


def _readonly(a, dtype=complex) -> np.ndarray:
    a = np.array(a, dtype=dtype, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class FieldState:
    """Single-polarization field state on Fock labels ``0 .. cutoff``.

    Exactly one of ``amplitudes`` (pure) or ``rho`` (mixed) is set.
    ``truncation_loss`` is the probability weight the untruncated state puts
    above the cutoff, when it is known analytically.
    """

    cutoff: int
    amplitudes: np.ndarray | None = None
    rho: np.ndarray | None = None
    truncation_loss: float | None = None

    def __post_init__(self):
        d = self.cutoff + 1
        if (self.amplitudes is None) == (self.rho is None):
            raise ValidationError("give exactly one of amplitudes or rho")
        if self.amplitudes is not None:
            amps = _readonly(self.amplitudes).reshape(-1)
            if amps.shape != (d,):
                raise ValidationError(f"expected {d} amplitudes, got {amps.shape[0]}")
            if abs(np.linalg.norm(amps) - 1.0) > TOL_NORM:
                raise ValidationError(f"amplitude norm {np.linalg.norm(amps)!r} differs from 1")
            object.__setattr__(self, "amplitudes", amps)
        else:
            rho = _readonly(self.rho)
            if rho.shape != (d, d):
                raise ValidationError(f"density matrix must be {d}x{d}, got {rho.shape}")
            _validate_density(rho, "field density matrix")
            object.__setattr__(self, "rho", rho)

    @classmethod
    def pure(cls, amplitudes, truncation_loss: float | None = None) -> "FieldState":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        return cls(amps.size - 1, amplitudes=amps, truncation_loss=truncation_loss)

    @classmethod
    def mixed(cls, rho, truncation_loss: float | None = None) -> "FieldState":
        rho = np.asarray(rho, dtype=complex)
        return cls(rho.shape[0] - 1, rho=rho, truncation_loss=truncation_loss)

    @property
    def is_pure(self) -> bool:
        return self.amplitudes is not None

    def density(self) -> np.ndarray:
        if self.rho is not None:
            return self.rho
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def photon_distribution(self) -> np.ndarray:
        if self.amplitudes is not None:
            return np.abs(self.amplitudes) ** 2
        return np.real(np.diag(self.rho)).copy()

    @property
    def interior_valid(self) -> bool:
        """Weight on the ``K_EDGE`` highest Fock labels is negligible."""
        return float(np.sum(self.photon_distribution()[-K_EDGE:])) < EDGE_TAIL_MAX


def _validate_density(rho: np.ndarray, what: str) -> None:
    asym = np.max(np.abs(rho - rho.conj().T), initial=0.0)
    if asym > TOL_ALG:
        raise ValidationError(f"{what} is not Hermitian (max asymmetry {asym:.3g})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TOL_NORM:
        raise ValidationError(f"{what} has trace {tr!r}, expected 1")
    lam = np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0]
    if lam < -TOL_PSD:
        raise ValidationError(f"{what} is not positive semidefinite (eigenvalue {lam:.3g})")


def fock_state(n: int, cutoff: int) -> FieldState:
    if not 0 <= n <= cutoff:
        raise IndexRangeError(f"Fock number {n} outside [0, {cutoff}]")
    amps = np.zeros(cutoff + 1, dtype=complex)
    amps[n] = 1.0
    return FieldState(cutoff, amplitudes=amps, truncation_loss=0.0)


def coherent_state(alpha: complex, cutoff: int) -> FieldState:
    """Truncated coherent state, renormalised on ``0 .. cutoff``.

    Amplitudes follow the recurrence ``c[n+1] = c[n] * alpha / sqrt(n+1)`` from
    ``c[0] = exp(-|alpha|^2 / 2)``, so no factorial is ever formed. The weight
    lost above the cutoff is summed by continuing the same recurrence.
    """
    if cutoff < 0:
        raise IndexRangeError(f"cutoff must be non-negative, got {cutoff}")
    alpha = complex(alpha)
    r2 = abs(alpha) ** 2
    amps = np.empty(cutoff + 1, dtype=complex)
    c = cmath.exp(-r2 / 2)
    for n in range(cutoff + 1):
        amps[n] = c
        c = c * alpha / math.sqrt(n + 1)

    # c now holds c[cutoff + 1]; terms are decreasing once n > |alpha|^2
    loss = 0.0
    term = abs(c) ** 2
    n = cutoff + 1
    while term > 0.0:
        loss += term
        if n > r2 and term < loss * 1e-17:
            break
        n += 1
        term *= r2 / n
    kept = float(np.sum(np.abs(amps) ** 2))
    return FieldState(cutoff, amplitudes=amps / math.sqrt(kept), truncation_loss=loss)


def thermal_state(mean_photon_number: float, cutoff: int) -> FieldState:
    nbar = float(mean_photon_number)
    if not nbar >= 0:
        raise DomainError(f"mean photon number must be >= 0, got {mean_photon_number!r}")
    ratio = nbar / (1.0 + nbar)
    p = ratio ** np.arange(cutoff + 1)
    return FieldState(cutoff, rho=np.diag(p / p.sum()).astype(complex),
                      truncation_loss=ratio ** (cutoff + 1))


@dataclass(frozen=True)
class PolarizationState:
    """2x2 polarization density matrix in the ordered basis (sigma+, sigma-)."""

    matrix: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        m = _readonly(self.matrix)
        if m.shape != (2, 2):
            raise ValidationError(f"polarization matrix must be 2x2, got {m.shape}")
        _validate_density(m, "polarization matrix")
        object.__setattr__(self, "matrix", m)

    @property
    def is_diagonal(self) -> bool:
        return self.matrix[0, 1] == 0

    def swapped(self) -> "PolarizationState":
        """Exchange the roles of sigma+ and sigma-."""
        return PolarizationState(self.matrix[::-1, ::-1], name=f"swapped({self.name})")


_NAMED_POLARIZATIONS = {
    "circular": [[1, 0], [0, 0]],
    "anticircular": [[0, 0], [0, 1]],
    "horizontal": [[0.5, 0.5], [0.5, 0.5]],
    "vertical": [[0.5, -0.5], [-0.5, 0.5]],
    "unpolarized": [[0.5, 0], [0, 0.5]],
}


def polarization_state(kind: str = "circular", matrix=None) -> PolarizationState:
    """Named polarization, or ``kind="custom"`` with an explicit 2x2 ``matrix``.

    Horizontal is ``(|+> + |->)/sqrt(2)``, vertical ``(|+> - |->)/sqrt(2)``.
    """
    if kind == "custom":
        if matrix is None:
            raise ValidationError("custom polarization requires a matrix")
        return PolarizationState(np.asarray(matrix, dtype=complex), name="custom")
    try:
        return PolarizationState(np.array(_NAMED_POLARIZATIONS[kind], dtype=complex), name=kind)
    except KeyError:
        raise ValidationError(
            f"unknown polarization {kind!r}; expected one of "
            f"{sorted(_NAMED_POLARIZATIONS) + ['custom']}") from None


# -- state-spec documents ----------------------------------------------------

FIELD_TYPES = ("fock", "coherent", "thermal", "custom_amplitudes", "custom_density")
POLARIZATION_TYPES = tuple(_NAMED_POLARIZATIONS) + ("custom",)


@dataclass(frozen=True)
class GridSettings:
    cutoff: int = DEFAULT_CUTOFF
    grid_points: int = DEFAULT_GRID_POINTS
    omega: float = 1.0


def _require(doc: Mapping, key: str, path: str):
    if key not in doc:
        raise SpecParseError(f"{path}.{key}" if path else key, "missing required key")
    return doc[key]


def _number(value, path: str, *, integer=False) -> float | int:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecParseError(path, f"expected a number, got {value!r}")
    if integer:
        if int(value) != value:
            raise SpecParseError(path, f"expected an integer, got {value!r}")
        return int(value)
    if not math.isfinite(value):
        raise SpecParseError(path, f"expected a finite number, got {value!r}")
    return float(value)


def _complex_pair(value, path: str) -> complex:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SpecParseError(path, f"expected a [re, im] pair, got {value!r}")
    return complex(_number(value[0], f"{path}[0]"), _number(value[1], f"{path}[1]"))


def _check_keys(doc: Mapping, allowed: set[str], path: str) -> None:
    for key in doc:
        if key not in allowed:
            name = str(key) or '""'
            raise SpecParseError(f"{path}.{name}" if path else name, "unknown key")


_FIELD_KEYS = {
    "fock": {"type", "n"},
    "coherent": {"type", "alpha_re", "alpha_im"},
    "thermal": {"type", "mean_photon_number"},
    "custom_amplitudes": {"type", "amplitudes"},
    "custom_density": {"type", "density"},
}


def _parse_field(doc, cutoff: int) -> FieldState:
    path = "field"
    if not isinstance(doc, Mapping):
        raise SpecParseError(path, "expected a mapping")
    kind = _require(doc, "type", path)
    if kind not in FIELD_TYPES:
        raise SpecParseError(f"{path}.type", f"unknown field type {kind!r}; expected one of {list(FIELD_TYPES)}")
    _check_keys(doc, _FIELD_KEYS[kind], path)
    try:
        if kind == "fock":
            n = _number(_require(doc, "n", path), f"{path}.n", integer=True)
            if not 0 <= n <= cutoff:
                raise SpecParseError(f"{path}.n", f"Fock number must lie in [0, {cutoff}]")
            return fock_state(n, cutoff)
        if kind == "coherent":
            re = _number(doc.get("alpha_re", 0.0), f"{path}.alpha_re")
            im = _number(doc.get("alpha_im", 0.0), f"{path}.alpha_im")
            return coherent_state(complex(re, im), cutoff)
        if kind == "thermal":
            nbar = _number(_require(doc, "mean_photon_number", path), f"{path}.mean_photon_number")
            if nbar < 0:
                raise SpecParseError(f"{path}.mean_photon_number", "must be >= 0")
            return thermal_state(nbar, cutoff)
        if kind == "custom_amplitudes":
            raw = _require(doc, "amplitudes", path)
            p = f"{path}.amplitudes"
            if not isinstance(raw, list) or not raw:
                raise SpecParseError(p, "expected a non-empty list of [re, im] pairs")
            if len(raw) > cutoff + 1:
                raise SpecParseError(p, f"{len(raw)} amplitudes exceed cutoff {cutoff}")
            amps = np.zeros(cutoff + 1, dtype=complex)
            for i, v in enumerate(raw):
                amps[i] = _complex_pair(v, f"{p}[{i}]")
            norm = np.linalg.norm(amps)
            if norm == 0:
                raise SpecParseError(p, "amplitudes are all zero")
            return FieldState(cutoff, amplitudes=amps / norm)
        raw = _require(doc, "density", path)
        p = f"{path}.density"
        if not isinstance(raw, list) or not raw or len(raw) > cutoff + 1:
            raise SpecParseError(p, f"expected a square list of rows, at most {cutoff + 1} long")
        d = len(raw)
        rho = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
        for i, row in enumerate(raw):
            if not isinstance(row, list) or len(row) != d:
                raise SpecParseError(f"{p}[{i}]", f"expected a row of {d} [re, im] pairs")
            for j, v in enumerate(row):
                rho[i, j] = _complex_pair(v, f"{p}[{i}][{j}]")
        return FieldState(cutoff, rho=rho)
    except ValidationError as exc:
        raise SpecParseError(path, str(exc)) from None


def _parse_polarization(doc) -> PolarizationState:
    path = "polarization"
    if not isinstance(doc, Mapping):
        raise SpecParseError(path, "expected a mapping")
    kind = _require(doc, "type", path)
    if kind not in POLARIZATION_TYPES:
        raise SpecParseError(f"{path}.type",
                             f"unknown polarization {kind!r}; expected one of {list(POLARIZATION_TYPES)}")
    _check_keys(doc, {"type", "matrix"} if kind == "custom" else {"type"}, path)
    if kind != "custom":
        return polarization_state(kind)
    raw = _require(doc, "matrix", path)
    p = f"{path}.matrix"
    if not isinstance(raw, list) or len(raw) != 4:
        raise SpecParseError(p, "expected four [re, im] pairs in order ++, +-, -+, --")
    m = np.array([_complex_pair(v, f"{p}[{i}]") for i, v in enumerate(raw)]).reshape(2, 2)
    try:
        return polarization_state("custom", m)
    except ValidationError as exc:
        raise SpecParseError(p, str(exc)) from None


def parse_state_spec(document: Mapping[str, Any], *, cutoff: int | None = None,
                     grid_points: int | None = None, omega: float | None = None
                     ) -> tuple[FieldState, PolarizationState, GridSettings]:
    """Validate a state-spec document and build the states it describes.

    Keyword arguments, when given, override the document's top-level
    ``cutoff``, ``grid_points`` and ``omega``.

    Raises
    ------
    SpecParseError
        With ``.path`` naming the offending key.
    """
    if not isinstance(document, Mapping):
        raise SpecParseError("<root>", "expected a mapping")
    _check_keys(document, {"cutoff", "grid_points", "omega", "field", "polarization"}, "")

    if cutoff is None:
        cutoff = _number(document.get("cutoff", DEFAULT_CUTOFF), "cutoff", integer=True)
    if cutoff < 0:
        raise SpecParseError("cutoff", "must be >= 0")
    if grid_points is None:
        grid_points = _number(document.get("grid_points", DEFAULT_GRID_POINTS), "grid_points",
                              integer=True)
    if grid_points < 2 * (cutoff + 1):
        raise SpecParseError("grid_points", f"must be >= 2*(cutoff+1) = {2 * (cutoff + 1)}")
    if omega is None:
        omega = _number(document.get("omega", 1.0), "omega")
    if not omega > 0:
        raise SpecParseError("omega", "must be > 0")

    field = _parse_field(_require(document, "field", ""), cutoff)
    pol = _parse_polarization(_require(document, "polarization", ""))
    return field, pol, GridSettings(cutoff, grid_points, float(omega))
