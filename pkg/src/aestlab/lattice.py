"""Single-excitation hopping matrices for XY spin chains and exact spectral propagation.

All energies and times are dimensionless (J = 1, hbar = 1).  Sites are labelled
1..n in documentation and output; arrays are 0-based internally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionMismatchError, NumericError

RECONSTRUCTION_TOL = 1e-10


class CouplingKind(enum.Enum):
    UNIFORM = "uniform"
    PST = "pst"
    WEAK_ENDS = "weak_ends"


@dataclass(frozen=True)
class CouplingProfile:
    """Which chain couplings to build: uniform, perfect-state-transfer, or weak ends.

    ``j`` is the base coupling; ``j0`` is the reduced end coupling and is only
    meaningful for WEAK_ENDS, where 0 < j0 < j is required.
    """

    kind: CouplingKind
    j: float = 1.0
    j0: float | None = None

    def __post_init__(self):
        if not np.isfinite(self.j) or self.j <= 0:
            raise ConfigError(f"base coupling must be positive, got {self.j}")
        if self.kind is CouplingKind.WEAK_ENDS:
            if self.j0 is None or not np.isfinite(self.j0):
                raise ConfigError("weak-ends profile requires a finite j0")
            if not 0 < self.j0 < self.j:
                raise ConfigError(f"weak-ends requires 0 < j0 < j, got j0={self.j0}, j={self.j}")
        elif self.j0 is not None:
            raise ConfigError(f"j0 is only valid for weak-ends profiles, got kind={self.kind}")


def uniform(j: float = 1.0) -> CouplingProfile:
    return CouplingProfile(CouplingKind.UNIFORM, j)


def pst(j: float = 1.0) -> CouplingProfile:
    return CouplingProfile(CouplingKind.PST, j)


def weak_ends(j0: float, j: float = 1.0) -> CouplingProfile:
    return CouplingProfile(CouplingKind.WEAK_ENDS, j, j0)


def couplings(profile: CouplingProfile, n: int) -> np.ndarray:
    """Nearest-neighbour coupling strengths for a chain of ``n`` sites.

    Uniform: all equal to j.  PST: bond i (1-based) equals j*sqrt(i*(n-i)),
    which transfers site 1 to site n exactly at t = pi/(2 j).  Weak ends: the
    two end bonds equal j0, interior bonds equal j.
    """
    if n < 2:
        raise ConfigError(f"chain needs at least 2 sites, got n={n}")
    if profile.kind is CouplingKind.UNIFORM:
        return np.full(n - 1, profile.j)
    if profile.kind is CouplingKind.PST:
        i = np.arange(1, n)
        return profile.j * np.sqrt(i * (n - i))
    if n < 3:
        raise ConfigError("weak-ends profile needs at least 3 sites")
    c = np.full(n - 1, profile.j)
    c[0] = profile.j0
    c[-1] = profile.j0
    return c


@dataclass(frozen=True)
class HoppingMatrix:
    """Real symmetric tridiagonal matrix with zero diagonal."""

    h: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float)
        if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] < 2:
            raise ConfigError(f"hopping matrix must be square with n >= 2, got shape {h.shape}")
        if not np.all(np.isfinite(h)):
            raise ConfigError("hopping matrix entries must be finite")
        if np.any(np.diag(h) != 0.0):
            raise ConfigError("hopping matrix must have zero diagonal")
        off = np.triu(h, 2)
        if np.any(off != 0.0) or np.any(np.tril(h, -2) != 0.0):
            raise ConfigError("hopping matrix must be tridiagonal")
        if not np.array_equal(h, h.T):
            raise ConfigError("hopping matrix must be symmetric")
        object.__setattr__(self, "h", h)

    @property
    def n(self) -> int:
        return self.h.shape[0]


def hopping_matrix(c: np.ndarray) -> HoppingMatrix:
    """Tridiagonal hopping matrix with off-diagonal entries ``c``."""
    c = np.asarray(c, dtype=float)
    if c.ndim != 1 or c.size == 0:
        raise ConfigError("coupling vector must be non-empty and one-dimensional")
    if not np.all(np.isfinite(c)):
        raise ConfigError("coupling vector entries must be finite")
    n = c.size + 1
    h = np.zeros((n, n))
    idx = np.arange(n - 1)
    h[idx, idx + 1] = c
    h[idx + 1, idx] = c
    return HoppingMatrix(h)


def chain_hopping(profile: CouplingProfile, n: int) -> HoppingMatrix:
    """Convenience: hopping matrix for a profile and chain length."""
    return hopping_matrix(couplings(profile, n))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a hopping matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=float)
        u = np.asarray(self.eigenvectors, dtype=float)
        if lam.ndim != 1 or u.shape != (lam.size, lam.size):
            raise ConfigError("eigenvalue/eigenvector shapes are inconsistent")
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "eigenvectors", u)

    @property
    def n(self) -> int:
        return self.eigenvalues.size


def spectral(h: HoppingMatrix) -> SpectralDecomposition:
    """Dense symmetric eigendecomposition, verified against the input matrix.

    The reconstruction U diag(lam) U^T and the orthonormality U^T U = I are
    both checked to 1e-10; failure raises NumericError with matrix metadata.
    """
    try:
        lam, u = np.linalg.eigh(h.h)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver failed for n={h.n} hopping matrix: {exc}") from exc
    recon = (u * lam) @ u.T
    err_recon = np.max(np.abs(recon - h.h))
    err_orth = np.max(np.abs(u.T @ u - np.eye(h.n)))
    if err_recon > RECONSTRUCTION_TOL or err_orth > RECONSTRUCTION_TOL:
        raise NumericError(
            f"spectral decomposition failed validation for n={h.n}: "
            f"reconstruction residual {err_recon:.2e}, orthonormality residual {err_orth:.2e}"
        )
    return SpectralDecomposition(lam, u)


def spectral_of(profile: CouplingProfile, n: int) -> SpectralDecomposition:
    return spectral(chain_hopping(profile, n))


def propagate_exact(s: SpectralDecomposition, t: float, v: np.ndarray) -> np.ndarray:
    """Apply exp(-i h t) to a vector through the spectral decomposition.

    Exact up to rounding for any t (positive or negative); preserves the norm
    to machine precision.
    """
    v = np.asarray(v, dtype=complex)
    if v.shape != (s.n,):
        raise DimensionMismatchError(f"state has shape {v.shape}, expected ({s.n},)")
    u = s.eigenvectors
    return u @ (np.exp(-1j * s.eigenvalues * t) * (u.T @ v))
