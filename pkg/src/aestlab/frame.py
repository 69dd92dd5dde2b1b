"""Moving control basis, subspace amplitudes/leakage, and the memory-kernel verifier.

The control basis is the unitary image of the site basis under the generator
chain, |psi_n(t)> = exp(-i H_gen t) |n>.  A rank-1 control Hamiltonian
c(t) |psi_1(t)><psi_1(t)| added to the channel suppresses transitions out of
the tracked one-dimensional subspace when c satisfies its pulse condition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .control import PulseShape
from .errors import (
    ConfigError,
    ContractViolationError,
    CostGuardError,
    DimensionMismatchError,
    NumericError,
)
from .lattice import HoppingMatrix, SpectralDecomposition, propagate_exact

_KERNEL_MAX_N = 8
_KERNEL_MIN_STEPS = 1000


@dataclass(frozen=True)
class LeoBasis:
    """Moving basis generated by a chain Hamiltonian, tracking the sender site."""

    generator: SpectralDecomposition
    initial_index: int = 1

    def __post_init__(self):
        if self.initial_index != 1:
            raise ConfigError("the tracked basis member is always site 1 (the sender)")

    @property
    def n(self) -> int:
        return self.generator.n


def basis_state(b: LeoBasis, t: float) -> np.ndarray:
    """|psi_1(t)> = exp(-i H_gen t) e_1, a unit vector."""
    e1 = np.zeros(b.n, dtype=complex)
    e1[b.initial_index - 1] = 1.0
    return propagate_exact(b.generator, t, e1)


def apply_rank1_exp(psi: np.ndarray, phi: np.ndarray, theta: float) -> np.ndarray:
    """Apply exp(-i theta |phi><phi|) exactly: psi + (e^{-i theta} - 1) phi <phi|psi>.

    ``phi`` must be a unit vector (checked to 1e-10); the action is unitary
    for any theta, which is what makes arbitrarily strong kicks affordable.
    """
    psi = np.asarray(psi, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    if psi.shape != phi.shape:
        raise DimensionMismatchError(f"state {psi.shape} vs projector vector {phi.shape}")
    nrm = np.linalg.norm(phi)
    if abs(nrm - 1.0) > 1e-10:
        raise ContractViolationError(f"projector vector must be unit norm, got {nrm!r}")
    return psi + (np.exp(-1j * theta) - 1.0) * phi * np.vdot(phi, psi)


@dataclass(frozen=True)
class FrameAmplitudes:
    """Amplitudes a_n(t) = <psi_n(t)|psi> of a state in the moving basis."""

    t: float
    a: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=complex)
        total = float(np.sum(np.abs(a) ** 2))
        if abs(total - 1.0) > 1e-9:
            raise NumericError(f"frame amplitudes are not complete: sum |a_n|^2 = {total!r}")
        object.__setattr__(self, "a", a)


def frame_amplitudes(b: LeoBasis, t: float, psi: np.ndarray) -> FrameAmplitudes:
    """Moving-frame amplitudes via one inverse exact propagation.

    a_n = <psi_n(t)|psi> = (exp(+i H_gen t) psi)_n, so a single O(n^2)
    backward rotation yields the whole coefficient vector.
    """
    psi = np.asarray(psi, dtype=complex)
    nrm = np.linalg.norm(psi)
    if abs(nrm - 1.0) > 1e-9:
        raise ContractViolationError(f"state must be normalized to 1e-9, got norm {nrm!r}")
    return FrameAmplitudes(t=t, a=propagate_exact(b.generator, -t, psi))


def leakage(b: LeoBasis, t: float, psi: np.ndarray) -> float:
    """Population outside the tracked subspace, 1 - |a_1(t)|^2, clamped to [0, 1]."""
    amps = frame_amplitudes(b, t, psi)
    return float(min(max(1.0 - abs(amps.a[b.initial_index - 1]) ** 2, 0.0), 1.0))


def effective_hamiltonian(
    b: LeoBasis, h0: HoppingMatrix, pulse: PulseShape, t: float
) -> np.ndarray:
    """Moving-frame generator V^dag(t) (H0 - H_gen) V(t) + c(t) e1 e1^T.

    Hermitian by construction; the zero matrix when the channel equals the
    generator and the control is off.
    """
    if h0.n != b.n:
        raise DimensionMismatchError(f"channel has n={h0.n}, basis has n={b.n}")
    lam = b.generator.eigenvalues
    u = b.generator.eigenvectors
    hgen = (u * lam) @ u.T
    v = (u * np.exp(-1j * lam * t)) @ u.T
    heff = v.conj().T @ (h0.h - hgen) @ v
    heff[0, 0] += pulse.amplitude(t)
    return heff


@dataclass(frozen=True)
class MemoryKernelProbe:
    """Partition blocks, tracked amplitude, and kernel residual on a time grid.

    ``kernel_residual`` is the largest mismatch between the finite-difference
    derivative of the dephased tracked amplitude p(t) and the memory-kernel
    integral built from the (h, R, W, D) blocks.
    """

    grid: np.ndarray
    h_diag: np.ndarray
    r_rows: np.ndarray
    w_cols: np.ndarray
    d_blocks: np.ndarray
    p_series: np.ndarray
    kernel_residual: float
    fd_delta: float


def _heff_series(b, h0, pulse, ts):
    out = np.empty((len(ts), b.n, b.n), dtype=complex)
    for i, t in enumerate(ts):
        out[i] = effective_hamiltonian(b, h0, pulse, t)
    return out


def _expi_apply(hmat, dt, vec):
    w, v = np.linalg.eigh(hmat)
    return v @ (np.exp(-1j * w * dt) * (v.conj().T @ vec))


def pq_kernel_check(
    b: LeoBasis, h0: HoppingMatrix, pulse: PulseShape, T: float, steps: int
) -> MemoryKernelProbe:
    """Numerically verify the one-component memory-kernel equation for a_1.

    Partition the moving-frame generator into the tracked scalar block h, the
    coupling row/column R and W, and the complement block D.  With
    p(t) = exp(+i int_0^t h) a_1(t), the tracked amplitude obeys

        dp/dt = - int_0^t R(t) G(t,s) W(s) exp(+i int_s^t h) p(s) ds,

    where G is the time-ordered propagator of D.  The left side comes from
    centered finite differences of the exactly evolved state (micro-steps of
    size fd_delta around each stored grid state); the right side from
    stepwise time-ordered products and the trapezoid rule.  Both sides are
    O(grid^2) accurate, so the reported residual shrinks under refinement.

    Guards: n <= 8 (dense G products are cubic per cell) and steps >= 1000.
    """
    if b.n > _KERNEL_MAX_N:
        raise CostGuardError(f"kernel probe is limited to n <= {_KERNEL_MAX_N}, got n={b.n}")
    if steps < _KERNEL_MIN_STEPS:
        raise ConfigError(f"kernel probe needs steps >= {_KERNEL_MIN_STEPS}, got {steps}")
    if T <= 0:
        raise ConfigError(f"probe horizon must be positive, got T={T}")

    n = b.n
    dt = T / steps
    ts = np.arange(steps + 1) * dt
    mids = ts[:-1] + dt / 2

    grid_h = _heff_series(b, h0, pulse, ts)
    mid_h = _heff_series(b, h0, pulse, mids)

    # exact evolution of the moving-frame amplitudes (midpoint exponentials)
    a = np.zeros((steps + 1, n), dtype=complex)
    a[0, 0] = 1.0
    for k in range(steps):
        a[k + 1] = _expi_apply(mid_h[k], dt, a[k])

    h_diag = grid_h[:, 0, 0].real
    r_rows = grid_h[:, 0, 1:]
    w_cols = grid_h[:, 1:, 0]
    d_blocks = grid_h[:, 1:, 1:]

    cumh = np.concatenate([[0.0], np.cumsum((h_diag[:-1] + h_diag[1:]) / 2 * dt)])
    p = np.exp(1j * cumh) * a[:, 0]

    # stepwise time-ordered factors for the complement block
    factors = np.empty((steps, n - 1, n - 1), dtype=complex)
    for k in range(steps):
        w, v = np.linalg.eigh(mid_h[k][1:, 1:])
        factors[k] = (v * np.exp(-1j * w * dt)) @ v.conj().T

    delta = T / (50 * steps)
    bps = pulse.breakpoints(0.0, T)

    def pdot_fd(k):
        # one Richardson-checked centered difference from the stored state
        def one_sided(sign, d):
            tm = ts[k] + sign * d / 2
            hm = effective_hamiltonian(b, h0, pulse, tm)
            vec = _expi_apply(hm, sign * d, a[k])
            return np.exp(1j * (cumh[k] + sign * hm[0, 0].real * d)) * vec[0]

        val = (one_sided(+1, delta) - one_sided(-1, delta)) / (2 * delta)
        ref = (one_sided(+1, delta / 2) - one_sided(-1, delta / 2)) / delta
        if abs(val - ref) > 1e-3 * max(1.0, abs(val)):
            raise NumericError(
                f"finite-difference derivative is ill-conditioned at t={ts[k]:.6g} "
                f"(delta={delta:.3g}); use more steps"
            )
        return val

    stride = max(1, steps // 16)
    residual = 0.0
    for k in range(stride, steps + 1, stride):
        if bps.size and np.min(np.abs(bps - ts[k])) < 2 * delta:
            continue  # micro-interval would straddle a control discontinuity
        g_prod = np.eye(n - 1, dtype=complex)
        vals = np.empty(k + 1, dtype=complex)
        vals[k] = (r_rows[k] @ w_cols[k]) * p[k]
        for j in range(k - 1, -1, -1):
            g_prod = g_prod @ factors[j]
            g = r_rows[k] @ (g_prod @ w_cols[j])
            vals[j] = g * np.exp(1j * (cumh[k] - cumh[j])) * p[j]
        kernel = np.trapezoid(vals, dx=dt)
        residual = max(residual, abs(pdot_fd(k) + kernel))

    return MemoryKernelProbe(
        grid=ts,
        h_diag=h_diag,
        r_rows=r_rows,
        w_cols=w_cols,
        d_blocks=d_blocks,
        p_series=p,
        kernel_residual=float(residual),
        fd_delta=delta,
    )
