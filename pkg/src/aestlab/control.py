"""Pulse waveforms c(t), their exact integrals, and the pulse-condition checkers.

The subspace-protection condition for a periodic control is that
int_0^tau exp(-i int_0^s c) ds vanishes over one control interval tau.  For
rectangular pulses this means I*tau = 2*pi*m; for a half-period sine drive it
means J0(I*tau/pi) = 0, with J0 the zero-order Bessel function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigError, NumericError

CONDITION_TOLERANCE = 1e-6          # default |residual| <= tol * window
QUADRATURE_TARGET = 1e-9            # Richardson error target, relative to window
_GL_ORDER = 16
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GL_ORDER)


class PulseShape:
    """Base class for parametric control waveforms."""

    def amplitude(self, t):
        """c(t); accepts scalars or arrays of times >= 0."""
        raise NotImplementedError

    def phase_integral(self, t):
        """Phi(t) = int_0^t c(s) ds, in closed form (no quadrature)."""
        raise NotImplementedError

    def breakpoints(self, t0: float, t1: float) -> np.ndarray:
        """Discontinuity times of c strictly inside (t0, t1), sorted ascending."""
        raise NotImplementedError

    def nearest_family_member(self, window: float) -> float:
        """Closest member of this shape's condition family (integer m or Bessel zero)."""
        raise NotImplementedError


class NoPulse(PulseShape):
    """The control-free waveform c = 0."""

    def amplitude(self, t):
        return np.zeros_like(np.asarray(t, dtype=float)) if np.ndim(t) else 0.0

    def phase_integral(self, t):
        return np.zeros_like(np.asarray(t, dtype=float)) if np.ndim(t) else 0.0

    def breakpoints(self, t0, t1):
        return np.empty(0)

    def nearest_family_member(self, window):
        return math.nan

    def __repr__(self):
        return "NoPulse()"

    def __eq__(self, other):
        return isinstance(other, NoPulse)

    def __hash__(self):
        return hash("NoPulse")


NONE = NoPulse()


def _multiples_in(period: float, t0: float, t1: float, offset: float = 0.0) -> np.ndarray:
    """All (k + offset) * period strictly inside (t0, t1).

    The values are constructed as (k + offset) * period so that every consumer
    of a breakpoint sees the bit-identical float.
    """
    lo = int(math.floor(t0 / period)) - 1
    hi = int(math.ceil(t1 / period)) + 1
    pts = (np.arange(lo, hi + 1, dtype=float) + offset) * period
    return pts[(pts > t0) & (pts < t1)]


@dataclass(frozen=True)
class Rectangular(PulseShape):
    """Alternating +-I with half-period tau; the first half-period is +I."""

    intensity: float
    half_period: float

    def __post_init__(self):
        if self.intensity <= 0 or self.half_period <= 0:
            raise ConfigError("rectangular pulse needs intensity > 0 and half_period > 0")

    def amplitude(self, t):
        k = np.floor(np.asarray(t, dtype=float) / self.half_period)
        c = np.where(k % 2 == 0, self.intensity, -self.intensity)
        return float(c) if np.ndim(t) == 0 else c

    def phase_integral(self, t):
        tau, amp = self.half_period, self.intensity
        t = np.asarray(t, dtype=float)
        k = np.floor(t / tau)
        base = amp * tau * (k % 2)            # 0 after even count of half-periods, I*tau after odd
        sign = np.where(k % 2 == 0, 1.0, -1.0)
        phi = base + sign * amp * (t - k * tau)
        return float(phi) if phi.ndim == 0 else phi

    def breakpoints(self, t0, t1):
        return _multiples_in(self.half_period, t0, t1)

    def nearest_family_member(self, window):
        m = round(self.intensity * window / (2 * math.pi))
        return float(max(m, 1))


@dataclass(frozen=True)
class Sine(PulseShape):
    """c(t) = I sin(omega t); its natural control interval is tau = pi / omega."""

    intensity: float
    omega: float

    def __post_init__(self):
        if self.intensity <= 0 or self.omega <= 0:
            raise ConfigError("sine pulse needs intensity > 0 and omega > 0")

    @property
    def half_period(self) -> float:
        return math.pi / self.omega

    def amplitude(self, t):
        c = self.intensity * np.sin(self.omega * np.asarray(t, dtype=float))
        return float(c) if np.ndim(t) == 0 else c

    def phase_integral(self, t):
        phi = (self.intensity / self.omega) * (1.0 - np.cos(self.omega * np.asarray(t, dtype=float)))
        return float(phi) if np.ndim(t) == 0 else phi

    def breakpoints(self, t0, t1):
        return np.empty(0)

    def nearest_family_member(self, window):
        x = self.intensity * window / math.pi
        zeros = [bessel_j0_zero(k) for k in range(1, 21)]
        return min(zeros, key=lambda z: abs(z - x))


@dataclass(frozen=True)
class BangBang(PulseShape):
    """Short alternating kicks of height gain*I occupying a ``duty`` fraction of each half-period.

    Each kick has area gain*I*duty*tau (pi for the default gain=50, duty=1/50
    with I*tau = pi).  ``first_kick_positive`` selects the kick parity; the
    dynamics are insensitive to it because a kick advances the control phase
    by +-pi either way.
    """

    base_intensity: float
    half_period: float
    duty: float = 1.0 / 50.0
    gain: float = 50.0
    first_kick_positive: bool = True

    def __post_init__(self):
        if self.base_intensity <= 0 or self.half_period <= 0:
            raise ConfigError("bang-bang pulse needs base_intensity > 0 and half_period > 0")
        if not 0 < self.duty <= 1:
            raise ConfigError(f"duty must be in (0, 1], got {self.duty}")
        if self.gain < 1:
            raise ConfigError(f"gain must be >= 1, got {self.gain}")

    @property
    def kick_height(self) -> float:
        return self.gain * self.base_intensity

    @property
    def kick_area(self) -> float:
        return self.kick_height * self.duty * self.half_period

    def _sign(self, k):
        s = np.where(k % 2 == 0, 1.0, -1.0)
        return s if self.first_kick_positive else -s

    def amplitude(self, t):
        tau = self.half_period
        t = np.asarray(t, dtype=float)
        k = np.floor(t / tau)
        in_kick = (t - k * tau) < self.duty * tau
        c = np.where(in_kick, self._sign(k) * self.kick_height, 0.0)
        return float(c) if c.ndim == 0 else c

    def phase_integral(self, t):
        tau = self.half_period
        t = np.asarray(t, dtype=float)
        k = np.floor(t / tau)
        area = self.kick_area
        base = area * (k % 2) * (1.0 if self.first_kick_positive else -1.0)
        frac = np.minimum(t - k * tau, self.duty * tau)
        phi = base + self._sign(k) * self.kick_height * frac
        return float(phi) if phi.ndim == 0 else phi

    def breakpoints(self, t0, t1):
        starts = _multiples_in(self.half_period, t0, t1)
        ends = _multiples_in(self.half_period, t0, t1, offset=self.duty)
        return np.sort(np.concatenate([starts, ends]))

    def nearest_family_member(self, window):
        m = round(self.kick_area / math.pi)
        return float(max(m, 1))


@dataclass(frozen=True)
class ConditionReport:
    """Result of evaluating the subspace-protection integral over one control interval."""

    residual: complex
    satisfied: bool
    nearest_family_member: float
    tolerance: float


def _segment_bounds(pulse: PulseShape, window: float) -> np.ndarray:
    inner = pulse.breakpoints(0.0, window)
    return np.concatenate([[0.0], inner, [window]])


def _gl_integrate(pulse: PulseShape, bounds: np.ndarray, parts: int) -> complex:
    """Composite Gauss-Legendre of exp(-i Phi) with ``parts`` panels per segment."""
    total = 0.0 + 0.0j
    for a, b in zip(bounds[:-1], bounds[1:]):
        edges = np.linspace(a, b, parts + 1)
        half = (edges[1:] - edges[:-1]) / 2.0
        mid = (edges[1:] + edges[:-1]) / 2.0
        pts = mid[:, None] + half[:, None] * _GL_NODES[None, :]
        vals = np.exp(-1j * pulse.phase_integral(pts.ravel())).reshape(pts.shape)
        total += np.sum(half[:, None] * _GL_WEIGHTS[None, :] * vals)
    return complex(total)


def condition_residual(
    pulse: PulseShape,
    window: float,
    quad_points: int = 256,
    tolerance: float = CONDITION_TOLERANCE,
) -> ConditionReport:
    """Evaluate int_0^window exp(-i Phi(s)) ds by breakpoint-aligned quadrature.

    Panels of order-16 Gauss-Legendre are refined (doubled) until the
    Richardson estimate of the quadrature error drops below 1e-9 * window.
    The report is flagged satisfied when |residual| <= tolerance * window.
    """
    if window <= 0:
        raise ConfigError(f"window must be positive, got {window}")
    if quad_points < 64:
        raise ConfigError(f"quad_points must be at least 64, got {quad_points}")
    bounds = _segment_bounds(pulse, window)
    nseg = len(bounds) - 1
    parts = max(1, math.ceil(quad_points / (_GL_ORDER * nseg)))
    coarse = _gl_integrate(pulse, bounds, parts)
    for _ in range(12):
        parts *= 2
        fine = _gl_integrate(pulse, bounds, parts)
        if abs(fine - coarse) <= QUADRATURE_TARGET * window:
            residual = fine
            break
        coarse = fine
    else:
        raise NumericError(
            f"condition quadrature did not converge below {QUADRATURE_TARGET:g}*window "
            f"for {pulse!r} on [0, {window}]"
        )
    return ConditionReport(
        residual=residual,
        satisfied=abs(residual) <= tolerance * window,
        nearest_family_member=pulse.nearest_family_member(window),
        tolerance=tolerance,
    )


def rect_condition(intensity: float, half_period: float) -> tuple[bool, int]:
    """Check I*tau = 2*pi*m and return the nearest positive integer m."""
    if intensity <= 0 or half_period <= 0:
        raise ConfigError("rect_condition needs positive intensity and half_period")
    x = intensity * half_period / (2 * math.pi)
    m = max(round(x), 1)
    return (abs(x - round(x)) <= 1e-9 and round(x) >= 1, m)


_J0_SWITCH = 12.0
_MAX_ARG = 1e3


def bessel_j0(x: float) -> float:
    """Zero-order Bessel function of the first kind, |x| <= 1e3.

    Power series below |x| = 12, Hankel asymptotic expansion (truncated at its
    smallest term) beyond; both branches agree to ~1e-12 at the switch point
    and are accurate to better than 1e-10 over the whole range.
    """
    x = float(x)
    if abs(x) > _MAX_ARG:
        raise ConfigError(f"bessel_j0 argument out of range: |{x}| > {_MAX_ARG:g}")
    ax = abs(x)
    if ax < _J0_SWITCH:
        q = -0.25 * ax * ax
        term = 1.0
        total = 1.0
        for k in range(1, 200):
            term *= q / (k * k)
            total += term
            if abs(term) < 1e-18:
                break
        return total
    # Hankel expansion: sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)]
    p_sum, q_sum = 1.0, 0.0
    sign_p, sign_q = -1.0, -1.0
    a = 1.0
    prev = math.inf
    m = 0
    while True:
        m += 1
        a *= (2 * m - 1) ** 2 / (8.0 * m * ax)
        if a >= prev:
            break
        prev = a
        if m % 2 == 1:
            q_sum += sign_q * a
            sign_q = -sign_q
        else:
            p_sum += sign_p * a
            sign_p = -sign_p
        if a < 1e-18:
            break
    chi = ax - math.pi / 4
    return math.sqrt(2.0 / (math.pi * ax)) * (p_sum * math.cos(chi) - q_sum * math.sin(chi))


@lru_cache(maxsize=32)
def bessel_j0_zero(k: int) -> float:
    """k-th positive zero of J0 (1 <= k <= 20), located by bracketed bisection."""
    if not 1 <= k <= 20:
        raise ConfigError(f"zero index must be in [1, 20], got {k}")
    guess = (k - 0.25) * math.pi          # McMahon leading term
    lo, hi = guess - 0.5, guess + 0.5
    flo, fhi = bessel_j0(lo), bessel_j0(hi)
    if flo * fhi > 0:
        raise NumericError(f"bracketing failed for Bessel zero k={k}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = bessel_j0(mid)
        if fmid == 0.0 or hi - lo < 1e-15 * mid:
            lo = hi = mid
            break
        if flo * fmid < 0:
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
    root = 0.5 * (lo + hi)
    if abs(bessel_j0(root)) > 1e-10:
        raise NumericError(f"Bessel zero k={k} did not converge: |J0| = {abs(bessel_j0(root)):.2e}")
    return root


def sine_for_zero(intensity: float, k: int = 1) -> Sine:
    """Sine pulse whose control interval sits on the k-th Bessel zero.

    Picks tau = z_k * pi / I and omega = pi / tau, so that the half-period
    drive satisfies J0(I*tau/pi) = 0 exactly.
    """
    if intensity <= 0:
        raise ConfigError(f"intensity must be positive, got {intensity}")
    tau = bessel_j0_zero(k) * math.pi / intensity
    return Sine(intensity=intensity, omega=math.pi / tau)
