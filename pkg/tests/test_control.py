import cmath
import math

import numpy as np
import pytest
import scipy.special

from aestlab import (
    NONE,
    BangBang,
    ConfigError,
    Rectangular,
    Sine,
    bessel_j0,
    bessel_j0_zero,
    condition_residual,
    rect_condition,
    sine_for_zero,
)

TAU20 = math.pi / 20.0

# frozen before the build from an independent high-precision evaluation
J0_AT_1 = 0.76519768655796655
J0_ZEROS = (2.4048255576957729, 5.5200781102863106, 8.6537279129110125)


class TestAmplitude:
    def test_rect_first_half_period_positive(self):
        p = Rectangular(40.0, TAU20)
        assert p.amplitude(0.01) == 40.0
        assert p.amplitude(TAU20 + 0.01) == -40.0

    def test_sine_starts_at_zero(self):
        assert Sine(37.0, 2.0).amplitude(0.0) == 0.0

    def test_bang_bang_kick_windows(self):
        p = BangBang(120.0, math.pi / 120.0)
        tau = p.half_period
        assert p.amplitude(tau / 200.0) == 6000.0          # inside first kick
        assert p.amplitude(tau + tau / 200.0) == -6000.0   # inside second kick
        assert p.amplitude(tau / 2.0) == 0.0               # midway between kicks

    def test_none_is_zero(self):
        assert NONE.amplitude(1.23) == 0.0

    def test_vectorized_matches_scalar(self):
        p = Rectangular(5.0, 0.3)
        ts = np.linspace(0.0, 2.0, 101)
        np.testing.assert_array_equal(p.amplitude(ts), [p.amplitude(float(t)) for t in ts])


class TestPhaseIntegral:
    def test_rect_one_half_period(self):
        assert abs(Rectangular(40.0, TAU20).phase_integral(TAU20) - 2 * math.pi) < 1e-14

    def test_sine_zero_at_origin(self):
        assert Sine(11.0, 3.0).phase_integral(0.0) == 0.0

    def test_bang_bang_half_period_area(self):
        p = BangBang(120.0, math.pi / 120.0)
        assert abs(p.phase_integral(p.half_period) - math.pi) < 1e-12

    def test_zero_energy_change_over_full_period(self):
        for p in (Rectangular(40.0, TAU20), BangBang(120.0, math.pi / 120.0)):
            assert p.phase_integral(2.0 * p.half_period) == 0.0

    @pytest.mark.parametrize(
        "pulse",
        [
            Rectangular(40.0, TAU20),
            Sine(80.0, math.pi / (J0_ZEROS[0] * math.pi / 80.0)),
            BangBang(120.0, math.pi / 120.0),
        ],
    )
    def test_derivative_matches_amplitude(self, pulse):
        rng = np.random.default_rng(3)
        h = 1e-6
        ts = rng.uniform(2 * h, 3.0, size=10_000)
        bps = pulse.breakpoints(0.0, 3.5)
        if bps.size:
            dist = np.min(np.abs(ts[:, None] - bps[None, :]), axis=1)
            ts = ts[dist > 2 * h]
        fd = (pulse.phase_integral(ts + h) - pulse.phase_integral(ts - h)) / (2 * h)
        assert np.max(np.abs(fd - pulse.amplitude(ts))) <= 1e-6 * max(
            1.0, float(np.max(np.abs(pulse.amplitude(ts))))
        )


class TestBreakpoints:
    def test_rect_window(self):
        p = Rectangular(1.0, TAU20)
        got = p.breakpoints(0.0, math.pi / 5.0)
        np.testing.assert_array_equal(got, [1 * TAU20, 2 * TAU20, 3 * TAU20])

    def test_sine_has_none(self):
        assert Sine(1.0, 5.0).breakpoints(0.0, 100.0).size == 0

    def test_bang_bang_window(self):
        tau = math.pi / 120.0
        p = BangBang(120.0, tau)
        got = p.breakpoints(0.0, math.pi / 60.0)
        expected = [(0 + p.duty) * tau, 1 * tau, (1 + p.duty) * tau]
        np.testing.assert_array_equal(got, expected)
        np.testing.assert_allclose(got[0], tau / 50.0, rtol=1e-15)


def rect_residual_closed_form(intensity: float, tau: float, window: float) -> complex:
    """Piecewise-exact integral of exp(-i Phi) for the rectangular waveform."""
    total = 0.0j
    t = 0.0
    k = 0
    phase = 0.0
    while t < window:
        seg_end = min((k + 1) * tau, window)
        c = intensity if k % 2 == 0 else -intensity
        length = seg_end - t
        total += cmath.exp(-1j * phase) * (1 - cmath.exp(-1j * c * length)) / (1j * c)
        phase += c * length
        t = seg_end
        k += 1
    return total


class TestConditionResidual:
    def test_rect_on_condition(self):
        tau = TAU20
        report = condition_residual(Rectangular(40.0, tau), tau)
        assert abs(report.residual) <= 1e-8 * tau
        assert report.satisfied
        assert report.nearest_family_member == 1.0

    def test_none_pulse_integrates_to_window(self):
        report = condition_residual(NONE, 0.7)
        assert abs(report.residual - 0.7) <= 1e-12
        assert not report.satisfied

    def test_sine_at_first_bessel_zero(self):
        # paper-rounded zero 2.404826; the residual scales like |J0'| * rounding
        intensity = 80.0
        tau = 2.404826 * math.pi / intensity
        report = condition_residual(Sine(intensity, math.pi / tau), tau)
        assert abs(report.residual) <= 1e-6 * tau

    def test_matches_rect_closed_form(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            intensity = rng.uniform(5.0, 120.0)
            tau = rng.uniform(0.02, 0.5)
            window = rng.uniform(0.3, 4.0) * tau
            got = condition_residual(Rectangular(intensity, tau), window).residual
            want = rect_residual_closed_form(intensity, tau, window)
            assert abs(got - want) <= 1e-8

    def test_quad_points_guard(self):
        with pytest.raises(ConfigError):
            condition_residual(NONE, 1.0, quad_points=32)

    def test_window_guard(self):
        with pytest.raises(ConfigError):
            condition_residual(NONE, 0.0)


class TestRectCondition:
    def test_fig1a_parameters(self):
        assert rect_condition(40.0, math.pi / 20.0) == (True, 1)

    def test_fig2_parameters(self):
        assert rect_condition(60.0, math.pi / 30.0) == (True, 1)

    def test_off_condition(self):
        assert rect_condition(50.0, 0.1) == (False, 1)


class TestBesselJ0:
    def test_at_zero(self):
        assert bessel_j0(0.0) == 1.0

    def test_near_first_zero(self):
        assert abs(bessel_j0(2.404826)) <= 1e-6

    def test_frozen_reference_value(self):
        assert abs(bessel_j0(1.0) - J0_AT_1) <= 1e-12

    def test_against_scipy_over_range(self):
        xs = np.concatenate([np.linspace(0.0, 12.0, 500), np.linspace(12.0, 1000.0, 1500)])
        err = max(abs(bessel_j0(float(x)) - scipy.special.j0(x)) for x in xs)
        assert err <= 1e-10

    def test_branch_agreement_at_switch(self):
        # the implementation switches branch at |x| = 12
        below = bessel_j0(12.0 - 1e-12)
        above = bessel_j0(12.0 + 1e-12)
        assert abs(below - above) <= 1e-10

    def test_even_function(self):
        assert bessel_j0(-3.7) == bessel_j0(3.7)

    def test_argument_guard(self):
        with pytest.raises(ConfigError):
            bessel_j0(1001.0)


class TestBesselZeros:
    @pytest.mark.parametrize("k,expected", list(enumerate(J0_ZEROS, start=1)))
    def test_first_three(self, k, expected):
        assert abs(bessel_j0_zero(k) - expected) <= 1e-6
        assert abs(bessel_j0(bessel_j0_zero(k))) <= 1e-10

    def test_interlacing_and_sign_changes(self):
        zeros = [bessel_j0_zero(k) for k in range(1, 21)]
        assert all(a < b for a, b in zip(zeros, zeros[1:]))
        for z in zeros:
            assert bessel_j0(z - 0.1) * bessel_j0(z + 0.1) < 0

    @pytest.mark.parametrize("k", [0, 21, -3])
    def test_index_guard(self, k):
        with pytest.raises(ConfigError):
            bessel_j0_zero(k)


class TestSineForZero:
    def test_fig1a_sine(self):
        p = sine_for_zero(80.0, 1)
        assert abs(p.half_period - J0_ZEROS[0] * math.pi / 80.0) <= 1e-15
        assert abs(p.omega * p.half_period - math.pi) <= 1e-12

    def test_fig2_sine(self):
        p = sine_for_zero(120.0, 1)
        assert abs(p.half_period - J0_ZEROS[0] * math.pi / 120.0) <= 1e-15

    def test_second_zero_satisfies_condition(self):
        p = sine_for_zero(50.0, 2)
        report = condition_residual(p, p.half_period)
        assert abs(report.residual) <= 1e-6 * p.half_period


class TestPulseValidation:
    @pytest.mark.parametrize(
        "ctor",
        [
            lambda: Rectangular(0.0, 1.0),
            lambda: Rectangular(1.0, -1.0),
            lambda: Sine(1.0, 0.0),
            lambda: BangBang(1.0, 1.0, duty=0.0),
            lambda: BangBang(1.0, 1.0, duty=1.5),
            lambda: BangBang(1.0, 1.0, gain=0.5),
        ],
    )
    def test_invalid_parameters(self, ctor):
        with pytest.raises(ConfigError):
            ctor()
