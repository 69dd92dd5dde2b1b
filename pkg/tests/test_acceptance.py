"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest -v -s tests/test_acceptance.py`` to see every line.
"""

import math
import time

import numpy as np
import scipy.linalg

from aestlab import (
    EvolutionSpec,
    LeoBasis,
    Rectangular,
    Sine,
    apply_rank1_exp,
    bessel_j0_zero,
    bose_baseline,
    calibrate_j0,
    chain_hopping,
    condition_residual,
    convergence_report,
    evolve,
    find_peaks,
    frame_amplitudes,
    pq_kernel_check,
    preset,
    pst,
    read_sweep_csv,
    run,
    spectral_of,
    uniform,
)
from aestlab.control import NONE

HALF_PI = math.pi / 2.0
T_LONG = 210.0 * math.pi


def report(criterion: int, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")


def test_criterion_1_pst_mirror_baseline():
    t0 = time.perf_counter()
    worst = 0.0
    for n in (5, 10, 20, 40):
        traj = evolve(EvolutionSpec(n=n, total_time=HALF_PI, channel=pst()))
        worst = max(worst, abs(traj.fidelity[-1] - 1.0))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-6 and elapsed < 1.0
    report(1, ok, f"PST mirror |F-1| <= {worst:.2e} (tol 1e-6), {elapsed:.2f}s (< 1s)")
    assert worst <= 1e-6
    assert elapsed < 1.0


def test_criterion_2_fig1a_reproduction():
    t0 = time.perf_counter()
    fids = {}
    for rp in preset("fig1a").runs:
        fids[rp.label] = float(evolve(rp.spec).fidelity[-1])
    elapsed = time.perf_counter() - t0
    ok = all(f >= 0.99 for f in fids.values()) and elapsed < 10.0
    detail = ", ".join(f"{k}={v:.4f}" for k, v in sorted(fids.items()))
    report(2, ok, f"fig1a F(T): {detail} (all >= 0.99), {elapsed:.1f}s (< 10s)")
    for label, f in fids.items():
        assert f >= 0.99, f"{label}: F(T) = {f:.4f} < 0.99"
    assert elapsed < 10.0


def test_criterion_3_fig1b_peak_positions(tmp_path):
    t0 = time.perf_counter()
    records = {rec.label: rec for rec in run("fig1b", tmp_path)}
    elapsed = time.perf_counter() - t0

    targets = {
        "fig1b_rect": [2.0 * math.pi * m / 50.0 for m in (1, 2, 3)],
        "fig1b_sine": [bessel_j0_zero(k) * math.pi / 50.0 for k in (1, 2)],
    }
    lines = []
    worst_steps = 0.0
    for label, wanted in targets.items():
        _, values, fids = read_sweep_csv(records[label].csv_path)
        grid_step = float(values[1] - values[0])
        peaks = find_peaks(values, fids)
        assert peaks, f"{label}: no peaks detected"
        for tgt in wanted:
            nearest = min(peaks, key=lambda p: abs(p[0] - tgt))
            off = abs(nearest[0] - tgt) / grid_step
            worst_steps = max(worst_steps, off)
            lines.append(f"{label} target {tgt:.5f}: nearest peak {nearest[0]:.5f} ({off:.1f} steps)")
    ok = worst_steps <= 1.0 and elapsed < 120.0
    report(
        3,
        ok,
        f"fig1b peaks within one grid step: worst offset {worst_steps:.1f} steps, "
        f"{elapsed:.0f}s (< 120s); " + "; ".join(lines),
    )
    assert elapsed < 120.0
    assert worst_steps <= 1.0, (
        "peak positions deviate from the idealized condition values by more than one "
        "grid step:\n  " + "\n  ".join(lines)
    )


def test_criterion_4_fig2_reproduction():
    t0 = time.perf_counter()
    cal = calibrate_j0(20, T_LONG)
    fids = {}
    for rp in preset("fig2", n=20, j0_by_n={20: cal.j0}).runs:
        fids[rp.label] = float(evolve(rp.spec).fidelity[-1])
    elapsed = time.perf_counter() - t0
    ok = all(f >= 0.99 for f in fids.values()) and elapsed < 300.0
    detail = ", ".join(f"{k}={v:.4f}" for k, v in sorted(fids.items()))
    report(
        4,
        ok,
        f"fig2 (calibrated j0={cal.j0:.4f}, control-free F={cal.fidelity_at_T:.4f}): "
        f"{detail} (all >= 0.99), {elapsed:.0f}s (< 300s)",
    )
    for label, f in fids.items():
        assert f >= 0.99, f"{label}: F(T) = {f:.4f} < 0.99"
    assert elapsed < 300.0


def test_criterion_5_fig3_kick_train():
    t0 = time.perf_counter()
    fids = {}
    for rp in preset("fig3").runs:
        fids[rp.label] = float(evolve(rp.spec).fidelity[-1])
    elapsed = time.perf_counter() - t0
    ok = all(f >= 0.95 for f in fids.values()) and elapsed < 60.0
    detail = ", ".join(f"{k}={v:.4f}" for k, v in sorted(fids.items()))
    report(5, ok, f"fig3 kick train F(T): {detail} (all >= 0.95), {elapsed:.1f}s (< 60s)")
    for label, f in fids.items():
        assert f >= 0.95, f"{label}: F(T) = {f:.4f} < 0.95"
    assert elapsed < 60.0


def test_criterion_6_uncontrolled_baseline_decreases():
    peaks = {n: bose_baseline(n, 4.0 * n)[1] for n in (5, 10, 20, 40)}
    ordered = [peaks[n] for n in (5, 10, 20, 40)]
    ok = all(a > b for a, b in zip(ordered, ordered[1:]))
    detail = ", ".join(f"N={n}: {peaks[n]:.4f}" for n in (5, 10, 20, 40))
    report(6, ok, f"uncontrolled peak fidelity strictly decreases: {detail}")
    assert ok


def test_criterion_7_condition_checkers():
    tau_r = math.pi / 20.0
    rect = condition_residual(Rectangular(40.0, tau_r), tau_r)
    sine_pulse = Sine(80.0, math.pi / (bessel_j0_zero(1) * math.pi / 80.0))
    tau_s = sine_pulse.half_period
    sine = condition_residual(sine_pulse, tau_s)
    tau_off = 3.0 / 50.0
    off = condition_residual(Rectangular(50.0, tau_off), tau_off)
    zeros = [bessel_j0_zero(k) for k in (1, 2, 3)]
    zero_refs = (2.404826, 5.520078, 8.653728)
    zero_err = max(abs(z - ref) for z, ref in zip(zeros, zero_refs))
    ok = (
        abs(rect.residual) <= 1e-8 * tau_r
        and abs(sine.residual) <= 1e-6 * tau_s
        and abs(off.residual) > 0.1 * tau_off
        and zero_err <= 1e-6
    )
    report(
        7,
        ok,
        f"residuals: rect {abs(rect.residual):.1e} (<= 1e-8*tau), "
        f"sine {abs(sine.residual):.1e} (<= 1e-6*tau), "
        f"off-condition {abs(off.residual) / tau_off:.2f}*tau (> 0.1*tau); "
        f"zeros off by {zero_err:.1e} (<= 1e-6)",
    )
    assert abs(rect.residual) <= 1e-8 * tau_r
    assert abs(sine.residual) <= 1e-6 * tau_s
    assert abs(off.residual) > 0.1 * tau_off
    assert zero_err <= 1e-6


def test_criterion_8_off_condition_dynamics():
    def final_fidelity(tau):
        spec = EvolutionSpec(
            n=20,
            total_time=HALF_PI,
            channel=uniform(),
            leo_generator=pst(),
            pulse=Rectangular(40.0, tau),
        )
        return float(evolve(spec).fidelity[-1])

    f_on = final_fidelity(math.pi / 20.0)   # I*tau = 2*pi
    f_off = final_fidelity(math.pi / 40.0)  # I*tau = pi
    ok = f_on - f_off >= 0.2
    report(8, ok, f"off-condition drop: F_on={f_on:.4f}, F_off={f_off:.4f}, gap {f_on - f_off:.2f} (>= 0.2)")
    assert f_on - f_off >= 0.2


def test_criterion_9_property_suite():
    rng = np.random.default_rng(2024)
    failures = []

    # unitarity across representative controlled runs
    worst_drift = 0.0
    for rp in preset("fig3", n=20).runs + preset("fig1a", n=20).runs:
        traj = evolve(rp.spec)
        worst_drift = max(worst_drift, float(np.max(traj.norm_drift)))
    if worst_drift > 1e-8:
        failures.append(f"norm drift {worst_drift:.1e} > 1e-8")

    # rank-1 exponential vs dense matrix exponential, n <= 16
    worst_rank1 = 0.0
    for n in (3, 8, 16):
        phi = rng.normal(size=n) + 1j * rng.normal(size=n)
        phi /= np.linalg.norm(phi)
        psi = rng.normal(size=n) + 1j * rng.normal(size=n)
        psi /= np.linalg.norm(psi)
        theta = rng.uniform(-30.0, 30.0)
        dense = scipy.linalg.expm(-1j * theta * np.outer(phi, phi.conj())) @ psi
        worst_rank1 = max(worst_rank1, float(np.max(np.abs(apply_rank1_exp(psi, phi, theta) - dense))))
    if worst_rank1 > 1e-10:
        failures.append(f"rank-1 vs dense exponential {worst_rank1:.1e} > 1e-10")

    # Strang order on a smooth pulse
    order = convergence_report(
        EvolutionSpec(
            n=6,
            total_time=1.0,
            channel=uniform(),
            leo_generator=pst(),
            pulse=Sine(20.0, 8.0),
        )
    ).observed_order
    if order < 1.7:
        failures.append(f"Strang order {order:.2f} < 1.7")

    # memory-kernel residual convergence at n = 4
    b = LeoBasis(spectral_of(pst(), 4))
    h0 = chain_hopping(uniform(), 4)
    coarse = pq_kernel_check(b, h0, NONE, T=0.5, steps=1000).kernel_residual
    fine = pq_kernel_check(b, h0, NONE, T=0.5, steps=2000).kernel_residual
    if not (coarse <= 1e-3 and fine < coarse):
        failures.append(f"kernel residual not convergent: {coarse:.1e} -> {fine:.1e}")

    # completeness of moving-frame amplitudes
    basis = LeoBasis(spectral_of(pst(), 12))
    worst_sum = 0.0
    for _ in range(25):
        psi = rng.normal(size=12) + 1j * rng.normal(size=12)
        psi /= np.linalg.norm(psi)
        amps = frame_amplitudes(basis, float(rng.uniform(0, 5)), psi)
        worst_sum = max(worst_sum, abs(float(np.sum(np.abs(amps.a) ** 2)) - 1.0))
    if worst_sum > 1e-9:
        failures.append(f"amplitude completeness off by {worst_sum:.1e} > 1e-9")

    ok = not failures
    report(
        9,
        ok,
        "properties: "
        + (
            f"drift {worst_drift:.1e}, rank-1 {worst_rank1:.1e}, order {order:.2f}, "
            f"kernel {coarse:.1e}->{fine:.1e}, completeness {worst_sum:.1e}"
            if ok
            else "; ".join(failures)
        ),
    )
    assert not failures, "; ".join(failures)
