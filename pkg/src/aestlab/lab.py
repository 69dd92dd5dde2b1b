"""Scenario presets, parameter sweeps, coupling calibration, and result persistence.

Named scenarios resolve to concrete evolution specs, run on a process pool
(one worker state vector per run, no shared mutable state) and land as CSV
files with a JSON metadata sidecar per output.  All floats are written with
17 significant digits, so a rerun with the same configuration is
byte-identical apart from the sidecar timestamp.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from . import __version__
from .control import (
    NONE,
    BangBang,
    NoPulse,
    PulseShape,
    Rectangular,
    Sine,
    condition_residual,
    rect_condition,
    sine_for_zero,
)
from .engine import DtPolicy, EvolutionSpec, Trajectory, evolve
from .errors import CalibrationError, ConfigError
from .lattice import CouplingKind, CouplingProfile, pst, spectral_of, uniform, weak_ends

SCENARIO_NAMES = ("fig1a", "fig1b", "fig2", "fig3", "bose_baseline", "custom")
SWEEP_PARAMETERS = ("tau", "intensity", "j0", "chain_length")
REDUCTIONS = ("final_fidelity", "max_fidelity")

TRAJECTORY_HEADER = ("t", "fidelity", "leakage", "norm_drift")
SWEEP_HEADER = ("param", "value", "fidelity_at_T")

_T_HALF_PI = math.pi / 2.0
_FIG2_T = 210.0 * math.pi


@dataclass(frozen=True)
class SweepSpec:
    """A one-parameter scan reduced to a single fidelity number per point."""

    parameter: str
    start: float
    stop: float
    points: int
    reduction: str = "final_fidelity"

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ConfigError(f"unknown sweep parameter {self.parameter!r}")
        if self.reduction not in REDUCTIONS:
            raise ConfigError(f"unknown reduction {self.reduction!r}")
        if not self.start < self.stop:
            raise ConfigError(f"sweep needs start < stop, got [{self.start}, {self.stop}]")
        if self.points < 2:
            raise ConfigError(f"sweep needs at least 2 points, got {self.points}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class Scenario:
    """A named preset plus optional overrides, or a fully custom configuration."""

    name: str
    overrides: Mapping = field(default_factory=dict)
    sweep: SweepSpec | None = None

    def __post_init__(self):
        if self.name not in SCENARIO_NAMES:
            raise ConfigError(f"unknown scenario {self.name!r}; expected one of {SCENARIO_NAMES}")


@dataclass(frozen=True)
class RunPlan:
    label: str
    spec: EvolutionSpec


@dataclass(frozen=True)
class SweepPlan:
    label: str
    parameter: str
    values: np.ndarray
    specs: tuple[EvolutionSpec, ...]
    reduction: str


@dataclass(frozen=True)
class ScenarioPlan:
    name: str
    runs: tuple[RunPlan, ...]
    sweeps: tuple[SweepPlan, ...]
    metadata: Mapping


@dataclass(frozen=True)
class RunRecord:
    """Provenance for one output file: resolved inputs, version, timing, paths."""

    record_id: str
    scenario: str
    label: str
    params: Mapping
    code_version: str
    wall_time_s: float
    csv_path: str
    meta_path: str


@dataclass(frozen=True)
class CalibrationResult:
    j0: float
    fidelity_at_T: float
    grid: np.ndarray
    fidelities: np.ndarray


# ---------------------------------------------------------------------------
# serialization

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def pulse_to_dict(p: PulseShape) -> dict:
    if isinstance(p, NoPulse):
        return {"shape": "none"}
    if isinstance(p, Rectangular):
        return {"shape": "rectangular", **asdict(p)}
    if isinstance(p, Sine):
        return {"shape": "sine", **asdict(p)}
    if isinstance(p, BangBang):
        return {"shape": "bang_bang", **asdict(p)}
    raise ConfigError(f"unknown pulse shape {p!r}")


def pulse_from_dict(d: Mapping | None) -> PulseShape:
    if d is None:
        return NONE
    d = dict(d)
    shape = d.pop("shape", None)
    try:
        if shape == "none":
            return NONE
        if shape == "rectangular":
            return Rectangular(**d)
        if shape == "sine":
            return Sine(**d)
        if shape == "bang_bang":
            return BangBang(**d)
    except TypeError as exc:
        raise ConfigError(f"bad pulse config {d!r}: {exc}") from exc
    raise ConfigError(f"unknown pulse shape {shape!r}")


def profile_to_dict(p: CouplingProfile | None) -> dict | None:
    if p is None:
        return None
    d = {"kind": p.kind.value, "j": p.j}
    if p.j0 is not None:
        d["j0"] = p.j0
    return d


def profile_from_dict(d: Mapping | None) -> CouplingProfile | None:
    if d is None:
        return None
    d = dict(d)
    try:
        kind = CouplingKind(d.pop("kind"))
        return CouplingProfile(kind, **d)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad coupling profile {d!r}: {exc}") from exc


def spec_to_dict(spec: EvolutionSpec) -> dict:
    return {
        "n": spec.n,
        "total_time": spec.total_time,
        "channel": profile_to_dict(spec.channel),
        "leo_generator": profile_to_dict(spec.leo_generator),
        "pulse": pulse_to_dict(spec.pulse),
        "dt_policy": asdict(spec.dt_policy),
        "sample_stride": spec.sample_stride,
    }


def spec_from_dict(d: Mapping) -> EvolutionSpec:
    d = dict(d)
    try:
        return EvolutionSpec(
            n=int(d["n"]),
            total_time=float(d["total_time"]),
            channel=profile_from_dict(d.get("channel")) or uniform(),
            leo_generator=profile_from_dict(d.get("leo_generator")),
            pulse=pulse_from_dict(d.get("pulse")),
            dt_policy=DtPolicy(**d.get("dt_policy", {})),
            sample_stride=int(d.get("sample_stride", 1)),
        )
    except KeyError as exc:
        raise ConfigError(f"configuration is missing required field {exc}") from exc
    except TypeError as exc:
        raise ConfigError(f"bad configuration: {exc}") from exc


# ---------------------------------------------------------------------------
# presets

def precheck_pulse(pulse: PulseShape) -> None:
    """Abort loudly if a preset pulse violates its own condition family."""
    if isinstance(pulse, NoPulse):
        return
    if isinstance(pulse, Rectangular):
        ok, m = rect_condition(pulse.intensity, pulse.half_period)
        if not ok:
            raise ConfigError(
                f"rectangular pulse off condition: I*tau/(2*pi) = "
                f"{pulse.intensity * pulse.half_period / (2 * math.pi):.9g}, nearest m={m}"
            )
        return
    if isinstance(pulse, Sine):
        report = condition_residual(pulse, pulse.half_period, tolerance=1e-5)
        if not report.satisfied:
            raise ConfigError(
                f"sine pulse off condition: |residual| = {abs(report.residual):.3e} "
                f"> 1e-5 * tau; nearest zero {report.nearest_family_member:.6f}"
            )
        return
    if isinstance(pulse, BangBang):
        area = pulse.kick_area
        m = round(area / math.pi)
        if m < 1 or abs(area - m * math.pi) > 1e-9 * max(1.0, area):
            raise ConfigError(f"bang-bang kick area {area:.9g} is not a multiple of pi")
        return
    raise ConfigError(f"unknown pulse shape {pulse!r}")


def _fig_stride(total_time: float, tau: float, substeps: int, rows: int = 1600) -> int:
    approx_steps = total_time / (tau / substeps)
    return max(1, int(approx_steps // rows))


def _fig1a_runs(ns: Iterable[int]) -> list[RunPlan]:
    rect = Rectangular(intensity=40.0, half_period=math.pi / 20.0)
    sine = sine_for_zero(80.0)
    runs = []
    for n in ns:
        for tag, p in (("rect", rect), ("sine", sine)):
            runs.append(
                RunPlan(
                    label=f"fig1a_{tag}_n{n}",
                    spec=EvolutionSpec(
                        n=n,
                        total_time=_T_HALF_PI,
                        channel=uniform(),
                        leo_generator=pst(),
                        pulse=p,
                        sample_stride=1,
                    ),
                )
            )
    return runs


def _fig1b_sweeps() -> list[SweepPlan]:
    sweep = SweepSpec("tau", math.pi / 500.0, 0.6, 600, "final_fidelity")
    values = sweep.values()
    plans = []
    for tag in ("rect", "sine"):
        specs = []
        for tau in values:
            pulse: PulseShape
            if tag == "rect":
                pulse = Rectangular(intensity=50.0, half_period=float(tau))
            else:
                pulse = Sine(intensity=50.0, omega=math.pi / float(tau))
            specs.append(
                EvolutionSpec(
                    n=10,
                    total_time=_T_HALF_PI,
                    channel=uniform(),
                    leo_generator=pst(),
                    pulse=pulse,
                    sample_stride=10**9,  # endpoint only; the sweep keeps one number
                )
            )
        plans.append(
            SweepPlan(
                label=f"fig1b_{tag}",
                parameter="tau",
                values=values,
                specs=tuple(specs),
                reduction=sweep.reduction,
            )
        )
    return plans


def _fig2_runs(ns: Iterable[int], j0_by_n: Mapping[int, float]) -> list[RunPlan]:
    rect = Rectangular(intensity=60.0, half_period=math.pi / 30.0)
    sine = sine_for_zero(120.0)
    runs = []
    for n in ns:
        if n not in j0_by_n:
            raise ConfigError(f"fig2 needs a calibrated j0 for n={n}")
        gen = weak_ends(j0_by_n[n])
        for tag, p in (("rect", rect), ("sine", sine)):
            stride = _fig_stride(_FIG2_T, p.half_period, 64)
            runs.append(
                RunPlan(
                    label=f"fig2_{tag}_n{n}",
                    spec=EvolutionSpec(
                        n=n,
                        total_time=_FIG2_T,
                        channel=uniform(),
                        leo_generator=gen,
                        pulse=p,
                        sample_stride=stride,
                    ),
                )
            )
    return runs


def _fig3_runs(ns: Iterable[int]) -> list[RunPlan]:
    pulse = BangBang(base_intensity=120.0, half_period=math.pi / 120.0)
    return [
        RunPlan(
            label=f"fig3_n{n}",
            spec=EvolutionSpec(
                n=n,
                total_time=_T_HALF_PI,
                channel=uniform(),
                leo_generator=pst(),
                pulse=pulse,
                sample_stride=2,
            ),
        )
        for n in ns
    ]


def _bose_runs(ns: Iterable[int]) -> list[RunPlan]:
    return [
        RunPlan(
            label=f"bose_n{n}",
            spec=EvolutionSpec(
                n=n,
                total_time=4.0 * n,
                channel=uniform(),
                leo_generator=None,
                pulse=NONE,
                sample_stride=1,
            ),
        )
        for n in ns
    ]


def preset(
    name: str,
    n: int | None = None,
    j0_by_n: Mapping[int, float] | None = None,
) -> ScenarioPlan:
    """Resolve a named scenario into concrete run and sweep plans.

    ``n`` restricts multi-length presets to one chain length.  fig2 requires
    the calibrated end coupling per length in ``j0_by_n``; ``run`` fills it
    by calling :func:`calibrate_j0` when absent.
    """
    meta: dict = {}
    if name == "fig1a":
        ns = [n] if n else [5, 20]
        return ScenarioPlan(name, tuple(_fig1a_runs(ns)), (), meta)
    if name == "fig1b":
        if n not in (None, 10):
            raise ConfigError("fig1b is defined for n=10")
        return ScenarioPlan(name, (), tuple(_fig1b_sweeps()), meta)
    if name == "fig2":
        ns = [n] if n else [20, 30, 40]
        if j0_by_n is None:
            raise ConfigError("fig2 preset needs calibrated j0 values (see calibrate_j0)")
        meta["j0_by_n"] = {int(k): float(v) for k, v in j0_by_n.items()}
        return ScenarioPlan(name, tuple(_fig2_runs(ns, j0_by_n)), (), meta)
    if name == "fig3":
        ns = [n] if n else [10, 20, 30, 40]
        return ScenarioPlan(name, tuple(_fig3_runs(ns)), (), meta)
    if name == "bose_baseline":
        ns = [n] if n else [5, 10, 20, 40]
        return ScenarioPlan(name, tuple(_bose_runs(ns)), (), meta)
    raise ConfigError(f"no preset named {name!r} (custom scenarios need a config)")


# ---------------------------------------------------------------------------
# calibration

def _wc_transfer_fidelity(n: int, j0: float, T: float) -> float:
    s = spectral_of(weak_ends(j0), n)
    w = s.eigenvectors[0, :] * s.eigenvectors[-1, :]
    return float(abs(np.sum(w * np.exp(-1j * s.eigenvalues * T))))


def _golden_max(f, lo: float, hi: float, iters: int = 80) -> tuple[float, float]:
    inv_gr = (math.sqrt(5.0) - 1.0) / 2.0
    c1 = hi - inv_gr * (hi - lo)
    c2 = lo + inv_gr * (hi - lo)
    f1, f2 = f(c1), f(c2)
    for _ in range(iters):
        if f1 < f2:
            lo, c1, f1 = c1, c2, f2
            c2 = lo + inv_gr * (hi - lo)
            f2 = f(c2)
        else:
            hi, c2, f2 = c2, c1, f1
            c1 = hi - inv_gr * (hi - lo)
            f1 = f(c1)
    x = 0.5 * (lo + hi)
    return x, f(x)


def calibrate_j0(
    n: int,
    T: float,
    points: int = 60,
    out_dir: str | Path | None = None,
) -> CalibrationResult:
    """Find the weak-end coupling that maximizes control-free transfer at time T.

    Scans a logarithmic grid over [0.01, 0.3] (control-free propagation under
    the weak-end chain alone, which the spectral decomposition makes exact),
    then refines the best few local maxima by golden-section search.  The
    whole procedure is deterministic, hence idempotent.
    """
    if n < 4:
        raise ConfigError(f"calibration needs n >= 4, got n={n}")
    if T <= 0:
        raise ConfigError(f"calibration needs T > 0, got T={T}")
    if points < 60:
        raise ConfigError(f"calibration grid needs at least 60 points, got {points}")
    grid = np.geomspace(0.01, 0.3, points)
    fids = np.array([_wc_transfer_fidelity(n, j, T) for j in grid])
    if np.all(fids < 0.5):
        raise CalibrationError(
            f"no usable j0 for n={n}, T={T:g}: best control-free fidelity "
            f"{fids.max():.4f} < 0.5",
            sweep=(grid, fids),
        )

    i = int(np.argmax(fids))
    lo = float(grid[max(i - 1, 0)])
    hi = float(grid[min(i + 1, len(grid) - 1)])
    j0, fj0 = _golden_max(lambda j: _wc_transfer_fidelity(n, j, T), lo, hi)
    if fj0 < fids[i]:
        j0, fj0 = float(grid[i]), float(fids[i])

    result = CalibrationResult(j0=j0, fidelity_at_T=fj0, grid=grid, fidelities=fids)
    if out_dir is not None:
        path = Path(out_dir) / f"calibration_j0_n{n}.csv"
        _write_sweep_csv(path, "j0", grid, fids)
    return result


# ---------------------------------------------------------------------------
# peak detection

def find_peaks(x: np.ndarray, y: np.ndarray) -> list[tuple[float, float]]:
    """Strict 3-point local maxima of y over x, refined by parabolic interpolation.

    Plateaus resolve to their leftmost point (no refinement there); endpoints
    are never peaks.  Needs at least 3 points.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ConfigError("find_peaks needs matching one-dimensional arrays")
    if x.size < 3:
        raise ConfigError(f"find_peaks needs at least 3 points, got {x.size}")
    peaks: list[tuple[float, float]] = []
    m = x.size
    i = 1
    while i < m - 1:
        if y[i] > y[i - 1]:
            j = i
            while j + 1 < m and y[j + 1] == y[i]:
                j += 1
            if j < m - 1 and y[j + 1] < y[i]:
                if j == i:
                    coeff = np.polyfit(x[i - 1 : i + 2], y[i - 1 : i + 2], 2)
                    if coeff[0] < 0:
                        xv = float(np.clip(-coeff[1] / (2 * coeff[0]), x[i - 1], x[i + 1]))
                        peaks.append((xv, float(np.polyval(coeff, xv))))
                    else:
                        peaks.append((float(x[i]), float(y[i])))
                else:
                    peaks.append((float(x[i]), float(y[i])))  # leftmost point of the plateau
                i = j + 1
                continue
        i += 1
    return peaks


# ---------------------------------------------------------------------------
# execution and persistence

def _write_trajectory_csv(path: Path, traj: Trajectory) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(TRAJECTORY_HEADER)
        for t, f, l, d in zip(traj.times, traj.fidelity, traj.leakage, traj.norm_drift):
            w.writerow([_fmt(t), _fmt(f), _fmt(l), _fmt(d)])


def _write_sweep_csv(path: Path, param: str, values: np.ndarray, fids: np.ndarray) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SWEEP_HEADER)
        for v, f in zip(values, fids):
            w.writerow([param, _fmt(v), _fmt(f)])


def read_sweep_csv(path: str | Path) -> tuple[str, np.ndarray, np.ndarray]:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != SWEEP_HEADER:
        raise ConfigError(f"{path}: not a sweep CSV (expected header {','.join(SWEEP_HEADER)})")
    body = rows[1:]
    if not body:
        raise ConfigError(f"{path}: sweep CSV has no data rows")
    param = body[0][0]
    values = np.array([float(r[1]) for r in body])
    fids = np.array([float(r[2]) for r in body])
    return param, values, fids


def read_trajectory_csv(path: str | Path) -> dict[str, np.ndarray]:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != TRAJECTORY_HEADER:
        raise ConfigError(
            f"{path}: not a trajectory CSV (expected header {','.join(TRAJECTORY_HEADER)})"
        )
    cols = np.array([[float(v) for v in r] for r in rows[1:]])
    if cols.size == 0:
        raise ConfigError(f"{path}: trajectory CSV has no data rows")
    return {name: cols[:, k] for k, name in enumerate(TRAJECTORY_HEADER)}


def _record_id(payload: Mapping) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _make_record(
    scenario: str,
    label: str,
    params: Mapping,
    wall: float,
    csv_path: Path,
    extra: Mapping | None = None,
) -> RunRecord:
    rid = _record_id({"scenario": scenario, "label": label, "params": params})
    meta_path = csv_path.with_suffix(".meta.json")
    record = RunRecord(
        record_id=rid,
        scenario=scenario,
        label=label,
        params=params,
        code_version=__version__,
        wall_time_s=wall,
        csv_path=str(csv_path),
        meta_path=str(meta_path),
    )
    doc = {
        "record_id": rid,
        "scenario": scenario,
        "label": label,
        "params": params,
        "code_version": __version__,
        "wall_time_s": wall,
        "created_utc": datetime.now(timezone.utc).isoformat(),
    }
    if extra:
        doc.update(extra)
    meta_path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return record


def _traj_worker(args: tuple[str, EvolutionSpec]) -> tuple[str, Trajectory]:
    label, spec = args
    return label, evolve(spec)


def _sweep_worker(args: tuple[EvolutionSpec, str]) -> float:
    spec, reduction = args
    traj = evolve(spec)
    if reduction == "max_fidelity":
        return float(np.max(traj.fidelity))
    return float(traj.fidelity[-1])


def _pool_map(fn, items, workers: int | None):
    items = list(items)
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def run(
    scenario: str | Scenario,
    out_dir: str | Path,
    workers: int | None = None,
) -> list[RunRecord]:
    """Execute a scenario and persist every output under ``out_dir``.

    Named presets are resolved (calibrating fig2's end coupling on the fly,
    with the calibration sweeps stored next to the results); every preset
    pulse is checked against its condition family before any propagation
    starts.  Results are deterministic for a fixed configuration regardless
    of the worker count.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    if isinstance(scenario, str):
        scenario = Scenario(name=scenario)

    extra_meta: dict = {}
    if scenario.name == "custom":
        if not scenario.overrides:
            raise ConfigError("custom scenario requires a full configuration")
        spec = spec_from_dict(scenario.overrides)
        if scenario.sweep is not None:
            values = scenario.sweep.values()
            specs = tuple(
                _apply_sweep_value(spec, scenario.sweep.parameter, float(v)) for v in values
            )
            plan = ScenarioPlan(
                "custom",
                (),
                (SweepPlan("custom_sweep", scenario.sweep.parameter, values, specs,
                           scenario.sweep.reduction),),
                {},
            )
        else:
            plan = ScenarioPlan("custom", (RunPlan("custom", spec),), (), {})
    else:
        n_override = scenario.overrides.get("n") if scenario.overrides else None
        j0_by_n = None
        if scenario.name == "fig2":
            ns = [n_override] if n_override else [20, 30, 40]
            j0_by_n = {}
            for n in ns:
                cal = calibrate_j0(n, _FIG2_T, out_dir=out)
                j0_by_n[n] = cal.j0
                extra_meta[f"calibration_n{n}"] = {
                    "j0": cal.j0,
                    "control_free_fidelity_at_T": cal.fidelity_at_T,
                }
            if len(ns) > 1:
                shared = j0_by_n[ns[0]]
                extra_meta["shared_j0_reference"] = {
                    "j0": shared,
                    "control_free_fidelity_by_n": {
                        int(n): _wc_transfer_fidelity(n, shared, _FIG2_T) for n in ns
                    },
                }
        plan = preset(scenario.name, n=n_override, j0_by_n=j0_by_n)

    for rp in plan.runs:
        precheck_pulse(rp.spec.pulse)
    # sweep plans scan across the condition on purpose and are not prechecked

    records: list[RunRecord] = []

    if plan.runs:
        t0 = time.perf_counter()
        results = _pool_map(_traj_worker, [(rp.label, rp.spec) for rp in plan.runs], workers)
        wall_each = (time.perf_counter() - t0) / max(len(plan.runs), 1)
        for rp, (label, traj) in zip(plan.runs, results):
            csv_path = out / f"{label}.csv"
            _write_trajectory_csv(csv_path, traj)
            params = spec_to_dict(rp.spec)
            rec_extra = dict(extra_meta)
            rec_extra["final_fidelity"] = float(traj.fidelity[-1])
            records.append(
                _make_record(plan.name, label, params, wall_each, csv_path, rec_extra)
            )

    for sp in plan.sweeps:
        t0 = time.perf_counter()
        fids = np.array(
            _pool_map(_sweep_worker, [(s, sp.reduction) for s in sp.specs], workers)
        )
        wall = time.perf_counter() - t0
        csv_path = out / f"{sp.label}.csv"
        _write_sweep_csv(csv_path, sp.parameter, sp.values, fids)
        params = {
            "parameter": sp.parameter,
            "points": int(sp.values.size),
            "start": float(sp.values[0]),
            "stop": float(sp.values[-1]),
            "reduction": sp.reduction,
            "base": spec_to_dict(sp.specs[0]),
        }
        records.append(_make_record(plan.name, sp.label, params, wall, csv_path, extra_meta))

    return records


def _apply_sweep_value(base: EvolutionSpec, parameter: str, value: float) -> EvolutionSpec:
    """Rebuild a spec with one swept parameter replaced."""
    n = base.n
    gen = base.leo_generator
    pulse = base.pulse
    if parameter == "chain_length":
        n = int(round(value))
    elif parameter == "j0":
        if gen is None or gen.kind is not CouplingKind.WEAK_ENDS:
            raise ConfigError("j0 sweep needs a weak-ends generator")
        gen = weak_ends(value, gen.j)
    elif parameter == "tau":
        if isinstance(pulse, Rectangular):
            pulse = Rectangular(pulse.intensity, value)
        elif isinstance(pulse, Sine):
            pulse = Sine(pulse.intensity, math.pi / value)
        elif isinstance(pulse, BangBang):
            pulse = BangBang(pulse.base_intensity, value, pulse.duty, pulse.gain,
                             pulse.first_kick_positive)
        else:
            raise ConfigError("tau sweep needs a pulsed spec")
    elif parameter == "intensity":
        if isinstance(pulse, Rectangular):
            pulse = Rectangular(value, pulse.half_period)
        elif isinstance(pulse, Sine):
            pulse = Sine(value, pulse.omega)
        elif isinstance(pulse, BangBang):
            pulse = BangBang(value, pulse.half_period, pulse.duty, pulse.gain,
                             pulse.first_kick_positive)
        else:
            raise ConfigError("intensity sweep needs a pulsed spec")
    return EvolutionSpec(
        n=n,
        total_time=base.total_time,
        channel=base.channel,
        leo_generator=gen,
        pulse=pulse,
        dt_policy=base.dt_policy,
        sample_stride=base.sample_stride,
    )
