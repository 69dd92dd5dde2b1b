"""Almost-exact state transfer in spin chains under leakage-elimination pulse control.

Exact single-excitation simulation of a uniformly coupled XY chain with a
moving rank-1 control Hamiltonian, the pulse-condition checkers (including
the Bessel-zero family), scenario presets, sweeps, and CSV persistence.
"""

__version__ = "0.1.0"

from .control import (
    NONE,
    BangBang,
    ConditionReport,
    NoPulse,
    PulseShape,
    Rectangular,
    Sine,
    bessel_j0,
    bessel_j0_zero,
    condition_residual,
    rect_condition,
    sine_for_zero,
)
from .engine import (
    ConvergenceReport,
    DtPolicy,
    EvolutionSpec,
    Trajectory,
    bose_baseline,
    convergence_report,
    evolve,
    fidelity,
    step,
)
from .errors import (
    AestError,
    CalibrationError,
    ConfigError,
    ContractViolationError,
    CostGuardError,
    DimensionMismatchError,
    NumericError,
)
from .frame import (
    FrameAmplitudes,
    LeoBasis,
    MemoryKernelProbe,
    apply_rank1_exp,
    basis_state,
    effective_hamiltonian,
    frame_amplitudes,
    leakage,
    pq_kernel_check,
)
from .lab import (
    CalibrationResult,
    RunRecord,
    Scenario,
    ScenarioPlan,
    SweepSpec,
    calibrate_j0,
    find_peaks,
    preset,
    read_sweep_csv,
    read_trajectory_csv,
    run,
)
from .lattice import (
    CouplingKind,
    CouplingProfile,
    HoppingMatrix,
    SpectralDecomposition,
    chain_hopping,
    couplings,
    hopping_matrix,
    propagate_exact,
    pst,
    spectral,
    spectral_of,
    uniform,
    weak_ends,
)
