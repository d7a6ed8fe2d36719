"""SU(2) spin gauge fields for spin-orbit coupled electrons.

Exact Pauli operator algebra, real- and momentum-space gauge fields with their
non-Abelian curvatures, precession propagators along paths, semiclassical
forces and trajectories, and split-operator spinor wavepacket evolution with
an Ehrenfest consistency harness tying the classical and quantum pictures
together.
"""

__version__ = "0.1.0"

from .classical import (
    ForceBreakdown,
    ParticleState,
    TrajectorySeries,
    gradient_force,
    heisenberg_force,
    integrate_trajectory,
    karplus_velocity,
    spin_precession_rate,
    spin_transverse_force,
    velocity_operator,
)
from .config import OutputFlags, Scenario, parse_config
from .errors import SpinGaugeError
from .gauge import (
    Curvature,
    EFieldSpec,
    GaugeFieldK,
    GaugeFieldR,
    UnitSystem,
    build_gauge_k,
    build_gauge_r,
    cross_self_k,
    curl_k,
    curvature_k,
    curvature_r,
)
from .pauli import (
    IDENTITY,
    SIGMA,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    OpVec3,
    PauliOp,
    SpinState,
    bloch_vector,
    commutator,
    exp_i,
    expectation,
    mul,
    op_cross,
    op_dot,
    spinor_from_bloch,
)
from .precession import (
    PathSegment,
    Propagator,
    no_precession_limit,
    path_ordered_product,
    phase_for_segment,
    precess_bloch,
    propagator,
    pure_gauge_curvature_check,
    pure_gauge_field,
)
from .quantum import (
    EhrenfestReport,
    Grid2D,
    ObservableRecord,
    QuantumRun,
    SpinorField,
    WavepacketSpec,
    ehrenfest_series,
    init_gaussian,
    observables,
    spinhall_separation,
    split_step_evolve,
)
from .runner import run_scenario, run_sweep
from .verify import CheckResult, RunReport, run_verify
