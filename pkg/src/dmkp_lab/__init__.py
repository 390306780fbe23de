"""Pseudo-spectral laboratory for a dissipative KP-type model family.

Core surface: periodic spectral grids and transforms, exact free
propagators, integrating-factor RK4 simulation, a Duhamel/Picard solver,
anisotropic Sobolev and dissipative Bourgain norms with estimate probes,
and the semi-analytic norm-growth experiment for the second iterate.
"""

from .cutoff import theta, theta_scaled
from .grid import (
    GridError,
    SpectralField,
    SpectralGrid,
    build_grid,
    dealias,
    forward,
    inverse,
    l2_norm,
    project_zero_x_mode,
)
from .illposed import (
    RectangleData,
    ScanConfig,
    ScanResult,
    hs_norm_exact,
    iterate_norm,
    kernel,
    phi_field,
    scan_and_fit,
    schedule_time,
    second_iterate_fft,
    second_iterate_mode,
)
from .norms import (
    NormSpec,
    SpaceTimeField,
    bourgain_norm,
    sobolev_norm,
    time_sobolev_at_mode,
)
from .picard import (
    PicardDivergenceError,
    duhamel,
    picard_solve,
)
from .probes import (
    RatioStats,
    free_window_field,
    phi_window_field,
    probe_bilinear_estimate,
    probe_linear_estimate,
    probe_retarded_estimate,
    random_band_field,
)
from .propagator import (
    SimState,
    SimulationUnstable,
    apply_semigroup,
    apply_unitary,
    nonlinear_rhs,
    simulate,
    step_ifrk4,
)
from .symbols import (
    DegenerateFrequencyError,
    ModelParams,
    dispersion,
    dissipation,
    dissipation_gap,
    lambda_symbol,
    nonlinearity_bound,
    resonance,
)
from .trajectory import Trajectory

__version__ = "0.1.0"
