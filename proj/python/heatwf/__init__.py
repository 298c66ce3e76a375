"""Heat-kernel time-frequency filter: waterfilling, phase-plane integrals and simulation."""

from ._core import (
    AccuracyError,
    DomainError,
    FilterParams,
    UsageError,
    capacity_integral,
    capacity_waterfill,
    closed_form_D,
    closed_form_S,
    derive_params,
    distortion_integral,
    eigenvalue,
    eigenvalues,
    estimate_wvs,
    fit_variance_law,
    gallager_lti,
    noise_floor,
    noise_profile,
    params_from_product,
    power_integral,
    power_trace,
    rate_integral,
    rd_reverse_waterfill,
    simulate_effective_noise,
    simulate_kl_source,
    simulate_matched_filter_noise,
    solve_lambda,
    solve_nu,
    source_energy,
    szego_gap,
    szego_sweep,
    weyl_symbol,
    wvs,
)

__version__ = "0.1.0"
