//! Quantum probes for the cutoff frequency of Ohmic environments.
//!
//! Single- and two-qubit probes undergo pure dephasing in a zero-temperature
//! bosonic bath with spectral density J(ω) = ω^s ω_c^{1-s} e^{-ω/ω_c}. This
//! crate evaluates the exact reduced dynamics, the quantum Fisher
//! information of every standard preparation (closed forms plus an
//! eigendecomposition oracle), the optimal interrogation times and
//! signal-to-noise coefficients G(s), R(s), and a seeded Monte Carlo check
//! of the Cramér-Rao bound for the population-measurement estimator of ω_c.

// Negated comparisons like !(x > 0.0) are used for domain checks so that NaN
// is rejected along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod estimation;
pub mod linalg;
pub mod optimize;
pub mod qfi;
pub mod quadrature;
pub mod specialfn;
pub mod spectral;
pub mod states;

pub use error::{Error, Result};
pub use estimation::{
    crb_experiment, mle_estimate, mle_from_frequency, outcome_probabilities,
    simulate_measurements, CrbSummary, EstimatorTrial, MeasurementRecord, MleOutcome,
};
pub use optimize::{
    crossover_detect, ghz_comparison, maximize_qfi, qsnr, r_closed_form_single, scan_s,
    werner_ratio_scan, Optimum, ProbeConfig, ScanRow,
};
pub use qfi::{
    fisher_population_measurement, qfi_ghz, qfi_numeric, qfi_single, qfi_small_t_series,
    qfi_two_common_bell, qfi_two_common_product, qfi_two_independent_bell,
    qfi_two_independent_product, qfi_werner, QfiEstimate, SeriesKind,
};
pub use quadrature::{gamma_numeric, QuadConfig};
pub use specialfn::gamma_euler;
pub use spectral::{
    decoherence_factor, decoherence_factor_dwc, decoherence_factor_dx, spectral_density,
    SpectralParams,
};
pub use states::{
    evolve, factor_matrix, ghz_coherence, initial_state, state_at, BellLabel, DensityMatrix,
    FactorMatrix, ProbePreparation, Scenario, Sign,
};
