//! Quantum Fisher information of the dephasing probes: a general
//! eigendecomposition-based evaluator used as an oracle, and the closed-form
//! expressions for every preparation/scenario pair.
//!
//! The general evaluator works from the spectral decomposition
//! ρ = Σ ρ_n |φ_n⟩⟨φ_n|. With A = V† (∂ρ) V expressed in the eigenbasis, the
//! diagonal part Σ A_nn²/ρ_n is the classical information of the populations
//! and the off-diagonal part 2 Σ_{n≠m} |A_nm|²/(ρ_n+ρ_m), equal to
//! 2 Σ (ρ_n-ρ_m)² |⟨φ_m|∂φ_n⟩|²/(ρ_n+ρ_m), is the basis-rotation
//! contribution; both are evaluated as 2|A_nm|²/(ρ_n+ρ_m) with terms skipped
//! when ρ_n+ρ_m falls below the degeneracy threshold.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix};
use crate::spectral::{decoherence_factor_dwc, gamma_of_t, SpectralParams};
use crate::states::{state_at, BellLabel, DensityMatrix, ProbePreparation, Scenario};

/// Terms with ρ_n + ρ_m below this are removable singularities and skipped.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Central-difference step for [`qfi_numeric`], balancing truncation against
/// roundoff for density-matrix entries of magnitude ≤ 1.
pub fn default_fd_step(omega_c: f64) -> f64 {
    1e-5 * omega_c.max(1.0)
}

/// Output of the numeric evaluator.
#[derive(Debug, Clone, Copy)]
pub struct QfiEstimate {
    /// The information value, in units 1/ω_c².
    pub h: f64,
    /// Number of index pairs skipped at the degeneracy threshold despite a
    /// non-negligible matrix element; nonzero values flag that zero-weight
    /// subspaces carried derivative content.
    pub skipped_terms: usize,
}

/// Quantum Fisher information of a state family ω_c ↦ ρ(ω_c) by
/// eigendecomposition and central finite differences.
pub fn qfi_numeric<F>(family: F, omega_c: f64, h_step: f64) -> Result<QfiEstimate>
where
    F: Fn(f64) -> Result<DensityMatrix>,
{
    if !(h_step > 0.0) {
        return Err(Error::Domain(format!(
            "finite-difference step must be positive, got {h_step}"
        )));
    }
    let rho = family(omega_c)?;
    let plus = family(omega_c + h_step)?;
    let minus = family(omega_c - h_step)?;
    let n = rho.dim();
    if plus.dim() != n || minus.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: plus.dim(),
        });
    }

    let mut drho = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            drho[(i, j)] = (plus.entry(i, j) - minus.entry(i, j)) / (2.0 * h_step);
        }
    }

    let eig = hermitian_eigen(rho.matrix())?;
    let a = eig.vectors.adjoint().matmul(&drho).matmul(&eig.vectors);

    let mut h = 0.0;
    let mut skipped = 0;
    for p in 0..n {
        for q in 0..n {
            let denom = eig.values[p].max(0.0) + eig.values[q].max(0.0);
            if denom < DEGENERACY_THRESHOLD {
                if a[(p, q)].norm() > 1e-10 {
                    skipped += 1;
                }
                continue;
            }
            h += 2.0 * a[(p, q)].norm_sqr() / denom;
        }
    }
    Ok(QfiEstimate { h, skipped_terms: skipped })
}

/// State family for a preparation/scenario at fixed (t, s), parametrized by
/// the cutoff frequency.
pub fn probe_family(
    prep: ProbePreparation,
    scenario: Scenario,
    t: f64,
    s: f64,
) -> impl Fn(f64) -> Result<DensityMatrix> {
    move |omega_c: f64| {
        let params = SpectralParams::new(s, omega_c)?;
        state_at(&prep, scenario, t, &params)
    }
}

/// Numeric QFI of a preparation/scenario at (t, params) with the default
/// finite-difference step.
pub fn qfi_numeric_probe(
    prep: ProbePreparation,
    scenario: Scenario,
    t: f64,
    params: &SpectralParams,
) -> Result<QfiEstimate> {
    qfi_numeric(
        probe_family(prep, scenario, t, params.s()),
        params.omega_c(),
        default_fd_step(params.omega_c()),
    )
}

/// Single-qubit QFI sin²θ (∂Γ)² / (e^{2Γ} - 1); maximal at θ = π/2.
pub fn qfi_single(t: f64, params: &SpectralParams, theta: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let g = gamma_of_t(t, params);
    let dg = decoherence_factor_dwc(t, params);
    let sin = theta.sin();
    sin * sin * dg * dg / (2.0 * g).exp_m1()
}

/// Two qubits in independent baths, product preparation: twice the
/// single-qubit information (additivity).
pub fn qfi_two_independent_product(t: f64, params: &SpectralParams) -> f64 {
    2.0 * qfi_single(t, params, std::f64::consts::FRAC_PI_2)
}

/// Two qubits in independent baths, Bell preparation:
/// 4 (∂Γ)² / (e^{4Γ} - 1).
pub fn qfi_two_independent_bell(t: f64, params: &SpectralParams) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let g = gamma_of_t(t, params);
    let dg = decoherence_factor_dwc(t, params);
    4.0 * dg * dg / (4.0 * g).exp_m1()
}

/// Two qubits in a common bath, product preparation:
/// 8 {1 + e^{4Γ} [1 + sinh(2Γ)]} (∂Γ)² / (3 e^{8Γ} - 2 e^{4Γ} - 1).
pub fn qfi_two_common_product(t: f64, params: &SpectralParams) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let g = gamma_of_t(t, params);
    let dg = decoherence_factor_dwc(t, params);
    let numerator = 8.0 * (1.0 + (4.0 * g).exp() * (1.0 + (2.0 * g).sinh())) * dg * dg;
    // 3 e^{8Γ} - 2 e^{4Γ} - 1 written cancellation-free for small Γ.
    let denominator = 3.0 * (8.0 * g).exp_m1() - 2.0 * (4.0 * g).exp_m1();
    numerator / denominator
}

/// Two qubits in a common bath, Bell preparation (the pair whose corner
/// coherences carry the ω_c dependence — see [`bell_pair_sensitivity`]):
/// 16 (∂Γ)² / (e^{8Γ} - 1).
pub fn qfi_two_common_bell(t: f64, params: &SpectralParams) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let g = gamma_of_t(t, params);
    let dg = decoherence_factor_dwc(t, params);
    16.0 * dg * dg / (8.0 * g).exp_m1()
}

/// Werner-state QFI for either bath topology.
pub fn qfi_werner(t: f64, params: &SpectralParams, p: f64, scenario: Scenario) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("Werner p must lie in [0, 1], got {p}")));
    }
    if t == 0.0 || p == 0.0 {
        return Ok(0.0);
    }
    let g = gamma_of_t(t, params);
    let dg = decoherence_factor_dwc(t, params);
    let (front, exponent) = match scenario {
        Scenario::Independent => (8.0, 4.0),
        Scenario::Common => (32.0, 8.0),
    };
    let one_p = 1.0 + p;
    // (1+p)² e^{kΓ} - 4p² = (1+p)² (e^{kΓ} - 1) + (1-p)(1+3p), both terms
    // nonnegative, so the p → 1, Γ → 0 corner stays fully accurate.
    let denominator = one_p * one_p * (exponent * g).exp_m1() + (1.0 - p) * (1.0 + 3.0 * p);
    Ok(front * p * p * one_p * dg * dg / denominator)
}

/// GHZ-state QFI: N² (∂Γ)²/(e^{2NΓ}-1) for independent baths and
/// N⁴ (∂Γ)²/(e^{2N²Γ}-1) for a common bath.
pub fn qfi_ghz(t: f64, params: &SpectralParams, n: u32, scenario: Scenario) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("GHZ size must be at least 1".into()));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let g = gamma_of_t(t, params);
    let dg = decoherence_factor_dwc(t, params);
    let nf = n as f64;
    let v = match scenario {
        Scenario::Independent => nf * nf * dg * dg / (2.0 * nf * g).exp_m1(),
        Scenario::Common => nf.powi(4) * dg * dg / (2.0 * nf * nf * g).exp_m1(),
    };
    Ok(v)
}

/// Which truncated small-time expansion to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    IndependentProduct,
    IndependentBell,
}

/// Truncated small-time expansion of the two-qubit independent-bath QFI:
///
/// ```text
/// H = 2 Γ[1+s] t² - (ω_c²/2) (k Γ[1+s]² + Γ[3+s]) t⁴,
/// ```
///
/// with k = 2 for the product preparation and k = 4 for the Bell one. The
/// quadratic terms coincide; the preparations separate at fourth order.
pub fn qfi_small_t_series(t: f64, params: &SpectralParams, which: SeriesKind) -> f64 {
    let s = params.s();
    let w = params.omega_c();
    let g1 = crate::specialfn::gamma_unchecked(1.0 + s);
    let g3 = crate::specialfn::gamma_unchecked(3.0 + s);
    let k = match which {
        SeriesKind::IndependentProduct => 2.0,
        SeriesKind::IndependentBell => 4.0,
    };
    2.0 * g1 * t * t - 0.5 * w * w * (k * g1 * g1 + g3) * t.powi(4)
}

/// Classical Fisher information of the two-outcome population measurement in
/// the eigenbasis of the evolved single-qubit probe, F = Σ (∂p)²/p with
/// p± = (1 ± e^{-Γ})/2. Coincides with the single-qubit QFI identically.
pub fn fisher_population_measurement(t: f64, params: &SpectralParams) -> f64 {
    debug_assert!(t > 0.0);
    let g = gamma_of_t(t, params);
    let dg = decoherence_factor_dwc(t, params);
    let e = (-g).exp();
    let p_plus = 0.5 * (1.0 + e);
    let p_minus = -0.5 * (-g).exp_m1();
    let dp = 0.5 * e * dg; // |∂p±| = e^{-Γ} |∂Γ| / 2
    dp * dp * (1.0 / p_plus + 1.0 / p_minus)
}

/// Numeric QFI of each Bell preparation in the common bath.
///
/// The printed common-bath map leaves the |01⟩/|10⟩ coherences invariant, so
/// ψ± span a decoherence-free subspace and carry no information about ω_c,
/// while φ± pick up the e^{-4Γ} corner decay. This reporter makes the split
/// checkable rather than assumed; the φ pair is the one matching
/// [`qfi_two_common_bell`].
pub fn bell_pair_sensitivity(
    t: f64,
    params: &SpectralParams,
) -> Result<[(BellLabel, f64); 4]> {
    let mut out = [(BellLabel::PhiPlus, 0.0); 4];
    for (slot, which) in BellLabel::ALL.iter().enumerate() {
        let est = qfi_numeric_probe(
            ProbePreparation::TwoQubitBell { which: *which },
            Scenario::Common,
            t,
            params,
        )?;
        out[slot] = (*which, est.h);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::Sign;
    use approx::assert_relative_eq;

    fn params(s: f64, omega_c: f64) -> SpectralParams {
        SpectralParams::new(s, omega_c).unwrap()
    }

    const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

    #[test]
    fn closed_form_reference_points() {
        // At t = 1, s = 1, ω_c = 1: Γ = ½ ln 2, ∂Γ = ½.
        let p = params(1.0, 1.0);
        assert_relative_eq!(qfi_single(1.0, &p, FRAC_PI_2), 0.25, max_relative = 1e-12);
        assert_eq!(qfi_single(1.0, &p, 0.0), 0.0);
        assert_relative_eq!(qfi_two_independent_product(1.0, &p), 0.5, max_relative = 1e-12);
        assert_relative_eq!(
            qfi_two_independent_bell(1.0, &p),
            1.0 / 3.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            qfi_two_common_product(1.0, &p),
            16.0 / 39.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            qfi_two_common_bell(1.0, &p),
            4.0 / 15.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            qfi_werner(1.0, &p, 0.5, Scenario::Independent).unwrap(),
            0.09375,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            qfi_ghz(1.0, &p, 3, Scenario::Independent).unwrap(),
            2.25 / 7.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn everything_vanishes_at_zero_time() {
        let p = params(0.5, 2.0);
        assert_eq!(qfi_single(0.0, &p, FRAC_PI_2), 0.0);
        assert_eq!(qfi_two_independent_product(0.0, &p), 0.0);
        assert_eq!(qfi_two_independent_bell(0.0, &p), 0.0);
        assert_eq!(qfi_two_common_product(0.0, &p), 0.0);
        assert_eq!(qfi_two_common_bell(0.0, &p), 0.0);
        assert_eq!(qfi_werner(0.0, &p, 0.7, Scenario::Common).unwrap(), 0.0);
        assert_eq!(qfi_ghz(0.0, &p, 4, Scenario::Common).unwrap(), 0.0);
        assert_eq!(
            qfi_small_t_series(0.0, &p, SeriesKind::IndependentProduct),
            0.0
        );
    }

    #[test]
    fn small_t_limit_of_single_qubit() {
        // (c t²)²/(2 c t²) behaviour: H → 0 as t → 0.
        let p = params(1.0, 1.0);
        let mut prev = f64::INFINITY;
        for &t in &[1e-2, 1e-3, 1e-4] {
            let h = qfi_single(t, &p, FRAC_PI_2);
            assert!(h > 0.0 && h < prev);
            prev = h;
        }
        assert!(prev < 1e-7);
    }

    #[test]
    fn consistency_chain() {
        let p = params(1.7, 0.8);
        for &t in &[0.4, 1.1, 2.7] {
            // Werner p = 1 is the Bell case.
            assert_relative_eq!(
                qfi_werner(t, &p, 1.0, Scenario::Independent).unwrap(),
                qfi_two_independent_bell(t, &p),
                max_relative = 1e-13
            );
            assert_relative_eq!(
                qfi_werner(t, &p, 1.0, Scenario::Common).unwrap(),
                qfi_two_common_bell(t, &p),
                max_relative = 1e-13
            );
            // GHZ N = 2 in independent baths is the Bell case; N = 1 is the
            // single qubit in either scenario.
            assert_relative_eq!(
                qfi_ghz(t, &p, 2, Scenario::Independent).unwrap(),
                qfi_two_independent_bell(t, &p),
                max_relative = 1e-13
            );
            assert_relative_eq!(
                qfi_ghz(t, &p, 1, Scenario::Independent).unwrap(),
                qfi_single(t, &p, FRAC_PI_2),
                max_relative = 1e-13
            );
            assert_relative_eq!(
                qfi_ghz(t, &p, 1, Scenario::Common).unwrap(),
                qfi_single(t, &p, FRAC_PI_2),
                max_relative = 1e-13
            );
            // Werner p = 0 carries nothing.
            assert_eq!(qfi_werner(t, &p, 0.0, Scenario::Common).unwrap(), 0.0);
        }
    }

    #[test]
    fn oracle_matches_single_qubit() {
        let p = params(1.0, 1.0);
        let est = qfi_numeric_probe(
            ProbePreparation::SingleQubit { theta: FRAC_PI_2 },
            Scenario::Independent,
            1.0,
            &p,
        )
        .unwrap();
        assert!((est.h - 0.25).abs() < 1e-5, "oracle {}", est.h);
    }

    #[test]
    fn oracle_zero_cases() {
        let p = params(1.0, 1.0);
        // Constant family at t = 0.
        let est = qfi_numeric_probe(
            ProbePreparation::TwoQubitProduct {
                signs: (Sign::Plus, Sign::Plus),
            },
            Scenario::Independent,
            0.0,
            &p,
        )
        .unwrap();
        assert!(est.h.abs() < 1e-8);
        // Maximally mixed Werner carries nothing.
        let est = qfi_numeric_probe(
            ProbePreparation::Werner {
                p: 0.0,
                which: BellLabel::PhiPlus,
            },
            Scenario::Common,
            1.0,
            &p,
        )
        .unwrap();
        assert!(est.h.abs() < 1e-12);
    }

    #[test]
    fn oracle_matches_closed_forms_sample() {
        // Small sample here; the full grid lives in the acceptance suite.
        let p = params(2.0, 0.5);
        let t = 1.0 / 0.5;
        let pairs: [(ProbePreparation, Scenario, f64); 4] = [
            (
                ProbePreparation::TwoQubitProduct {
                    signs: (Sign::Plus, Sign::Plus),
                },
                Scenario::Independent,
                qfi_two_independent_product(t, &p),
            ),
            (
                ProbePreparation::TwoQubitBell {
                    which: BellLabel::PhiPlus,
                },
                Scenario::Independent,
                qfi_two_independent_bell(t, &p),
            ),
            (
                ProbePreparation::TwoQubitProduct {
                    signs: (Sign::Plus, Sign::Minus),
                },
                Scenario::Common,
                qfi_two_common_product(t, &p),
            ),
            (
                ProbePreparation::TwoQubitBell {
                    which: BellLabel::PhiMinus,
                },
                Scenario::Common,
                qfi_two_common_bell(t, &p),
            ),
        ];
        for (prep, scenario, closed) in pairs {
            let est = qfi_numeric_probe(prep, scenario, t, &p).unwrap();
            assert!(
                (est.h - closed).abs() <= 1e-5 * closed.abs(),
                "{prep:?} {scenario:?}: oracle {} vs closed {closed}",
                est.h
            );
        }
    }

    #[test]
    fn theta_maximized_at_equator() {
        let p = params(1.3, 1.0);
        let best = qfi_single(0.9, &p, FRAC_PI_2);
        for &theta in &[0.0, 0.4, 1.0, 1.4, 2.0, 2.8, std::f64::consts::PI] {
            let h = qfi_single(0.9, &p, theta);
            assert!(h <= best + 1e-15);
            // Closed form also matches the oracle away from the equator.
            if theta > 0.05 && (theta - std::f64::consts::PI).abs() > 0.05 {
                let est = qfi_numeric_probe(
                    ProbePreparation::SingleQubit { theta },
                    Scenario::Independent,
                    0.9,
                    &p,
                )
                .unwrap();
                assert!((est.h - h).abs() <= 1e-5 * h.max(1e-12), "theta = {theta}");
            }
        }
    }

    #[test]
    fn common_bath_bell_pairs_split() {
        let p = params(1.0, 1.0);
        let report = bell_pair_sensitivity(1.0, &p).unwrap();
        for (which, h) in report {
            match which {
                BellLabel::PhiPlus | BellLabel::PhiMinus => {
                    assert_relative_eq!(h, qfi_two_common_bell(1.0, &p), max_relative = 1e-5);
                }
                BellLabel::PsiPlus | BellLabel::PsiMinus => {
                    assert!(h.abs() < 1e-10, "{which:?} should be insensitive, got {h}");
                }
            }
        }
    }

    #[test]
    fn population_identity_spot_checks() {
        let p = params(1.0, 1.0);
        assert_relative_eq!(
            fisher_population_measurement(1.0, &p),
            0.25,
            max_relative = 1e-12
        );
        // Fully dephased probe at long times carries nothing.
        assert!(fisher_population_measurement(5e3, &p) < 1e-6);
        for &s in &[0.5, 1.0, 2.0, 3.0] {
            for &w in &[0.5, 1.0, 2.0] {
                for i in 1..=5 {
                    let t = i as f64 * 0.6 / w;
                    let sp = params(s, w);
                    let f = fisher_population_measurement(t, &sp);
                    let h = qfi_single(t, &sp, FRAC_PI_2);
                    assert!(
                        (f - h).abs() <= 1e-12 * h.max(1e-300),
                        "identity broke at s = {s}, w = {w}, t = {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn series_leading_coefficient() {
        // 2 Γ[2] = 2 at s = 1.
        let p = params(1.0, 1.0);
        let t = 1e-6;
        let h = qfi_small_t_series(t, &p, SeriesKind::IndependentProduct);
        assert_relative_eq!(h / (t * t), 2.0, max_relative = 1e-9);
        // The two series agree through t² and differ at t⁴.
        let hb = qfi_small_t_series(t, &p, SeriesKind::IndependentBell);
        assert!((h - hb).abs() < 1e-11 * h);
        let t = 0.1;
        assert!(
            qfi_small_t_series(t, &p, SeriesKind::IndependentProduct)
                > qfi_small_t_series(t, &p, SeriesKind::IndependentBell)
        );
    }

    #[test]
    fn series_truncation_error_scales_as_t6() {
        for &s in &[0.5, 1.0, 3.0] {
            let p = params(s, 1.0);
            for kind in [SeriesKind::IndependentProduct, SeriesKind::IndependentBell] {
                let closed = |t: f64| match kind {
                    SeriesKind::IndependentProduct => qfi_two_independent_product(t, &p),
                    SeriesKind::IndependentBell => qfi_two_independent_bell(t, &p),
                };
                let t = 1e-2;
                let e1 = (closed(t) - qfi_small_t_series(t, &p, kind)).abs();
                let e2 = (closed(t / 2.0) - qfi_small_t_series(t / 2.0, &p, kind)).abs();
                let ratio = e1 / e2;
                assert!(
                    (ratio - 64.0).abs() <= 0.2 * 64.0,
                    "s = {s}, {kind:?}: error ratio {ratio}"
                );
            }
        }
    }

    #[test]
    fn nonnegative_and_finite_on_grid() {
        for &s in &[0.5, 1.0, 2.0, 3.0] {
            for &w in &[0.5, 1.0, 2.0] {
                let p = params(s, w);
                for &xt in &[0.3, 1.0, 3.0] {
                    let t = xt / w;
                    for h in [
                        qfi_single(t, &p, FRAC_PI_2),
                        qfi_two_independent_product(t, &p),
                        qfi_two_independent_bell(t, &p),
                        qfi_two_common_product(t, &p),
                        qfi_two_common_bell(t, &p),
                        qfi_werner(t, &p, 0.6, Scenario::Independent).unwrap(),
                        qfi_ghz(t, &p, 5, Scenario::Common).unwrap(),
                    ] {
                        assert!(h.is_finite() && h >= 0.0, "s={s} w={w} t={t}: {h}");
                    }
                }
            }
        }
    }

    #[test]
    fn long_time_decay() {
        let p = params(1.0, 1.0);
        let t = 1e4;
        assert!(qfi_single(t, &p, FRAC_PI_2) < 1e-6);
        assert!(qfi_two_independent_bell(t, &p) < 1e-10);
        assert!(qfi_two_common_bell(t, &p) < 1e-10);
    }
}
