//! Direct numerical integration of the spectral dephasing integral.
//!
//! This is the independent oracle against which the closed-form decoherence
//! factor is validated. After the substitution u = ω/ω_c the integral becomes
//!
//! ```text
//! Γ = ∫_0^∞ u^{s-2} (1 - cos(u x)) e^{-u} du,      x = ω_c t,
//! ```
//!
//! which is ω_c-free except through x. The u-axis is split at the zeros of
//! cos(u x) so each panel is free of sign structure from the oscillation, and
//! each panel is handled by fixed-order Gauss-Legendre with adaptive
//! bisection.

use crate::error::{Error, Result};
use crate::spectral::SpectralParams;

/// Tolerances and budget for [`gamma_numeric`].
#[derive(Debug, Clone)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_panels: 100_000,
        }
    }
}

impl QuadConfig {
    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::Config(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if self.max_panels == 0 {
            return Err(Error::Config("max_panels must be at least 1".into()));
        }
        Ok(())
    }
}

const GL_ORDER: usize = 15;

/// Decoherence factor Γ(t, ω_c) by direct quadrature of the spectral
/// integral.
pub fn gamma_numeric(t: f64, params: &SpectralParams, cfg: &QuadConfig) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
    }
    gamma_numeric_scaled(params.omega_c() * t, params.s(), cfg)
}

/// Same integral through the dimensionless variable x = ω_c t.
pub fn gamma_numeric_scaled(x: f64, s: f64, cfg: &QuadConfig) -> Result<f64> {
    cfg.validate()?;
    if x < 0.0 || !(s > 0.0) {
        return Err(Error::Domain(format!(
            "require x >= 0 and s > 0, got x = {x}, s = {s}"
        )));
    }
    if x == 0.0 {
        // Integrand identically zero.
        return Ok(0.0);
    }

    // 1 - cos(ux) written as 2 sin^2(ux/2) to avoid cancellation; the power
    // is clamped 1e-300-safe although Gauss nodes never reach u = 0, where
    // the integrand limit is 0 for every s > 0.
    let integrand = move |u: f64| -> f64 {
        let half = (0.5 * u * x).sin();
        u.max(1e-300).powf(s - 2.0) * 2.0 * half * half * (-u).exp()
    };

    // Exponential damping makes the tail beyond u_max analytically negligible
    // relative to abs_tol.
    let u_max = 50.0 + 10.0 * (1.0 + x).ln();

    let rule = GaussLegendre::new(GL_ORDER);

    // Panel edges at the zeros u_k = (2k+1)π/(2x) of cos(ux).
    let mut edges = vec![0.0];
    let spacing = std::f64::consts::PI / x;
    let mut u = 0.5 * spacing;
    while u < u_max {
        edges.push(u);
        u += spacing;
        if edges.len() > cfg.max_panels {
            return Err(Error::Convergence {
                estimate: f64::NAN,
                error: f64::INFINITY,
                panels: edges.len(),
            });
        }
    }
    edges.push(u_max);

    // Coarse pass fixes the scale for the tolerance target.
    let n_top = edges.len() - 1;
    let mut coarse = 0.0;
    for w in edges.windows(2) {
        coarse += rule.integrate(&integrand, w[0], w[1]);
    }
    let tol = cfg.abs_tol.max(cfg.rel_tol * coarse.abs());

    // Adaptive refinement, fixed ascending panel order for determinism.
    let mut total = 0.0;
    let mut panels_used = n_top;
    for w in edges.windows(2) {
        total += refine(
            &integrand,
            &rule,
            w[0],
            w[1],
            tol / n_top as f64,
            cfg.max_panels,
            &mut panels_used,
        )?;
    }
    Ok(total)
}

fn refine(
    f: &dyn Fn(f64) -> f64,
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
    panels_used: &mut usize,
) -> Result<f64> {
    let whole = rule.integrate(f, a, b);
    let mid = 0.5 * (a + b);
    let left = rule.integrate(f, a, mid);
    let right = rule.integrate(f, mid, b);
    let err = (whole - (left + right)).abs();
    if err <= tol || (b - a) < 1e-14 * (1.0 + a.abs()) {
        return Ok(left + right);
    }
    *panels_used += 2;
    if *panels_used > max_panels {
        return Err(Error::Convergence {
            estimate: whole,
            error: err,
            panels: *panels_used,
        });
    }
    let l = refine(f, rule, a, mid, 0.5 * tol, max_panels, panels_used)?;
    let r = refine(f, rule, mid, b, 0.5 * tol, max_panels, panels_used)?;
    Ok(l + r)
}

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre polynomial.
pub(crate) struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub(crate) fn new(order: usize) -> Self {
        assert!(order >= 1);
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi-style initial guess, then Newton on P_n.
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            loop {
                let (p, dp) = legendre_with_derivative(n, z);
                let dz = p / dp;
                z -= dz;
                if dz.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, z);
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub(crate) fn integrate(&self, f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
