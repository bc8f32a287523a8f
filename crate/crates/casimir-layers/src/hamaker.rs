//! Non-retarded Hamaker constant and the short-distance (van der Waals)
//! limit of the force.
//!
//! In the non-retarded regime (gap much smaller than every material
//! wavelength) only the TM mode survives and the k-integral factorizes,
//! leaving
//!
//! H₁₂₃ = (3ħ/8π²) ∫₀^∞ dω Σ_{n≥1} (Δ₁₂ Δ₃₂)ⁿ / n³,
//! Δ_j2(iω) = (ε₂ − ε_j)/(ε₂ + ε_j).
//!
//! H is positive for an attractive configuration and negative when the gap
//! medium sits between the bodies (ε₁ < ε₂ < ε₃ on the imaginary axis).

use crate::constants::HBAR;
use crate::error::Result;
use crate::lifshitz::TriLayer;
use crate::numerics::{integrate_semi_infinite, QuadratureConfig};

/// Hamaker constant in J plus bookkeeping on the reflection-series
/// truncation.
#[derive(Debug, Clone, Copy)]
pub struct HamakerResult {
    /// H₁₂₃, J.
    pub h123: f64,
    /// Number of terms of the Σ (Δ₁₂Δ₃₂)ⁿ/n³ series actually summed.
    pub series_terms_used: u32,
    /// Upper bound on the neglected series tail, J.
    pub truncation_error: f64,
}

/// Mapping from Hamaker constant to force per unit area.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForceConvention {
    /// F = −H/3L³, consistent with the small-distance limit of the Lifshitz
    /// formula as the Hamaker integral above is normalized.
    Paper,
    /// F = −H/6πL³, the colloid-science normalization; the returned constant
    /// is then 2π times larger for the same physical force.
    Conventional,
}

fn delta(body: &crate::dielectric::DielectricModel, gap: &crate::dielectric::DielectricModel, omega: f64) -> f64 {
    // (ε₂ − ε_j)/(ε₂ + ε_j) through ω²ε, finite for metals at ω → 0
    let w2 = gap.eps_w2(omega);
    let wb = body.eps_w2(omega);
    (w2 - wb) / (w2 + wb)
}

/// Integrate the n-th reflection-series term over frequency. The integrand is
/// smooth and decays once ω passes every material resonance.
fn series_term(stack: &TriLayer, n: i32, cfg: &QuadratureConfig) -> Result<f64> {
    let q = integrate_semi_infinite(
        |w| (delta(&stack.eps1, &stack.eps2, w) * delta(&stack.eps3, &stack.eps2, w)).powi(n),
        cfg,
    )?;
    Ok(q.value / f64::from(n).powi(3))
}

/// Compute the non-retarded Hamaker constant of `stack` (the gap width is
/// irrelevant here). Series terms are added until the bound on the next term,
/// |t_n|·(n/(n+1))³, falls below 1e-12 of the accumulated sum. The metal/
/// vacuum edge case |Δ₁₂Δ₃₂| → 1 at ω → 0 makes the terms decay only like
/// n^{−7/2}, so a few thousand terms may be needed.
pub fn hamaker_constant(stack: &TriLayer, cfg: &QuadratureConfig) -> Result<HamakerResult> {
    cfg.validate()?;
    let scale = stack
        .eps1
        .frequency_scale()
        .max(stack.eps2.frequency_scale())
        .max(stack.eps3.frequency_scale())
        .max(1e15);
    let term_cfg = QuadratureConfig { abs_floor: 0.0, compression_scale: scale, ..*cfg };

    let prefactor = 3.0 * HBAR / (8.0 * std::f64::consts::PI.powi(2));
    let mut sum = 0.0;
    let mut terms = 0u32;
    let mut tail_bound = f64::INFINITY;
    for n in 1..=10_000 {
        let t = series_term(stack, n, &term_cfg)?;
        sum += t;
        terms = n as u32;
        let nf = n as f64;
        // |Δ₁₂Δ₃₂| ≤ 1 implies |t_m| ≤ |t_n|·(n/m)³, bounding the full tail
        // by |t_n|·n³·∫_n^∞ dm/m³ = |t_n|·n/2
        tail_bound = t.abs() * nf / 2.0;
        let next_bound = t.abs() * (nf / (nf + 1.0)).powi(3);
        if next_bound < 1e-12 * sum.abs() {
            break;
        }
    }
    Ok(HamakerResult {
        h123: prefactor * sum,
        series_terms_used: terms,
        truncation_error: prefactor * tail_bound,
    })
}

/// Short-distance van der Waals force per unit area from a Hamaker constant.
pub fn short_distance_force(h123: f64, gap: f64, convention: ForceConvention) -> f64 {
    match convention {
        ForceConvention::Paper => -h123 / (3.0 * gap.powi(3)),
        ForceConvention::Conventional => -h123 / (6.0 * std::f64::consts::PI * gap.powi(3)),
    }
}
