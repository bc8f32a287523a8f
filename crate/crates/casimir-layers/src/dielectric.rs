//! Permittivity models evaluated on the imaginary frequency axis, ε(iω),
//! plus the real-frequency plasma response needed by the mode solver.
//!
//! On the imaginary axis every causal passive model here is real, ≥ 1 and
//! monotonically non-increasing in ω, which is what makes the Lifshitz
//! integrals well behaved.

use crate::error::{Error, Result};
use crate::lifshitz::TriLayer;
use crate::numerics::{find_root_bracketed, RootConfig};

/// A material's permittivity response.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum DielectricModel {
    /// ε ≡ 1.
    Vacuum,
    /// ε(iω) = 1 + ωp²/ω², ε(ω) = 1 − ωp²/ω².
    Plasma { omega_p: f64 },
    /// ε(iω) = 1 + ωp²/[ω(γ+ω)].
    Drude { omega_p: f64, gamma: f64 },
    /// Two-oscillator Lorentz model on the imaginary axis:
    /// ε(iω) = 1 + C_IR/(1+(ω/ω_IR)²) + C_UV/(1+(ω/ω_UV)²).
    TwoOscillator { c_ir: f64, omega_ir: f64, c_uv: f64, omega_uv: f64 },
}

impl DielectricModel {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Domain(format!("invalid dielectric model: {what}")));
        match *self {
            DielectricModel::Vacuum => Ok(()),
            DielectricModel::Plasma { omega_p } => {
                if omega_p > 0.0 && omega_p.is_finite() {
                    Ok(())
                } else {
                    bad("plasma frequency must be positive")
                }
            }
            DielectricModel::Drude { omega_p, gamma } => {
                if omega_p > 0.0 && gamma > 0.0 && omega_p.is_finite() && gamma.is_finite() {
                    Ok(())
                } else {
                    bad("Drude parameters must be positive")
                }
            }
            DielectricModel::TwoOscillator { c_ir, omega_ir, c_uv, omega_uv } => {
                if c_ir >= 0.0
                    && c_uv >= 0.0
                    && omega_ir > 0.0
                    && omega_uv > 0.0
                    && [c_ir, omega_ir, c_uv, omega_uv].iter().all(|v| v.is_finite())
                {
                    Ok(())
                } else {
                    bad("oscillator strengths must be >= 0 and frequencies positive")
                }
            }
        }
    }

    /// Permittivity at imaginary frequency, ε(iω). Real and ≥ 1 for ω > 0.
    pub fn eps_imag(&self, omega: f64) -> Result<f64> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Domain(format!("eps_imag requires omega > 0, got {omega}")));
        }
        Ok(match *self {
            DielectricModel::Vacuum => 1.0,
            DielectricModel::Plasma { omega_p } => 1.0 + (omega_p / omega).powi(2),
            DielectricModel::Drude { omega_p, gamma } => {
                1.0 + omega_p * omega_p / (omega * (gamma + omega))
            }
            DielectricModel::TwoOscillator { c_ir, omega_ir, c_uv, omega_uv } => {
                1.0 + c_ir / (1.0 + (omega / omega_ir).powi(2))
                    + c_uv / (1.0 + (omega / omega_uv).powi(2))
            }
        })
    }

    /// ω²·ε(iω), finite down to ω → 0 for every variant. This is the form the
    /// Lifshitz integrand needs (the reflection coefficients are homogeneous
    /// in it), and it avoids the ωp²/ω² blow-up of the plasma model.
    pub(crate) fn eps_w2(&self, omega: f64) -> f64 {
        match *self {
            DielectricModel::Vacuum => omega * omega,
            DielectricModel::Plasma { omega_p } => omega * omega + omega_p * omega_p,
            DielectricModel::Drude { omega_p, gamma } => {
                omega * omega + omega_p * omega_p * omega / (gamma + omega)
            }
            DielectricModel::TwoOscillator { .. } => {
                omega * omega * self.eps_imag(omega).expect("omega > 0")
            }
        }
    }

    /// Real-frequency permittivity of the plasma model, ε(ω) = 1 − ωp²/ω².
    /// May be negative below the plasma frequency. Defined only for the
    /// plasma variant; other models would require complex permittivities.
    pub fn eps_real_plasma(&self, omega: f64) -> Result<f64> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Domain(format!("eps_real_plasma requires omega > 0, got {omega}")));
        }
        match *self {
            DielectricModel::Plasma { omega_p } => Ok(1.0 - (omega_p / omega).powi(2)),
            _ => Err(Error::UnsupportedModel),
        }
    }

    /// Effective plasma frequency [C_UV·ω_UV² + C_IR·ω_IR²]^{1/2} of a
    /// two-oscillator model; for plasma and Drude models this is ωp itself.
    pub fn effective_plasma_frequency(&self) -> Result<f64> {
        match *self {
            DielectricModel::TwoOscillator { c_ir, omega_ir, c_uv, omega_uv } => {
                Ok((c_uv * omega_uv * omega_uv + c_ir * omega_ir * omega_ir).sqrt())
            }
            DielectricModel::Plasma { omega_p } | DielectricModel::Drude { omega_p, .. } => {
                Ok(omega_p)
            }
            _ => Err(Error::UnsupportedModel),
        }
    }

    /// Largest model frequency, used as a compression scale for frequency
    /// integrals. Zero for vacuum.
    pub(crate) fn frequency_scale(&self) -> f64 {
        match *self {
            DielectricModel::Vacuum => 0.0,
            DielectricModel::Plasma { omega_p } => omega_p,
            DielectricModel::Drude { omega_p, .. } => omega_p,
            DielectricModel::TwoOscillator { omega_ir, omega_uv, .. } => omega_uv.max(omega_ir),
        }
    }

    /// Static (ω → 0) permittivity, or `None` where it diverges.
    pub(crate) fn eps_static(&self) -> Option<f64> {
        match *self {
            DielectricModel::Vacuum => Some(1.0),
            DielectricModel::TwoOscillator { c_ir, c_uv, .. } => Some(1.0 + c_ir + c_uv),
            DielectricModel::Plasma { .. } | DielectricModel::Drude { .. } => None,
        }
    }

    /// Built-in material presets with the parameters used throughout the
    /// crate's scenarios (Drude gold, two-oscillator silica and bromobenzene).
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "vacuum" => Some(DielectricModel::Vacuum),
            "gold-drude" => Some(DielectricModel::gold_drude()),
            "silica-2osc" => Some(DielectricModel::silica_2osc()),
            "bromobenzene-2osc" => Some(DielectricModel::bromobenzene_2osc()),
            _ => None,
        }
    }

    pub fn preset_names() -> &'static [&'static str] {
        &["vacuum", "gold-drude", "silica-2osc", "bromobenzene-2osc"]
    }

    pub fn gold_drude() -> Self {
        DielectricModel::Drude { omega_p: 1.367e16, gamma: 5.316e13 }
    }

    pub fn silica_2osc() -> Self {
        DielectricModel::TwoOscillator {
            c_ir: 0.829,
            omega_ir: 0.867e14,
            c_uv: 1.098,
            omega_uv: 2.034e16,
        }
    }

    pub fn bromobenzene_2osc() -> Self {
        DielectricModel::TwoOscillator {
            c_ir: 2.967,
            omega_ir: 5.47e14,
            c_uv: 1.335,
            omega_uv: 1.286e16,
        }
    }
}

/// Which way the ε₁(iω) < ε₂(iω) < ε₃(iω) repulsion condition points at one
/// frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionOrdering {
    /// ε₁ < ε₂ < ε₃.
    Ascending,
    /// ε₃ < ε₂ < ε₁.
    Descending,
    /// The gap medium is not between the bodies.
    Neither,
}

#[derive(Debug, Clone, Copy)]
pub struct ConditionSample {
    pub omega: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    pub ordering: ConditionOrdering,
}

/// Per-frequency ordering report plus the crossover frequencies where the
/// classification changes.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub samples: Vec<ConditionSample>,
    pub crossovers: Vec<f64>,
}

fn classify(e1: f64, e2: f64, e3: f64) -> ConditionOrdering {
    if e1 < e2 && e2 < e3 {
        ConditionOrdering::Ascending
    } else if e3 < e2 && e2 < e1 {
        ConditionOrdering::Descending
    } else {
        ConditionOrdering::Neither
    }
}

/// Evaluate the repulsion condition ε₁ < ε₂ < ε₃ on a frequency grid.
///
/// Between adjacent grid points where the classification changes, the
/// responsible sign changes of ε₂−ε₁ and ε₃−ε₂ are located by bisection to a
/// relative tolerance of 1e-6.
pub fn check_repulsion_condition(stack: &TriLayer, omega_grid: &[f64]) -> Result<ConditionReport> {
    if omega_grid.is_empty() {
        return Err(Error::Domain("empty frequency grid".into()));
    }
    if omega_grid.windows(2).any(|w| w[1] <= w[0]) || omega_grid[0] <= 0.0 {
        return Err(Error::Domain("frequency grid must be strictly positive and ascending".into()));
    }

    let mut samples = Vec::with_capacity(omega_grid.len());
    for &omega in omega_grid {
        let e1 = stack.eps1.eps_imag(omega)?;
        let e2 = stack.eps2.eps_imag(omega)?;
        let e3 = stack.eps3.eps_imag(omega)?;
        samples.push(ConditionSample { omega, eps1: e1, eps2: e2, eps3: e3, ordering: classify(e1, e2, e3) });
    }

    let d21 = |w: f64| stack.eps2.eps_imag(w).unwrap() - stack.eps1.eps_imag(w).unwrap();
    let d32 = |w: f64| stack.eps3.eps_imag(w).unwrap() - stack.eps2.eps_imag(w).unwrap();
    let root_cfg = RootConfig { rel_tol: 1e-6, ..RootConfig::default() };

    let mut crossovers = Vec::new();
    for w in samples.windows(2) {
        if w[0].ordering == w[1].ordering {
            continue;
        }
        let (lo, hi) = (w[0].omega, w[1].omega);
        for diff in [&d21 as &dyn Fn(f64) -> f64, &d32] {
            if diff(lo).signum() != diff(hi).signum() {
                if let Ok(r) = find_root_bracketed(diff, lo, hi, &root_cfg) {
                    crossovers.push(r);
                }
            }
        }
    }
    crossovers.sort_by(f64::total_cmp);
    crossovers.dedup_by(|a, b| (*a - *b).abs() <= 1e-6 * b.abs());
    Ok(ConditionReport { samples, crossovers })
}
