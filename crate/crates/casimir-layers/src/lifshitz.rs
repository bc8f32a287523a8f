//! Zero-temperature Lifshitz force and energy for a planar three-layer stack.
//!
//! Body 1 | gap medium 2 (width L) | body 3. The force per unit area is
//!
//! F(L) = −(ħ/2π²) Σ_pol ∫₀^∞ dk k ∫₀^∞ dω κ₂ r₁₂ r₃₂ e^{−2κ₂L} / (1 − r₁₂ r₃₂ e^{−2κ₂L}),
//!
//! with imaginary-axis permittivities ε(iω), κ_j = √(k² + ε_j ω²/c²) and the
//! Fresnel reflection coefficients below. Negative F is attraction. The
//! corresponding free energy per unit area is the log form
//!
//! E(L) = (ħ/4π²) Σ_pol ∫₀^∞ dk k ∫₀^∞ dω ln(1 − r₁₂ r₃₂ e^{−2κ₂L}).
//!
//! Internally everything is evaluated in the dimensionless variables x = kL,
//! y = ωL/c, which makes the exponential scale of the integrand independent
//! of the gap width.

use crate::constants::{C, HBAR};
use crate::dielectric::DielectricModel;
use crate::error::{Error, Result};
use crate::numerics::{integrate_semi_infinite, QuadratureConfig};

/// A planar three-layer stack: body `eps1` | gap `eps2` of width `gap` | body `eps3`.
#[derive(Debug, Clone, Copy)]
pub struct TriLayer {
    pub eps1: DielectricModel,
    pub eps2: DielectricModel,
    pub eps3: DielectricModel,
    /// Gap width L in meters.
    pub gap: f64,
}

impl TriLayer {
    pub fn new(
        eps1: DielectricModel,
        eps2: DielectricModel,
        eps3: DielectricModel,
        gap: f64,
    ) -> Result<Self> {
        eps1.validate()?;
        eps2.validate()?;
        eps3.validate()?;
        if !(gap > 0.0) || !gap.is_finite() {
            return Err(Error::Domain(format!("gap width must be positive, got {gap}")));
        }
        Ok(TriLayer { eps1, eps2, eps3, gap })
    }

    pub fn with_gap(&self, gap: f64) -> Result<Self> {
        TriLayer::new(self.eps1, self.eps2, self.eps3, gap)
    }
}

/// Force and energy per unit area together with reduction factors relative to
/// perfect mirrors across vacuum at the same distance.
#[derive(Debug, Clone, Copy)]
pub struct ForceResult {
    /// Force per unit area, N/m². Negative = attraction.
    pub force: f64,
    /// Free energy per unit area, J/m². Negative = binding.
    pub energy: f64,
    /// force / perfect-mirror force. Negative means repulsion.
    pub reduction_factor_force: f64,
    /// energy / perfect-mirror energy. Negative means repulsion.
    pub reduction_factor_energy: f64,
    /// Absolute error estimate on `force`, N/m².
    pub force_error: f64,
    /// Absolute error estimate on `energy`, J/m².
    pub energy_error: f64,
}

/// Ideal-mirror Casimir force per unit area, −ħcπ²/240L⁴.
pub fn perfect_mirror_force(gap: f64) -> f64 {
    -HBAR * C * std::f64::consts::PI.powi(2) / (240.0 * gap.powi(4))
}

/// Ideal-mirror Casimir energy per unit area, −ħcπ²/720L³.
pub fn perfect_mirror_energy(gap: f64) -> f64 {
    -HBAR * C * std::f64::consts::PI.powi(2) / (720.0 * gap.powi(3))
}

/// TM (p-polarized) Fresnel coefficient at imaginary frequency for light in
/// medium 2 reflecting off medium i:
/// r = (ε₂κ_i − ε_iκ₂)/(ε₂κ_i + ε_iκ₂).
pub fn reflection_tm(eps_i: f64, eps_2: f64, kappa_i: f64, kappa_2: f64) -> f64 {
    (eps_2 * kappa_i - eps_i * kappa_2) / (eps_2 * kappa_i + eps_i * kappa_2)
}

/// TE (s-polarized) Fresnel coefficient at imaginary frequency:
/// r = −(κ_i − κ₂)/(κ_i + κ₂).
pub fn reflection_te(kappa_i: f64, kappa_2: f64) -> f64 {
    -(kappa_i - kappa_2) / (kappa_i + kappa_2)
}

/// Imaginary-frequency transverse decay rate κ = √(k² + ε(iω)ω²/c²) for a
/// material model, evaluated through ω²ε(iω) so metals stay finite at ω → 0.
pub fn kappa(model: &DielectricModel, k: f64, omega: f64) -> f64 {
    (k * k + model.eps_w2(omega) / (C * C)).sqrt()
}

/// Accept the best available value when the adaptive routine stops just short
/// of tolerance on an inner integral; the outer integration still controls
/// the overall error.
fn value_of(r: Result<crate::numerics::Quadrature>) -> Result<f64> {
    match r {
        Ok(q) => Ok(q.value),
        Err(Error::Convergence { value, .. }) => Ok(value),
        Err(e) => Err(e),
    }
}

/// Shared kernel for force and energy. `force_form` selects between the
/// κ₂ rr e^{−2κ₂}/(1−·) integrand and the ln(1−·) integrand. Returns the
/// dimensionless double integral and its outer error estimate.
fn double_integral(stack: &TriLayer, cfg: &QuadratureConfig, force_form: bool) -> Result<(f64, f64)> {
    let l_c2 = (stack.gap / C).powi(2);
    // both integration variables are dimensionless (x = kL, y = ωL/c), so the
    // compression scale is O(1) regardless of the caller's units
    let outer_cfg = QuadratureConfig { compression_scale: 1.0, ..*cfg };
    let inner_cfg = QuadratureConfig {
        rel_tol: cfg.rel_tol * 0.05,
        abs_floor: 0.0,
        compression_scale: 1.0,
        ..*cfg
    };

    let point = |x: f64, y: f64| -> f64 {
        let omega = y * C / stack.gap;
        // dimensionless ε_j y² via ω²ε_j(iω)
        let e1 = stack.eps1.eps_w2(omega) * l_c2;
        let e2 = stack.eps2.eps_w2(omega) * l_c2;
        let e3 = stack.eps3.eps_w2(omega) * l_c2;
        let x2 = x * x;
        let (q1, q2, q3) = ((x2 + e1).sqrt(), (x2 + e2).sqrt(), (x2 + e3).sqrt());
        let expf = (-2.0 * q2).exp();
        if expf == 0.0 {
            return 0.0;
        }
        let r1_tm = (e2 * q1 - e1 * q2) / (e2 * q1 + e1 * q2);
        let r3_tm = (e2 * q3 - e3 * q2) / (e2 * q3 + e3 * q2);
        let r1_te = -(q1 - q2) / (q1 + q2);
        let r3_te = -(q3 - q2) / (q3 + q2);
        let mut acc = 0.0;
        for rr in [r1_tm * r3_tm, r1_te * r3_te] {
            let t = rr * expf;
            if force_form {
                acc += q2 * t / (1.0 - t);
            } else {
                acc += (-t).ln_1p();
            }
        }
        acc
    };

    let outer = |x: f64| -> Result<f64> {
        let inner = integrate_semi_infinite(|y| x * point(x, y), &inner_cfg);
        value_of(inner)
    };

    // The inner error handling never yields a hard error here, so the closure
    // can stay infallible for the quadrature driver.
    let q = integrate_semi_infinite(|x| outer(x).unwrap_or(f64::NAN), &outer_cfg)?;
    if !q.value.is_finite() {
        return Err(Error::Domain("non-finite Lifshitz integrand".into()));
    }
    Ok((q.value, q.error))
}

/// Compute the Lifshitz force and energy per unit area for `stack`.
pub fn lifshitz_force(stack: &TriLayer, cfg: &QuadratureConfig) -> Result<ForceResult> {
    cfg.validate()?;
    let l = stack.gap;
    let force_scale = HBAR * C / (2.0 * std::f64::consts::PI.powi(2) * l.powi(4));
    let energy_scale = HBAR * C / (4.0 * std::f64::consts::PI.powi(2) * l.powi(3));

    let (i_f, err_f) = double_integral(stack, cfg, true)?;
    let (i_e, err_e) = double_integral(stack, cfg, false)?;

    let force = -force_scale * i_f;
    let energy = energy_scale * i_e;
    Ok(ForceResult {
        force,
        energy,
        reduction_factor_force: force / perfect_mirror_force(l),
        reduction_factor_energy: energy / perfect_mirror_energy(l),
        force_error: force_scale * err_f,
        energy_error: energy_scale * err_e,
    })
}

/// Polylogarithm Li₄(z) for |z| ≤ 1 by direct series.
fn polylog4(z: f64) -> f64 {
    debug_assert!(z.abs() <= 1.0);
    let mut sum = 0.0;
    let mut zn = 1.0;
    for n in 1..200_000u64 {
        zn *= z;
        let term = zn / (n as f64).powi(4);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// Closed-form retarded long-distance force estimate
///
/// F ≈ −(3ħc / 8π²√ε₂(0) L⁴) · Li₄(r₁r₃),
///
/// built from the static reflection coefficients
/// r_j = (√ε₂(0) − √ε_j(0)) / (√ε₂(0) + √ε_j(0)), with r_j = −1 for a metal
/// body whose static permittivity diverges. Errors out if the *gap medium*
/// has no finite static permittivity.
pub fn long_distance_estimate(stack: &TriLayer) -> Result<ForceResult> {
    let e20 = stack.eps2.eps_static().ok_or(Error::DivergingStaticPermittivity)?;
    let n2 = e20.sqrt();
    let r = |m: &DielectricModel| match m.eps_static() {
        Some(e0) => (n2 - e0.sqrt()) / (n2 + e0.sqrt()),
        None => -1.0,
    };
    let rr = r(&stack.eps1) * r(&stack.eps3);
    let l = stack.gap;
    let force = -3.0 * HBAR * C / (8.0 * std::f64::consts::PI.powi(2) * n2 * l.powi(4)) * polylog4(rr);
    let energy = force * l / 3.0;
    Ok(ForceResult {
        force,
        energy,
        reduction_factor_force: force / perfect_mirror_force(l),
        reduction_factor_energy: energy / perfect_mirror_energy(l),
        force_error: 0.0,
        energy_error: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn perfect_mirror_values() {
        let l = 1e-7;
        assert_relative_eq!(perfect_mirror_force(l), -13.0012, max_relative = 1e-4);
        // E = F·L/3 for the 1/L⁴ power law
        assert_relative_eq!(perfect_mirror_energy(l), perfect_mirror_force(l) * l / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn tm_reflection_substitution() {
        // ε_i = 1, ε₂ = 2, matched κ → (2 − 1)/(2 + 1)
        assert_relative_eq!(reflection_tm(1.0, 2.0, 5.0, 5.0), 1.0 / 3.0, max_relative = 1e-15);
        // identical media → 0
        assert_eq!(reflection_tm(3.0, 3.0, 7.0, 7.0), 0.0);
    }

    #[test]
    fn tm_reflection_mirror_limit() {
        // ε_i → ∞ at fixed ω: κ_i ~ √ε_i, so r → −κ₂√ε_i/(κ₂√ε_i) in
        // magnitude: |r| → 1
        let eps_i = 1e12;
        let r = reflection_tm(eps_i, 1.0, eps_i.sqrt(), 1.0);
        assert_relative_eq!(r.abs(), 1.0, max_relative = 1e-5);
    }

    #[test]
    fn te_reflection_substitution_and_antisymmetry() {
        assert_relative_eq!(reflection_te(3.0, 1.0), -0.5, max_relative = 1e-15);
        assert_eq!(reflection_te(2.0, 2.0), 0.0);
        for &(ki, k2) in &[(1.0, 4.0), (0.3, 0.2), (7.5, 1.5)] {
            assert_relative_eq!(reflection_te(ki, k2), -reflection_te(k2, ki), max_relative = 1e-14);
        }
    }

    #[test]
    fn reflection_magnitude_below_one() {
        for &(ei, e2) in &[(1.0, 2.9), (4.3, 1.0), (2.0, 2.5), (1e6, 1.1)] {
            for &(ki, k2) in &[(0.5, 1.5), (2.0, 0.1), (3.0, 3.0)] {
                assert!(reflection_tm(ei, e2, ki, k2).abs() < 1.0 || (ei == e2 && ki == k2));
                assert!(reflection_te(ki, k2).abs() < 1.0);
            }
        }
    }

    #[test]
    fn kappa_reduces_to_light_cone_in_vacuum() {
        let k = 2e7;
        let w = 3e15;
        assert_relative_eq!(
            kappa(&DielectricModel::Vacuum, k, w),
            (k * k + (w / C).powi(2)).sqrt(),
            max_relative = 1e-14
        );
        // plasma κ at k = 0, ω → 0 tends to ωp/c
        let m = DielectricModel::Plasma { omega_p: 1e16 };
        assert_relative_eq!(kappa(&m, 0.0, 1e3), 1e16 / C, max_relative = 1e-9);
    }

    #[test]
    fn force_vanishes_when_body_matches_gap() {
        let m = DielectricModel::silica_2osc();
        let stack = TriLayer::new(m, m, DielectricModel::gold_drude(), 50e-9).unwrap();
        let cfg = QuadratureConfig::default();
        let res = lifshitz_force(&stack, &cfg).unwrap();
        assert!(res.force.abs() < 1e-12 * perfect_mirror_force(50e-9).abs());
    }

    #[test]
    fn dense_plasma_mirrors_approach_ideal_result() {
        let wp = 3e17; // ωp L / c ≈ 1000
        let stack = TriLayer::new(
            DielectricModel::Plasma { omega_p: wp },
            DielectricModel::Vacuum,
            DielectricModel::Plasma { omega_p: wp },
            1e-6,
        )
        .unwrap();
        let res = lifshitz_force(&stack, &QuadratureConfig::default()).unwrap();
        assert!(res.force < 0.0);
        assert_relative_eq!(res.reduction_factor_force, 1.0, max_relative = 0.02);
        assert_relative_eq!(res.reduction_factor_energy, 1.0, max_relative = 0.02);
    }

    #[test]
    fn ascending_permittivities_give_repulsion() {
        let w0 = 1.0e16;
        let stack = TriLayer::new(
            DielectricModel::Plasma { omega_p: 0.5 * w0 },
            DielectricModel::Plasma { omega_p: w0 },
            DielectricModel::Plasma { omega_p: 5.0 * w0 },
            100e-9,
        )
        .unwrap();
        let res = lifshitz_force(&stack, &QuadratureConfig::default()).unwrap();
        assert!(res.force > 0.0, "expected repulsion, got {:?}", res);
        assert!(res.reduction_factor_force < 0.0);
    }

    #[test]
    fn long_distance_mirror_limit_is_exact() {
        let stack = TriLayer::new(
            DielectricModel::Plasma { omega_p: 1e16 },
            DielectricModel::Vacuum,
            DielectricModel::Plasma { omega_p: 1e16 },
            1e-6,
        )
        .unwrap();
        let est = long_distance_estimate(&stack).unwrap();
        assert_relative_eq!(est.force, perfect_mirror_force(1e-6), max_relative = 1e-12);
        assert_relative_eq!(est.reduction_factor_force, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn long_distance_requires_finite_gap_static_eps() {
        let stack = TriLayer::new(
            DielectricModel::Vacuum,
            DielectricModel::Plasma { omega_p: 1e16 },
            DielectricModel::Vacuum,
            1e-7,
        )
        .unwrap();
        assert!(matches!(long_distance_estimate(&stack), Err(Error::DivergingStaticPermittivity)));
    }

    #[test]
    fn long_distance_estimate_matches_full_integral_far_out() {
        let stack = TriLayer::new(
            DielectricModel::silica_2osc(),
            DielectricModel::bromobenzene_2osc(),
            DielectricModel::gold_drude(),
            8e-6,
        )
        .unwrap();
        let full = lifshitz_force(&stack, &QuadratureConfig::default()).unwrap();
        let est = long_distance_estimate(&stack).unwrap();
        assert!(full.force > 0.0 && est.force > 0.0);
        assert_relative_eq!(full.force, est.force, max_relative = 0.05);
    }

    #[test]
    fn rejects_nonpositive_gap() {
        assert!(TriLayer::new(
            DielectricModel::Vacuum,
            DielectricModel::Vacuum,
            DielectricModel::Vacuum,
            0.0
        )
        .is_err());
    }
}
