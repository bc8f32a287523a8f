//! Renormalized vacuum energy of the coupled surface plasmons and the
//! plasmon/photon decomposition of the Casimir energy.
//!
//! Each coupled cavity mode ω(k) converges at large k to one of the two
//! isolated interface plasmons; subtracting that partner renormalizes the
//! divergent mode sum and leaves the finite interaction energy
//!
//! E^sp = (ħc/4πL³)·[ ∫ dK K (Ω_lower − Ω_s) + ∫_{K_onset} dK K (Ω_upper − Ω_s') ],
//!
//! with K = kL and Ω = ωL/c. Which single-interface curve partners which
//! branch follows from the large-k saturation frequencies: the lower branch
//! joins the lower of the two single plasmons.
//!
//! Branch labels: `plus` denotes the contribution of the lower-frequency
//! coupled mode (positive, i.e. repulsive, at short distances in an
//! ascending-stack configuration) and `minus` the higher-frequency mode.

use crate::constants::{C, HBAR};
use crate::dielectric::DielectricModel;
use crate::error::Result;
use crate::lifshitz::{lifshitz_force, perfect_mirror_energy, TriLayer};
use crate::numerics::{integrate, QuadratureConfig, RootConfig};
use crate::surface_modes::{PlasmaTriple, ToyModel};

/// Per-branch and total renormalized plasmon energy, J/m².
#[derive(Debug, Clone, Copy)]
pub struct PlasmonEnergy {
    /// Lower-frequency coupled mode contribution, J/m². Positive at short
    /// distances when the stack is ascending (repulsive).
    pub plus: f64,
    /// Higher-frequency coupled mode contribution, J/m².
    pub minus: f64,
    /// plus + minus, J/m².
    pub total: f64,
}

/// Decomposition of the total Casimir energy into plasmonic and photonic
/// parts, together with reduction factors relative to perfect mirrors.
#[derive(Debug, Clone, Copy)]
pub struct EnergyBreakdown {
    /// Total Casimir energy per unit area, J/m².
    pub total: f64,
    /// Renormalized surface-plasmon energy, J/m².
    pub plasmon: f64,
    /// total − plasmon (exactly, by construction), J/m².
    pub photon: f64,
    /// Lower-branch plasmon contribution, J/m².
    pub plasmon_plus: f64,
    /// Upper-branch plasmon contribution, J/m².
    pub plasmon_minus: f64,
    /// total / E_C with E_C = −ħcπ²/720L³. Negative means repulsion.
    pub eta_total: f64,
    /// plasmon / E_C.
    pub eta_plasmon: f64,
    /// photon / E_C.
    pub eta_photon: f64,
}

/// Wave-vector cutoff (units ωp₁/c) beyond which both renormalized
/// integrands are below ~e⁻⁵⁰ of their peak.
fn cutoff(toy: &ToyModel) -> f64 {
    let a2 = toy.alpha * toy.alpha;
    let b2 = toy.beta * toy.beta;
    // beyond saturation of the single-interface curves and deep enough that
    // the e^{−2q₂kL}-like coupling is negligible
    let sat = (0.5 * (1.0 - a2)).max(0.5 * (b2 - a2)).max(0.0);
    let mut k_end = ((25.0 / toy.lambda).powi(2) + sat).sqrt();
    if let Some(kp) = toy.k_plus() {
        k_end = k_end.max(kp + 10.0 / toy.lambda + 1.0);
    }
    k_end
}

/// Partner single-interface curves for (lower, upper), chosen by the ordering
/// of their large-k saturation frequencies.
fn partners(toy: &ToyModel) -> (fn(&ToyModel, f64) -> f64, fn(&ToyModel, f64) -> f64) {
    if toy.beta >= 1.0 {
        (ToyModel::s12, ToyModel::s32)
    } else {
        (ToyModel::s32, ToyModel::s12)
    }
}

/// E^sp scale factor: (ħc/4πL³)·Λ³ = ħωp₁³/4πc².
fn energy_scale(triple: &PlasmaTriple) -> f64 {
    HBAR * triple.omega_p1.powi(3) / (4.0 * std::f64::consts::PI * C * C)
}

/// Renormalized vacuum energy of the two coupled surface-plasmon branches.
///
/// The lower branch is integrated from k = 0; the upper branch from its
/// leakage onset when one exists. Wave vectors where a branch is not bound
/// contribute zero.
pub fn plasmon_energy(
    triple: &PlasmaTriple,
    quad: &QuadratureConfig,
    root: &RootConfig,
) -> Result<PlasmonEnergy> {
    quad.validate()?;
    root.validate()?;
    let toy = triple.toy();
    if toy.alpha == 1.0 && toy.beta == 1.0 {
        return Ok(PlasmonEnergy { plus: 0.0, minus: 0.0, total: 0.0 });
    }
    let k_end = cutoff(&toy);
    let (s_lower, s_upper) = partners(&toy);
    // below this floor the branch/single difference is pure cancellation
    // noise of the root solver (each root is accurate to rel_tol·w)
    let w_max = (k_end * k_end + toy.beta.max(1.0).powi(2)).sqrt();
    let floor = quad.abs_floor.max(root.rel_tol * w_max * 0.5 * k_end * k_end);
    let cfg = QuadratureConfig { abs_floor: floor, ..*quad };

    let lower = integrate(
        |kd| match toy.branch_roots(kd, root).0 {
            Some(r) => kd * (r.w - s_lower(&toy, kd)),
            None => 0.0,
        },
        0.0,
        k_end,
        &cfg,
    )?;
    let onset = toy.k_plus().unwrap_or(0.0);
    let upper = integrate(
        |kd| match toy.branch_roots(kd, root).1 {
            Some(r) => kd * (r.w - s_upper(&toy, kd)),
            None => 0.0,
        },
        onset,
        k_end,
        &cfg,
    )?;

    let scale = energy_scale(triple);
    let plus = scale * lower.value;
    let minus = scale * upper.value;
    Ok(PlasmonEnergy { plus, minus, total: plus + minus })
}

/// Cross-check route for [`plasmon_energy`]: integration by parts through the
/// transverse variable q² = K² − Ω², which turns each branch integral into
/// ½∫Ω d(q²) plus the boundary terms ⅓Ω³ evaluated at the domain ends:
///
/// ∫ K Ω dK = ½∫ Ω (2K − dΩ²/dK) dK + ⅓[Ω³].
///
/// The bulk term is evaluated on a fixed composite-Simpson grid. Branch
/// slopes come from implicit differentiation of the dispersion relation
/// (analytic, so the large mutual cancellation between the bulk term and the
/// ⅓Ω³ boundary terms is not limited by finite-difference noise); only in
/// the gap-propagative window, where the contributions are small, does the
/// slope fall back to finite differences of the solved root.
pub fn plasmon_energy_q_route(
    triple: &PlasmaTriple,
    root: &RootConfig,
) -> Result<PlasmonEnergy> {
    root.validate()?;
    let toy = triple.toy();
    if toy.alpha == 1.0 && toy.beta == 1.0 {
        return Ok(PlasmonEnergy { plus: 0.0, minus: 0.0, total: 0.0 });
    }
    let k_end = cutoff(&toy);
    let (s_lower, s_upper) = partners(&toy);

    let (sl_lower, sl_upper): (fn(&ToyModel, f64) -> f64, fn(&ToyModel, f64) -> f64) =
        if toy.beta >= 1.0 {
            (ToyModel::s12_slope, ToyModel::s32_slope)
        } else {
            (ToyModel::s32_slope, ToyModel::s12_slope)
        };

    let branch_w = |kd: f64, upper: bool| -> f64 {
        let (lo, up) = toy.branch_roots(kd, root);
        let r = if upper { up } else { lo };
        match r {
            Some(r) => r.w,
            // outside the bound window the renormalized difference is zero:
            // follow the partner curve so the integrand vanishes
            None => if upper { s_upper(&toy, kd) } else { s_lower(&toy, kd) },
        }
    };

    let pair = |upper: bool, k0: f64| -> Result<f64> {
        let single = if upper { s_upper } else { s_lower };
        let single_slope = if upper { sl_upper } else { sl_lower };
        let k0 = k0.max(1e-6);
        // ½·[Ω_b(2K − dΩ_b²/dK) − Ω_s(2K − dΩ_s²/dK)]
        let integrand = |kd: f64| {
            let (lo_r, up_r) = toy.branch_roots(kd, root);
            let Some(r) = (if upper { up_r } else { lo_r }) else {
                return 0.0;
            };
            let wb = r.w;
            let ws = single(&toy, kd);
            let dws2 = single_slope(&toy, kd);
            // pinned on the partner curve: the pair difference is zero
            if (wb - ws).abs() <= 1e-11 * ws {
                return 0.0;
            }
            // the implicit-differentiation slope degenerates where the gap
            // wavevector vanishes: at the light line and in the boundary
            // layer around the sector crossing the dispersion function and
            // its partials all go to zero together, so fall back to finite
            // differences of the solved root there (the root itself stays
            // smooth through the crossing)
            let a2 = toy.alpha * toy.alpha;
            let q2sq = kd * kd - wb * wb + a2;
            let near_light_line = q2sq <= 1e-6 * (kd * kd + a2);
            let near_crossing = toy
                .p_plus()
                .is_some_and(|pp| (kd - pp).abs() <= 1e-3 * (1.0 + pp));
            let analytic = (r.sector == crate::surface_modes::Sector::Evanescent
                && !near_light_line
                && !near_crossing)
                .then(|| toy.dw2_dk_evanescent(kd, wb))
                .filter(|s| s.is_finite());
            let dwb2 = analytic.unwrap_or_else(|| {
                let h = 5e-4 * (1.0 + kd);
                let w2 = |k: f64| branch_w(k, upper).powi(2);
                if kd - h > k0 {
                    (w2(kd + h) - w2(kd - h)) / (2.0 * h)
                } else {
                    // second-order one-sided stencil at the domain edge so a
                    // clamped interval does not bias the slope
                    (-3.0 * w2(kd) + 4.0 * w2(kd + h) - w2(kd + 2.0 * h)) / (2.0 * h)
                }
            });
            0.5 * (wb * (2.0 * kd - dwb2) - ws * (2.0 * kd - dws2))
        };
        // the FD-based propagative window gets a fixed Simpson grid (an
        // adaptive routine would chase the difference noise); the analytic
        // remainder is integrated adaptively so the onset boundary layer and
        // the large mutual cancellation against the ⅓Ω³ terms are resolved
        let fd_end = if upper {
            toy.p_plus().filter(|&pp| pp > k0).map_or(k0, |pp| pp.min(k_end))
        } else {
            k0
        };
        let mut bulk = 0.0;
        if fd_end > k0 {
            let n = 2000usize;
            let h = (fd_end - k0) / n as f64;
            let mut sum = integrand(k0) + integrand(fd_end);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                sum += w * integrand(k0 + i as f64 * h);
            }
            bulk += sum * h / 3.0;
        }
        let cfg = QuadratureConfig::default()
            .with_rel_tol(1e-11)
            .with_abs_floor(1e-12 * (1.0 + k_end * k_end));
        let mut adaptive_from = fd_end;
        if upper && toy.k_plus().is_some() && fd_end <= k0 {
            // the branch detaches from the bound-mode boundary with a
            // √(K − K₊) component, so dΩ²/dK carries an integrable
            // 1/√(K − K₊) singularity at the onset that plain adaptive
            // panels under-resolve; substitute u² = K − K₊ to flatten it
            let delta = (k_end - k0).min(1.0);
            let flat = |u: f64| integrand(k0 + u * u) * 2.0 * u;
            bulk += integrate(flat, 0.0, delta.sqrt(), &cfg)?.value;
            adaptive_from = k0 + delta;
        }
        bulk += integrate(integrand, adaptive_from, k_end, &cfg)?.value;
        let cube = |kd: f64| (branch_w(kd, upper).powi(3) - single(&toy, kd).powi(3)) / 3.0;
        Ok(bulk + cube(k_end) - cube(k0))
    };

    let onset = toy.k_plus().unwrap_or(0.0);
    let scale = energy_scale(triple);
    let plus = scale * pair(false, 0.0)?;
    let minus = scale * pair(true, onset)?;
    Ok(PlasmonEnergy { plus, minus, total: plus + minus })
}

/// Short-distance interaction coefficient Y(α, β) of the coupled plasmons.
///
/// Y = ∫₀^∞ dk k [ψ₊ + ψ₋ − √(b − D_∞) − √(b + D_∞)] with
/// ψ±² = b ∓ D, b = 1 + 2α² + β², D² = (1 − β²)² + 4(1 − α²)(β² − α²)e⁻ᵏ
/// and D_∞ = |1 − β²|. The differences are evaluated in a cancellation-free
/// form so the integrand stays accurate down to machine precision in the
/// large-k tail.
pub fn y_factor(alpha: f64, beta: f64, quad: &QuadratureConfig) -> Result<f64> {
    quad.validate()?;
    let a2 = alpha * alpha;
    let b2 = beta * beta;
    let b = 1.0 + 2.0 * a2 + b2;
    let d_inf = (1.0 - b2).abs();
    let integrand = |k: f64| {
        let prod = 4.0 * (1.0 - a2) * (b2 - a2) * (-k).exp();
        let d = ((1.0 - b2).powi(2) + prod).max(0.0).sqrt();
        // δ = (D − D_∞)/2 without subtracting nearby square roots
        let delta = 0.5 * prod / (d + d_inf);
        let term_minus = delta / ((b + d).sqrt() + (b + d_inf).sqrt());
        let term_plus = delta / (((b - d).max(0.0)).sqrt() + (b - d_inf).sqrt());
        2.0 * k * (term_minus - term_plus)
    };
    // e^{−k} < 1e-15 past k = 34.6; the integrand inherits that decay
    let q = integrate(integrand, 0.0, 34.6, &QuadratureConfig { rel_tol: quad.rel_tol.min(1e-9), abs_floor: 1e-16, ..*quad })?;
    Ok(q.value)
}

/// Short-distance closed form of the plasmon interaction energy,
/// E^sp = ħωp₁·Y(α, β)/(32πL²).
pub fn plasmon_energy_short(triple: &PlasmaTriple, quad: &QuadratureConfig) -> Result<f64> {
    let y = y_factor(triple.alpha(), triple.beta(), quad)?;
    Ok(HBAR * triple.omega_p1 * y / (32.0 * std::f64::consts::PI * triple.gap * triple.gap))
}

/// Slope of the force reduction factor at short distance: the force derived
/// from the closed-form plasmon energy, divided by the perfect-mirror force,
/// grows linearly as η_F = slope·(L/λp₁) with slope = −30Y/π².
pub fn short_distance_force_slope(triple: &PlasmaTriple, quad: &QuadratureConfig) -> Result<f64> {
    let y = y_factor(triple.alpha(), triple.beta(), quad)?;
    Ok(-30.0 * y / std::f64::consts::PI.powi(2))
}

fn plasma_model(omega_p: f64) -> DielectricModel {
    if omega_p == 0.0 {
        DielectricModel::Vacuum
    } else {
        DielectricModel::Plasma { omega_p }
    }
}

/// Split the total Casimir energy of a plasma-model stack into surface-plasmon
/// and photon contributions.
pub fn energy_breakdown(
    triple: &PlasmaTriple,
    quad: &QuadratureConfig,
    root: &RootConfig,
) -> Result<EnergyBreakdown> {
    let sp = plasmon_energy(triple, quad, root)?;
    let stack = TriLayer::new(
        plasma_model(triple.omega_p1),
        plasma_model(triple.omega_p2),
        plasma_model(triple.omega_p3),
        triple.gap,
    )?;
    let full = lifshitz_force(&stack, quad)?;
    let e_c = perfect_mirror_energy(triple.gap);
    let photon = full.energy - sp.total;
    Ok(EnergyBreakdown {
        total: full.energy,
        plasmon: sp.total,
        photon,
        plasmon_plus: sp.plus,
        plasmon_minus: sp.minus,
        eta_total: full.energy / e_c,
        eta_plasmon: sp.total / e_c,
        eta_photon: photon / e_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const WP: f64 = 1.0e16;

    fn triple_b(lambda: f64) -> PlasmaTriple {
        PlasmaTriple::new(WP, 5.0 * WP, 25.0 * WP, lambda * C / WP).unwrap()
    }

    fn triple_a(lambda: f64) -> PlasmaTriple {
        PlasmaTriple::new(WP, 0.5 * WP, WP, lambda * C / WP).unwrap()
    }

    #[test]
    fn y_factor_reference_values() {
        let q = QuadratureConfig::default();
        // reference values from a 10⁷-point tanh-sinh evaluation of the
        // stabilized integrand
        assert_relative_eq!(y_factor(5.0, 25.0, &q).unwrap(), 2.428183117, max_relative = 1e-7);
        assert_relative_eq!(y_factor(1.1, 1.21, &q).unwrap(), 4.9682437e-3, max_relative = 1e-6);
        assert_relative_eq!(y_factor(0.698, 0.641, &q).unwrap(), 1.1024526e-2, max_relative = 1e-6);
        // no dielectric contrast between the bodies and the gap: no modes
        assert_eq!(y_factor(2.0, 2.0, &q).unwrap(), 0.0);
    }

    #[test]
    fn y_factor_equal_ratio_asymptotics() {
        let q = QuadratureConfig::default();
        // quadratic onset for weak contrast
        for delta in [1e-3, 1e-2] {
            let a = 1.0 + delta;
            let y = y_factor(a, a * a, &q).unwrap();
            let ratio = y / (delta * delta / 2.0);
            assert!((0.9..=1.1).contains(&ratio), "delta = {delta}: ratio = {ratio}");
        }
        // linear growth Y ≈ 0.67α for strong contrast
        let y = y_factor(1e3, 1e6, &q).unwrap();
        assert_relative_eq!(y / 1e3, 0.6696, max_relative = 1e-3);
    }

    #[test]
    fn force_slope_matches_y() {
        let q = QuadratureConfig::default();
        let s = short_distance_force_slope(&triple_b(1.0), &q).unwrap();
        assert_relative_eq!(s, -7.3807, max_relative = 1e-3);
        let realistic = PlasmaTriple::new(WP, 0.698 * WP, 0.641 * WP, 1e-8).unwrap();
        let s2 = short_distance_force_slope(&realistic, &q).unwrap();
        assert_relative_eq!(s2, -0.033511, max_relative = 1e-3);
    }

    #[test]
    fn wide_gap_energy_vanishes() {
        // Λ = 8: the coupling is e^{−2q₂Λ}-suppressed below double precision
        let t = triple_b(8.0);
        let e = plasmon_energy(&t, &QuadratureConfig::default(), &RootConfig::default()).unwrap();
        let e_c = perfect_mirror_energy(t.gap);
        assert!((e.total / e_c).abs() < 1e-6, "eta = {}", e.total / e_c);
    }

    #[test]
    fn short_gap_matches_closed_form() {
        // the closed form drops O((βΛ)²) corrections, so the gap must be
        // short on the scale of the *largest* plasma wavelength in the stack
        let q = QuadratureConfig::default();
        for (t, tol) in [(triple_b(0.002), 0.02), (triple_a(0.02), 0.02)] {
            let full = plasmon_energy(&t, &q, &RootConfig::default()).unwrap();
            let short = plasmon_energy_short(&t, &q).unwrap();
            assert_relative_eq!(full.total, short, max_relative = tol);
        }
    }

    #[test]
    fn branch_signs_split_at_short_distance() {
        let t = triple_b(0.05);
        let e = plasmon_energy(&t, &QuadratureConfig::default(), &RootConfig::default()).unwrap();
        assert!(e.plus > 0.0, "lower-branch part should be repulsive: {}", e.plus);
        assert!(e.minus < 0.0, "upper-branch part should be attractive: {}", e.minus);
        assert!(e.total > 0.0, "short-distance total should be repulsive: {}", e.total);
    }

    #[test]
    fn q_route_agrees_with_direct_route() {
        let cfg = QuadratureConfig::default();
        let root = RootConfig::default();
        for t in [triple_b(1.0), triple_a(1.0), triple_b(0.05), triple_a(0.02)] {
            let direct = plasmon_energy(&t, &cfg, &root).unwrap();
            let q = plasmon_energy_q_route(&t, &root).unwrap();
            // agreement to 1e-6 on the scale of the dominant branch (at Λ = 1
            // the branch parts nearly cancel, so a per-component relative
            // comparison would amplify pure quadrature noise); the floor is
            // one ppm of the natural energy unit ħωp₁³/4πc²
            let scale = direct
                .plus
                .abs()
                .max(direct.minus.abs())
                .max(HBAR * t.omega_p1.powi(3) / (4.0 * std::f64::consts::PI * C * C));
            for (d, qv) in [
                (direct.plus, q.plus),
                (direct.minus, q.minus),
                (direct.total, q.total),
            ] {
                assert!(
                    (d - qv).abs() <= 1e-6 * scale,
                    "direct = {d:e}, q-route = {qv:e}, scale = {scale:e}"
                );
            }
        }
    }

    #[test]
    fn breakdown_is_exact_and_repulsive() {
        let t = triple_b(1.0);
        let b = energy_breakdown(&t, &QuadratureConfig::default(), &RootConfig::default()).unwrap();
        assert_eq!(b.photon, b.total - b.plasmon);
        assert_eq!(b.plasmon, b.plasmon_plus + b.plasmon_minus);
        let e_c = perfect_mirror_energy(t.gap);
        assert_relative_eq!(b.eta_total, b.total / e_c, max_relative = 1e-14);
        // ascending plasma stack: repulsive at every distance
        assert!(b.eta_total < 0.0, "eta_total = {}", b.eta_total);
    }

    #[test]
    fn zero_contrast_is_zero() {
        let t = PlasmaTriple::new(WP, WP, WP, 1e-7).unwrap();
        let e = plasmon_energy(&t, &QuadratureConfig::default(), &RootConfig::default()).unwrap();
        assert_eq!(e.total, 0.0);
    }

    #[test]
    fn force_from_energy_is_consistent_across_steps() {
        // central differences of E^sp at two step sizes agree on the force
        let q = QuadratureConfig::default().with_rel_tol(1e-8);
        let root = RootConfig::default();
        let l0 = C / WP;
        let fd = |h: f64| {
            let ep = plasmon_energy(&triple_b(1.0 + h), &q, &root).unwrap().total;
            let em = plasmon_energy(&triple_b(1.0 - h), &q, &root).unwrap().total;
            -(ep - em) / (2.0 * h * l0)
        };
        let f1 = fd(1e-3);
        let f2 = fd(5e-4);
        assert_relative_eq!(f1, f2, max_relative = 1e-3);
    }
}
