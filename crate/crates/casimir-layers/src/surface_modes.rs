//! Surface-plasmon dispersion relations for plasma-model stacks.
//!
//! All three layers are described by real-frequency plasma permittivities
//! ε_j(ω) = 1 − ωp_j²/ω². A TM surface mode of the cavity is bound when it is
//! evanescent in both bodies, q_j² = k² − ε_j ω²/c² > 0 for j = 1, 3; inside
//! the gap it may be either evanescent (q₂² > 0) or propagative (q₂² < 0).
//! The implicit dispersion relation of the coupled modes is
//!
//! (ε₂q₁ + ε₁q₂)(ε₂q₃ + ε₃q₂) − e^{−2q₂L} (ε₂q₁ − ε₁q₂)(ε₂q₃ − ε₃q₂) = 0.
//!
//! Internally each factor is multiplied by ω², which removes the 1/ω²
//! divergence of the plasma permittivity and leaves a residual that is smooth
//! down to ω → 0. Frequencies are scaled by ωp₁ and wave vectors by ωp₁/c, so
//! the solver sees only the contrast ratios α = ωp₂/ωp₁, β = ωp₃/ωp₁ and the
//! dimensionless gap Λ = ωp₁L/c.

use crate::constants::C;
use crate::error::{Error, Result};
use crate::numerics::{find_root_bracketed, RootConfig};

/// Three plasma layers: body `omega_p1` | gap `omega_p2` of width `gap` |
/// body `omega_p3`. All frequencies rad/s, gap in meters. `omega_p2` and
/// `omega_p3` may be zero (vacuum); `omega_p1` sets the scale and must be
/// positive.
#[derive(Debug, Clone, Copy)]
pub struct PlasmaTriple {
    pub omega_p1: f64,
    pub omega_p2: f64,
    pub omega_p3: f64,
    /// Gap width L in meters.
    pub gap: f64,
}

impl PlasmaTriple {
    pub fn new(omega_p1: f64, omega_p2: f64, omega_p3: f64, gap: f64) -> Result<Self> {
        if !(omega_p1 > 0.0) || !omega_p1.is_finite() {
            return Err(Error::Domain("omega_p1 must be positive (it sets the frequency scale)".into()));
        }
        if omega_p2 < 0.0 || omega_p3 < 0.0 || !omega_p2.is_finite() || !omega_p3.is_finite() {
            return Err(Error::Domain("plasma frequencies must be non-negative".into()));
        }
        if !(gap > 0.0) || !gap.is_finite() {
            return Err(Error::Domain(format!("gap width must be positive, got {gap}")));
        }
        Ok(Self { omega_p1, omega_p2, omega_p3, gap })
    }

    /// Gap/body-1 plasma frequency ratio ωp₂/ωp₁.
    pub fn alpha(&self) -> f64 {
        self.omega_p2 / self.omega_p1
    }

    /// Body-3/body-1 plasma frequency ratio ωp₃/ωp₁.
    pub fn beta(&self) -> f64 {
        self.omega_p3 / self.omega_p1
    }

    /// Dimensionless gap width Λ = ωp₁L/c.
    pub fn lambda(&self) -> f64 {
        self.omega_p1 * self.gap / C
    }

    pub(crate) fn toy(&self) -> ToyModel {
        ToyModel { alpha: self.alpha(), beta: self.beta(), lambda: self.lambda() }
    }
}

/// Whether the mode field oscillates or decays across the gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// q₂² > 0: the field decays exponentially inside the gap.
    Evanescent,
    /// q₂² < 0: the field oscillates inside the gap (guided wave).
    Propagative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchKind {
    /// The low-frequency coupled mode; at large k it converges to the single
    /// 1|2 interface plasmon.
    Lower,
    /// The high-frequency coupled mode; at large k it converges to the single
    /// 3|2 interface plasmon.
    Upper,
}

#[derive(Debug, Clone, Copy)]
pub struct ModeSample {
    /// Wave vector, rad/m.
    pub k: f64,
    /// Mode frequency, rad/s.
    pub omega: f64,
    pub sector: Sector,
}

#[derive(Debug, Clone)]
pub struct ModeBranch {
    pub kind: BranchKind,
    pub samples: Vec<ModeSample>,
    /// Wave vector (rad/m) below which this branch is not bound (it leaks
    /// into body 1), when such an onset exists.
    pub onset_k: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CoupledBranches {
    pub lower: ModeBranch,
    pub upper: ModeBranch,
    /// True when all three plasma frequencies coincide, so there are no
    /// interfaces and no modes.
    pub zero_contrast: bool,
}

/// Dimensionless toy model: frequencies w = ω/ωp₁, wave vectors κ = kc/ωp₁.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ToyModel {
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
}

/// A dispersion root at one wave vector.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Root {
    pub w: f64,
    pub sector: Sector,
}

impl ToyModel {
    /// Frequency above which the mode leaks into the less dense body,
    /// w² = κ² + min(1, β²).
    pub fn bound_limit(&self, kd: f64) -> f64 {
        (kd * kd + self.beta.powi(2).min(1.0)).sqrt()
    }

    /// Frequency where q₂ changes character, w² = κ² + α².
    pub fn gap_boundary(&self, kd: f64) -> f64 {
        (kd * kd + self.alpha * self.alpha).sqrt()
    }

    pub fn sector(&self, kd: f64, w: f64) -> Sector {
        if w <= self.gap_boundary(kd) {
            Sector::Evanescent
        } else {
            Sector::Propagative
        }
    }

    /// Single-interface plasmon between plasma frequencies `ob` and `og`
    /// (dimensionless), evaluated in a cancellation-free form:
    /// w² = ½[ob² + og² − d²/(2κ² + √(4κ⁴ + d²))], d = ob² − og².
    fn single(ob: f64, og: f64, kd: f64) -> f64 {
        let d = ob * ob - og * og;
        let k2 = kd * kd;
        let w2 = 0.5 * (ob * ob + og * og - d * d / (2.0 * k2 + (4.0 * k2 * k2 + d * d).sqrt()));
        w2.max(0.0).sqrt()
    }

    /// Isolated 1|2 interface plasmon frequency.
    pub fn s12(&self, kd: f64) -> f64 {
        Self::single(1.0, self.alpha, kd)
    }

    /// Isolated 3|2 interface plasmon frequency.
    pub fn s32(&self, kd: f64) -> f64 {
        Self::single(self.beta, self.alpha, kd)
    }

    /// Residual of the dispersion relation in the gap-evanescent sector,
    /// normalized to O(1). Each factor carries a w² to stay finite at w → 0.
    fn residual_evanescent(&self, kd: f64, w: f64) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        let k2 = kd * kd;
        let w2 = w * w;
        let q1 = (k2 + 1.0 - w2).max(0.0).sqrt();
        let q2 = (k2 + a * a - w2).max(0.0).sqrt();
        let q3 = (k2 + b * b - w2).max(0.0).sqrt();
        let e1 = w2 - 1.0;
        let e2 = w2 - a * a;
        let e3 = w2 - b * b;
        let fa = (e2 * q1 + e1 * q2) * (e2 * q3 + e3 * q2);
        let fb = (e2 * q1 - e1 * q2) * (e2 * q3 - e3 * q2);
        let damp = (-2.0 * q2 * self.lambda).exp();
        // normalize by the factor magnitudes, which stay O(1) at a root
        // (|fa| itself vanishes there, and would turn the residual into a
        // noise ratio for nearly degenerate pairs at large kΛ)
        let norm = ((e2 * q1).abs() + (e1 * q2).abs())
            * ((e2 * q3).abs() + (e3 * q2).abs())
            * (1.0 + damp);
        if norm == 0.0 {
            return 0.0;
        }
        (fa - damp * fb) / norm
    }

    /// Residual in the gap-propagative sector (q₂ = iu): the relation
    /// Z − e^{−2iuΛ}Z̄ = 0 reduces to Im(Z e^{iuΛ}) = 0 with
    /// Z = (w²ε₂ q₁ + i w²ε₁ u)(w²ε₂ q₃ + i w²ε₃ u).
    fn residual_propagative(&self, kd: f64, w: f64) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        let k2 = kd * kd;
        let w2 = w * w;
        let q1 = (k2 + 1.0 - w2).max(0.0).sqrt();
        let q3 = (k2 + b * b - w2).max(0.0).sqrt();
        let u = (w2 - k2 - a * a).max(0.0).sqrt();
        let e1 = w2 - 1.0;
        let e2 = w2 - a * a;
        let e3 = w2 - b * b;
        let (zr1, zi1) = (e2 * q1, e1 * u);
        let (zr3, zi3) = (e2 * q3, e3 * u);
        let zr = zr1 * zr3 - zi1 * zi3;
        let zi = zr1 * zi3 + zr3 * zi1;
        let norm = zr.hypot(zi);
        if norm == 0.0 {
            return 0.0;
        }
        let (s, c) = (u * self.lambda).sin_cos();
        (zr * s + zi * c) / norm
    }

    pub fn residual(&self, kd: f64, w: f64) -> f64 {
        match self.sector(kd, w) {
            Sector::Evanescent => self.residual_evanescent(kd, w),
            Sector::Propagative => self.residual_propagative(kd, w),
        }
    }

    /// Onset wave vector of the upper branch for a gap denser than body 1
    /// (β ≥ α > 1): the solution of q₁ = 0, in closed form
    /// w² = (α² + β²f)/(1 + f), f = (√(α²−1)/√(β²−1))·tanh(Λ√(α²−1)),
    /// κ₊ = √(w² − 1).
    pub fn k_plus(&self) -> Option<f64> {
        let (a, b, l) = (self.alpha, self.beta, self.lambda);
        if !(a > 1.0 && b > 1.0) {
            return None;
        }
        let f = ((a * a - 1.0).sqrt() / (b * b - 1.0).sqrt()) * (l * (a * a - 1.0).sqrt()).tanh();
        let w2 = (a * a + b * b * f) / (1.0 + f);
        Some((w2 - 1.0).sqrt())
    }

    /// Wave vector where a branch crosses the q₂ = 0 sector boundary in the
    /// thin-gap configuration α < 1, α < β (the only ordering with a
    /// gap-propagative window below the bound limit):
    /// κ₊² = uv(u + v)/(u + v + Λuv), u = √(1−α²), v = √(β²−α²).
    pub fn p_plus(&self) -> Option<f64> {
        let (a, b, l) = (self.alpha, self.beta, self.lambda);
        if !(a < 1.0 && a < b) {
            return None;
        }
        let u = (1.0 - a * a).sqrt();
        let v = (b * b - a * a).sqrt();
        Some((u * v * (u + v) / (u + v + l * u * v)).sqrt())
    }

    /// All bound-mode frequencies at dimensionless wave vector `kd`, sorted
    /// ascending.
    pub fn roots(&self, kd: f64, cfg: &RootConfig) -> Vec<Root> {
        let wm = self.bound_limit(kd);
        let wb = self.gap_boundary(kd);
        let mut sectors: Vec<(f64, f64, Sector)> = Vec::with_capacity(2);
        if wb < wm {
            sectors.push((0.0, wb, Sector::Evanescent));
            sectors.push((wb, wm, Sector::Propagative));
        } else {
            sectors.push((0.0, wm, Sector::Evanescent));
        }

        let mut found: Vec<Root> = Vec::new();
        for (lo, hi, sector) in sectors {
            let span = hi - lo;
            if span <= 0.0 {
                continue;
            }
            // keep the margin tiny: near the leakage onset the genuine root
            // sits within ~(kd − k₊) of the sector edge, and trimming it
            // away would replace it with the pinned boundary value
            let margin = 1e-13 * span;
            let (slo, shi) = (lo + margin, hi - margin);

            let mut pts: Vec<f64> = (0..=cfg.scan_steps)
                .map(|i| slo + (shi - slo) * i as f64 / cfg.scan_steps as f64)
                .collect();
            // cluster around the single-interface curves, where nearly
            // degenerate root pairs hide, and against the upper boundary,
            // where a branch sits just below its leakage threshold
            for wc in [self.s12(kd), self.s32(kd)] {
                if wc > slo && wc < shi {
                    pts.push(wc);
                    for j in 2..=13 {
                        let d = wc * 10f64.powi(-j);
                        for p in [wc - d, wc + d] {
                            if p > slo && p < shi {
                                pts.push(p);
                            }
                        }
                    }
                }
            }
            for j in 2..=12 {
                let p = hi - span * 10f64.powi(-j);
                if p > slo && p < shi {
                    pts.push(p);
                }
            }
            pts.sort_by(f64::total_cmp);
            pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * b.abs());

            let res = |w: f64| match sector {
                Sector::Evanescent => self.residual_evanescent(kd, w),
                Sector::Propagative => self.residual_propagative(kd, w),
            };
            let mut prev_w = pts[0];
            let mut prev_r = res(prev_w);
            for &w in &pts[1..] {
                let r = res(w);
                if prev_r == 0.0 {
                    found.push(Root { w: prev_w, sector });
                } else if r != 0.0 && prev_r.signum() != r.signum() {
                    if let Ok(root) = find_root_bracketed(res, prev_w, w, cfg) {
                        found.push(Root { w: root, sector });
                    }
                }
                prev_w = w;
                prev_r = r;
            }
        }
        found.sort_by(|a, b| a.w.total_cmp(&b.w));
        found.dedup_by(|a, b| (a.w - b.w).abs() <= 1e-8 * b.w.abs());
        found
    }

    /// The (lower, upper) coupled branch frequencies at `kd`, with the
    /// near-onset and near-degenerate fallbacks applied.
    ///
    /// The gap-evanescent sector holds at most the two plasmon branches, but
    /// a wide gap in its propagative sector also guides ordinary waveguide
    /// modes. Those are not plasmon branches: the upper plasmon continues
    /// into the propagative sector only as the *lowest* guided solution, so
    /// the selection below never walks up the waveguide ladder.
    pub fn branch_roots(&self, kd: f64, cfg: &RootConfig) -> (Option<Root>, Option<Root>) {
        let roots = self.roots(kd, cfg);
        let evan: Vec<Root> =
            roots.iter().copied().filter(|r| r.sector == Sector::Evanescent).collect();
        let prop: Vec<Root> =
            roots.iter().copied().filter(|r| r.sector == Sector::Propagative).collect();
        // k₊ is a true existence onset (below it the upper branch leaks into
        // body 1); the p₊ crossing merely moves a branch between sectors
        let upper_expected = match self.k_plus() {
            Some(kp) => kd >= kp,
            None => true,
        };

        // the lower branch stays below the single-interface curve and hence
        // below the q₂ = 0 boundary: it is always gap-evanescent (it can
        // still be lost to the solver when it is pinned against a sector
        // edge; the upper branch must not be discarded with it)
        let lower = evan.first().copied();
        if !upper_expected {
            return (lower, None);
        }
        // large-k saturation of the higher single-interface plasmon bounds
        // the upper branch from above
        let sat = self.s12(1e9).max(self.s32(1e9));
        // the upper branch runs through the gap-propagative window only
        // below the p₊ crossing; other propagative roots at larger k are
        // ordinary waveguide modes, not plasmons
        let in_prop_window = self.p_plus().is_some_and(|pp| kd <= pp);
        let near_crossing = self.p_plus().is_some_and(|pp| (kd - pp).abs() <= 1e-6 * pp);
        let upper = if near_crossing {
            // at the sector crossing the root sits on the q₂ = 0 boundary,
            // where both residual forms vanish identically and the scan
            // cannot bracket it; the closed-form p₊ pins it down instead
            Some(Root { w: self.gap_boundary(kd), sector: Sector::Evanescent })
        } else if evan.len() >= 2 {
            Some(evan[1])
        } else if let Some(&p) = prop
            .first()
            .filter(|p| in_prop_window && lower.is_none_or(|lo| p.w > lo.w))
        {
            Some(p)
        } else if self.alpha > 1.0 && self.bound_limit(kd) <= sat {
            // just above onset the upper root is pinned exponentially close
            // to the leakage boundary, beyond the solver's resolution
            Some(Root { w: self.bound_limit(kd), sector: Sector::Evanescent })
        } else if let Some(lo) = lower {
            let (s_lo, s_hi) = {
                let (a, b) = (self.s12(kd), self.s32(kd));
                (a.min(b), a.max(b))
            };
            if (s_hi - s_lo).abs() <= 1e-9 * sat {
                // degenerate-saturation stacks: the pair collapses onto a
                // single numerical root at large kΛ
                Some(lo)
            } else if (lo.w - s_hi).abs() < (lo.w - s_lo).abs() {
                // the lone surviving root rides the higher single-interface
                // curve, so it is the upper branch; the lower one has merged
                // into its own curve beyond the solver's resolution
                return (None, Some(lo));
            } else {
                None
            }
        } else {
            None
        };
        (lower, upper)
    }

    /// Slope dw²/dκ of a single-interface plasmon curve, from the closed
    /// form w² = ½[ob² + og² − d²/R], R = 2κ² + √(4κ⁴ + d²).
    fn single_slope(ob: f64, og: f64, kd: f64) -> f64 {
        let d = ob * ob - og * og;
        let k2 = kd * kd;
        let s = (4.0 * k2 * k2 + d * d).sqrt();
        let r = 2.0 * k2 + s;
        let r_prime = 4.0 * kd + 8.0 * kd * k2 / s;
        0.5 * d * d * r_prime / (r * r)
    }

    pub fn s12_slope(&self, kd: f64) -> f64 {
        Self::single_slope(1.0, self.alpha, kd)
    }

    pub fn s32_slope(&self, kd: f64) -> f64 {
        Self::single_slope(self.beta, self.alpha, kd)
    }

    /// Slope dw²/dκ of a coupled branch at a gap-evanescent root (κ, w), by
    /// implicit differentiation of the dispersion relation. Both partial
    /// derivatives are multiplied through by 4q₁q₂²q₃ so the expression stays
    /// finite on the q₁ = 0 onset and the q₂/q₃ = 0 boundaries. Returns a
    /// non-finite value at a degenerate (double) root, where the slope is
    /// not determined by first derivatives.
    pub fn dw2_dk_evanescent(&self, kd: f64, w: f64) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        let k2 = kd * kd;
        let w2 = w * w;
        let q1 = (k2 + 1.0 - w2).max(0.0).sqrt();
        let q2 = (k2 + a * a - w2).max(0.0).sqrt();
        let q3 = (k2 + b * b - w2).max(0.0).sqrt();
        let e1 = w2 - 1.0;
        let e2 = w2 - a * a;
        let e3 = w2 - b * b;
        let fa12 = e2 * q1 + e1 * q2;
        let fa32 = e2 * q3 + e3 * q2;
        let fb12 = e2 * q1 - e1 * q2;
        let fb32 = e2 * q3 - e3 * q2;
        let damp = (-2.0 * q2 * self.lambda).exp();
        // ∂/∂(w²) of each factor, times 2·(its pair of q's)
        let a_s = 2.0 * q1 * q2 * (q1 + q2) - e2 * q2 - e1 * q1;
        let b_s = 2.0 * q2 * q3 * (q2 + q3) - e2 * q2 - e3 * q3;
        let ab_s = 2.0 * q1 * q2 * (q1 - q2) - e2 * q2 + e1 * q1;
        let bb_s = 2.0 * q2 * q3 * (q3 - q2) - e2 * q2 + e3 * q3;
        // ∂/∂κ of each factor, times the same multipliers
        let a_k = 2.0 * kd * (e2 * q2 + e1 * q1);
        let b_k = 2.0 * kd * (e2 * q2 + e3 * q3);
        let ab_k = 2.0 * kd * (e2 * q2 - e1 * q1);
        let bb_k = 2.0 * kd * (e2 * q2 - e3 * q3);
        let lam = self.lambda;
        // both totals carry the overall multiplier 4q₁q₂²q₃
        let g_s = a_s * fa32 * (2.0 * q2 * q3) + b_s * fa12 * (2.0 * q1 * q2)
            - 4.0 * damp * lam * q1 * q2 * q3 * fb12 * fb32
            - damp * (ab_s * fb32 * (2.0 * q2 * q3) + bb_s * fb12 * (2.0 * q1 * q2));
        let g_k = a_k * fa32 * (2.0 * q2 * q3) + b_k * fa12 * (2.0 * q1 * q2)
            + 8.0 * damp * lam * kd * q1 * q2 * q3 * fb12 * fb32
            - damp * (ab_k * fb32 * (2.0 * q2 * q3) + bb_k * fb12 * (2.0 * q1 * q2));
        -g_k / g_s
    }
}

/// Surface plasmon at a single interface between plasma media with plasma
/// frequencies `omega_p_body` and `omega_p_gap` (rad/s), at wave vector `k`
/// (rad/m). Returns the mode frequency in rad/s.
pub fn single_plasmon(omega_p_body: f64, omega_p_gap: f64, k: f64) -> f64 {
    let scale = omega_p_body.max(omega_p_gap).max(1.0);
    ToyModel::single(omega_p_body / scale, omega_p_gap / scale, k * C / scale) * scale
}

/// Onset wave vector (rad/m) of the upper coupled branch when the gap is a
/// denser plasma than body 1 (β ≥ α > 1). Below it the branch leaks into
/// body 1.
pub fn onset_k_plus(triple: &PlasmaTriple) -> Result<f64> {
    triple.toy().k_plus().map(|kd| kd * triple.omega_p1 / C).ok_or_else(|| {
        Error::Configuration("upper-branch onset requires omega_p3 >= omega_p2 > omega_p1".into())
    })
}

/// Wave vector (rad/m) where a coupled branch crosses the q₂ = 0 boundary
/// between the gap-propagative and gap-evanescent sectors. Defined when the
/// gap is the optically thinnest plasma (α < 1, α < β).
pub fn onset_p_plus(triple: &PlasmaTriple) -> Result<f64> {
    triple.toy().p_plus().map(|kd| kd * triple.omega_p1 / C).ok_or_else(|| {
        Error::Configuration("sector crossing requires omega_p2 < omega_p1 and omega_p2 < omega_p3".into())
    })
}

/// Normalized residual of the coupled-mode dispersion relation at (`k`, `omega`)
/// in SI units. Zero (to solver accuracy) on a mode branch; O(1) elsewhere.
pub fn dispersion_residual(triple: &PlasmaTriple, k: f64, omega: f64) -> Result<f64> {
    if !(k > 0.0 && omega > 0.0) {
        return Err(Error::Domain("dispersion_residual requires k > 0 and omega > 0".into()));
    }
    let toy = triple.toy();
    Ok(toy.residual(k * C / triple.omega_p1, omega / triple.omega_p1))
}

/// Gap sector of the point (`k`, `omega`) in SI units.
pub fn gap_sector(triple: &PlasmaTriple, k: f64, omega: f64) -> Sector {
    triple.toy().sector(k * C / triple.omega_p1, omega / triple.omega_p1)
}

/// Field character in each of the three layers at one (k, ω) point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorClassification {
    pub body1: Sector,
    pub gap: Sector,
    pub body3: Sector,
}

/// Classify every layer at (`k`, `omega`) by the sign of
/// q_j² = k² − ω²/c² + ωp_j²/c².
pub fn classify_sectors(triple: &PlasmaTriple, k: f64, omega: f64) -> SectorClassification {
    let classify = |omega_p: f64| {
        let q2 = k * k - (omega / C).powi(2) + (omega_p / C).powi(2);
        if q2 >= 0.0 {
            Sector::Evanescent
        } else {
            Sector::Propagative
        }
    };
    SectorClassification {
        body1: classify(triple.omega_p1),
        gap: classify(triple.omega_p2),
        body3: classify(triple.omega_p3),
    }
}

/// Trace both coupled branches over a grid of wave vectors (rad/m).
///
/// Wave vectors where a branch does not exist (e.g. the upper branch below
/// its onset) are simply absent from that branch's samples.
pub fn coupled_branches(
    triple: &PlasmaTriple,
    k_grid: &[f64],
    cfg: &RootConfig,
) -> Result<CoupledBranches> {
    cfg.validate()?;
    if k_grid.iter().any(|&k| !(k > 0.0) || !k.is_finite()) {
        return Err(Error::Domain("wave vector grid must be positive and finite".into()));
    }
    let toy = triple.toy();
    let zero_contrast = toy.alpha == 1.0 && toy.beta == 1.0;
    let onset = toy.k_plus().map(|kd| kd * triple.omega_p1 / C);

    let mut lower = ModeBranch { kind: BranchKind::Lower, samples: Vec::new(), onset_k: None };
    let mut upper = ModeBranch { kind: BranchKind::Upper, samples: Vec::new(), onset_k: onset };
    if zero_contrast {
        return Ok(CoupledBranches { lower, upper, zero_contrast });
    }

    use rayon::prelude::*;
    let per_k: Vec<(Option<Root>, Option<Root>)> = k_grid
        .par_iter()
        .map(|&k| toy.branch_roots(k * C / triple.omega_p1, cfg))
        .collect();

    for (&k, (lo, up)) in k_grid.iter().zip(per_k) {
        if let Some(r) = lo {
            lower.samples.push(ModeSample { k, omega: r.w * triple.omega_p1, sector: r.sector });
        }
        if let Some(r) = up {
            upper.samples.push(ModeSample { k, omega: r.w * triple.omega_p1, sector: r.sector });
        }
    }
    Ok(CoupledBranches { lower, upper, zero_contrast })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const WP: f64 = 1.0e16;

    fn case_a() -> PlasmaTriple {
        // gap thinner than body 1, symmetric bodies
        PlasmaTriple::new(WP, 0.5 * WP, WP, C / WP).unwrap()
    }

    fn case_b() -> PlasmaTriple {
        // gap denser than body 1
        PlasmaTriple::new(WP, 5.0 * WP, 25.0 * WP, C / WP).unwrap()
    }

    #[test]
    fn dimensionless_parameters() {
        let t = case_b();
        assert_relative_eq!(t.alpha(), 5.0, max_relative = 1e-14);
        assert_relative_eq!(t.beta(), 25.0, max_relative = 1e-14);
        assert_relative_eq!(t.lambda(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn single_plasmon_limits() {
        // metal/vacuum: ω → ωp/√2 at large k, ω → ck on the light line
        let large = single_plasmon(WP, 0.0, 1e3 * WP / C);
        assert_relative_eq!(large, WP / 2f64.sqrt(), max_relative = 1e-5);
        let small_k = 1e-3 * WP / C;
        assert_relative_eq!(single_plasmon(WP, 0.0, small_k), C * small_k, max_relative = 1e-5);
        // two plasmas: large-k limit √((ωpb²+ωpg²)/2)
        let v = single_plasmon(25.0 * WP, 5.0 * WP, 1e4 * WP / C);
        assert_relative_eq!(v, WP * (325.0f64).sqrt(), max_relative = 1e-5);
    }

    #[test]
    fn coupled_roots_satisfy_the_dispersion_relation() {
        for t in [case_a(), case_b()] {
            let ks: Vec<f64> = (1..=10).map(|i| i as f64 * 2.0 * WP / C).collect();
            let br = coupled_branches(&t, &ks, &RootConfig::default()).unwrap();
            for s in br.lower.samples.iter().chain(&br.upper.samples) {
                let r = dispersion_residual(&t, s.k, s.omega).unwrap();
                assert!(r.abs() < 1e-6, "residual {r:e} at k = {:e}, omega = {:e}", s.k, s.omega);
            }
        }
    }

    #[test]
    fn wide_gap_decouples_into_single_interfaces() {
        // Λ = 40: interaction terms are e^{−2q₂Λ}-suppressed
        let t = PlasmaTriple::new(WP, 0.5 * WP, 2.0 * WP, 40.0 * C / WP).unwrap();
        let toy = t.toy();
        let cfg = RootConfig::default();
        for kd in [1.0, 2.0, 4.0] {
            let (lo, up) = toy.branch_roots(kd, &cfg);
            assert_relative_eq!(lo.unwrap().w, toy.s12(kd), max_relative = 1e-6);
            assert_relative_eq!(up.unwrap().w, toy.s32(kd), max_relative = 1e-6);
        }
    }

    #[test]
    fn symmetric_stack_splits_around_the_single_curve() {
        let t = case_a();
        let toy = t.toy();
        let cfg = RootConfig::default();
        for kd in [0.8, 1.5, 3.0] {
            let (lo, up) = toy.branch_roots(kd, &cfg);
            let (lo, up) = (lo.unwrap().w, up.unwrap().w);
            let s = toy.s12(kd); // = s32 for β = 1
            assert!(lo < s && s < up, "kd = {kd}: {lo} !< {s} !< {up}");
        }
    }

    #[test]
    fn upper_branch_onset_case_b() {
        let t = case_b();
        let toy = t.toy();
        let kp = toy.k_plus().unwrap();
        // forced analytically: f = √24/√624·tanh(√24), w² = (25+625f)/(1+f)
        let f = (24f64.sqrt() / 624f64.sqrt()) * 24f64.sqrt().tanh();
        let expected = ((25.0 + 625.0 * f) / (1.0 + f) - 1.0).sqrt();
        assert_relative_eq!(kp, expected, max_relative = 1e-14);

        // the closed form must agree with the full dispersion relation:
        // just above onset the upper root exists and hugs q₁ = 0
        let cfg = RootConfig::default();
        let (_, up) = toy.branch_roots(kp * 1.02, &cfg);
        let w = up.unwrap().w;
        let q1sq = (kp * 1.02).powi(2) + 1.0 - w * w;
        assert!(q1sq >= 0.0 && q1sq < 3.0, "q1² = {q1sq}");
        // well below onset there is no upper root
        let (_, none) = toy.branch_roots(kp * 0.5, &cfg);
        assert!(none.is_none());
        // SI wrapper
        assert_relative_eq!(onset_k_plus(&t).unwrap(), kp * WP / C, max_relative = 1e-14);
        assert!(onset_k_plus(&case_a()).is_err());
    }

    #[test]
    fn sector_crossing_case_a() {
        let t = case_a();
        let toy = t.toy();
        let pp = toy.p_plus().unwrap();
        let cfg = RootConfig::default();
        // the branch that crosses q₂ = 0 at p₊ changes sector there
        let below = toy.branch_roots(pp * 0.9, &cfg);
        let above = toy.branch_roots(pp * 1.1, &cfg);
        let sectors_below: Vec<_> =
            [below.0, below.1].iter().flatten().map(|r| r.sector).collect();
        let sectors_above: Vec<_> =
            [above.0, above.1].iter().flatten().map(|r| r.sector).collect();
        assert!(sectors_below.contains(&Sector::Propagative));
        assert!(!sectors_above.contains(&Sector::Propagative));
        assert!(onset_p_plus(&case_b()).is_err());
        assert!(onset_p_plus(&t).unwrap() > 0.0);
    }

    #[test]
    fn branches_are_monotone_in_k() {
        // the lower branch rises monotonically toward its saturation; the
        // upper branch may pass through a shallow minimum once the coupling
        // has decayed below the partner curve's own rise, so the quantity
        // that is monotone for *both* branches is the splitting from the
        // partner single-interface curve
        for t in [case_a(), case_b()] {
            let toy = t.toy();
            let ks: Vec<f64> = (1..=40).map(|i| 0.5 * i as f64 * WP / C).collect();
            let br = coupled_branches(&t, &ks, &RootConfig::default()).unwrap();
            let s = &br.lower.samples;
            assert!(s.len() >= 2, "lower branch has too few samples");
            for w in s.windows(2) {
                assert!(
                    w[1].omega >= w[0].omega * (1.0 - 1e-9),
                    "lower branch not rising near k = {:e}",
                    w[0].k
                );
            }
            let partners: [(&ModeBranch, fn(&ToyModel, f64) -> f64); 2] =
                [(&br.lower, ToyModel::s12), (&br.upper, ToyModel::s32)];
            for (branch, partner) in partners {
                assert!(branch.samples.len() >= 2, "{:?} has too few samples", branch.kind);
                let gaps: Vec<f64> = branch
                    .samples
                    .iter()
                    .map(|m| (m.omega / WP - partner(&toy, m.k * C / WP)).abs())
                    .collect();
                // the splitting rises to a single coupling peak and then
                // decays exponentially
                let peak = gaps
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.total_cmp(b.1))
                    .map(|(i, _)| i)
                    .unwrap();
                for (g, m) in gaps[peak..].windows(2).zip(&branch.samples[peak..]) {
                    assert!(
                        g[1] <= g[0] * (1.0 + 1e-6) + 1e-11,
                        "{:?} splitting not decaying near k = {:e}",
                        branch.kind,
                        m.k
                    );
                }
                assert!(
                    *gaps.last().unwrap() < 1e-2 * gaps[peak],
                    "{:?} splitting has not decayed by the last sample",
                    branch.kind
                );
            }
        }
    }

    #[test]
    fn large_k_limits_pair_lower_with_s12_and_upper_with_s32() {
        let t = case_b();
        let toy = t.toy();
        let cfg = RootConfig::default();
        let kd = 60.0;
        let (lo, up) = toy.branch_roots(kd, &cfg);
        assert_relative_eq!(lo.unwrap().w, toy.s12(kd), max_relative = 1e-3);
        assert_relative_eq!(up.unwrap().w, toy.s32(kd), max_relative = 1e-3);
    }

    #[test]
    fn zero_contrast_has_no_modes() {
        let t = PlasmaTriple::new(WP, WP, WP, C / WP).unwrap();
        let br = coupled_branches(&t, &[WP / C], &RootConfig::default()).unwrap();
        assert!(br.zero_contrast);
        assert!(br.lower.samples.is_empty() && br.upper.samples.is_empty());
    }

    #[test]
    fn classify_sectors_light_line_and_forbidden_zone() {
        // vacuum layer: the boundary is the light line ω = kc
        let t = PlasmaTriple::new(WP, 0.0, WP, C / WP).unwrap();
        let k = WP / C;
        assert_eq!(classify_sectors(&t, k, 0.99 * C * k).gap, Sector::Evanescent);
        assert_eq!(classify_sectors(&t, k, 1.01 * C * k).gap, Sector::Propagative);

        // configuration (b): a zone with q₂², q₃² > 0 but q₁² < 0 exists,
        // where no bound mode can live
        let b = case_b();
        let omega = (1.0f64 + 4.0).sqrt() * WP; // ω² = k²c² + (2ωp1)²
        let s = classify_sectors(&b, k, omega);
        assert_eq!(s.body1, Sector::Propagative);
        assert_eq!(s.gap, Sector::Evanescent);
        assert_eq!(s.body3, Sector::Evanescent);
        // and the solver indeed returns nothing there
        let toy = b.toy();
        assert!(toy.roots(1.0, &RootConfig::default()).iter().all(|r| r.w * r.w <= 1.0 + 1.0));
    }

    #[test]
    fn single_plasmon_small_k_tends_to_smaller_plasma_frequency() {
        // in the thin-gap configuration (gap ωp2 < body ωp1) the single 1|2
        // plasmon joins ωp2 at k → 0
        let w = single_plasmon(WP, 0.5 * WP, 1e-4 * WP / C);
        assert_relative_eq!(w, 0.5 * WP, max_relative = 1e-3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PlasmaTriple::new(0.0, WP, WP, 1e-7).is_err());
        assert!(PlasmaTriple::new(WP, -1.0, WP, 1e-7).is_err());
        assert!(PlasmaTriple::new(WP, WP, WP, 0.0).is_err());
        let t = case_a();
        assert!(dispersion_residual(&t, -1.0, WP).is_err());
    }
}

