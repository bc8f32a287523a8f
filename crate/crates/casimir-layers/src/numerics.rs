//! Shared numerical kernels: globally adaptive Gauss–Kronrod quadrature on
//! finite and semi-infinite intervals, a safeguarded Brent root finder, and
//! the exponential integral E₁.
//!
//! Every quadrature returns a [`Quadrature`] carrying both the value and an
//! error estimate; callers are expected to look at the estimate rather than
//! treat the value as exact.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Tolerances and budget for adaptive quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    /// Relative tolerance on the integral value.
    pub rel_tol: f64,
    /// Absolute floor below which the result is accepted regardless of the
    /// relative criterion (in the units of the result).
    pub abs_floor: f64,
    /// Maximum bisection depth: panels are never narrower than
    /// `span / 2^max_depth`.
    pub max_depth: u32,
    /// Scale `s` of the rational map `x = s·t/(1−t)` used by
    /// [`integrate_semi_infinite`]; half the quadrature nodes land below it.
    /// In the units of the integration variable.
    pub compression_scale: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-6, abs_floor: 1e-18, max_depth: 40, compression_scale: 1.0 }
    }
}

impl QuadratureConfig {
    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }

    pub fn with_abs_floor(self, abs_floor: f64) -> Self {
        Self { abs_floor, ..self }
    }

    pub fn with_compression_scale(self, compression_scale: f64) -> Self {
        Self { compression_scale, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::Domain(format!("rel_tol {} not in (0, 1)", self.rel_tol)));
        }
        if self.max_depth < 4 {
            return Err(Error::Domain(format!("max_depth {} < 4", self.max_depth)));
        }
        if !(self.compression_scale > 0.0) || !self.compression_scale.is_finite() {
            return Err(Error::Domain(format!(
                "compression_scale {} must be positive",
                self.compression_scale
            )));
        }
        Ok(())
    }
}

/// Tolerances for bracketed root finding.
#[derive(Debug, Clone, Copy)]
pub struct RootConfig {
    /// Relative tolerance on the root location.
    pub rel_tol: f64,
    /// Iteration cap for the safeguarded secant/bisection hybrid.
    pub max_iter: usize,
    /// Number of uniform scan steps used when bracketing dispersion roots.
    pub scan_steps: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-13, max_iter: 200, scan_steps: 400 }
    }
}

impl RootConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::Domain(format!("rel_tol {} not in (0, 1)", self.rel_tol)));
        }
        if self.scan_steps < 16 {
            return Err(Error::Domain(format!("scan_steps {} < 16", self.scan_steps)));
        }
        Ok(())
    }
}

/// A quadrature result: value plus error estimate.
#[derive(Debug, Clone, Copy)]
#[must_use = "the error estimate must be inspected, not discarded"]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_207,
    0.949_107_912_342_758_524_526,
    0.864_864_423_359_769_072_789,
    0.741_531_185_599_394_439_864,
    0.586_087_235_467_691_130_295,
    0.405_845_151_377_397_166_907,
    0.207_784_955_007_898_467_601,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_964,
    0.063_092_092_629_978_553_291,
    0.104_790_010_322_250_183_840,
    0.140_653_259_715_525_918_745,
    0.169_004_726_639_267_902_827,
    0.190_350_578_064_785_409_913,
    0.204_432_940_075_298_892_414,
    0.209_482_141_084_727_828_013,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_271,
    0.279_705_391_489_276_667_901,
    0.381_830_050_505_118_944_950,
    0.417_959_183_673_469_387_755,
];

struct PanelEval {
    value: f64,
    error: f64,
    resabs: f64,
}

/// One Gauss–Kronrod 15 evaluation on [a, b], with the GSL-style error rescale.
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> PanelEval {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let mut fv_lo = [0.0f64; 7];
    let mut fv_hi = [0.0f64; 7];
    let fc = f(centre);
    for j in 0..7 {
        let dx = half * XGK[j];
        fv_lo[j] = f(centre - dx);
        fv_hi[j] = f(centre + dx);
    }

    let mut resg = WG[3] * fc;
    let mut resk = WGK[7] * fc;
    let mut resabs = resk.abs();
    for j in 0..3 {
        let idx = 2 * j + 1;
        let sum = fv_lo[idx] + fv_hi[idx];
        resg += WG[j] * sum;
        resk += WGK[idx] * sum;
        resabs += WGK[idx] * (fv_lo[idx].abs() + fv_hi[idx].abs());
    }
    for j in 0..4 {
        let idx = 2 * j;
        let sum = fv_lo[idx] + fv_hi[idx];
        resk += WGK[idx] * sum;
        resabs += WGK[idx] * (fv_lo[idx].abs() + fv_hi[idx].abs());
    }

    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv_lo[j] - reskh).abs() + (fv_hi[j] - reskh).abs());
    }

    let value = resk * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let raw_err = ((resk - resg) * half).abs();

    let mut error = raw_err;
    if resasc != 0.0 && error != 0.0 {
        let scale = (200.0 * error / resasc).powf(1.5);
        error = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }

    PanelEval { value, error, resabs }
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

const INITIAL_PANELS: usize = 16;
const MAX_PANELS: usize = 30_000;

/// Globally adaptive integration of `f` on the finite interval `[a, b]`.
///
/// The worst panel (largest error estimate) is bisected until the summed
/// error estimate drops under `max(rel_tol·|I|, abs_floor)` or the budget is
/// exhausted, in which case a [`Error::Convergence`] carrying the partial
/// value is returned.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Quadrature> {
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("non-finite integration bounds".into()));
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0 });
    }

    let span = b - a;
    let min_width = span.abs() / 2f64.powi(cfg.max_depth.min(60) as i32);

    let mut heap = BinaryHeap::with_capacity(256);
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut total_resabs = 0.0;
    for i in 0..INITIAL_PANELS {
        let pa = a + span * i as f64 / INITIAL_PANELS as f64;
        let pb = a + span * (i + 1) as f64 / INITIAL_PANELS as f64;
        let ev = gk15(&mut f, pa, pb);
        total += ev.value;
        total_err += ev.error;
        total_resabs += ev.resabs;
        heap.push(Panel { a: pa, b: pb, value: ev.value, error: ev.error });
    }

    loop {
        let tol = (cfg.rel_tol * total.abs())
            .max(cfg.abs_floor)
            .max(50.0 * f64::EPSILON * total_resabs);
        if total_err <= tol {
            return Ok(Quadrature { value: total, error: total_err });
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => return Err(Error::Convergence { value: total, error: total_err }),
        };
        if heap.len() + 2 > MAX_PANELS || (worst.b - worst.a).abs() <= min_width {
            return Err(Error::Convergence { value: total, error: total_err });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk15(&mut f, worst.a, mid);
        let right = gk15(&mut f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_resabs += 0.0; // resabs of children is bounded by the parent's; keep the initial scale
        heap.push(Panel { a: worst.a, b: mid, value: left.value, error: left.error });
        heap.push(Panel { a: mid, b: worst.b, value: right.value, error: right.error });
    }
}

/// Integration of a decaying `f` on `(0, ∞)` via the rational compression
/// `x = s·t/(1−t)` with `s = cfg.compression_scale`, which places half of the
/// nodes below that scale.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    cfg: &QuadratureConfig,
) -> Result<Quadrature> {
    let scale = cfg.compression_scale;
    integrate(
        |t| {
            if t >= 1.0 || t <= 0.0 {
                return 0.0;
            }
            let om = 1.0 - t;
            let x = scale * t / om;
            let jac = scale / (om * om);
            f(x) * jac
        },
        0.0,
        1.0,
        cfg,
    )
}

/// Brent's method: find a root of `g` known to lie in `[lo, hi]`.
///
/// The returned point never leaves the initial bracket. Fails with
/// [`Error::Bracket`] if `g(lo)` and `g(hi)` have the same sign.
pub fn find_root_bracketed<F: FnMut(f64) -> f64>(
    mut g: F,
    lo: f64,
    hi: f64,
    cfg: &RootConfig,
) -> Result<f64> {
    cfg.validate()?;
    let mut a = lo;
    let mut b = hi;
    let mut fa = g(a);
    let mut fb = g(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket { lo, hi });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..cfg.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * cfg.rel_tol * b.abs().max(f64::MIN_POSITIVE);
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic interpolation
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = g(b);
    }
    Err(Error::Convergence { value: b, error: (c - b).abs() })
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponential integral E₁(x) = ∫₁^∞ e^{−xt}/t dt for x > 0.
///
/// Power series for x ≤ 1, modified Lentz continued fraction otherwise.
pub fn expint_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("expint_e1 requires x > 0, got {x}")));
    }
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for n in 1..=60 {
            term *= -x / n as f64;
            let contrib = -term / n as f64;
            sum += contrib;
            if contrib.abs() < 1e-18 * sum.abs().max(1e-30) {
                break;
            }
        }
        Ok(-EULER_GAMMA - x.ln() + sum)
    } else {
        // E1(x) = e^{-x} * 1/(x+1- 1²/(x+3- 2²/(x+5- ...)))
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..200 {
            let an = -(i as f64) * (i as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        Ok(h * (-x).exp())
    }
}
