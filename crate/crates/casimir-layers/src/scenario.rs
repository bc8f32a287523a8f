//! Named scenarios behind the `casimir-layers` binary: dispersion-branch
//! exports, energy decompositions, force sweeps and a generic config-driven
//! sweep, all emitted as CSV.
//!
//! Every writer formats numbers with 17 significant digits in scientific
//! notation, and all sweeps assemble their rows in grid order regardless of
//! how the worker pool schedules them, so re-running a command with the same
//! configuration produces byte-identical output.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use crate::constants::C;
use crate::dielectric::DielectricModel;
use crate::error::{Error, Result};
use crate::hamaker::{hamaker_constant, short_distance_force, ForceConvention};
use crate::lifshitz::{lifshitz_force, perfect_mirror_energy, TriLayer};
use crate::numerics::{QuadratureConfig, RootConfig};
use crate::plasmon_energy::{energy_breakdown, short_distance_force_slope};
use crate::surface_modes::{coupled_branches, gap_sector, single_plasmon, PlasmaTriple, Sector};

/// Environment variable that may point to a TOML file with additional
/// material presets (`name = { model = "...", ... }` entries).
pub const PRESETS_ENV: &str = "CASIMIR_LAYERS_PRESETS";

/// Outcome of a scenario run: how many data rows were written and which grid
/// points failed (empty = full success).
#[derive(Debug, Clone)]
pub struct RunReport {
    pub rows: usize,
    /// One entry per failed point: "point id: error".
    pub failures: Vec<String>,
}

impl RunReport {
    pub fn all_converged(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Distance-grid spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    Linear,
    Log,
}

/// A one-dimensional grid of gap widths (meters).
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// Smallest distance, m.
    pub min: f64,
    /// Largest distance, m.
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.min > 0.0) || !self.min.is_finite() {
            return Err(Error::Config(format!("grid.min must be positive, got {}", self.min)));
        }
        if !(self.max >= self.min) || !self.max.is_finite() {
            return Err(Error::Config(format!(
                "grid.max must be >= grid.min, got {} < {}",
                self.max, self.min
            )));
        }
        if self.count < 2 {
            return Err(Error::Config(format!("grid.count must be >= 2, got {}", self.count)));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.min + t * (self.max - self.min),
                    Spacing::Log => self.min * (self.max / self.min).powf(t),
                }
            })
            .collect()
    }
}

/// A material given either by preset name or by inline model parameters.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MaterialSpec {
    Preset(String),
    Inline(DielectricModel),
}

/// Additional presets from the file named by [`PRESETS_ENV`], if set.
pub fn extra_presets() -> Result<BTreeMap<String, DielectricModel>> {
    let Some(path) = std::env::var_os(PRESETS_ENV) else {
        return Ok(BTreeMap::new());
    };
    let text = std::fs::read_to_string(&path).map_err(|e| {
        Error::Config(format!("cannot read preset file {}: {e}", Path::new(&path).display()))
    })?;
    toml::from_str(&text)
        .map_err(|e| Error::Config(format!("invalid preset file {}: {e}", Path::new(&path).display())))
}

impl MaterialSpec {
    pub fn resolve(&self) -> Result<DielectricModel> {
        let model = match self {
            MaterialSpec::Inline(m) => *m,
            MaterialSpec::Preset(name) => match DielectricModel::preset(name) {
                Some(m) => m,
                None => *extra_presets()?.get(name).ok_or_else(|| {
                    Error::Config(format!(
                        "unknown material preset {name:?} (built-ins: {})",
                        DielectricModel::preset_names().join(", ")
                    ))
                })?,
            },
        };
        model.validate()?;
        Ok(model)
    }
}

/// Which per-distance quantities a sweep emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputQuantity {
    Force,
    Energy,
    EtaForce,
    EtaEnergy,
    Hamaker,
}

fn default_outputs() -> Vec<OutputQuantity> {
    vec![OutputQuantity::Force, OutputQuantity::EtaForce]
}

/// Config file contents for the generic sweep.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Body 1, gap medium, body 3.
    pub stack: [MaterialSpec; 3],
    pub grid: GridSpec,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputQuantity>,
    /// Relative tolerance override for the quadratures.
    #[serde(default)]
    pub rel_tol: Option<f64>,
    /// Output path; a CLI `--out` flag takes precedence.
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig =
            toml::from_str(text).map_err(|e| Error::Config(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if self.outputs.is_empty() {
            return Err(Error::Config("outputs must not be empty".into()));
        }
        for m in &self.stack {
            m.resolve()?;
        }
        if let Some(t) = self.rel_tol {
            QuadratureConfig::default().with_rel_tol(t).validate()?;
        }
        Ok(())
    }

    pub fn resolve_stack(&self) -> Result<[DielectricModel; 3]> {
        Ok([self.stack[0].resolve()?, self.stack[1].resolve()?, self.stack[2].resolve()?])
    }
}

/// 17-significant-digit scientific notation: lossless f64 round-trip, stable
/// across runs.
fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

fn sector_name(s: Sector) -> &'static str {
    match s {
        Sector::Evanescent => "evanescent",
        Sector::Propagative => "propagative",
    }
}

/// Frequency scale used for the dimensionless dispersion exports; the plasma
/// model has no intrinsic scale, so any value works and this one keeps the SI
/// intermediates in a comfortable float range.
const WP1: f64 = 1.0e16;

/// Dispersion-branch export: the two coupled branches, the two isolated
/// interface plasmons and the two sector-boundary curves for the thin-gap
/// case (a) α = 0.5, β = 1 and the dense-gap case (b) α = 5, β = 25, both at
/// Λ = 1. Columns: case, curve, k·c/ωp₁, ω/ωp₁, gap sector.
pub fn run_fig1(out: &Path, root: &RootConfig) -> Result<RunReport> {
    root.validate()?;
    let mut csv = String::from("case,curve,k_c_over_wp1,omega_over_wp1,gap_sector\n");
    let mut failures = Vec::new();
    let mut rows = 0usize;

    // log grid that also hits both branch tails
    let n = 240;
    let k_dimless: Vec<f64> =
        (0..n).map(|i| 1e-2 * (60.0f64 / 1e-2).powf(i as f64 / (n - 1) as f64)).collect();
    let k_grid: Vec<f64> = k_dimless.iter().map(|kd| kd * WP1 / C).collect();

    for (case, alpha, beta) in [("a", 0.5, 1.0), ("b", 5.0, 25.0)] {
        let triple = PlasmaTriple::new(WP1, alpha * WP1, beta * WP1, C / WP1)?;
        match coupled_branches(&triple, &k_grid, root) {
            Ok(br) => {
                for (curve, branch) in [("omega_minus", &br.lower), ("omega_plus", &br.upper)] {
                    for s in &branch.samples {
                        csv.push_str(&format!(
                            "{case},{curve},{},{},{}\n",
                            sci(s.k * C / WP1),
                            sci(s.omega / WP1),
                            sector_name(s.sector)
                        ));
                        rows += 1;
                    }
                }
            }
            Err(e) => failures.push(format!("fig1 case {case}: {e}")),
        }
        for &kd in &k_dimless {
            let k = kd * WP1 / C;
            let curves = [
                ("sp12", single_plasmon(WP1, alpha * WP1, k)),
                ("sp32", single_plasmon(beta * WP1, alpha * WP1, k)),
                // above this the mode leaks into the thinner body
                ("bound_limit", (kd * kd + beta.min(1.0).powi(2)).sqrt() * WP1),
                // q₂ = 0: evanescent/propagative boundary inside the gap
                ("gap_boundary", (kd * kd + alpha * alpha).sqrt() * WP1),
            ];
            for (curve, omega) in curves {
                csv.push_str(&format!(
                    "{case},{curve},{},{},{}\n",
                    sci(kd),
                    sci(omega / WP1),
                    sector_name(gap_sector(&triple, k, omega))
                ));
                rows += 1;
            }
        }
    }
    write_text(out, &csv)?;
    Ok(RunReport { rows, failures })
}

/// Energy-decomposition export for the dense-gap plasma triple
/// (ωp₂ = 5ωp₁, ωp₃ = 25ωp₁): reduction factors of the per-branch plasmon
/// energies, their sum, the photon remainder and the total Casimir energy on
/// a log grid of L/λp₁.
pub fn run_fig2(out: &Path, quad: &QuadratureConfig, root: &RootConfig) -> Result<RunReport> {
    quad.validate()?;
    root.validate()?;
    let lambda_p1 = 2.0 * std::f64::consts::PI * C / WP1;
    let n = 30;
    let xs: Vec<f64> =
        (0..n).map(|i| 5e-3 * (0.8f64 / 5e-3).powf(i as f64 / (n - 1) as f64)).collect();

    let results: Vec<_> = xs
        .par_iter()
        .map(|&x| -> Result<_> {
            let gap = x * lambda_p1;
            let triple = PlasmaTriple::new(WP1, 5.0 * WP1, 25.0 * WP1, gap)?;
            let b = energy_breakdown(&triple, quad, root)?;
            let e_c = perfect_mirror_energy(gap);
            Ok((b, e_c))
        })
        .collect();

    let mut csv = String::from(
        "l_over_lambda_p1,eta_plasmon_minus,eta_plasmon_plus,eta_plasmon,eta_photon,eta_total\n",
    );
    let mut failures = Vec::new();
    let mut rows = 0usize;
    for (&x, res) in xs.iter().zip(results) {
        match res {
            Ok((b, e_c)) => {
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    sci(x),
                    sci(b.plasmon_minus / e_c),
                    sci(b.plasmon_plus / e_c),
                    sci(b.eta_plasmon),
                    sci(b.eta_photon),
                    sci(b.eta_total)
                ));
                rows += 1;
            }
            Err(e) => failures.push(format!("fig2 L/lambda_p1 = {x:.6}: {e}")),
        }
    }
    write_text(out, &csv)?;
    Ok(RunReport { rows, failures })
}

/// Force reduction factors at short separations: the plasma toy model
/// (α = 5, β = 25) against L/λp₁ and the silica–bromobenzene–gold stack
/// against L/λp₁^eff, each next to its short-distance plasmon asymptote
/// η_F = slope·(L/λp₁).
pub fn run_fig3(out: &Path, quad: &QuadratureConfig) -> Result<RunReport> {
    quad.validate()?;
    let lambda_p1 = 2.0 * std::f64::consts::PI * C / WP1;
    let silica = DielectricModel::silica_2osc();
    let bromo = DielectricModel::bromobenzene_2osc();
    let gold = DielectricModel::gold_drude();
    let w_si = silica.effective_plasma_frequency()?;
    let w_br = bromo.effective_plasma_frequency()?;
    let w_au = gold.effective_plasma_frequency()?;
    let lambda_eff = 2.0 * std::f64::consts::PI * C / w_si;

    let toy_slope =
        short_distance_force_slope(&PlasmaTriple::new(WP1, 5.0 * WP1, 25.0 * WP1, 1e-9)?, quad)?;
    let real_slope =
        short_distance_force_slope(&PlasmaTriple::new(w_si, w_br, w_au, 1e-9)?, quad)?;

    let n = 40;
    let xs: Vec<f64> =
        (0..n).map(|i| 3e-3 * (3.5f64 / 3e-3).powf(i as f64 / (n - 1) as f64)).collect();

    let results: Vec<_> = xs
        .par_iter()
        .map(|&x| -> Result<_> {
            let toy = TriLayer::new(
                DielectricModel::Plasma { omega_p: WP1 },
                DielectricModel::Plasma { omega_p: 5.0 * WP1 },
                DielectricModel::Plasma { omega_p: 25.0 * WP1 },
                x * lambda_p1,
            )?;
            let real = TriLayer::new(silica, bromo, gold, x * lambda_eff)?;
            let eta_toy = lifshitz_force(&toy, quad)?.reduction_factor_force;
            let eta_real = lifshitz_force(&real, quad)?.reduction_factor_force;
            Ok((eta_toy, eta_real))
        })
        .collect();

    let mut csv = String::from(
        "l_over_lambda_p1,eta_f_plasma,eta_f_plasma_asymptote,eta_f_real,eta_f_real_asymptote\n",
    );
    let mut failures = Vec::new();
    let mut rows = 0usize;
    for (&x, res) in xs.iter().zip(results) {
        match res {
            Ok((eta_toy, eta_real)) => {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    sci(x),
                    sci(eta_toy),
                    sci(toy_slope * x),
                    sci(eta_real),
                    sci(real_slope * x)
                ));
                rows += 1;
            }
            Err(e) => failures.push(format!("fig3 L/lambda_p1 = {x:.6}: {e}")),
        }
    }
    write_text(out, &csv)?;
    Ok(RunReport { rows, failures })
}

/// Generic distance sweep over a configured stack.
pub fn run_sweep(
    cfg: &ScenarioConfig,
    out: &Path,
    quad: &QuadratureConfig,
    convention: ForceConvention,
) -> Result<RunReport> {
    cfg.validate()?;
    let [e1, e2, e3] = cfg.resolve_stack()?;
    let quad = match cfg.rel_tol {
        Some(t) => quad.with_rel_tol(t),
        None => *quad,
    };
    let wants = |q: OutputQuantity| cfg.outputs.contains(&q);
    let needs_lifshitz = cfg.outputs.iter().any(|q| *q != OutputQuantity::Hamaker);

    // the Hamaker constant does not depend on the distance: compute it once
    let hamaker = if wants(OutputQuantity::Hamaker) {
        Some(hamaker_constant(&TriLayer::new(e1, e2, e3, cfg.grid.min)?, &quad)?.h123)
    } else {
        None
    };

    let distances = cfg.grid.points();
    let results: Vec<_> = distances
        .par_iter()
        .map(|&gap| -> Result<_> {
            let stack = TriLayer::new(e1, e2, e3, gap)?;
            let force = if needs_lifshitz { Some(lifshitz_force(&stack, &quad)?) } else { None };
            Ok(force)
        })
        .collect();

    let mut header = vec!["distance_m".to_string()];
    for q in &cfg.outputs {
        match q {
            OutputQuantity::Force => header.push("force_N_per_m2".into()),
            OutputQuantity::Energy => header.push("energy_J_per_m2".into()),
            OutputQuantity::EtaForce => header.push("eta_force".into()),
            OutputQuantity::EtaEnergy => header.push("eta_energy".into()),
            OutputQuantity::Hamaker => {
                header.push("hamaker_J".into());
                header.push("hamaker_force_N_per_m2".into());
            }
        }
    }
    let mut csv = header.join(",");
    csv.push('\n');

    let mut failures = Vec::new();
    let mut rows = 0usize;
    for (&gap, res) in distances.iter().zip(results) {
        match res {
            Ok(force) => {
                let mut cols = vec![sci(gap)];
                for q in &cfg.outputs {
                    let f = force.as_ref();
                    match q {
                        OutputQuantity::Force => cols.push(sci(f.unwrap().force)),
                        OutputQuantity::Energy => cols.push(sci(f.unwrap().energy)),
                        OutputQuantity::EtaForce => cols.push(sci(f.unwrap().reduction_factor_force)),
                        OutputQuantity::EtaEnergy => {
                            cols.push(sci(f.unwrap().reduction_factor_energy));
                        }
                        OutputQuantity::Hamaker => {
                            let h = hamaker.unwrap();
                            cols.push(sci(h));
                            cols.push(sci(short_distance_force(h, gap, convention)));
                        }
                    }
                }
                csv.push_str(&cols.join(","));
                csv.push('\n');
                rows += 1;
            }
            Err(e) => failures.push(format!("sweep distance = {gap:.6e} m: {e}")),
        }
    }
    write_text(out, &csv)?;
    Ok(RunReport { rows, failures })
}

/// Human-readable listing of the built-in presets plus any loaded from the
/// [`PRESETS_ENV`] file.
pub fn materials_summary() -> Result<String> {
    let mut text = String::new();
    let mut describe = |name: &str, m: &DielectricModel| {
        text.push_str(&format!("{name}: {m:?}"));
        if let Ok(w) = m.effective_plasma_frequency() {
            text.push_str(&format!("  (effective plasma frequency {w:.4e} rad/s)"));
        }
        text.push('\n');
    };
    for name in DielectricModel::preset_names() {
        describe(name, &DielectricModel::preset(name).expect("built-in preset"));
    }
    for (name, m) in extra_presets()? {
        describe(&name, &m);
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp(name: &str) -> PathBuf {
        std::env::temp_dir().join(format!("casimir-layers-test-{name}-{}", std::process::id()))
    }

    #[test]
    fn grid_spec_points_and_validation() {
        let g = GridSpec { min: 1.0, max: 100.0, count: 3, spacing: Spacing::Log };
        assert_eq!(g.points(), vec![1.0, 10.0, 100.0]);
        let lin = GridSpec { min: 0.0, max: 1.0, count: 3, spacing: Spacing::Linear };
        assert!(lin.validate().is_err());
        assert!(GridSpec { min: 1.0, max: 2.0, count: 1, spacing: Spacing::Linear }
            .validate()
            .is_err());
    }

    #[test]
    fn config_parses_presets_and_inline_materials() {
        let cfg = ScenarioConfig::from_toml_str(
            r#"
            stack = [
                "silica-2osc",
                { model = "plasma", omega_p = 1.0e16 },
                "gold-drude",
            ]
            outputs = ["force", "eta-force", "hamaker"]

            [grid]
            min = 1.0e-9
            max = 1.0e-7
            count = 5
            spacing = "log"
            "#,
        )
        .unwrap();
        let [e1, e2, e3] = cfg.resolve_stack().unwrap();
        assert_eq!(e1, DielectricModel::silica_2osc());
        assert_eq!(e2, DielectricModel::Plasma { omega_p: 1.0e16 });
        assert_eq!(e3, DielectricModel::gold_drude());
        assert!(ScenarioConfig::from_toml_str("stack = 3").is_err());
    }

    #[test]
    fn unknown_preset_is_a_config_error() {
        let cfg = ScenarioConfig::from_toml_str(
            r#"
            stack = ["vacuum", "no-such-material", "vacuum"]
            [grid]
            min = 1.0e-9
            max = 1.0e-8
            count = 2
            spacing = "linear"
            "#,
        );
        assert!(matches!(cfg, Err(Error::Config(_))));
    }

    #[test]
    fn sweep_is_deterministic_and_converged() {
        let cfg = ScenarioConfig::from_toml_str(
            r#"
            stack = ["silica-2osc", "bromobenzene-2osc", "gold-drude"]
            outputs = ["force", "eta-force", "hamaker"]
            rel_tol = 1.0e-5
            [grid]
            min = 5.0e-9
            max = 5.0e-8
            count = 3
            spacing = "log"
            "#,
        )
        .unwrap();
        let quad = QuadratureConfig::default();
        let (p1, p2) = (tmp("sweep1"), tmp("sweep2"));
        let r1 = run_sweep(&cfg, &p1, &quad, ForceConvention::Paper).unwrap();
        let r2 = run_sweep(&cfg, &p2, &quad, ForceConvention::Paper).unwrap();
        assert!(r1.all_converged());
        assert_eq!(r1.rows, 3);
        assert_eq!(r2.rows, 3);
        let (b1, b2) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
        assert_eq!(b1, b2, "re-running the same sweep must be byte-identical");
        let text = String::from_utf8(b1).unwrap();
        assert!(text.starts_with("distance_m,force_N_per_m2,eta_force,hamaker_J,hamaker_force_N_per_m2\n"));
        // repulsive stack: negative eta and negative Hamaker constant
        let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
        assert!(row[2].parse::<f64>().unwrap() < 0.0);
        assert!(row[3].parse::<f64>().unwrap() < 0.0);
        let _ = (std::fs::remove_file(p1), std::fs::remove_file(p2));
    }

    #[test]
    fn materials_summary_lists_builtins() {
        let s = materials_summary().unwrap();
        for name in DielectricModel::preset_names() {
            assert!(s.contains(name), "{name} missing from {s}");
        }
    }
}
