//! Solve the coupled surface-plasmon dispersion relation for a plasma stack
//! and print both branches next to the isolated interface plasmons they
//! converge to at large wave vectors.

use casimir_layers::constants::C;
use casimir_layers::surface_modes::{onset_k_plus, single_plasmon, Sector};
use casimir_layers::{coupled_branches, PlasmaTriple, RootConfig};

fn main() -> casimir_layers::Result<()> {
    let wp1 = 1.0e16; // rad/s; the plasma model has no intrinsic scale
    let triple = PlasmaTriple::new(wp1, 5.0 * wp1, 25.0 * wp1, C / wp1)?; // Λ = 1

    let k_grid: Vec<f64> =
        (1..=60).map(|i| 0.5 * i as f64 * wp1 / C).collect();
    let branches = coupled_branches(&triple, &k_grid, &RootConfig::default())?;

    if let Some(k) = branches.upper.onset_k {
        println!(
            "upper branch leaks into body 1 below k = {:.4e} rad/m (closed form {:.4e})",
            k,
            onset_k_plus(&triple)?
        );
    }

    println!(
        "\n{:>8} {:>12} {:>12} {:>12} {:>12}",
        "k c/wp1", "w-/wp1", "sp12/wp1", "w+/wp1", "sp32/wp1"
    );
    for s in branches.lower.samples.iter().step_by(6) {
        let upper = branches
            .upper
            .samples
            .iter()
            .find(|u| u.k == s.k)
            .map_or_else(|| "  (leaky)".into(), |u| format!("{:>12.6}", u.omega / wp1));
        println!(
            "{:>8.2} {:>12.6} {:>12.6} {upper} {:>12.6}",
            s.k * C / wp1,
            s.omega / wp1,
            single_plasmon(wp1, 5.0 * wp1, s.k) / wp1,
            single_plasmon(25.0 * wp1, 5.0 * wp1, s.k) / wp1,
        );
        if s.sector == Sector::Propagative {
            println!("        (lower mode oscillates inside the gap here)");
        }
    }
    Ok(())
}
