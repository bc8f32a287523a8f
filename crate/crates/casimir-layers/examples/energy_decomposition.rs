//! Split the Casimir energy of an ascending plasma stack into the
//! renormalized surface-plasmon part and the photonic remainder.
//!
//! At short distances the (repulsive) plasmon term dominates; at larger
//! distances it turns attractive and the photon term carries the repulsion.

use casimir_layers::constants::C;
use casimir_layers::{energy_breakdown, PlasmaTriple, QuadratureConfig, RootConfig};

fn main() -> casimir_layers::Result<()> {
    let wp1 = 1.0e16;
    let quad = QuadratureConfig::default();
    let root = RootConfig::default();

    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12}",
        "Lambda", "eta_total", "eta_plasmon", "eta_photon", "E_sp (J/m^2)"
    );
    for lambda in [0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 4.0] {
        let triple = PlasmaTriple::new(wp1, 5.0 * wp1, 25.0 * wp1, lambda * C / wp1)?;
        let b = energy_breakdown(&triple, &quad, &root)?;
        println!(
            "{lambda:>8.2} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
            b.eta_total, b.eta_plasmon, b.eta_photon, b.plasmon
        );
    }
    println!("\nnegative eta_total at every distance: the stack always repels");
    Ok(())
}
