//! Sweep the Lifshitz force over distance for the repulsive
//! silica–bromobenzene–gold stack and compare its magnitude with gold
//! mirrors across vacuum.

use casimir_layers::{lifshitz_force, DielectricModel, QuadratureConfig, TriLayer};

fn main() -> casimir_layers::Result<()> {
    let quad = QuadratureConfig::default();
    let repulsive = TriLayer::new(
        DielectricModel::silica_2osc(),
        DielectricModel::bromobenzene_2osc(),
        DielectricModel::gold_drude(),
        1e-9,
    )?;
    let gold = DielectricModel::gold_drude();
    let mirrors = TriLayer::new(gold, DielectricModel::Vacuum, gold, 1e-9)?;

    println!(
        "{:>10} {:>14} {:>10} {:>14} {:>8}",
        "L (nm)", "F (N/m^2)", "eta_F", "F_AuVacAu", "ratio"
    );
    for i in 0..=12 {
        let gap = 10e-9 * (1000.0f64 / 10.0).powf(i as f64 / 12.0);
        let rep = lifshitz_force(&repulsive.with_gap(gap)?, &quad)?;
        let att = lifshitz_force(&mirrors.with_gap(gap)?, &quad)?;
        println!(
            "{:>10.1} {:>14.4e} {:>10.4} {:>14.4e} {:>8.4}",
            gap * 1e9,
            rep.force,
            rep.reduction_factor_force,
            att.force,
            rep.force.abs() / att.force.abs()
        );
    }
    println!("\npositive F (negative eta_F) means the bodies repel");
    Ok(())
}
