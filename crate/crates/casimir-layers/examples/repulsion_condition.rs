//! Check the ε₁(iω) < ε₂(iω) < ε₃(iω) repulsion condition for the
//! silica–bromobenzene–gold stack and locate the frequencies where the
//! ordering changes.

use casimir_layers::dielectric::{check_repulsion_condition, ConditionOrdering};
use casimir_layers::{DielectricModel, TriLayer};

fn main() -> casimir_layers::Result<()> {
    let stack = TriLayer::new(
        DielectricModel::silica_2osc(),
        DielectricModel::bromobenzene_2osc(),
        DielectricModel::gold_drude(),
        1e-7,
    )?;

    // log grid over the frequency range where all three models disperse
    let n = 60;
    let grid: Vec<f64> =
        (0..n).map(|i| 1e14 * (1e17f64 / 1e14).powf(i as f64 / (n - 1) as f64)).collect();
    let report = check_repulsion_condition(&stack, &grid)?;

    println!("{:>12} {:>10} {:>10} {:>10}  ordering", "omega", "eps1", "eps2", "eps3");
    for s in report.samples.iter().step_by(6) {
        let label = match s.ordering {
            ConditionOrdering::Ascending => "1 < 2 < 3 (repulsive weight)",
            ConditionOrdering::Descending => "3 < 2 < 1 (repulsive weight)",
            ConditionOrdering::Neither => "mixed (attractive weight)",
        };
        println!("{:>12.3e} {:>10.4} {:>10.4} {:>10.4}  {label}", s.omega, s.eps1, s.eps2, s.eps3);
    }
    println!("\ncrossover frequencies (rad/s):");
    for w in &report.crossovers {
        println!("  {w:.4e}");
    }
    Ok(())
}
