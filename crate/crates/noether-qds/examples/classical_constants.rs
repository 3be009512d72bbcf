//! Decide which random variables are constants of a classical Markov
//! generator: a reducible block chain next to an irreducible one.
//!
//! Run with `cargo run --example classical_constants`.

use ndarray::array;
use noether_qds::{
    check_constant, communication_classes, validate_generator, RandomVariable, ToleranceConfig,
};

fn main() -> noether_qds::Result<()> {
    let cfg = ToleranceConfig::default();

    // two-state chain coupled at rate 1, third state isolated
    let generator = validate_generator(
        array![[-1.0, 1.0, 0.0], [1.0, -1.0, 0.0], [0.0, 0.0, 0.0]],
        &cfg,
    )?;
    let classes = communication_classes(&generator);
    println!("communication classes: {:?}", classes.classes());

    for (label, values) in [
        ("A = (3, 3, 8), constant per class", array![3.0, 3.0, 8.0]),
        ("A = (1, 2, 3), generic", array![1.0, 2.0, 3.0]),
    ] {
        let a = RandomVariable::new(values)?;
        let report = check_constant(&a, &generator, &cfg)?;
        println!("\n{label}");
        println!("  distribution constant: {}", report.cond_distribution);
        println!("  moments constant:      {}", report.cond_moments);
        println!("  class-measurable:      {}", report.cond_measurable);
        println!(
            "  commutator [Â,M] = 0:  {} (residual {:.3e})",
            report.cond_commutator, report.residuals.commutator
        );
        println!("  => Noether constant:   {}", report.is_constant());
    }
    Ok(())
}
