//! Embedding a classical generator into a Lindblad specification with
//! H = 0 and L_{xy} = √(M_{xy}) |x⟩⟨y|: diagonal density matrices evolve
//! exactly like probability vectors, and constancy verdicts agree across
//! the embedding.
//!
//! Run with `cargo run --example classical_embedding`.

use ndarray::array;
use noether_qds::harness::classical_embedding;
use noether_qds::qds::{lindblad_schrodinger, matrix_unit};
use noether_qds::{
    check_constant, hat_diag, noether_check, transition, validate_generator, RandomVariable,
    ToleranceConfig,
};

fn main() -> noether_qds::Result<()> {
    let cfg = ToleranceConfig::default();
    let generator = validate_generator(array![[-1.0, 1.0], [1.0, -1.0]], &cfg)?;
    let spec = classical_embedding(&generator);
    let quantum_generator = lindblad_schrodinger(&spec);

    println!("two-state chain, start in state 0; closed form p₀(t) = (1 + e^(-2t))/2");
    println!("{:>5}  {:>12}  {:>12}  {:>12}", "t", "classical", "quantum", "closed form");
    for t in [0.0, 0.25, 1.0, 3.0] {
        let classical = transition(&generator, t)?[(0, 0)];
        let quantum = quantum_generator
            .exp(t)?
            .apply(&matrix_unit(2, 0, 0))[(0, 0)]
            .re;
        let exact = 0.5 * (1.0 + (-2.0 * t).exp());
        println!("{t:>5}  {classical:>12.9}  {quantum:>12.9}  {exact:>12.9}");
    }

    for (label, values) in [("A = (4, 4)", array![4.0, 4.0]), ("A = (1, 2)", array![1.0, 2.0])] {
        let a = RandomVariable::new(values)?;
        let classical_verdict = check_constant(&a, &generator, &cfg)?.is_constant();
        let a_hat = noether_qds::linops::complexify(&hat_diag(&a));
        let quantum_verdict = noether_check(&a_hat, &spec, &cfg)?.is_constant();
        println!(
            "\n{label}: classical constant = {classical_verdict}, hat_diag(A) quantum constant = {quantum_verdict}"
        );
    }
    Ok(())
}
