//! The conditional expectation onto the constants of a dephasing semigroup
//! is the diagonal pinching: off-diagonal observables project to zero,
//! diagonal ones are fixed, and the module identity
//! tr{ϱ̂ M Ê[A|𝔐]} = tr{ϱ̂ M A} holds over the fixed-point basis.
//!
//! Run with `cargo run --example conditional_expectation`.

use ndarray::array;
use num_complex::Complex64 as C64;
use noether_qds::harness::NamedExample;
use noether_qds::linops::trace;
use noether_qds::qds::{lindblad_heisenberg, lindblad_schrodinger, pauli_x};
use noether_qds::{conditional_expectation, fixed_points, stationary_state, ToleranceConfig};

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn main() -> noether_qds::Result<()> {
    let cfg = ToleranceConfig::default();
    let spec = NamedExample::Dephasing.spec();
    let heisenberg = lindblad_heisenberg(&spec);
    let schrodinger = lindblad_schrodinger(&spec);

    let rho_hat = stationary_state(&schrodinger, &cfg)?.candidate;
    let fixed = fixed_points(&heisenberg, &cfg)?;

    let observables = [
        ("σ_x", pauli_x()),
        ("diag(2, 5)", array![[re(2.0), re(0.0)], [re(0.0), re(5.0)]]),
        (
            "generic",
            array![
                [re(1.0), C64::new(0.5, -0.25)],
                [C64::new(0.5, 0.25), re(-2.0)]
            ],
        ),
    ];
    for (label, a) in observables {
        let ea = conditional_expectation(&a, &heisenberg, &cfg)?;
        println!("A = {label}:");
        println!(
            "  Ê[A|𝔐] = [[{:+.4}{:+.4}i, {:+.4}{:+.4}i], [{:+.4}{:+.4}i, {:+.4}{:+.4}i]]",
            ea[(0, 0)].re, ea[(0, 0)].im, ea[(0, 1)].re, ea[(0, 1)].im,
            ea[(1, 0)].re, ea[(1, 0)].im, ea[(1, 1)].re, ea[(1, 1)].im,
        );
        let worst = fixed
            .basis()
            .iter()
            .map(|m| {
                let lhs = trace(&rho_hat.matrix().dot(m).dot(&ea));
                let rhs = trace(&rho_hat.matrix().dot(m).dot(&a));
                (lhs - rhs).norm()
            })
            .fold(0.0_f64, f64::max);
        println!("  module identity residual over the fixed basis: {worst:.3e}\n");
    }
    Ok(())
}
