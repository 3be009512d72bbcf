//! Modular flow of a faithful state: ϱ̂^{it} A ϱ̂^{−it} puts phases
//! (p/(1−p))^{it} on the off-diagonals of σ_x while preserving their
//! modulus, and its commutation with the Heisenberg semigroup is reported
//! on a time grid (a diagnostic, not an assertion).
//!
//! Run with `cargo run --example modular_flow`.

use ndarray::array;
use num_complex::Complex64 as C64;
use noether_qds::harness::NamedExample;
use noether_qds::noether::modular_commutation_residual;
use noether_qds::qds::{lindblad_heisenberg, pauli_x, DensityMatrix};
use noether_qds::{modular_flow, ToleranceConfig};

fn main() -> noether_qds::Result<()> {
    let cfg = ToleranceConfig::default();
    let p = 0.3;
    let rho = DensityMatrix::new(
        array![
            [C64::new(p, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(1.0 - p, 0.0)]
        ],
        &cfg,
    )?;

    println!("ϱ̂ = diag({p}, {}), A = σ_x", 1.0 - p);
    for t in [0.0, 0.5, 1.0, 2.0] {
        let out = modular_flow(&rho, t, &pauli_x(), &cfg)?;
        let z = out[(0, 1)];
        println!(
            "  t = {t:>3}: (σ_t A)[0,1] = {:+.4}{:+.4}i  (modulus {:.6})",
            z.re,
            z.im,
            z.norm()
        );
    }

    // commutation with the dephasing Heisenberg semigroup, whose stationary
    // state is I/2; rows are flow times s, columns are semigroup times t
    let spec = NamedExample::Dephasing.spec();
    let heisenberg = lindblad_heisenberg(&spec);
    let mixed = DensityMatrix::maximally_mixed(2);
    let grid = [0.1, 0.5, 1.0, 5.0];
    println!("\n‖[σ_s, 𝒥_t]‖_F under dephasing with ϱ̂ = I/2 (s down, t across):");
    for s in grid {
        let row: Vec<String> = grid
            .iter()
            .map(|&t| {
                let r = modular_commutation_residual(&mixed, &heisenberg, s, t, &cfg).unwrap();
                format!("{r:.2e}")
            })
            .collect();
        println!("  s = {s:>3}: {}", row.join("  "));
    }
    Ok(())
}
