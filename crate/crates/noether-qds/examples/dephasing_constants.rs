//! The quantum Noether check under dephasing (H = 0, L = σ_z): σ_z passes
//! all three equivalent criteria, σ_x fails all three.
//!
//! Run with `cargo run --example dephasing_constants`.

use noether_qds::harness::NamedExample;
use noether_qds::qds::{pauli_x, pauli_z};
use noether_qds::{noether_check, ToleranceConfig};

fn main() -> noether_qds::Result<()> {
    let cfg = ToleranceConfig::default();
    let spec = NamedExample::Dephasing.spec();

    for (label, a) in [("σ_z", pauli_z()), ("σ_x", pauli_x())] {
        let report = noether_check(&a, &spec, &cfg)?;
        println!("observable {label} under dephasing:");
        println!(
            "  fixed point of 𝒥_t: {} (residual {:.3e})",
            report.is_fixed_point, report.fixed_point_residual
        );
        println!(
            "  hat-map commutes:   {} (residual {:.3e})",
            report.hat_commutes, report.hat_residual
        );
        println!(
            "  in commutant:       {} (residual {:.3e})",
            report.in_commutant, report.commutant_residual
        );
        println!("  postulate (P):      {}", report.postulate_p_holds);
        println!("  => Noether constant: {}\n", report.is_constant());
    }
    Ok(())
}
