//! Postulate (P) decisions for the named examples: does a faithful
//! stationary state exist? The ergodic-projection candidate is cross-checked
//! against a long-window time average of the evolved maximally mixed state.
//!
//! Run with `cargo run --example stationary_states`.

use noether_qds::harness::{time_averaged_state, NamedExample};
use noether_qds::linops::identity;
use noether_qds::qds::lindblad_schrodinger;
use noether_qds::{stationary_state, ToleranceConfig};
use num_complex::Complex64 as C64;

fn main() -> noether_qds::Result<()> {
    let cfg = ToleranceConfig::default();
    for example in NamedExample::all() {
        let spec = example.spec();
        let d = spec.dim();
        let generator = lindblad_schrodinger(&spec);
        let report = stationary_state(&generator, &cfg)?;

        let mixed = identity(d).mapv(|z| z / C64::new(d as f64, 0.0));
        let averaged = time_averaged_state(&generator, &mixed, 100.0, 200.0, 4000)?;
        let cross_check = (&averaged - report.candidate.matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0_f64, f64::max);

        println!("{}:", example.name());
        println!("  stationary kernel dimension: {}", report.kernel_dim);
        println!("  candidate min eigenvalue:    {:.6e}", report.min_eigenvalue);
        println!(
            "  postulate (P):               {}",
            if report.postulate_p_holds { "holds" } else { "fails" }
        );
        println!("  time-average cross-check:    {cross_check:.3e}");
        println!("  candidate ϱ̂:");
        for i in 0..d {
            let row: Vec<String> = (0..d)
                .map(|j| {
                    let z = report.candidate.matrix()[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            println!("    [{}]", row.join(", "));
        }
        println!();
    }
    Ok(())
}
