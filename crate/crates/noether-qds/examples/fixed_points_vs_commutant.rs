//! The fixed-point algebra of a structured Lindblad semigroup equals the
//! commutant of {H, L_k, L_k*} whenever a faithful stationary state exists.
//!
//! The instance lives on ⊕_i (M_{n_i} ⊗ I_{m_i}); its commutant therefore
//! contains ⊕_i (I_{n_i} ⊗ M_{m_i}) by construction.
//!
//! Run with `cargo run --example fixed_points_vs_commutant`.

use noether_qds::harness::gen_structured_lindblad;
use noether_qds::linops::CMat;
use noether_qds::qds::{lindblad_heisenberg, lindblad_schrodinger};
use noether_qds::{commutant, fixed_points, stationary_state, subspace_distance, ToleranceConfig};

fn main() -> noether_qds::Result<()> {
    let cfg = ToleranceConfig::default();
    for (blocks, seed) in [
        (vec![(1usize, 2usize), (1, 1)], 5u64),
        (vec![(2, 2)], 9),
        (vec![(2, 1), (1, 2)], 3),
    ] {
        let spec = gen_structured_lindblad(&blocks, seed)?;
        let d = spec.dim();
        let schrodinger = lindblad_schrodinger(&spec);
        let heisenberg = lindblad_heisenberg(&spec);

        let stationary = stationary_state(&schrodinger, &cfg)?;
        let fixed = fixed_points(&heisenberg, &cfg)?;
        let mut generators: Vec<CMat> = vec![spec.hamiltonian().clone()];
        generators.extend(spec.lindblad_ops().iter().cloned());
        let comm = commutant(d, &generators, &cfg)?;

        println!("blocks {blocks:?} (d = {d}):");
        println!(
            "  postulate (P): {}",
            if stationary.postulate_p_holds { "holds" } else { "fails" }
        );
        println!(
            "  dim 𝔉 = {}, dim commutant = {}, distance = {:.3e}",
            fixed.dim(),
            comm.dim(),
            subspace_distance(&fixed, &comm)?
        );
        println!(
            "  fixed points closed under adjoint: {}, product: {}, contain I: {}\n",
            fixed.closed_under_adjoint, fixed.closed_under_product, fixed.contains_identity
        );
    }
    Ok(())
}
