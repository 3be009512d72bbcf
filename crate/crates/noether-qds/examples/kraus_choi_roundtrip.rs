//! Channel representations: Kraus set → superoperator → Choi → Kraus set,
//! CP/trace-preservation flags, and the transpose map rejected as not
//! completely positive.
//!
//! Run with `cargo run --example kraus_choi_roundtrip`.

use ndarray::array;
use num_complex::Complex64 as C64;
use noether_qds::harness::random_complex;
use noether_qds::linops::fro_norm;
use noether_qds::qds::{is_cp_trace_preserving, kraus_to_superop, superop_to_kraus, KrausSet, SuperOperator};
use noether_qds::ToleranceConfig;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> noether_qds::Result<()> {
    let cfg = ToleranceConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    // a random 4-operator channel on d = 3 (not trace-preserving, still CP)
    let kraus = KrausSet::new((0..4).map(|_| random_complex(3, &mut rng)).collect())?;
    let superop = kraus_to_superop(&kraus);
    let recovered = superop_to_kraus(&superop, &cfg)?;
    let rebuilt = kraus_to_superop(&recovered);
    println!(
        "round trip: {} Kraus operators in, {} out, superoperator deviation {:.3e}",
        kraus.operators().len(),
        recovered.operators().len(),
        fro_norm(&(superop.mat() - rebuilt.mat())),
    );

    let report = is_cp_trace_preserving(&superop, &cfg)?;
    println!(
        "random channel: CP {}, trace-preserving {}, unital {}",
        report.choi_psd, report.trace_preserving, report.unital
    );

    // the transpose map on d = 2: positive but not completely positive
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let transpose = SuperOperator::new(
        2,
        array![
            [one, zero, zero, zero],
            [zero, zero, one, zero],
            [zero, one, zero, zero],
            [zero, zero, zero, one]
        ],
    )?;
    match superop_to_kraus(&transpose, &cfg) {
        Err(err) => println!("transpose map: {err}"),
        Ok(_) => println!("transpose map unexpectedly accepted"),
    }
    Ok(())
}
