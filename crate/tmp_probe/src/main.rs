use ndarray::prelude::*;
use ndarray_linalg::{Eigh, UPLO, Eig};
use num_complex::Complex64 as C64;

fn main() {
    let a = array![
        [C64::new(2.0, 0.0), C64::new(0.0, 1.0)],
        [C64::new(0.0, -1.0), C64::new(3.0, 0.0)]
    ];
    let (vals, vecs) = a.eigh(UPLO::Lower).unwrap();
    for k in 0..2 {
        for (tag, v) in [
            ("conj col", vecs.column(k).mapv(|z| z.conj())),
            ("conj row", vecs.row(k).mapv(|z| z.conj())),
        ] {
            let av = a.dot(&v);
            let lv = v.mapv(|z| z * C64::new(vals[k], 0.0));
            let resid: f64 = (&av - &lv).iter().map(|z| z.norm()).sum();
            println!("{tag} {k}: residual {resid:.3e}");
        }
    }
    // general eig convention too
    let (evals, evecs) = a.eig().unwrap();
    for k in 0..2 {
        let col = evecs.column(k).to_owned();
        let av = a.dot(&col);
        let lv = col.mapv(|z| z * evals[k]);
        let resid: f64 = (&av - &lv).iter().map(|z| z.norm()).sum();
        println!("eig col {k}: residual {resid:.3e}");
    }
}
