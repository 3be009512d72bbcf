//! Matrix exponential by scaling-and-squaring with Padé approximants,
//! after Higham, "The Scaling and Squaring Method for the Matrix Exponential
//! Revisited", for dense complex matrices.

// the θ table keeps Higham's published digits
#![allow(clippy::excessive_precision)]

use ndarray_linalg::{Factorize, Solve};
use num_complex::Complex64 as C64;

use super::{all_finite, identity, CMat};
use crate::error::{Error, Result};

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539398330063230e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

/// `e^{tX}` for square complex `X` and finite real `t`.
pub fn matrix_exp(x: &CMat, t: f64) -> Result<CMat> {
    if x.nrows() != x.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "matrix exponential needs a square matrix, got {}×{}",
            x.nrows(),
            x.ncols()
        )));
    }
    if !t.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite time {t}")));
    }
    if !all_finite(x) {
        return Err(Error::InvalidInput(
            "matrix exponential input has non-finite entries".into(),
        ));
    }
    expm(&x.mapv(|z| z * C64::new(t, 0.0)))
}

pub(crate) fn expm(a: &CMat) -> Result<CMat> {
    let norm = one_norm(a);
    if norm <= THETA_3 {
        return pade(a, &PADE_3);
    }
    if norm <= THETA_5 {
        return pade(a, &PADE_5);
    }
    if norm <= THETA_7 {
        return pade(a, &PADE_7);
    }
    if norm <= THETA_9 {
        return pade(a, &PADE_9);
    }
    let squarings = ((norm / THETA_13).log2().ceil()).max(0.0) as u32;
    let scaled = a.mapv(|z| z * C64::new(2f64.powi(-(squarings as i32)), 0.0));
    let mut result = pade13(&scaled)?;
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    Ok(result)
}

fn one_norm(a: &CMat) -> f64 {
    let mut max = 0.0_f64;
    for j in 0..a.ncols() {
        let col_sum: f64 = a.column(j).iter().map(|z| z.norm()).sum();
        max = max.max(col_sum);
    }
    max
}

const PADE_3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE_5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE_7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const PADE_9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn re(c: f64) -> C64 {
    C64::new(c, 0.0)
}

/// Evaluates the [m/m] Padé approximant with coefficient table `b`:
/// U = A·(odd part), V = even part, result = (V − U)⁻¹ (V + U).
fn pade(a: &CMat, b: &[f64]) -> Result<CMat> {
    let d = a.nrows();
    let a2 = a.dot(a);
    let mut even = identity(d).mapv(|z| z * re(b[0]));
    let mut odd = identity(d).mapv(|z| z * re(b[1]));
    let mut pow = identity(d);
    for k in (2..b.len()).step_by(2) {
        pow = pow.dot(&a2);
        even = even + pow.mapv(|z| z * re(b[k]));
        if k + 1 < b.len() {
            odd = odd + pow.mapv(|z| z * re(b[k + 1]));
        }
    }
    let u = a.dot(&odd);
    solve_pade(&even, &u)
}

fn pade13(a: &CMat) -> Result<CMat> {
    let b = &PADE_13;
    let d = a.nrows();
    let a2 = a.dot(a);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);
    let u_inner = a6.mapv(|z| z * re(b[13]))
        + a4.mapv(|z| z * re(b[11]))
        + a2.mapv(|z| z * re(b[9]));
    let u_poly = a6.dot(&u_inner)
        + a6.mapv(|z| z * re(b[7]))
        + a4.mapv(|z| z * re(b[5]))
        + a2.mapv(|z| z * re(b[3]))
        + identity(d).mapv(|z| z * re(b[1]));
    let u = a.dot(&u_poly);
    let v_inner = a6.mapv(|z| z * re(b[12]))
        + a4.mapv(|z| z * re(b[10]))
        + a2.mapv(|z| z * re(b[8]));
    let v = a6.dot(&v_inner)
        + a6.mapv(|z| z * re(b[6]))
        + a4.mapv(|z| z * re(b[4]))
        + a2.mapv(|z| z * re(b[2]))
        + identity(d).mapv(|z| z * re(b[0]));
    solve_pade(&v, &u)
}

/// Solves (V − U) X = (V + U) column by column from one LU factorization.
fn solve_pade(v: &CMat, u: &CMat) -> Result<CMat> {
    let d = v.nrows();
    let denom = v - u;
    let numer = v + u;
    let lu = denom.factorize()?;
    let mut x = CMat::zeros((d, d));
    for j in 0..d {
        let col = lu.solve(&numer.column(j).to_owned())?;
        x.column_mut(j).assign(&col);
    }
    Ok(x)
}
