//! Dense complex-matrix substrate: Hermiticity checks, spectral decomposition
//! with eigenvalue clustering, matrix functions, matrix exponential, nullspaces,
//! and operator-subspace geometry under the Hilbert-Schmidt inner product.
//!
//! Everything here is desk-scale (d up to a few dozen) dense linear algebra on
//! `Array2<Complex64>`, backed by LAPACK through `ndarray-linalg`.

mod expm;

pub use expm::matrix_exp;

use ndarray::prelude::*;
use ndarray_linalg::{Eigh, SVD, UPLO};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Dense complex matrix.
pub type CMat = Array2<C64>;
/// Dense complex vector.
pub type CVec = Array1<C64>;

/// Tolerances used by every numerical decision in the crate.
///
/// All fields are strictly positive. Defaults target double precision at
/// Hilbert-space dimensions up to ~16.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative Frobenius tolerance for `‖A − A*‖`.
    pub herm_tol: f64,
    /// Eigenvalues closer than `eig_cluster_tol · max(1, ‖A‖₂)` share a projector.
    pub eig_cluster_tol: f64,
    /// Singular values below `nullspace_tol · max(1, σ_max)` count as zero.
    pub nullspace_tol: f64,
    /// Threshold for commutator residuals.
    pub commute_tol: f64,
    /// Slack allowed below zero for probabilities and spectra.
    pub positivity_tol: f64,
    /// Threshold for span-membership and subspace-distance decisions.
    pub subspace_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            herm_tol: 1e-8,
            eig_cluster_tol: 1e-8,
            nullspace_tol: 1e-9,
            commute_tol: 1e-8,
            positivity_tol: 1e-9,
            subspace_tol: 1e-8,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.herm_tol,
            self.eig_cluster_tol,
            self.nullspace_tol,
            self.commute_tol,
            self.positivity_tol,
            self.subspace_tol,
        ];
        if fields.iter().any(|&t| t <= 0.0 || !t.is_finite()) {
            return Err(Error::InvalidInput(
                "all tolerances must be strictly positive and finite".into(),
            ));
        }
        Ok(())
    }
}

/// d×d identity.
pub fn identity(d: usize) -> CMat {
    Array2::eye(d).mapv(|x: f64| C64::new(x, 0.0))
}

/// Conjugate transpose.
pub fn dagger(a: &CMat) -> CMat {
    a.t().mapv(|z| z.conj())
}

/// Frobenius norm.
pub fn fro_norm(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `AB − BA`.
pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a.dot(b) - b.dot(a)
}

/// `tr(A)`.
pub fn trace(a: &CMat) -> C64 {
    a.diag().sum()
}

/// True iff every entry is finite.
pub fn all_finite(a: &CMat) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Promote a real matrix to complex.
pub fn complexify(a: &Array2<f64>) -> CMat {
    a.mapv(|x| C64::new(x, 0.0))
}

/// Dense inverse (LU).
pub fn invert(a: &CMat) -> Result<CMat> {
    use ndarray_linalg::Inverse;
    Ok(a.inv()?)
}

fn hermiticity_residual(a: &CMat) -> f64 {
    fro_norm(&(a - &dagger(a)))
}

/// A square matrix certified Hermitian within `herm_tol`.
#[derive(Debug, Clone)]
pub struct HermitianObservable {
    matrix: CMat,
}

impl HermitianObservable {
    /// Validates squareness, finiteness, and `‖A − A*‖_F ≤ herm_tol · max(1, ‖A‖_F)`.
    pub fn new(matrix: CMat, cfg: &ToleranceConfig) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "observable must be square, got {}×{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if !all_finite(&matrix) {
            return Err(Error::InvalidInput("observable has non-finite entries".into()));
        }
        let residual = hermiticity_residual(&matrix);
        let tol = cfg.herm_tol * f64::max(1.0, fro_norm(&matrix));
        if residual > tol {
            return Err(Error::NotHermitian { residual, tol });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `(A + A*)/2`, exactly Hermitian for downstream eigensolvers.
    pub fn hermitized(&self) -> CMat {
        (&self.matrix + &dagger(&self.matrix)).mapv(|z| z * 0.5)
    }
}

/// Eigenvalue–projector pairs `{(a, P_a)}` over the distinct (clustered)
/// spectrum of a Hermitian matrix, sorted by ascending eigenvalue.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub projectors: Vec<CMat>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.projectors.first().map_or(0, |p| p.nrows())
    }

    /// `Σ_a a P_a`.
    pub fn reconstruct(&self) -> CMat {
        let d = self.dim();
        let mut acc = CMat::zeros((d, d));
        for (a, p) in self.eigenvalues.iter().zip(&self.projectors) {
            acc = acc + p.mapv(|z| z * C64::new(*a, 0.0));
        }
        acc
    }

    /// `Σ_a f(a) P_a` for a scalar function on the spectrum.
    pub fn apply_function(&self, f: impl Fn(f64) -> C64) -> CMat {
        let d = self.dim();
        let mut acc = CMat::zeros((d, d));
        for (a, p) in self.eigenvalues.iter().zip(&self.projectors) {
            acc = acc + p.mapv(|z| z * f(*a));
        }
        acc
    }
}

/// Spectral decomposition with eigenvalue clustering: eigenvalues closer than
/// `eig_cluster_tol · max(1, ‖A‖₂)` are merged into a single projector, so
/// degenerate and near-degenerate eigenspaces pinch jointly.
pub fn spectral_decompose(
    a: &HermitianObservable,
    cfg: &ToleranceConfig,
) -> Result<SpectralDecomposition> {
    let (vals, vecs) = a.hermitized().eigh(UPLO::Lower)?;
    let d = a.dim();
    let spectral_radius = vals.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let gap = cfg.eig_cluster_tol * f64::max(1.0, spectral_radius);

    let mut eigenvalues = Vec::new();
    let mut projectors = Vec::new();
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && vals[end] - vals[end - 1] < gap {
            end += 1;
        }
        let cluster = &vals.as_slice().unwrap()[start..end];
        eigenvalues.push(cluster.iter().sum::<f64>() / cluster.len() as f64);
        let mut proj = CMat::zeros((d, d));
        for k in start..end {
            // zheev hands back conj(V): the eigenvectors are the conjugated
            // columns, so vv* reads conj(c)cᵀ here
            let v = vecs.column(k);
            for i in 0..d {
                for j in 0..d {
                    proj[(i, j)] += v[i].conj() * v[j];
                }
            }
        }
        projectors.push(proj);
        start = end;
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        projectors,
    })
}

/// `f(A)` by spectral calculus on a Hermitian matrix.
pub fn hermitian_function(
    a: &HermitianObservable,
    f: impl Fn(f64) -> C64,
    cfg: &ToleranceConfig,
) -> Result<CMat> {
    Ok(spectral_decompose(a, cfg)?.apply_function(f))
}

/// Orthonormal basis of the numerical kernel `{v : ‖Xv‖ ≤ nullspace_tol · max(1, σ_max) · ‖v‖}`.
///
/// Accepts rectangular input; rank decisions are made on singular values
/// relative to `σ_max`, so the test is scale invariant. Returns an empty list
/// when the kernel is trivial.
pub fn nullspace(x: &CMat, cfg: &ToleranceConfig) -> Result<Vec<CVec>> {
    let n = x.ncols();
    if n == 0 {
        return Ok(Vec::new());
    }
    let (_, s, vt) = x.svd(false, true)?;
    let vt = vt.expect("requested Vt");
    let sigma_max = s.iter().fold(0.0_f64, |m, v| m.max(*v));
    let cut = cfg.nullspace_tol * f64::max(1.0, sigma_max);
    let mut basis = Vec::new();
    for j in 0..n {
        let sigma = if j < s.len() { s[j] } else { 0.0 };
        if sigma <= cut {
            // right singular vectors are the conjugated rows of V^H
            basis.push(vt.row(j).mapv(|z| z.conj()));
        }
    }
    Ok(basis)
}

/// An orthonormal (Hilbert–Schmidt) basis of a subspace of d×d operators,
/// with algebra-closure flags evaluated against `subspace_tol`.
#[derive(Debug, Clone)]
pub struct OperatorSubspace {
    dim_hilbert: usize,
    basis: Vec<CMat>,
    pub closed_under_adjoint: bool,
    pub closed_under_product: bool,
    pub contains_identity: bool,
}

/// Column-major stacking of a square operator: `vec(X)[j·d + i] = X[i,j]`.
///
/// This is the one vectorization convention used everywhere; it satisfies
/// `vec(ASB) = (Bᵀ ⊗ A) vec(S)`.
pub fn vec_op(m: &CMat) -> CVec {
    let d = m.nrows();
    let mut v = CVec::zeros(d * d);
    for j in 0..d {
        for i in 0..d {
            v[j * d + i] = m[(i, j)];
        }
    }
    v
}

/// Inverse of [`vec_op`].
pub fn unvec_op(v: &CVec, d: usize) -> CMat {
    let mut m = CMat::zeros((d, d));
    for j in 0..d {
        for i in 0..d {
            m[(i, j)] = v[j * d + i];
        }
    }
    m
}

impl OperatorSubspace {
    /// Orthonormalizes the span of `ops` under `⟨X,Y⟩ = tr(X*Y)` and evaluates
    /// the closure flags. Rank decisions follow `subspace_tol`.
    pub fn from_operators(
        dim_hilbert: usize,
        ops: &[CMat],
        cfg: &ToleranceConfig,
    ) -> Result<Self> {
        for op in ops {
            if op.nrows() != dim_hilbert || op.ncols() != dim_hilbert {
                return Err(Error::DimensionMismatch(format!(
                    "operator is {}×{}, subspace lives in dimension {}",
                    op.nrows(),
                    op.ncols(),
                    dim_hilbert
                )));
            }
        }
        if ops.is_empty() {
            return Ok(Self::empty(dim_hilbert));
        }
        let d2 = dim_hilbert * dim_hilbert;
        let mut stacked = CMat::zeros((d2, ops.len()));
        for (k, op) in ops.iter().enumerate() {
            stacked.column_mut(k).assign(&vec_op(op));
        }
        let (u, s, _) = stacked.svd(true, false)?;
        let u = u.expect("requested U");
        let sigma_max = s.iter().fold(0.0_f64, |m, v| m.max(*v));
        let cut = cfg.subspace_tol * f64::max(1.0, sigma_max);
        let mut basis = Vec::new();
        for (j, sigma) in s.iter().enumerate() {
            if *sigma > cut {
                basis.push(unvec_op(&u.column(j).to_owned(), dim_hilbert));
            }
        }
        Ok(Self::from_orthonormal(dim_hilbert, basis, cfg))
    }

    /// Wraps vectors that are already orthonormal (e.g. kernel bases) without
    /// re-orthonormalizing.
    pub fn from_orthonormal_vecs(
        dim_hilbert: usize,
        vecs: &[CVec],
        cfg: &ToleranceConfig,
    ) -> Self {
        let basis = vecs.iter().map(|v| unvec_op(v, dim_hilbert)).collect();
        Self::from_orthonormal(dim_hilbert, basis, cfg)
    }

    fn from_orthonormal(dim_hilbert: usize, basis: Vec<CMat>, cfg: &ToleranceConfig) -> Self {
        let mut sub = Self {
            dim_hilbert,
            basis,
            closed_under_adjoint: false,
            closed_under_product: false,
            contains_identity: false,
        };
        sub.evaluate_flags(cfg);
        sub
    }

    fn empty(dim_hilbert: usize) -> Self {
        Self {
            dim_hilbert,
            basis: Vec::new(),
            closed_under_adjoint: true,
            closed_under_product: true,
            contains_identity: false,
        }
    }

    fn evaluate_flags(&mut self, cfg: &ToleranceConfig) {
        self.contains_identity = self.contains(&identity(self.dim_hilbert), cfg);
        self.closed_under_adjoint = self
            .basis
            .iter()
            .all(|b| self.contains(&dagger(b), cfg));
        self.closed_under_product = self.basis.iter().all(|a| {
            self.basis
                .iter()
                .all(|b| self.contains(&a.dot(b), cfg))
        });
    }

    pub fn dim_hilbert(&self) -> usize {
        self.dim_hilbert
    }

    /// Dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMat] {
        &self.basis
    }

    /// Orthogonal projection of `op` onto the span.
    pub fn project(&self, op: &CMat) -> CMat {
        let mut acc = CMat::zeros((self.dim_hilbert, self.dim_hilbert));
        for b in &self.basis {
            // ⟨B, op⟩ B
            let coeff = dagger(b).dot(op).diag().sum();
            acc = acc + b.mapv(|z| z * coeff);
        }
        acc
    }

    /// `‖op − P(op)‖_F / max(1, ‖op‖_F)`.
    pub fn residual(&self, op: &CMat) -> f64 {
        let diff = op - &self.project(op);
        fro_norm(&diff) / f64::max(1.0, fro_norm(op))
    }

    pub fn contains(&self, op: &CMat, cfg: &ToleranceConfig) -> bool {
        self.residual(op) <= cfg.subspace_tol
    }

    /// d²×d² orthogonal projector onto the span (in the vectorized picture).
    pub fn projector(&self) -> CMat {
        let d2 = self.dim_hilbert * self.dim_hilbert;
        let mut p = CMat::zeros((d2, d2));
        for b in &self.basis {
            let v = vec_op(b);
            for i in 0..d2 {
                for j in 0..d2 {
                    p[(i, j)] += v[i] * v[j].conj();
                }
            }
        }
        p
    }
}

/// Frobenius norm of the difference of the orthogonal projectors onto the two
/// spans: zero iff the spans coincide, independent of basis rotations.
pub fn subspace_distance(u: &OperatorSubspace, v: &OperatorSubspace) -> Result<f64> {
    if u.dim_hilbert != v.dim_hilbert {
        return Err(Error::DimensionMismatch(format!(
            "subspaces live in dimensions {} and {}",
            u.dim_hilbert, v.dim_hilbert
        )));
    }
    let diff = u.projector() - v.projector();
    Ok(fro_norm(&diff))
}
