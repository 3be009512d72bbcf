//! Quantum channels and dynamical semigroups: Kraus, Choi, and superoperator
//! representations, Lindblad generators in the Schrödinger and Heisenberg
//! pictures, semigroup evolution, and CP / trace-preservation checks.
//!
//! Superoperators act on column-stacked operators (see [`vec_op`]), so a
//! sandwich `S ↦ ASB` has matrix `Bᵀ ⊗ A` and a Kraus channel
//! `S ↦ Σ_k V_k S V_k*` has matrix `Σ_k conj(V_k) ⊗ V_k`.

use ndarray::linalg::kron;
use ndarray::prelude::*;
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linops::{
    all_finite, dagger, fro_norm, identity, matrix_exp, trace, vec_op, unvec_op, CMat,
    HermitianObservable, ToleranceConfig,
};

pub use crate::linops::{vec_op as vectorize, unvec_op as unvectorize};

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// σ_x.
pub fn pauli_x() -> CMat {
    array![[re(0.0), re(1.0)], [re(1.0), re(0.0)]]
}

/// σ_y.
pub fn pauli_y() -> CMat {
    array![
        [re(0.0), C64::new(0.0, -1.0)],
        [C64::new(0.0, 1.0), re(0.0)]
    ]
}

/// σ_z.
pub fn pauli_z() -> CMat {
    array![[re(1.0), re(0.0)], [re(0.0), re(-1.0)]]
}

/// Lowering operator |0⟩⟨1|.
pub fn sigma_minus() -> CMat {
    array![[re(0.0), re(1.0)], [re(0.0), re(0.0)]]
}

/// Matrix unit E_{ij} = |i⟩⟨j| in dimension d.
pub fn matrix_unit(d: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros((d, d));
    m[(i, j)] = re(1.0);
    m
}

/// A density matrix: Hermitian, unit trace, spectrum ≥ −positivity_tol.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    rho: CMat,
    min_eigenvalue: f64,
}

impl DensityMatrix {
    pub fn new(rho: CMat, cfg: &ToleranceConfig) -> Result<Self> {
        let h = HermitianObservable::new(rho, cfg)
            .map_err(|e| Error::InvalidDensity(e.to_string()))?;
        let rho = h.hermitized();
        let tr = trace(&rho);
        if (tr.re - 1.0).abs() > cfg.positivity_tol * 10.0 || tr.im.abs() > cfg.positivity_tol {
            return Err(Error::InvalidDensity(format!(
                "trace is {:.12} + {:.3e}i, expected 1",
                tr.re, tr.im
            )));
        }
        let (vals, _) = rho.eigh(UPLO::Lower)?;
        let min_eigenvalue = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_eigenvalue < -cfg.positivity_tol {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min_eigenvalue:.6e}"
            )));
        }
        Ok(Self {
            rho,
            min_eigenvalue,
        })
    }

    /// Maximally mixed state I/d.
    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            rho: identity(d).mapv(|z| z / re(d as f64)),
            min_eigenvalue: 1.0 / d as f64,
        }
    }

    /// Pure basis state |k⟩⟨k|.
    pub fn pure_basis(d: usize, k: usize) -> Self {
        Self {
            rho: matrix_unit(d, k, k),
            min_eigenvalue: 0.0,
        }
    }

    pub fn matrix(&self) -> &CMat {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    /// Faithful means strictly positive spectrum.
    pub fn is_faithful(&self, cfg: &ToleranceConfig) -> bool {
        self.min_eigenvalue > cfg.positivity_tol
    }
}

/// A set of Kraus operators `{V_k}` of uniform square dimension.
#[derive(Debug, Clone)]
pub struct KrausSet {
    operators: Vec<CMat>,
}

impl KrausSet {
    pub fn new(operators: Vec<CMat>) -> Result<Self> {
        let first = operators
            .first()
            .ok_or_else(|| Error::InvalidInput("empty Kraus set".into()))?;
        let d = first.nrows();
        for v in &operators {
            if v.nrows() != d || v.ncols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator is {}×{}, expected {d}×{d}",
                    v.nrows(),
                    v.ncols()
                )));
            }
            if !all_finite(v) {
                return Err(Error::InvalidInput("Kraus operator has non-finite entries".into()));
            }
        }
        Ok(Self { operators })
    }

    pub fn operators(&self) -> &[CMat] {
        &self.operators
    }

    pub fn dim(&self) -> usize {
        self.operators[0].nrows()
    }

    /// `Σ_k V_k S V_k*` evaluated directly.
    pub fn apply(&self, s: &CMat) -> CMat {
        let d = self.dim();
        let mut acc = CMat::zeros((d, d));
        for v in &self.operators {
            acc = acc + v.dot(s).dot(&dagger(v));
        }
        acc
    }

    /// `‖Σ_k V_k* V_k − I‖_F`.
    pub fn trace_preserving_residual(&self) -> f64 {
        let d = self.dim();
        let mut acc = CMat::zeros((d, d));
        for v in &self.operators {
            acc = acc + dagger(v).dot(v);
        }
        fro_norm(&(acc - identity(d)))
    }
}

/// A d²×d² matrix acting on column-stacked d×d operators.
#[derive(Debug, Clone)]
pub struct SuperOperator {
    dim_hilbert: usize,
    mat: CMat,
}

impl SuperOperator {
    pub fn new(dim_hilbert: usize, mat: CMat) -> Result<Self> {
        let d2 = dim_hilbert * dim_hilbert;
        if mat.nrows() != d2 || mat.ncols() != d2 {
            return Err(Error::DimensionMismatch(format!(
                "superoperator matrix is {}×{}, expected {d2}×{d2}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if !all_finite(&mat) {
            return Err(Error::InvalidInput("superoperator has non-finite entries".into()));
        }
        Ok(Self { dim_hilbert, mat })
    }

    /// Identity map on d×d operators.
    pub fn identity_map(d: usize) -> Self {
        Self {
            dim_hilbert: d,
            mat: identity(d * d),
        }
    }

    /// The sandwich map `S ↦ A S B`, with matrix `Bᵀ ⊗ A`.
    pub fn sandwich(a: &CMat, b: &CMat) -> Self {
        Self {
            dim_hilbert: a.nrows(),
            mat: kron(&b.t().to_owned(), a),
        }
    }

    pub fn dim_hilbert(&self) -> usize {
        self.dim_hilbert
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn apply(&self, x: &CMat) -> CMat {
        unvec_op(&self.mat.dot(&vec_op(x)), self.dim_hilbert)
    }

    /// Composition `self ∘ other` (matrix product).
    pub fn compose(&self, other: &SuperOperator) -> Result<SuperOperator> {
        if self.dim_hilbert != other.dim_hilbert {
            return Err(Error::DimensionMismatch(format!(
                "composing superoperators on dimensions {} and {}",
                self.dim_hilbert, other.dim_hilbert
            )));
        }
        Ok(SuperOperator {
            dim_hilbert: self.dim_hilbert,
            mat: self.mat.dot(&other.mat),
        })
    }

    /// Hilbert–Schmidt adjoint (conjugate transpose of the matrix). For the
    /// generators built here this is exactly the dual-picture generator.
    pub fn adjoint(&self) -> SuperOperator {
        SuperOperator {
            dim_hilbert: self.dim_hilbert,
            mat: dagger(&self.mat),
        }
    }

    /// `e^{t·mat}` as a superoperator.
    pub fn exp(&self, t: f64) -> Result<SuperOperator> {
        Ok(SuperOperator {
            dim_hilbert: self.dim_hilbert,
            mat: matrix_exp(&self.mat, t)?,
        })
    }
}

/// `Σ_k conj(V_k) ⊗ V_k`: superoperator matrix of the channel `S ↦ Σ_k V_k S V_k*`.
pub fn kraus_to_superop(k: &KrausSet) -> SuperOperator {
    let d = k.dim();
    let mut mat = CMat::zeros((d * d, d * d));
    for v in k.operators() {
        mat = mat + kron(&v.mapv(|z| z.conj()), v);
    }
    SuperOperator {
        dim_hilbert: d,
        mat,
    }
}

/// Choi matrix `C = Σ_{ij} E_{ij} ⊗ T(E_{ij})`, computed by index reshuffling:
/// `C[(i·d + r), (j·d + s)] = T̂[(s·d + r), (j·d + i)]`.
pub fn choi_matrix(t: &SuperOperator) -> CMat {
    let d = t.dim_hilbert;
    let m = &t.mat;
    let mut c = CMat::zeros((d * d, d * d));
    for i in 0..d {
        for r in 0..d {
            for j in 0..d {
                for s in 0..d {
                    c[(i * d + r, j * d + s)] = m[(s * d + r, j * d + i)];
                }
            }
        }
    }
    c
}

/// Extracts a Kraus set from the Choi eigendecomposition, keeping eigenpairs
/// with eigenvalue above `positivity_tol · tr(C)`.
///
/// Fails with `NotCompletelyPositive` if the Choi matrix has an eigenvalue
/// below `−positivity_tol · max(1, tr C)`.
pub fn superop_to_kraus(t: &SuperOperator, cfg: &ToleranceConfig) -> Result<KrausSet> {
    let d = t.dim_hilbert;
    let c = choi_matrix(t);
    let herm_residual = fro_norm(&(&c - &dagger(&c)));
    let herm_tol = cfg.herm_tol * f64::max(1.0, fro_norm(&c));
    if herm_residual > herm_tol {
        return Err(Error::NotHermitian {
            residual: herm_residual,
            tol: herm_tol,
        });
    }
    let c = (&c + &dagger(&c)).mapv(|z| z * re(0.5));
    let (vals, vecs) = c.eigh(UPLO::Lower)?;
    let tr_c: f64 = vals.sum();
    let min_eigenvalue = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_eigenvalue < -cfg.positivity_tol * f64::max(1.0, tr_c.abs()) {
        return Err(Error::NotCompletelyPositive { min_eigenvalue });
    }
    let keep = cfg.positivity_tol * f64::max(1.0, tr_c.abs());
    let mut operators = Vec::new();
    for (k, &lambda) in vals.iter().enumerate() {
        if lambda > keep {
            // zheev returns conj(V); the eigenvector blocks are the columns
            // of the Kraus operator
            let w = vecs.column(k).mapv(|z| z.conj() * re(lambda.sqrt()));
            operators.push(unvec_op(&w, d));
        }
    }
    if operators.is_empty() {
        operators.push(CMat::zeros((d, d)));
    }
    KrausSet::new(operators)
}

/// Flags from the CP / trace-preservation / unitality checks.
#[derive(Debug, Clone, Copy)]
pub struct CpReport {
    pub choi_psd: bool,
    pub min_choi_eigenvalue: f64,
    pub trace_preserving: bool,
    pub trace_residual: f64,
    pub unital: bool,
    pub unital_residual: f64,
}

/// Checks complete positivity (Choi spectrum), trace preservation (the
/// adjoint fixes I), and unitality (the map fixes I).
pub fn is_cp_trace_preserving(t: &SuperOperator, cfg: &ToleranceConfig) -> Result<CpReport> {
    let d = t.dim_hilbert;
    let c = choi_matrix(t);
    let c = (&c + &dagger(&c)).mapv(|z| z * re(0.5));
    let (vals, _) = c.eigh(UPLO::Lower)?;
    let min_choi_eigenvalue = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let scale = f64::max(1.0, vals.sum().abs());

    let id_vec = vec_op(&identity(d));
    let trace_residual = {
        let acted = dagger(&t.mat).dot(&id_vec);
        (&acted - &id_vec).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    };
    let unital_residual = {
        let acted = t.mat.dot(&id_vec);
        (&acted - &id_vec).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    };
    let norm_scale = f64::max(1.0, (d as f64).sqrt());
    Ok(CpReport {
        choi_psd: min_choi_eigenvalue >= -cfg.positivity_tol * scale,
        min_choi_eigenvalue,
        trace_preserving: trace_residual <= cfg.commute_tol * norm_scale,
        trace_residual,
        unital: unital_residual <= cfg.commute_tol * norm_scale,
        unital_residual,
    })
}

/// A Lindblad specification: Hamiltonian H and jump operators {L_k}.
#[derive(Debug, Clone)]
pub struct LindbladSpec {
    hamiltonian: HermitianObservable,
    lindblad_ops: Vec<CMat>,
}

impl LindbladSpec {
    pub fn new(hamiltonian: CMat, lindblad_ops: Vec<CMat>, cfg: &ToleranceConfig) -> Result<Self> {
        let hamiltonian = HermitianObservable::new(hamiltonian, cfg)?;
        let d = hamiltonian.dim();
        for l in &lindblad_ops {
            if l.nrows() != d || l.ncols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "Lindblad operator is {}×{}, Hamiltonian is {d}×{d}",
                    l.nrows(),
                    l.ncols()
                )));
            }
            if !all_finite(l) {
                return Err(Error::InvalidInput(
                    "Lindblad operator has non-finite entries".into(),
                ));
            }
        }
        Ok(Self {
            hamiltonian,
            lindblad_ops,
        })
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }

    pub fn hamiltonian(&self) -> &CMat {
        self.hamiltonian.matrix()
    }

    pub fn lindblad_ops(&self) -> &[CMat] {
        &self.lindblad_ops
    }
}

/// Schrödinger-picture generator
/// `ℳ(S) = Σ_k (L_k S L_k* − ½ S L_k*L_k − ½ L_k*L_k S) + i[S,H]`.
pub fn lindblad_schrodinger(spec: &LindbladSpec) -> SuperOperator {
    let d = spec.dim();
    let id = identity(d);
    let h = spec.hamiltonian();
    let i = C64::new(0.0, 1.0);
    // i[S,H] = i(SH − HS)
    let mut mat = (kron(&h.t().to_owned(), &id) - kron(&id, h)).mapv(|z| z * i);
    for l in spec.lindblad_ops() {
        let ldag_l = dagger(l).dot(l);
        mat = mat + kron(&l.mapv(|z| z.conj()), l)
            - kron(&ldag_l.t().to_owned(), &id).mapv(|z| z * re(0.5))
            - kron(&id, &ldag_l).mapv(|z| z * re(0.5));
    }
    SuperOperator {
        dim_hilbert: d,
        mat,
    }
}

/// Heisenberg-picture (GKSL) generator
/// `ℒ(A) = Σ_k (L_k* A L_k − ½ A L_k*L_k − ½ L_k*L_k A) − i[A,H]`,
/// the trace dual of [`lindblad_schrodinger`].
pub fn lindblad_heisenberg(spec: &LindbladSpec) -> SuperOperator {
    let d = spec.dim();
    let id = identity(d);
    let h = spec.hamiltonian();
    let i = C64::new(0.0, 1.0);
    let mut mat = (kron(&h.t().to_owned(), &id) - kron(&id, h)).mapv(|z| z * (-i));
    for l in spec.lindblad_ops() {
        let ldag_l = dagger(l).dot(l);
        mat = mat + kron(&l.t().to_owned(), &dagger(l))
            - kron(&ldag_l.t().to_owned(), &id).mapv(|z| z * re(0.5))
            - kron(&id, &ldag_l).mapv(|z| z * re(0.5));
    }
    SuperOperator {
        dim_hilbert: d,
        mat,
    }
}

/// `unvec(e^{t·T̂} vec(X))` for `t ≥ 0`.
pub fn evolve(generator: &SuperOperator, x: &CMat, t: f64) -> Result<CMat> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    if x.nrows() != generator.dim_hilbert || x.ncols() != generator.dim_hilbert {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}×{}, generator acts on dimension {}",
            x.nrows(),
            x.ncols(),
            generator.dim_hilbert
        )));
    }
    let propagator = matrix_exp(&generator.mat, t)?;
    Ok(unvec_op(&propagator.dot(&vec_op(x)), generator.dim_hilbert))
}
