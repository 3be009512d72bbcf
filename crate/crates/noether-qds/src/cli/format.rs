//! Problem, recipe, and report document formats.
//!
//! One flat, versioned JSON document serves both problem kinds. Complex
//! scalars are encoded as two-element arrays `[re, im]`; matrices are
//! row-major nested arrays. Example quantum document:
//!
//! ```json
//! {
//!   "version": "1",
//!   "kind": "quantum",
//!   "d": 2,
//!   "H": [[[0,0],[0,0]],[[0,0],[0,0]]],
//!   "L": [[[[1,0],[0,0]],[[0,0],[-1,0]]]],
//!   "A": [[[1,0],[0,0]],[[0,0],[-1,0]]]
//! }
//! ```

use ndarray::prelude::*;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::InstanceRecipe;
use crate::linops::{CMat, ToleranceConfig};

/// Current document schema version.
pub const FORMAT_VERSION: &str = "1";

pub type ComplexEntry = [f64; 2];
pub type ComplexMatrixJson = Vec<Vec<ComplexEntry>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Classical,
    Quantum,
}

/// The observable field: a real vector for classical problems, a complex
/// matrix for quantum ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObservableField {
    Classical(Vec<f64>),
    Quantum(ComplexMatrixJson),
}

/// Optional per-document tolerance overrides.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub herm_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eig_cluster_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nullspace_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commute_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positivity_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace_tol: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, mut base: ToleranceConfig) -> ToleranceConfig {
        if let Some(v) = self.herm_tol {
            base.herm_tol = v;
        }
        if let Some(v) = self.eig_cluster_tol {
            base.eig_cluster_tol = v;
        }
        if let Some(v) = self.nullspace_tol {
            base.nullspace_tol = v;
        }
        if let Some(v) = self.commute_tol {
            base.commute_tol = v;
        }
        if let Some(v) = self.positivity_tol {
            base.positivity_tol = v;
        }
        if let Some(v) = self.subspace_tol {
            base.subspace_tol = v;
        }
        base
    }
}

/// One flat problem document for both kinds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemDocument {
    pub version: String,
    pub kind: ProblemKind,
    pub d: usize,
    /// Classical generator (row-major real matrix).
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "M")]
    pub m: Option<Vec<Vec<f64>>>,
    /// Observable: real vector (classical) or complex matrix (quantum).
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "A")]
    pub a: Option<ObservableField>,
    /// Hamiltonian (quantum).
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "H")]
    pub h: Option<ComplexMatrixJson>,
    /// Lindblad operators (quantum).
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "L")]
    pub l: Option<Vec<ComplexMatrixJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
}

pub fn complex_matrix_to_json(m: &CMat) -> ComplexMatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn complex_matrix_from_json(json: &ComplexMatrixJson, d: usize, what: &str) -> Result<CMat> {
    if json.len() != d || json.iter().any(|row| row.len() != d) {
        return Err(Error::Format(format!(
            "{what} must be a {d}×{d} matrix of [re, im] pairs"
        )));
    }
    let mut m = CMat::zeros((d, d));
    for (i, row) in json.iter().enumerate() {
        for (j, &[re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::Format(format!("{what}[{i}][{j}] is not finite")));
            }
            m[(i, j)] = C64::new(re, im);
        }
    }
    Ok(m)
}

fn real_matrix_from_json(rows: &[Vec<f64>], d: usize, what: &str) -> Result<Array2<f64>> {
    if rows.len() != d || rows.iter().any(|row| row.len() != d) {
        return Err(Error::Format(format!("{what} must be a {d}×{d} real matrix")));
    }
    let mut m = Array2::zeros((d, d));
    for (i, row) in rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::Format(format!("{what}[{i}][{j}] is not finite")));
            }
            m[(i, j)] = x;
        }
    }
    Ok(m)
}

/// Parsed classical problem: generator matrix, variable, tolerances.
#[derive(Debug, Clone)]
pub struct ClassicalProblem {
    pub generator: Array2<f64>,
    pub variable: Array1<f64>,
    pub cfg: ToleranceConfig,
}

/// Parsed quantum problem: Hamiltonian, Lindblad operators, optional
/// observable, tolerances.
#[derive(Debug, Clone)]
pub struct QuantumProblem {
    pub hamiltonian: CMat,
    pub lindblad_ops: Vec<CMat>,
    pub observable: Option<CMat>,
    pub cfg: ToleranceConfig,
}

impl ProblemDocument {
    pub fn from_classical(m: &Array2<f64>, a: &Array1<f64>) -> Self {
        Self {
            version: FORMAT_VERSION.to_string(),
            kind: ProblemKind::Classical,
            d: m.nrows(),
            m: Some((0..m.nrows()).map(|i| m.row(i).to_vec()).collect()),
            a: Some(ObservableField::Classical(a.to_vec())),
            h: None,
            l: None,
            tolerances: None,
        }
    }

    pub fn from_quantum(h: &CMat, lindblad_ops: &[CMat], a: Option<&CMat>) -> Self {
        Self {
            version: FORMAT_VERSION.to_string(),
            kind: ProblemKind::Quantum,
            d: h.nrows(),
            m: None,
            a: a.map(|m| ObservableField::Quantum(complex_matrix_to_json(m))),
            h: Some(complex_matrix_to_json(h)),
            l: Some(lindblad_ops.iter().map(complex_matrix_to_json).collect()),
            tolerances: None,
        }
    }

    fn base_cfg(&self) -> Result<ToleranceConfig> {
        let cfg = self
            .tolerances
            .as_ref()
            .map(|t| t.apply(ToleranceConfig::default()))
            .unwrap_or_default();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn into_classical(&self) -> Result<ClassicalProblem> {
        if self.kind != ProblemKind::Classical {
            return Err(Error::Format("document kind is not \"classical\"".into()));
        }
        if self.d == 0 {
            return Err(Error::Format("d must be at least 1".into()));
        }
        let m_rows = self
            .m
            .as_ref()
            .ok_or_else(|| Error::Format("classical document is missing field \"M\"".into()))?;
        let generator = real_matrix_from_json(m_rows, self.d, "M")?;
        let variable = match &self.a {
            Some(ObservableField::Classical(v)) => {
                if v.len() != self.d {
                    return Err(Error::Format(format!(
                        "A has {} entries, document says d = {}",
                        v.len(),
                        self.d
                    )));
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(Error::Format("A has non-finite entries".into()));
                }
                Array1::from_vec(v.clone())
            }
            Some(ObservableField::Quantum(_)) => {
                return Err(Error::Format(
                    "classical document carries a matrix-valued A".into(),
                ))
            }
            None => return Err(Error::Format("classical document is missing field \"A\"".into())),
        };
        Ok(ClassicalProblem {
            generator,
            variable,
            cfg: self.base_cfg()?,
        })
    }

    pub fn into_quantum(&self) -> Result<QuantumProblem> {
        if self.kind != ProblemKind::Quantum {
            return Err(Error::Format("document kind is not \"quantum\"".into()));
        }
        if self.d == 0 {
            return Err(Error::Format("d must be at least 1".into()));
        }
        let h_json = self
            .h
            .as_ref()
            .ok_or_else(|| Error::Format("quantum document is missing field \"H\"".into()))?;
        let hamiltonian = complex_matrix_from_json(h_json, self.d, "H")?;
        let lindblad_ops = self
            .l
            .as_ref()
            .map(|ops| {
                ops.iter()
                    .enumerate()
                    .map(|(k, op)| complex_matrix_from_json(op, self.d, &format!("L[{k}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?
            .unwrap_or_default();
        let observable = match &self.a {
            Some(ObservableField::Quantum(m)) => {
                Some(complex_matrix_from_json(m, self.d, "A")?)
            }
            Some(ObservableField::Classical(_)) => {
                return Err(Error::Format(
                    "quantum document carries a vector-valued A; encode it as a complex matrix"
                        .into(),
                ))
            }
            None => None,
        };
        Ok(QuantumProblem {
            hamiltonian,
            lindblad_ops,
            observable,
            cfg: self.base_cfg()?,
        })
    }
}

/// Recipe file for `verify`: a batch of instance recipes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecipeDocument {
    pub version: String,
    pub recipes: Vec<InstanceRecipe>,
}

// --- report schema -----------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassicalConditionsJson {
    pub distribution: bool,
    pub moments: bool,
    pub measurable: bool,
    pub commutator: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassicalResidualsJson {
    pub distribution: f64,
    pub moments: f64,
    pub measurable: f64,
    pub commutator: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassicalReportJson {
    pub is_constant: bool,
    pub conditions: ClassicalConditionsJson,
    pub residuals: ClassicalResidualsJson,
    /// 0-based communication classes.
    pub communication_classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PostulateReportJson {
    pub holds: bool,
    pub min_eigenvalue: f64,
    pub kernel_dim: usize,
    pub candidate: ComplexMatrixJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoetherReportJson {
    pub is_constant: bool,
    pub is_fixed_point: bool,
    pub hat_commutes: bool,
    pub in_commutant: bool,
    pub fixed_point_residual: f64,
    pub hat_residual: f64,
    pub commutant_residual: f64,
    /// Max of `‖𝒥_t(A) − A‖_F` over the requested time grid.
    pub grid_residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuantumReportJson {
    pub fixed_point_dimension: usize,
    pub fixed_points_closed_under_adjoint: bool,
    pub fixed_points_closed_under_product: bool,
    pub fixed_points_contain_identity: bool,
    pub commutant_dimension: usize,
    /// Frobenius distance between the fixed-point and commutant projectors.
    pub subspace_distance: f64,
    pub postulate_p: PostulateReportJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noether: Option<NoetherReportJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditional_expectation: Option<ComplexMatrixJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteResultJson {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub notes: Vec<String>,
}

/// Stable machine-readable report emitted by every command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub elapsed_ms: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical: Option<ClassicalReportJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantum: Option<QuantumReportJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suites: Option<Vec<SuiteResultJson>>,
}
