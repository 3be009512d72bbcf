//! Seeded instance generation and end-to-end verification of the theorem
//! equivalences: random classical generators, structured Lindblad
//! specifications with manufactured commutants, the classical-to-quantum
//! embedding, a registry of named examples with closed-form expectations, and
//! batch suites that count agreements across all criteria.

mod suites;

pub use suites::{
    run_recipes, suite_classical_embedding, suite_classical_fourway,
    suite_conditional_expectation, suite_hat_trace_identity, suite_postulate_decisions,
    suite_proposition_equivalence, suite_random_lindblad, suite_relaxation, suite_vf_theorem,
    SuiteResult, VerifySummary,
};

use ndarray::prelude::*;
use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::classical::{validate_generator, ClassPartition, ClassicalGenerator, RandomVariable};
use crate::error::{Error, Result};
use crate::linops::{dagger, matrix_exp, trace, CMat, ToleranceConfig};
use crate::qds::{matrix_unit, pauli_x, pauli_y, pauli_z, sigma_minus, LindbladSpec, SuperOperator};

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Complex matrix with independent standard-normal real and imaginary parts.
pub fn random_complex(d: usize, rng: &mut impl Rng) -> CMat {
    CMat::from_shape_fn((d, d), |_| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// `(G + G*)/2` for a standard-normal `G`.
pub fn random_hermitian(d: usize, rng: &mut impl Rng) -> CMat {
    let g = random_complex(d, rng);
    (&g + &dagger(&g)).mapv(|z| z * re(0.5))
}

/// Full-rank Wishart density `GG*/tr(GG*)`.
pub fn random_density(d: usize, rng: &mut impl Rng) -> CMat {
    let g = random_complex(d, rng);
    let w = g.dot(&dagger(&g));
    let t = trace(&w);
    w.mapv(|z| z / t)
}

/// Valid classical generator with the stated sparsity: off-diagonal rates are
/// |N(0,1)| kept with probability `1 − sparsity`, diagonals set to the
/// negative column sums so Eqs. hold exactly by construction.
pub fn gen_random_classical(d: usize, sparsity: f64, seed: u64) -> ClassicalGenerator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Array2::<f64>::zeros((d, d));
    for y in 0..d {
        for x in 0..d {
            if x != y && rng.gen::<f64>() >= sparsity {
                let z: f64 = rng.sample(StandardNormal);
                m[(x, y)] = z.abs();
            }
        }
    }
    for y in 0..d {
        let off_sum: f64 = (0..d).filter(|&x| x != y).map(|x| m[(x, y)]).sum();
        m[(y, y)] = -off_sum;
    }
    validate_generator(m, &ToleranceConfig::default()).expect("valid by construction")
}

/// Random variable constant on each block of the partition, with distinct
/// values across blocks.
pub fn gen_class_constant_variable(
    partition: &ClassPartition,
    d: usize,
    seed: u64,
) -> RandomVariable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Array1::zeros(d);
    for (idx, class) in partition.classes().iter().enumerate() {
        let v: f64 = rng.sample::<f64, _>(StandardNormal) + 3.0 * idx as f64;
        for &x in class {
            values[x] = v;
        }
    }
    RandomVariable::new(values).expect("finite by construction")
}

/// Generic random variable with i.i.d. standard-normal values.
pub fn gen_generic_variable(d: usize, seed: u64) -> RandomVariable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    RandomVariable::new(Array1::from_shape_fn(d, |_| rng.sample(StandardNormal)))
        .expect("finite by construction")
}

/// Unstructured Lindblad specification: random Hermitian H and `n_ops`
/// standard-normal jump operators.
pub fn gen_random_lindblad(d: usize, n_ops: usize, seed: u64) -> LindbladSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random_hermitian(d, &mut rng);
    let ls = (0..n_ops).map(|_| random_complex(d, &mut rng)).collect();
    LindbladSpec::new(h, ls, &ToleranceConfig::default()).expect("valid by construction")
}

/// Structured Lindblad specification on `⊕_i (M_{n_i} ⊗ I_{m_i})`.
///
/// H and two jump operators are sampled inside that algebra, so the commutant
/// contains `⊕_i (I_{n_i} ⊗ M_{m_i})` by construction and the fixed-point
/// algebra is nontrivial whenever some `m_i > 1` or there are several blocks.
pub fn gen_structured_lindblad(blocks: &[(usize, usize)], seed: u64) -> Result<LindbladSpec> {
    if blocks.is_empty() {
        return Err(Error::InvalidBlocks("no blocks given".into()));
    }
    if blocks.iter().any(|&(n, m)| n == 0 || m == 0) {
        return Err(Error::InvalidBlocks("zero-sized block".into()));
    }
    let d: usize = blocks.iter().map(|&(n, m)| n * m).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let embed = |factors: Vec<CMat>| -> CMat {
        let mut big = CMat::zeros((d, d));
        let mut offset = 0;
        for (&(n, m), factor) in blocks.iter().zip(&factors) {
            let block = ndarray::linalg::kron(factor, &crate::linops::identity(m));
            big.slice_mut(s![offset..offset + n * m, offset..offset + n * m])
                .assign(&block);
            offset += n * m;
        }
        big
    };

    let h_factors: Vec<CMat> = blocks
        .iter()
        .map(|&(n, _)| random_hermitian(n, &mut rng))
        .collect();
    let h = embed(h_factors);
    let mut lindblad_ops = Vec::new();
    for _ in 0..2 {
        let l_factors: Vec<CMat> = blocks
            .iter()
            .map(|&(n, _)| random_complex(n, &mut rng))
            .collect();
        lindblad_ops.push(embed(l_factors));
    }
    LindbladSpec::new(h, lindblad_ops, &ToleranceConfig::default())
}

/// Embeds a classical generator as a Lindblad specification with `H = 0` and
/// `L_{xy} = √(M_{xy}) |x⟩⟨y|` for `x ≠ y`: diagonal density matrices then
/// evolve exactly like classical probability vectors.
pub fn classical_embedding(generator: &ClassicalGenerator) -> LindbladSpec {
    let d = generator.dim();
    let m = generator.matrix();
    let mut ops = Vec::new();
    for x in 0..d {
        for y in 0..d {
            if x != y && m[(x, y)] > 0.0 {
                ops.push(matrix_unit(d, x, y).mapv(|z| z * re(m[(x, y)].sqrt())));
            }
        }
    }
    LindbladSpec::new(CMat::zeros((d, d)), ops, &ToleranceConfig::default())
        .expect("valid by construction")
}

/// Named two-level examples with hand-derivable behavior, used to anchor the
/// property suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedExample {
    /// H = 0, L = σ_z: off-diagonals decay as e^{−2t}; ϱ̂ = I/2 is faithful.
    Dephasing,
    /// H = 0, L = σ₋: relaxes to |0⟩⟨0|; postulate (P) fails.
    AmplitudeDamping,
    /// H = σ_z, no dissipation: fixed points are the commutant of H.
    UnitaryOnly,
    /// L ∈ {σ_x/2, σ_y/2, σ_z/2}: isotropic contraction to I/2 with a
    /// trivial commutant.
    Depolarizing,
}

impl NamedExample {
    pub fn all() -> [NamedExample; 4] {
        [
            NamedExample::Dephasing,
            NamedExample::AmplitudeDamping,
            NamedExample::UnitaryOnly,
            NamedExample::Depolarizing,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            NamedExample::Dephasing => "dephasing",
            NamedExample::AmplitudeDamping => "amplitude-damping",
            NamedExample::UnitaryOnly => "unitary-only",
            NamedExample::Depolarizing => "depolarizing",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "dephasing" => Some(NamedExample::Dephasing),
            "amplitude-damping" | "amplitude_damping" => Some(NamedExample::AmplitudeDamping),
            "unitary-only" | "unitary_only" => Some(NamedExample::UnitaryOnly),
            "depolarizing" => Some(NamedExample::Depolarizing),
            _ => None,
        }
    }

    pub fn spec(&self) -> LindbladSpec {
        let cfg = ToleranceConfig::default();
        match self {
            NamedExample::Dephasing => {
                LindbladSpec::new(CMat::zeros((2, 2)), vec![pauli_z()], &cfg)
            }
            NamedExample::AmplitudeDamping => {
                LindbladSpec::new(CMat::zeros((2, 2)), vec![sigma_minus()], &cfg)
            }
            NamedExample::UnitaryOnly => LindbladSpec::new(pauli_z(), vec![], &cfg),
            NamedExample::Depolarizing => LindbladSpec::new(
                CMat::zeros((2, 2)),
                vec![
                    pauli_x().mapv(|z| z * re(0.5)),
                    pauli_y().mapv(|z| z * re(0.5)),
                    pauli_z().mapv(|z| z * re(0.5)),
                ],
                &cfg,
            ),
        }
        .expect("named specifications are valid")
    }

    /// Whether a faithful stationary state exists.
    pub fn expects_postulate_p(&self) -> bool {
        !matches!(self, NamedExample::AmplitudeDamping)
    }
}

/// Windowed time average `(1/(t_end − t_start)) ∫ T_t(ρ₀) dt` by composite
/// Simpson quadrature with a fixed-step propagator. Converges to the ergodic
/// projection of `ρ₀` as the window moves out; serves as the integration
/// cross-check for the eigenprojection route.
pub fn time_averaged_state(
    generator: &SuperOperator,
    rho0: &CMat,
    t_start: f64,
    t_end: f64,
    steps: usize,
) -> Result<CMat> {
    if t_end <= t_start {
        return Err(Error::InvalidInput(format!(
            "empty averaging window [{t_start}, {t_end}]"
        )));
    }
    let steps = if steps.is_multiple_of(2) { steps } else { steps + 1 };
    let h = (t_end - t_start) / steps as f64;
    let step_prop = matrix_exp(generator.mat(), h)?;
    let mut v = matrix_exp(generator.mat(), t_start)?.dot(&crate::linops::vec_op(rho0));
    let d = generator.dim_hilbert();
    let mut acc = v.clone();
    for k in 1..=steps {
        v = step_prop.dot(&v);
        let weight = if k == steps {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc = acc + v.mapv(|z| z * re(weight));
    }
    let integral = acc.mapv(|z| z * re(h / 3.0));
    Ok(crate::linops::unvec_op(&integral, d).mapv(|z| z / re(t_end - t_start)))
}

/// What a recipe asks the harness to generate and verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecipeKind {
    RandomClassical,
    RandomLindblad,
    StructuredCommutant,
    ClassicalEmbedding,
    NamedExample,
}

/// One batch entry of the verification run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceRecipe {
    pub kind: RecipeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sparsity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl InstanceRecipe {
    pub fn validate(&self) -> Result<()> {
        if let Some(d) = self.d {
            if d < 2 {
                return Err(Error::InvalidInput(format!("dimension {d} < 2")));
            }
        }
        if let Some(s) = self.sparsity {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::InvalidInput(format!("sparsity {s} outside [0, 1]")));
            }
        }
        if let Some(blocks) = &self.blocks {
            if blocks.is_empty() || blocks.iter().any(|&(n, m)| n == 0 || m == 0) {
                return Err(Error::InvalidBlocks("empty or zero-sized block".into()));
            }
            if let Some(d) = self.d {
                let total: usize = blocks.iter().map(|&(n, m)| n * m).sum();
                if total != d {
                    return Err(Error::InvalidBlocks(format!(
                        "block sizes sum to {total}, document says d = {d}"
                    )));
                }
            }
        }
        if self.kind == RecipeKind::NamedExample {
            let name = self
                .name
                .as_deref()
                .ok_or_else(|| Error::InvalidInput("named_example recipe needs a name".into()))?;
            if NamedExample::from_name(name).is_none() {
                return Err(Error::InvalidInput(format!("unknown named example {name:?}")));
            }
        }
        // structured_commutant with no blocks cycles the built-in configurations
        Ok(())
    }
}

/// The built-in batch exercising every equivalence suite; `trials` rescales
/// the instance counts (`None` keeps the defaults used by the acceptance
/// criteria).
pub fn paper_suite_recipes(seed: u64, trials: Option<usize>) -> Vec<InstanceRecipe> {
    let classical_trials = trials.unwrap_or(200);
    let structured_trials = trials.unwrap_or(50);
    let embedding_trials = trials.unwrap_or(100);
    let lindblad_trials = trials.unwrap_or(25);
    let mut recipes = vec![
        InstanceRecipe {
            kind: RecipeKind::RandomClassical,
            d: None,
            blocks: None,
            seed: Some(seed),
            sparsity: None,
            trials: Some(classical_trials),
            name: None,
        },
        InstanceRecipe {
            kind: RecipeKind::RandomLindblad,
            d: Some(4),
            blocks: None,
            seed: Some(seed.wrapping_add(1)),
            sparsity: None,
            trials: Some(lindblad_trials),
            name: None,
        },
        InstanceRecipe {
            kind: RecipeKind::StructuredCommutant,
            d: None,
            blocks: None,
            seed: Some(seed.wrapping_add(2)),
            sparsity: None,
            trials: Some(structured_trials),
            name: None,
        },
        InstanceRecipe {
            kind: RecipeKind::ClassicalEmbedding,
            d: None,
            blocks: None,
            seed: Some(seed.wrapping_add(3)),
            sparsity: None,
            trials: Some(embedding_trials),
            name: None,
        },
    ];
    for example in NamedExample::all() {
        recipes.push(InstanceRecipe {
            kind: RecipeKind::NamedExample,
            d: None,
            blocks: None,
            seed: Some(seed),
            sparsity: None,
            trials,
            name: Some(example.name().to_string()),
        });
    }
    recipes
}

/// Runs the invariant suites over a recipe batch and merges the results.
/// Failures are data, not errors: the summary carries per-suite counts and
/// `all_pass` decides the process exit status.
pub fn verify_equivalences(
    recipes: &[InstanceRecipe],
    cfg: &ToleranceConfig,
) -> Result<VerifySummary> {
    for recipe in recipes {
        recipe.validate()?;
    }
    run_recipes(recipes, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{check_constant, communication_classes};
    use crate::linops::fro_norm;
    use crate::noether::noether_check;
    use crate::qds::{evolve, lindblad_schrodinger};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn random_classical_is_valid_and_deterministic() {
        let a = gen_random_classical(5, 0.4, 99);
        let b = gen_random_classical(5, 0.4, 99);
        assert_eq!(a.matrix(), b.matrix());
        for y in 0..5 {
            let col: f64 = a.matrix().column(y).sum();
            assert!(col.abs() < 1e-14);
        }
    }

    #[test]
    fn dense_generator_has_positive_rates() {
        let g = gen_random_classical(3, 0.0, 7);
        for x in 0..3 {
            for y in 0..3 {
                if x != y {
                    assert!(g.matrix()[(x, y)] > 0.0);
                }
            }
        }
    }

    #[test]
    fn sparse_generator_validates() {
        let g = gen_random_classical(6, 0.8, 21);
        assert_eq!(g.dim(), 6);
    }

    #[test]
    fn structured_lindblad_dimension_and_determinism() {
        let blocks = [(1, 2), (1, 1)];
        let a = gen_structured_lindblad(&blocks, 5).unwrap();
        let b = gen_structured_lindblad(&blocks, 5).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.hamiltonian(), b.hamiltonian());
        assert_eq!(a.lindblad_ops()[0], b.lindblad_ops()[0]);
    }

    #[test]
    fn structured_lindblad_manufactures_commutant() {
        // blocks [(1,2),(1,1)]: commutant contains M₂ ⊕ M₁, dimension 5
        let spec = gen_structured_lindblad(&[(1, 2), (1, 1)], 5).unwrap();
        let mut gens: Vec<CMat> = vec![spec.hamiltonian().clone()];
        gens.extend(spec.lindblad_ops().iter().cloned());
        let c = crate::noether::commutant(3, &gens, &cfg()).unwrap();
        assert_eq!(c.dim(), 5);
    }

    #[test]
    fn generic_single_block_has_trivial_commutant() {
        let spec = gen_structured_lindblad(&[(3, 1)], 11).unwrap();
        let mut gens: Vec<CMat> = vec![spec.hamiltonian().clone()];
        gens.extend(spec.lindblad_ops().iter().cloned());
        let c = crate::noether::commutant(3, &gens, &cfg()).unwrap();
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn invalid_blocks_rejected() {
        assert!(matches!(
            gen_structured_lindblad(&[], 0),
            Err(Error::InvalidBlocks(_))
        ));
        assert!(matches!(
            gen_structured_lindblad(&[(0, 2)], 0),
            Err(Error::InvalidBlocks(_))
        ));
    }

    #[test]
    fn embedding_matches_classical_two_state_chain() {
        let m = validate_generator(array![[-1.0, 1.0], [1.0, -1.0]], &cfg()).unwrap();
        let spec = classical_embedding(&m);
        let gen = lindblad_schrodinger(&spec);
        for &t in &[0.3, 1.0, 5.0] {
            let rho_t = evolve(&gen, &matrix_unit(2, 0, 0), t).unwrap();
            let expected_00 = 0.5 * (1.0 + (-2.0 * t).exp());
            assert!((rho_t[(0, 0)].re - expected_00).abs() < 1e-11);
            assert!((rho_t[(1, 1)].re - (1.0 - expected_00)).abs() < 1e-11);
        }
    }

    #[test]
    fn embedding_of_zero_generator_has_no_jumps() {
        let m = validate_generator(Array2::zeros((3, 3)), &cfg()).unwrap();
        let spec = classical_embedding(&m);
        assert!(spec.lindblad_ops().is_empty());
        assert!(fro_norm(spec.hamiltonian()) < 1e-15);
    }

    #[test]
    fn embedding_preserves_constancy_verdicts() {
        let m = validate_generator(
            array![[-1.0, 1.0, 0.0], [1.0, -1.0, 0.0], [0.0, 0.0, 0.0]],
            &cfg(),
        )
        .unwrap();
        let classes = communication_classes(&m);
        let a = gen_class_constant_variable(&classes, 3, 17);
        let classical_report = check_constant(&a, &m, &cfg()).unwrap();
        assert!(classical_report.is_constant());

        let spec = classical_embedding(&m);
        let a_hat = crate::linops::complexify(&crate::classical::hat_diag(&a));
        let quantum_report = noether_check(&a_hat, &spec, &cfg()).unwrap();
        assert!(quantum_report.is_constant());
    }

    #[test]
    fn named_examples_roundtrip_names() {
        for ex in NamedExample::all() {
            assert_eq!(NamedExample::from_name(ex.name()), Some(ex));
        }
        assert_eq!(NamedExample::from_name("nonsense"), None);
    }

    #[test]
    fn time_average_of_stationary_state_is_stationary() {
        let spec = NamedExample::Dephasing.spec();
        let gen = lindblad_schrodinger(&spec);
        let half = crate::linops::identity(2).mapv(|z| z * re(0.5));
        let avg = time_averaged_state(&gen, &half, 0.0, 10.0, 200).unwrap();
        assert!(fro_norm(&(avg - half)) < 1e-10);
    }

    #[test]
    fn identical_seeds_give_identical_reports() {
        let recipes = paper_suite_recipes(123, Some(2));
        let first = verify_equivalences(&recipes, &cfg()).unwrap();
        let second = verify_equivalences(&recipes, &cfg()).unwrap();
        assert_eq!(first.render_text(), second.render_text());
        assert!(first.all_pass());
    }

    #[test]
    fn recipe_validation() {
        let mut recipe = InstanceRecipe {
            kind: RecipeKind::StructuredCommutant,
            d: Some(4),
            blocks: Some(vec![(1, 2), (1, 1)]),
            seed: None,
            sparsity: None,
            trials: Some(1),
            name: None,
        };
        // blocks sum to 3, d says 4
        assert!(matches!(recipe.validate(), Err(Error::InvalidBlocks(_))));
        recipe.d = Some(3);
        assert!(recipe.validate().is_ok());
    }
}
