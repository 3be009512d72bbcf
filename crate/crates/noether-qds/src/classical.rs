//! Finite-state classical dynamical semigroups: generator validation,
//! transition matrices, communication classes, the diagonal hat-map, and the
//! four equivalent constancy criteria for random variables.

use ndarray::prelude::*;

use crate::error::{Error, Result};
use crate::linops::{complexify, matrix_exp, ToleranceConfig};

/// Default redundancy grid for the time-domain constancy check.
pub const DEFAULT_TIME_GRID: [f64; 5] = [0.0, 0.1, 0.5, 1.0, 5.0];

/// A probability vector: entries ≥ −positivity_tol, summing to 1.
#[derive(Debug, Clone)]
pub struct ProbabilityVector {
    p: Array1<f64>,
}

impl ProbabilityVector {
    pub fn new(p: Array1<f64>, cfg: &ToleranceConfig) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidProbability("empty vector".into()));
        }
        if let Some(bad) = p.iter().find(|&&x| !x.is_finite() || x < -cfg.positivity_tol) {
            return Err(Error::InvalidProbability(format!("entry {bad} out of range")));
        }
        let total: f64 = p.sum();
        if (total - 1.0).abs() > cfg.positivity_tol * p.len() as f64 {
            return Err(Error::InvalidProbability(format!(
                "entries sum to {total}, expected 1"
            )));
        }
        Ok(Self { p })
    }

    /// Point mass on state `x`.
    pub fn basis(d: usize, x: usize) -> Self {
        let mut p = Array1::zeros(d);
        p[x] = 1.0;
        Self { p }
    }

    pub fn uniform(d: usize) -> Self {
        Self {
            p: Array1::from_elem(d, 1.0 / d as f64),
        }
    }

    pub fn values(&self) -> &Array1<f64> {
        &self.p
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }
}

/// A validated Markov generator: nonnegative off-diagonals, zero column sums.
#[derive(Debug, Clone)]
pub struct ClassicalGenerator {
    m: Array2<f64>,
}

impl ClassicalGenerator {
    pub fn matrix(&self) -> &Array2<f64> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }
}

/// Validates the generator conditions: `M_{xy} ≥ 0` for `x ≠ y` and
/// `Σ_x M_{xy} = 0` for every column `y`, both within `positivity_tol`
/// relative to the magnitude of `M`.
pub fn validate_generator(m: Array2<f64>, cfg: &ToleranceConfig) -> Result<ClassicalGenerator> {
    let d = m.nrows();
    if m.ncols() != d {
        return Err(Error::DimensionMismatch(format!(
            "generator must be square, got {}×{}",
            d,
            m.ncols()
        )));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("generator has non-finite entries".into()));
    }
    let scale = m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    let tol = cfg.positivity_tol * f64::max(1.0, scale);
    for x in 0..d {
        for y in 0..d {
            if x != y && m[(x, y)] < -tol {
                return Err(Error::NegativeOffDiagonal {
                    row: x,
                    col: y,
                    value: m[(x, y)],
                });
            }
        }
    }
    for y in 0..d {
        let sum: f64 = m.column(y).sum();
        if sum.abs() > tol * d as f64 {
            return Err(Error::ColumnSumNonzero { col: y, sum });
        }
    }
    Ok(ClassicalGenerator { m })
}

/// Transition matrix `T_t = e^{tM}`; columns sum to 1, entries stay
/// nonnegative up to tolerance.
pub fn transition(generator: &ClassicalGenerator, t: f64) -> Result<Array2<f64>> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let e = matrix_exp(&complexify(&generator.m), t)?;
    Ok(e.mapv(|z| z.re))
}

/// `T_t p` as a validated probability vector.
pub fn propagate(
    generator: &ClassicalGenerator,
    p: &ProbabilityVector,
    t: f64,
    cfg: &ToleranceConfig,
) -> Result<ProbabilityVector> {
    if p.dim() != generator.dim() {
        return Err(Error::DimensionMismatch(format!(
            "probability vector has {} entries, generator has {} states",
            p.dim(),
            generator.dim()
        )));
    }
    ProbabilityVector::new(transition(generator, t)?.dot(p.values()), cfg)
}

/// A real random variable on the finite state space `{0..d−1}`.
#[derive(Debug, Clone)]
pub struct RandomVariable {
    values: Array1<f64>,
}

impl RandomVariable {
    pub fn new(values: Array1<f64>) -> Result<Self> {
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput(
                "random variable has non-finite values".into(),
            ));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &Array1<f64> {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// `Â = diag(A(0), ..., A(d−1))`.
pub fn hat_diag(a: &RandomVariable) -> Array2<f64> {
    Array2::from_diag(&a.values)
}

/// A partition of `{0..d−1}` into disjoint blocks covering everything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    classes: Vec<Vec<usize>>,
}

impl ClassPartition {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing state `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&x))
            .expect("partition covers all states")
    }
}

/// Communication classes: connected components of the symmetrized support
/// graph `{(x,y) : x ≠ y, M_{xy} ≠ 0 or M_{yx} ≠ 0}` under transitive
/// closure. Matrix powers are never formed, so cancellations inside `Mⁿ`
/// cannot split a class.
pub fn communication_classes(generator: &ClassicalGenerator) -> ClassPartition {
    let d = generator.dim();
    let m = generator.matrix();
    let scale = m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    let edge_cut = 1e-14 * f64::max(1.0, scale);

    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for x in 0..d {
        for y in 0..d {
            if x != y && (m[(x, y)].abs() > edge_cut || m[(y, x)].abs() > edge_cut) {
                let rx = find(&mut parent, x);
                let ry = find(&mut parent, y);
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; d];
    for x in 0..d {
        let r = find(&mut parent, x);
        match root_of[r] {
            Some(idx) => classes[idx].push(x),
            None => {
                root_of[r] = Some(classes.len());
                classes.push(vec![x]);
            }
        }
    }
    ClassPartition { classes }
}

/// Level sets of `A`: states grouped by (tolerance-clustered) value.
pub fn level_sets(a: &RandomVariable, cfg: &ToleranceConfig) -> Vec<Vec<usize>> {
    let scale = a.values.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    let gap = cfg.eig_cluster_tol * f64::max(1.0, scale);
    let mut order: Vec<usize> = (0..a.dim()).collect();
    order.sort_by(|&i, &j| a.values[i].partial_cmp(&a.values[j]).unwrap());
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &x in &order {
        if sets.is_empty() || a.values[x] - last >= gap {
            sets.push(vec![x]);
        } else {
            sets.last_mut().unwrap().push(x);
        }
        last = a.values[x];
    }
    sets
}

/// Residuals backing each of the four constancy conditions.
#[derive(Debug, Clone, Copy)]
pub struct ConditionResiduals {
    /// Max drift of level-set probabilities over the time grid.
    pub distribution: f64,
    /// Max of `|Σ_x A(x)^m M_{xy}|` over columns, m = 1, 2 (normalized).
    pub moments: f64,
    /// Max spread of `A` within a communication class (normalized).
    pub measurable: f64,
    /// `‖[Â, M]‖_F` (normalized).
    pub commutator: f64,
}

/// The four equivalent conditions evaluated independently; under a valid
/// generator they agree.
#[derive(Debug, Clone, Copy)]
pub struct NoetherReportClassical {
    pub cond_distribution: bool,
    pub cond_moments: bool,
    pub cond_measurable: bool,
    pub cond_commutator: bool,
    pub residuals: ConditionResiduals,
}

impl NoetherReportClassical {
    /// All four conditions hold.
    pub fn is_constant(&self) -> bool {
        self.cond_distribution && self.cond_moments && self.cond_measurable && self.cond_commutator
    }

    /// The four booleans agree (the theorem equivalence holds numerically).
    pub fn unanimous(&self) -> bool {
        let v = self.cond_distribution;
        self.cond_moments == v && self.cond_measurable == v && self.cond_commutator == v
    }
}

/// Evaluates all four constancy conditions on the default time grid.
pub fn check_constant(
    a: &RandomVariable,
    generator: &ClassicalGenerator,
    cfg: &ToleranceConfig,
) -> Result<NoetherReportClassical> {
    check_constant_with_grid(a, generator, &DEFAULT_TIME_GRID, cfg)
}

/// Evaluates all four constancy conditions:
///
/// 1. distribution constancy of every level-set indicator under `T_t` on the
///    grid, for every basis initial vector;
/// 2. first and second moments annihilated by the generator columnwise;
/// 3. measurability: `A` constant on every communication class;
/// 4. vanishing commutator `[Â, M]`.
pub fn check_constant_with_grid(
    a: &RandomVariable,
    generator: &ClassicalGenerator,
    time_grid: &[f64],
    cfg: &ToleranceConfig,
) -> Result<NoetherReportClassical> {
    let d = generator.dim();
    if a.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "random variable has {} values, generator has {} states",
            a.dim(),
            d
        )));
    }
    let m = generator.matrix();
    let a_scale = a.values.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    let m_scale = m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));

    // (1) distribution constancy over the grid
    let sets = level_sets(a, cfg);
    let mut distribution = 0.0_f64;
    for &t in time_grid {
        let tt = transition(generator, t)?;
        for set in &sets {
            for y in 0..d {
                let now: f64 = set.iter().map(|&x| tt[(x, y)]).sum();
                let initial = if set.contains(&y) { 1.0 } else { 0.0 };
                distribution = distribution.max((now - initial).abs());
            }
        }
    }

    // (2) moment constancy: Σ_x A(x)^m M_{xy} = 0 for m = 1, 2
    let mut moments = 0.0_f64;
    for m_pow in 1..=2u32 {
        let weights = a.values.mapv(|v| v.powi(m_pow as i32));
        let row = weights.dot(m);
        let scale = f64::max(1.0, a_scale.powi(m_pow as i32) * f64::max(1.0, m_scale) * d as f64);
        for y in 0..d {
            moments = moments.max(row[y].abs() / scale);
        }
    }

    // (3) measurability w.r.t. the communication classes
    let classes = communication_classes(generator);
    let mut measurable = 0.0_f64;
    for class in classes.classes() {
        let vals: Vec<f64> = class.iter().map(|&x| a.values[x]).collect();
        let spread = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - vals.iter().cloned().fold(f64::INFINITY, f64::min);
        measurable = measurable.max(spread / f64::max(1.0, a_scale));
    }

    // (4) commutator [Â, M]
    let a_hat = hat_diag(a);
    let comm = a_hat.dot(m) - m.dot(&a_hat);
    let comm_norm = comm.iter().map(|x| x * x).sum::<f64>().sqrt();
    let commutator = comm_norm / f64::max(1.0, a_scale * f64::max(1.0, m_scale) * d as f64);

    let tol = cfg.commute_tol;
    Ok(NoetherReportClassical {
        cond_distribution: distribution <= tol,
        cond_moments: moments <= tol,
        cond_measurable: measurable <= tol,
        cond_commutator: commutator <= tol,
        residuals: ConditionResiduals {
            distribution,
            moments,
            measurable,
            commutator,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn two_state_chain() -> ClassicalGenerator {
        validate_generator(array![[-1.0, 1.0], [1.0, -1.0]], &cfg()).unwrap()
    }

    /// 2-state symmetric chain ⊕ isolated third state.
    fn block_chain() -> ClassicalGenerator {
        validate_generator(
            array![[-1.0, 1.0, 0.0], [1.0, -1.0, 0.0], [0.0, 0.0, 0.0]],
            &cfg(),
        )
        .unwrap()
    }

    #[test]
    fn validate_accepts_symmetric_chain() {
        assert!(validate_generator(array![[-1.0, 1.0], [1.0, -1.0]], &cfg()).is_ok());
    }

    #[test]
    fn validate_accepts_asymmetric_rates() {
        assert!(validate_generator(array![[-1.0, 2.0], [1.0, -2.0]], &cfg()).is_ok());
    }

    #[test]
    fn validate_rejects_negative_off_diagonal() {
        match validate_generator(array![[0.0, -1.0], [0.0, 1.0]], &cfg()) {
            Err(Error::NegativeOffDiagonal { row, col, .. }) => {
                assert_eq!((row, col), (0, 1));
            }
            other => panic!("expected NegativeOffDiagonal, got {other:?}"),
        }
    }

    #[test]
    fn validate_rejects_bad_column_sum() {
        match validate_generator(array![[-1.0, 0.0], [2.0, 0.0]], &cfg()) {
            Err(Error::ColumnSumNonzero { col, .. }) => assert_eq!(col, 0),
            other => panic!("expected ColumnSumNonzero, got {other:?}"),
        }
    }

    #[test]
    fn transition_at_zero_is_identity() {
        let t0 = transition(&two_state_chain(), 0.0).unwrap();
        assert!((t0[(0, 0)] - 1.0).abs() < 1e-14);
        assert!(t0[(0, 1)].abs() < 1e-14);
    }

    #[test]
    fn transition_long_time_limit_is_uniform() {
        // closed form ½(1 ± e^{−2t})
        let t = transition(&two_state_chain(), 50.0).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert!((t[(x, y)] - 0.5).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn transition_closed_form_midtime() {
        let t = transition(&two_state_chain(), 0.7).unwrap();
        let diag = 0.5 * (1.0 + (-1.4_f64).exp());
        let off = 0.5 * (1.0 - (-1.4_f64).exp());
        assert!((t[(0, 0)] - diag).abs() < 1e-12);
        assert!((t[(1, 0)] - off).abs() < 1e-12);
    }

    #[test]
    fn transition_rejects_negative_time() {
        assert!(matches!(
            transition(&two_state_chain(), -1.0),
            Err(Error::NegativeTime(_))
        ));
    }

    #[test]
    fn hat_diag_examples() {
        let a = RandomVariable::new(array![5.0, 7.0]).unwrap();
        let m = hat_diag(&a);
        assert_eq!(m, array![[5.0, 0.0], [0.0, 7.0]]);
        let zero = RandomVariable::new(array![0.0, 0.0]).unwrap();
        assert_eq!(hat_diag(&zero), Array2::<f64>::zeros((2, 2)));
        let ones = RandomVariable::new(array![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(hat_diag(&ones), Array2::<f64>::eye(3));
    }

    #[test]
    fn communication_classes_block_structure() {
        let classes = communication_classes(&block_chain());
        assert_eq!(classes.classes(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn communication_classes_cycle_is_irreducible() {
        // 3-cycle: 0 → 1 → 2 → 0
        let m = validate_generator(
            array![[-1.0, 0.0, 1.0], [1.0, -1.0, 0.0], [0.0, 1.0, -1.0]],
            &cfg(),
        )
        .unwrap();
        let classes = communication_classes(&m);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes.classes()[0], vec![0, 1, 2]);
    }

    #[test]
    fn communication_classes_zero_generator_is_singletons() {
        let m = validate_generator(Array2::zeros((4, 4)), &cfg()).unwrap();
        let classes = communication_classes(&m);
        assert_eq!(classes.len(), 4);
    }

    #[test]
    fn check_constant_block_chain_class_constant() {
        let a = RandomVariable::new(array![3.0, 3.0, 8.0]).unwrap();
        let report = check_constant(&a, &block_chain(), &cfg()).unwrap();
        assert!(report.is_constant());
        assert!(report.unanimous());
    }

    #[test]
    fn check_constant_irreducible_nonconstant() {
        let a = RandomVariable::new(array![1.0, 2.0]).unwrap();
        let report = check_constant(&a, &two_state_chain(), &cfg()).unwrap();
        assert!(!report.is_constant());
        assert!(report.unanimous());
        assert!(!report.cond_distribution);
        assert!(!report.cond_moments);
        assert!(!report.cond_measurable);
        assert!(!report.cond_commutator);
    }

    #[test]
    fn check_constant_trivial_constant_variable() {
        let a = RandomVariable::new(array![4.2, 4.2]).unwrap();
        let report = check_constant(&a, &two_state_chain(), &cfg()).unwrap();
        assert!(report.is_constant());
        assert!(report.unanimous());
    }

    #[test]
    fn commutator_has_rate_difference_structure() {
        // C_{xy} = (A(x) − A(y))·M_{xy}
        let a = RandomVariable::new(array![1.0, 2.0]).unwrap();
        let gen = two_state_chain();
        let a_hat = hat_diag(&a);
        let comm = a_hat.dot(gen.matrix()) - gen.matrix().dot(&a_hat);
        assert_eq!(comm, array![[0.0, -1.0], [1.0, 0.0]]);
        for x in 0..2 {
            for y in 0..2 {
                let expected = (a.values()[x] - a.values()[y]) * gen.matrix()[(x, y)];
                assert!((comm[(x, y)] - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn transitions_conserve_probability() {
        let gen = block_chain();
        for &t in &DEFAULT_TIME_GRID {
            let tt = transition(&gen, t).unwrap();
            for y in 0..3 {
                let col_sum: f64 = tt.column(y).sum();
                assert!((col_sum - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn propagate_keeps_distributions_valid() {
        let gen = two_state_chain();
        let p = ProbabilityVector::basis(2, 1);
        let out = propagate(&gen, &p, 0.8, &cfg()).unwrap();
        let expected = 0.5 * (1.0 - (-1.6_f64).exp());
        assert!((out.values()[0] - expected).abs() < 1e-12);
        assert!((out.values().sum() - 1.0).abs() < 1e-12);
        // dimension mismatch is caught
        let p3 = ProbabilityVector::uniform(3);
        assert!(matches!(
            propagate(&gen, &p3, 1.0, &cfg()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]

        // C_{xy} = (A(x) − A(y))·M_{xy}, entry by entry
        #[test]
        fn commutator_entries_from_rate_structure(seed in 0u64..500) {
            let d = 2 + (seed % 5) as usize;
            let gen = crate::harness::gen_random_classical(d, 0.3, seed);
            let a = crate::harness::gen_generic_variable(d, seed ^ 0x51);
            let a_hat = hat_diag(&a);
            let comm = a_hat.dot(gen.matrix()) - gen.matrix().dot(&a_hat);
            for x in 0..d {
                for y in 0..d {
                    let expected = (a.values()[x] - a.values()[y]) * gen.matrix()[(x, y)];
                    proptest::prop_assert!((comm[(x, y)] - expected).abs() <= 1e-12);
                }
            }
        }
    }
}
