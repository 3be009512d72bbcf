//! Command implementations and the exit-code contract.
//!
//! Exit codes: 0 = success (requested assertions hold), 1 = a requested
//! assertion failed, 2 = malformed input, 3 = conditional expectation
//! requested but postulate (P) fails. Reports go to standard output,
//! diagnostics to the error stream.

use std::path::Path;
use std::time::Instant;

use crate::classical::{check_constant_with_grid, communication_classes, validate_generator,
    RandomVariable, DEFAULT_TIME_GRID};
use crate::error::{Error, Result};
use crate::harness::{paper_suite_recipes, verify_equivalences, NamedExample, VerifySummary};
use crate::linops::{fro_norm, subspace_distance, CMat, ToleranceConfig};
use crate::noether::{
    commutant, conditional_expectation, fixed_points, noether_check, stationary_state,
};
use crate::qds::{evolve, lindblad_heisenberg, lindblad_schrodinger, LindbladSpec};

use super::format::{
    complex_matrix_to_json, ClassicalConditionsJson, ClassicalReportJson, ClassicalResidualsJson,
    NoetherReportJson, PostulateReportJson, ProblemDocument, QuantumReportJson, RecipeDocument,
    ReportDocument, SuiteResultJson,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_POSTULATE_FAILED: i32 = 3;

/// Environment variable supplying the default seed for `verify`.
pub const SEED_ENV_VAR: &str = "NOETHER_QDS_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Json,
    #[default]
    Text,
}

/// Flags of `quantum-analyze`. The section flags double as assertions:
/// `--constants` asserts the observable is a Noether constant,
/// `--stationary` asserts postulate (P), `--fixed-points` asserts the
/// fixed-point/commutant identity, `--condexp` requests `Ê[A|𝔐]` (exit 3
/// when (P) fails).
#[derive(Debug, Clone, Default)]
pub struct QuantumOptions {
    pub assert_fixed_points: bool,
    pub assert_constants: bool,
    pub assert_stationary: bool,
    pub want_condexp: bool,
    /// Overrides the decision tolerances (commute_tol and subspace_tol).
    pub tol: Option<f64>,
    pub time_grid: Option<Vec<f64>>,
    pub format: OutputFormat,
}

fn tool_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

fn read_problem(path: &Path) -> Result<ProblemDocument> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn print_report(report: &ReportDocument, format: OutputFormat, text_render: String) {
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
        }
        OutputFormat::Text => print!("{text_render}"),
    }
}

/// `classical-check`: exit 0 if A is a constant of the generator, 1 if not,
/// 2 on malformed input.
pub fn cmd_classical_check(path: &Path, time_grid: Option<&[f64]>, format: OutputFormat) -> i32 {
    let started = Instant::now();
    let outcome = (|| -> Result<(ReportDocument, bool, String)> {
        let grid = match time_grid {
            Some(grid) if grid.iter().any(|&t| t < 0.0 || !t.is_finite()) => {
                return Err(Error::InvalidInput("time grid entries must be ≥ 0".into()))
            }
            Some(grid) => grid.to_vec(),
            None => DEFAULT_TIME_GRID.to_vec(),
        };
        let doc = read_problem(path)?;
        let problem = doc.into_classical()?;
        let generator = validate_generator(problem.generator, &problem.cfg)?;
        let variable = RandomVariable::new(problem.variable)?;
        let classes = communication_classes(&generator);
        let report = check_constant_with_grid(&variable, &generator, &grid, &problem.cfg)?;

        let classical = ClassicalReportJson {
            is_constant: report.is_constant(),
            conditions: ClassicalConditionsJson {
                distribution: report.cond_distribution,
                moments: report.cond_moments,
                measurable: report.cond_measurable,
                commutator: report.cond_commutator,
            },
            residuals: ClassicalResidualsJson {
                distribution: report.residuals.distribution,
                moments: report.residuals.moments,
                measurable: report.residuals.measurable,
                commutator: report.residuals.commutator,
            },
            communication_classes: classes.classes().to_vec(),
        };
        let text = format!(
            "constant: {}\n  distribution: {} (residual {:.3e})\n  moments: {} (residual {:.3e})\n  measurable: {} (residual {:.3e})\n  commutator: {} (residual {:.3e})\n  classes: {:?}\n",
            classical.is_constant,
            classical.conditions.distribution,
            classical.residuals.distribution,
            classical.conditions.moments,
            classical.residuals.moments,
            classical.conditions.measurable,
            classical.residuals.measurable,
            classical.conditions.commutator,
            classical.residuals.commutator,
            classical.communication_classes,
        );
        let is_constant = classical.is_constant;
        Ok((
            ReportDocument {
                tool_version: tool_version(),
                kind: "classical".into(),
                seed: None,
                elapsed_ms: started.elapsed().as_millis(),
                classical: Some(classical),
                quantum: None,
                suites: None,
            },
            is_constant,
            text,
        ))
    })();
    match outcome {
        Ok((report, is_constant, text)) => {
            print_report(&report, format, text);
            if is_constant {
                EXIT_OK
            } else {
                EXIT_ASSERTION_FAILED
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_INPUT_ERROR
        }
    }
}

struct QuantumAnalysis {
    report: ReportDocument,
    text: String,
    assertion_failed: bool,
    postulate_blocked: bool,
}

fn analyze_quantum(path: &Path, opts: &QuantumOptions) -> Result<QuantumAnalysis> {
    let started = Instant::now();
    let doc = read_problem(path)?;
    let problem = doc.into_quantum()?;
    let mut cfg: ToleranceConfig = problem.cfg;
    if let Some(tol) = opts.tol {
        if tol <= 0.0 || !tol.is_finite() {
            return Err(Error::InvalidInput(format!("--tol must be positive, got {tol}")));
        }
        cfg.commute_tol = tol;
        cfg.subspace_tol = tol;
    }
    let grid = opts
        .time_grid
        .clone()
        .unwrap_or_else(|| DEFAULT_TIME_GRID.to_vec());
    if grid.iter().any(|&t| t < 0.0 || !t.is_finite()) {
        return Err(Error::InvalidInput("time grid entries must be ≥ 0".into()));
    }

    let spec = LindbladSpec::new(problem.hamiltonian, problem.lindblad_ops, &cfg)?;
    let d = spec.dim();
    let m_gen = lindblad_schrodinger(&spec);
    let l_gen = lindblad_heisenberg(&spec);

    let fixed = fixed_points(&l_gen, &cfg)?;
    let mut gens: Vec<CMat> = vec![spec.hamiltonian().clone()];
    gens.extend(spec.lindblad_ops().iter().cloned());
    let comm = commutant(d, &gens, &cfg)?;
    let distance = subspace_distance(&fixed, &comm)?;
    let stationary = stationary_state(&m_gen, &cfg)?;

    let noether = match &problem.observable {
        Some(a) => {
            let check = noether_check(a, &spec, &cfg)?;
            let mut grid_residual = 0.0_f64;
            for &t in &grid {
                let jt_a = evolve(&l_gen, a, t)?;
                grid_residual = grid_residual.max(fro_norm(&(jt_a - a)));
            }
            Some(NoetherReportJson {
                is_constant: check.is_constant(),
                is_fixed_point: check.is_fixed_point,
                hat_commutes: check.hat_commutes,
                in_commutant: check.in_commutant,
                fixed_point_residual: check.fixed_point_residual,
                hat_residual: check.hat_residual,
                commutant_residual: check.commutant_residual,
                grid_residual,
            })
        }
        None => None,
    };

    let mut postulate_blocked = false;
    let cond_exp = if opts.want_condexp {
        if !stationary.postulate_p_holds {
            postulate_blocked = true;
            None
        } else {
            let a = problem.observable.as_ref().ok_or_else(|| {
                Error::Format("--condexp needs an observable \"A\" in the document".into())
            })?;
            Some(conditional_expectation(a, &l_gen, &cfg)?)
        }
    } else {
        None
    };

    let mut assertion_failed = false;
    if opts.assert_fixed_points && distance > cfg.subspace_tol {
        assertion_failed = true;
    }
    if opts.assert_stationary && !stationary.postulate_p_holds {
        assertion_failed = true;
    }
    if opts.assert_constants {
        match &noether {
            Some(n) if n.is_constant => {}
            Some(_) => assertion_failed = true,
            None => {
                return Err(Error::Format(
                    "--constants needs an observable \"A\" in the document".into(),
                ))
            }
        }
    }

    let quantum = QuantumReportJson {
        fixed_point_dimension: fixed.dim(),
        fixed_points_closed_under_adjoint: fixed.closed_under_adjoint,
        fixed_points_closed_under_product: fixed.closed_under_product,
        fixed_points_contain_identity: fixed.contains_identity,
        commutant_dimension: comm.dim(),
        subspace_distance: distance,
        postulate_p: PostulateReportJson {
            holds: stationary.postulate_p_holds,
            min_eigenvalue: stationary.min_eigenvalue,
            kernel_dim: stationary.kernel_dim,
            candidate: complex_matrix_to_json(stationary.candidate.matrix()),
        },
        noether,
        conditional_expectation: cond_exp.as_ref().map(complex_matrix_to_json),
    };

    let mut text = format!(
        "fixed points: dimension {} (adjoint-closed: {}, product-closed: {}, contains I: {})\n\
         commutant: dimension {}\n\
         subspace distance: {:.3e}\n\
         postulate (P): {} (min eigenvalue {:.6e}, kernel dim {})\n",
        quantum.fixed_point_dimension,
        quantum.fixed_points_closed_under_adjoint,
        quantum.fixed_points_closed_under_product,
        quantum.fixed_points_contain_identity,
        quantum.commutant_dimension,
        quantum.subspace_distance,
        if quantum.postulate_p.holds { "holds" } else { "fails" },
        quantum.postulate_p.min_eigenvalue,
        quantum.postulate_p.kernel_dim,
    );
    if let Some(n) = &quantum.noether {
        text.push_str(&format!(
            "observable: constant: {} (fixed point: {}, hat-commutes: {}, in commutant: {}; grid residual {:.3e})\n",
            n.is_constant, n.is_fixed_point, n.hat_commutes, n.in_commutant, n.grid_residual
        ));
    }
    if postulate_blocked {
        text.push_str("conditional expectation: unavailable, postulate (P) fails\n");
    } else if quantum.conditional_expectation.is_some() {
        text.push_str("conditional expectation: computed (see JSON output for entries)\n");
    }

    Ok(QuantumAnalysis {
        report: ReportDocument {
            tool_version: tool_version(),
            kind: "quantum".into(),
            seed: None,
            elapsed_ms: started.elapsed().as_millis(),
            classical: None,
            quantum: Some(quantum),
            suites: None,
        },
        text,
        assertion_failed,
        postulate_blocked,
    })
}

/// `quantum-analyze`: exit 0 on success, 1 if a requested assertion fails,
/// 2 on malformed input, 3 if `--condexp` is requested but (P) fails.
pub fn cmd_quantum_analyze(path: &Path, opts: &QuantumOptions) -> i32 {
    match analyze_quantum(path, opts) {
        Ok(analysis) => {
            print_report(&analysis.report, opts.format, analysis.text);
            if analysis.postulate_blocked {
                eprintln!(
                    "error: conditional expectation requires a faithful stationary state \
                     (postulate (P) fails for this generator)"
                );
                EXIT_POSTULATE_FAILED
            } else if analysis.assertion_failed {
                EXIT_ASSERTION_FAILED
            } else {
                EXIT_OK
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_INPUT_ERROR
        }
    }
}

fn summary_to_json(summary: &VerifySummary) -> Vec<SuiteResultJson> {
    summary
        .suites
        .iter()
        .map(|s| SuiteResultJson {
            name: s.name.clone(),
            instances: s.instances,
            failures: s.failures,
            max_residual: s.max_residual,
            notes: s.notes.clone(),
        })
        .collect()
}

/// `verify`: runs the built-in "paper-suite" or a recipe file. Exit 0 iff all
/// suites pass, 1 on suite failures, 2 on malformed recipes.
pub fn cmd_verify(
    target: &str,
    seed: Option<u64>,
    trials: Option<usize>,
    format: OutputFormat,
) -> i32 {
    let started = Instant::now();
    let env_seed = std::env::var(SEED_ENV_VAR)
        .ok()
        .and_then(|s| s.parse::<u64>().ok());
    let seed = seed.or(env_seed).unwrap_or(0);
    let cfg = ToleranceConfig::default();

    if trials == Some(0) {
        let report = ReportDocument {
            tool_version: tool_version(),
            kind: "verify".into(),
            seed: Some(seed),
            elapsed_ms: started.elapsed().as_millis(),
            classical: None,
            quantum: None,
            suites: Some(Vec::new()),
        };
        print_report(&report, format, "no suites requested (0 trials)\noverall: PASS\n".into());
        return EXIT_OK;
    }

    let recipes = if target == "paper-suite" {
        paper_suite_recipes(seed, trials)
    } else {
        let parsed: std::result::Result<RecipeDocument, _> =
            std::fs::read_to_string(Path::new(target))
                .map_err(Error::from)
                .and_then(|text| serde_json::from_str(&text).map_err(Error::from));
        match parsed {
            Ok(doc) => {
                let mut recipes = doc.recipes;
                for recipe in &mut recipes {
                    if recipe.seed.is_none() {
                        recipe.seed = Some(seed);
                    }
                    if let Some(trials) = trials {
                        recipe.trials = Some(trials);
                    }
                }
                recipes
            }
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_INPUT_ERROR;
            }
        }
    };

    match verify_equivalences(&recipes, &cfg) {
        Ok(summary) => {
            let report = ReportDocument {
                tool_version: tool_version(),
                kind: "verify".into(),
                seed: Some(seed),
                elapsed_ms: started.elapsed().as_millis(),
                classical: None,
                quantum: None,
                suites: Some(summary_to_json(&summary)),
            };
            print_report(&report, format, summary.render_text());
            if summary.all_pass() {
                EXIT_OK
            } else {
                EXIT_ASSERTION_FAILED
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_INPUT_ERROR
        }
    }
}

/// Looks up a named example and writes its problem document; used by the
/// examples and tests to produce self-contained input files.
pub fn named_example_document(name: &str, observable: Option<&CMat>) -> Option<ProblemDocument> {
    let example = NamedExample::from_name(name)?;
    let spec = example.spec();
    Some(ProblemDocument::from_quantum(
        spec.hamiltonian(),
        spec.lindblad_ops(),
        observable,
    ))
}
