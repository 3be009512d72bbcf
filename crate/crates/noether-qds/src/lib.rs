//! `noether-qds` decides whether observables are Noether constants of
//! classical and quantum Markov (Lindblad) semigroups at finite dimension.
//!
//! For a classical generator it evaluates four equivalent conditions —
//! time-invariance of the observable's distribution, moment constancy,
//! measurability with respect to the communication classes, and the vanishing
//! commutator `[Â, M] = 0` with the diagonal hat-map. For a quantum
//! semigroup it evaluates the analogous trio: fixed points of the Heisenberg
//! maps, commutation of the weighted pinching `Σ_a f(a) P_a · P_a` with the
//! generator, and membership in the commutant of `{H, L_k, L_k*}`. A
//! stationary-state positivity test decides whether a faithful stationary
//! density matrix exists; when it does, the fixed points form a von Neumann
//! algebra and the crate constructs the conditional expectation onto it.
//!
//! Most capabilities have a runnable demo under `examples/`; the `verify`
//! machinery in [`harness`] replays every equivalence over seeded random and
//! structured instances.

pub mod classical;
pub mod cli;
pub mod error;
pub mod harness;
pub mod linops;
pub mod noether;
pub mod qds;

pub use error::{Error, Result};
pub use linops::{
    matrix_exp, nullspace, spectral_decompose, subspace_distance, CMat, CVec,
    HermitianObservable, OperatorSubspace, SpectralDecomposition, ToleranceConfig,
};
pub use classical::{
    check_constant, communication_classes, hat_diag, propagate, transition, validate_generator,
    ClassPartition, ClassicalGenerator, NoetherReportClassical, ProbabilityVector, RandomVariable,
};
pub use noether::{
    commutant, conditional_expectation, fixed_points, hat_map, is_constant_quantum, modular_flow,
    noether_check, stationary_state, superop_commutator, NoetherReportQuantum, PinchingMap,
    StationaryReport,
};
pub use qds::{
    evolve, is_cp_trace_preserving, kraus_to_superop, lindblad_heisenberg, lindblad_schrodinger,
    superop_to_kraus, CpReport, DensityMatrix, KrausSet, LindbladSpec, SuperOperator,
};

// openblas-src is a direct dependency only to pin the linkable version; the
// LAPACK symbols are reached through ndarray-linalg.
use openblas_src as _;
