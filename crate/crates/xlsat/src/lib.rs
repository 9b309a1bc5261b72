//! Exact satisfiability of linear CNF formulas.
//!
//! This crate classifies CNF formulas against the linear / exact-linear
//! / regular / uniform taxonomy, audits the structural identities those
//! classes must satisfy, decides exact satisfiability (exactly one true
//! literal per clause) through divisibility rules and candidate
//! enumeration, and constructs the instance families the checks are
//! calibrated on.
//!
//! Module map:
//! - [`formula`]: CNF data model, true-literal counting, model test.
//! - [`dimacs`]: DIMACS CNF parsing and serialization.
//! - [`classify`]: class membership and structural audits.
//! - [`engine`]: decision pipeline and complexity estimates.
//! - [`generators`]: instance families, chains, extension, random.
//! - [`report`]: machine-readable result reports.

pub mod classify;
pub mod dimacs;
pub mod engine;
pub mod formula;
pub mod generators;
pub mod report;

pub use classify::{
    allowed_k, audit_delta_lemma, audit_suite, audit_theorem1, audit_theorem2, audit_theorem3,
    classify, corollary1_invariant, is_connected, unconnected_pairs, AuditResult, ClassifyError,
    Expectation, Profile,
};
pub use dimacs::{parse_dimacs, write_dimacs, DimacsError, ParsedInstance};
pub use engine::{
    brute_force_decide, chain_decide, complexity_estimate, count_pseudomodels, decide,
    enumerate_pseudomodels, fast_unsat_rules, pseudomodel_decide, subexponential_rate,
    ComplexityEstimate, EngineConfig, EngineError, Method, Pseudomodels, SearchStats, Status,
    Strategy, Verdict,
};
pub use formula::{Assignment, Clause, Formula, FormulaError, Literal, Var};
pub use generators::{
    chain_provenance, entangle, extend_to_exact_linear, gen_complete_graph, gen_fano,
    gen_linear_chain, gen_pg32, gen_projective_plane, parse_chain_provenance,
    random_monotone_regular, recover_chain_spec, ChainSpec, EntanglementOp, GenError,
};
pub use report::{emit_report, Report, ReportFormat, VerdictSummary};
