//! Exact-satisfiability decision pipeline.
//!
//! Decision order: fast unsatisfiability rules from the structural
//! profile, chain-structured decision when a chain recipe is known,
//! candidate enumeration for monotone formulas, and a brute-force
//! fallback at small variable counts. Every path is deterministic: the
//! model returned is the one whose set of true variables is smallest in
//! sorted-list lexicographic order.

mod brute;
mod chain;
mod complexity;
mod pseudomodel;

pub use brute::brute_force_decide;
pub use chain::chain_decide;
pub use complexity::{complexity_estimate, subexponential_rate, ComplexityEstimate};
pub use pseudomodel::{
    count_pseudomodels, enumerate_pseudomodels, pseudomodel_decide, Pseudomodels,
};

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{classify, Profile};
use crate::formula::{Assignment, Formula};
use crate::generators::ChainSpec;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("formula is not monotone")]
    NotMonotone,
    #[error("{n} variables exceed the brute-force bound {bound}")]
    TooLarge { n: usize, bound: u32 },
    #[error("pseudomodel count {count} exceeds the candidate budget {budget}")]
    BudgetExceeded { count: BigUint, budget: u64 },
    #[error("chain specification mismatch: {0}")]
    SpecMismatch(String),
    #[error("cannot decide: {0}")]
    Undecidable(String),
    #[error("no formula with l = {l}, k = {k} exists: k(k-1) is not a multiple of l")]
    ClassEmpty { l: u32, k: u32 },
    #[error("l = {l}, k = {k} gives m = {m} not divisible by l; the class is x-unsat (theorem5)")]
    VUndefined { l: u32, k: u32, m: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Sat,
    Unsat,
}

/// Which stage of the pipeline produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    BruteForce,
    /// Unsat because the clause count is not a multiple of l.
    Theorem4,
    /// Unsat because k-1 is not a multiple of l in an exact linear
    /// regular uniform formula.
    Theorem5,
    Pseudomodel,
    Chain,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::BruteForce => "brute_force",
            Method::Theorem4 => "theorem4",
            Method::Theorem5 => "theorem5",
            Method::Pseudomodel => "pseudomodel",
            Method::Chain => "chain",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Assignments actually tested.
    pub candidates_examined: u64,
    /// Total candidate count, when the candidate set was constructed.
    pub pseudomodel_count: Option<BigUint>,
    /// Set when a chain's replicated model failed verification and the
    /// whole chain was swept instead.
    pub replication_fallback: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub model: Option<Assignment>,
    pub method: Method,
    pub stats: SearchStats,
}

impl Verdict {
    pub(crate) fn unsat(method: Method, stats: SearchStats) -> Verdict {
        Verdict {
            status: Status::Unsat,
            model: None,
            method,
            stats,
        }
    }

    pub(crate) fn sat(model: Assignment, method: Method, stats: SearchStats) -> Verdict {
        Verdict {
            status: Status::Sat,
            model: Some(model),
            method,
            stats,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Largest pseudomodel count the sweep will take on.
    pub candidate_budget: u64,
    /// Largest variable count for the brute-force oracle.
    pub brute_force_bound: u32,
    /// Worker threads for the candidate sweep (1 = sequential).
    pub workers: usize,
}

impl Default for EngineConfig {
    fn default() -> EngineConfig {
        EngineConfig {
            candidate_budget: 100_000_000,
            brute_force_bound: 25,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Brute,
    Pseudomodel,
    Chain,
}

/// Applies the divisibility rules that settle unsatisfiability without
/// search. When both rules apply the stronger one (theorem5) is
/// reported.
pub fn fast_unsat_rules(f: &Formula, profile: &Profile) -> Option<Verdict> {
    if !profile.monotone {
        return None;
    }
    let l = profile.regularity?;
    let theorem5 = profile.exact_linear
        && profile
            .uniformity
            .is_some_and(|k| (k - 1) % l != 0);
    if theorem5 {
        return Some(Verdict::unsat(Method::Theorem5, SearchStats::default()));
    }
    if !(f.m() as u64).is_multiple_of(u64::from(l)) {
        return Some(Verdict::unsat(Method::Theorem4, SearchStats::default()));
    }
    None
}

/// Decides exact satisfiability. `chain` supplies the construction
/// recipe when the instance is a generated chain.
pub fn decide(
    f: &Formula,
    strategy: Strategy,
    chain: Option<&ChainSpec>,
    cfg: &EngineConfig,
) -> Result<Verdict, EngineError> {
    match strategy {
        Strategy::Brute => brute_force_decide(f, cfg.brute_force_bound),
        Strategy::Pseudomodel => pseudomodel_decide(f, cfg),
        Strategy::Chain => {
            let spec = chain.ok_or_else(|| {
                EngineError::SpecMismatch("no chain specification available".into())
            })?;
            chain_decide(spec, f, cfg)
        }
        Strategy::Auto => {
            let profile = classify(f);
            if let Some(verdict) = fast_unsat_rules(f, &profile) {
                return Ok(verdict);
            }
            if let Some(spec) = chain {
                return chain_decide(spec, f, cfg);
            }
            if profile.monotone {
                match pseudomodel_decide(f, cfg) {
                    Err(EngineError::BudgetExceeded { .. })
                        if f.n() <= cfg.brute_force_bound as usize =>
                    {
                        brute_force_decide(f, cfg.brute_force_bound)
                    }
                    other => other,
                }
            } else if f.n() <= cfg.brute_force_bound as usize {
                brute_force_decide(f, cfg.brute_force_bound)
            } else {
                Err(EngineError::Undecidable(format!(
                    "non-monotone formula with {} variables exceeds the brute-force bound {}",
                    f.n(),
                    cfg.brute_force_bound
                )))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Clause;

    pub(crate) fn monotone(clauses: &[&[u32]]) -> Formula {
        Formula::build(
            clauses
                .iter()
                .map(|c| Clause::positive(c.iter().copied()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn triangle() -> Formula {
        monotone(&[&[1, 2], &[2, 3], &[1, 3]])
    }

    fn k4() -> Formula {
        monotone(&[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6], &[3, 5, 6]])
    }

    #[test]
    fn rules_fire_on_triangle() {
        // both rules apply (m = 3 odd, k-1 = 1 odd); the stronger one is
        // reported
        let f = triangle();
        let v = fast_unsat_rules(&f, &classify(&f)).unwrap();
        assert_eq!(v.status, Status::Unsat);
        assert_eq!(v.method, Method::Theorem5);
    }

    #[test]
    fn rules_fire_on_fano_plane() {
        let f = crate::generators::gen_fano();
        let v = fast_unsat_rules(&f, &classify(&f)).unwrap();
        assert_eq!(v.method, Method::Theorem5);
    }

    #[test]
    fn rules_silent_on_k4() {
        let f = k4();
        assert!(fast_unsat_rules(&f, &classify(&f)).is_none());
    }

    #[test]
    fn theorem4_without_exact_linearity() {
        // 2-regular monotone with 3 clauses, not exact linear
        let f = monotone(&[&[1, 2], &[3, 4], &[1, 2, 3, 4]]);
        let v = fast_unsat_rules(&f, &classify(&f)).unwrap();
        assert_eq!(v.method, Method::Theorem4);
        // and brute force agrees
        let brute = brute_force_decide(&f, 25).unwrap();
        assert_eq!(brute.status, Status::Unsat);
    }

    #[test]
    fn auto_pipeline_on_k4() {
        let v = decide(&k4(), Strategy::Auto, None, &EngineConfig::default()).unwrap();
        assert_eq!(v.status, Status::Sat);
        assert_eq!(v.method, Method::Pseudomodel);
        let model = v.model.unwrap();
        let trues: Vec<u32> = model.true_vars().iter().map(|v| v.index()).collect();
        assert_eq!(trues, vec![1, 6]);
    }

    #[test]
    fn auto_pipeline_on_triangle() {
        let v = decide(&triangle(), Strategy::Auto, None, &EngineConfig::default()).unwrap();
        assert_eq!(v.status, Status::Unsat);
        assert_eq!(v.method, Method::Theorem5);
        assert_eq!(v.stats.candidates_examined, 0);
    }

    #[test]
    fn auto_refuses_large_non_monotone() {
        use crate::formula::{Literal, Var};
        // a wide non-monotone formula over 30 variables
        let mut clauses = Vec::new();
        for i in 1..=30u32 {
            let j = i % 30 + 1;
            clauses.push(
                Clause::new(vec![
                    Literal::positive(Var::new(i)),
                    Literal::negative(Var::new(j)),
                ])
                .unwrap(),
            );
        }
        let f = Formula::with_var_count(30, clauses).unwrap();
        let err = decide(&f, Strategy::Auto, None, &EngineConfig::default()).unwrap_err();
        assert!(matches!(err, EngineError::Undecidable(_)));
    }

    #[test]
    fn budget_exceeded_falls_back_to_brute_force() {
        let f = k4();
        let cfg = EngineConfig {
            candidate_budget: 3,
            ..EngineConfig::default()
        };
        let v = decide(&f, Strategy::Auto, None, &cfg).unwrap();
        assert_eq!(v.status, Status::Sat);
        assert_eq!(v.method, Method::BruteForce);
    }

    #[test]
    fn pipeline_is_deterministic() {
        let cfg = EngineConfig::default();
        let a = decide(&k4(), Strategy::Auto, None, &cfg).unwrap();
        let b = decide(&k4(), Strategy::Auto, None, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fast_rules_never_change_the_status() {
        // adding the rules only changes method/stats, never the outcome
        use crate::generators::random_monotone_regular;
        for seed in 0..40u64 {
            let n = 4 + (seed % 8) as u32;
            let l = 2 + (seed % 3) as u32;
            let Ok(f) = random_monotone_regular(n, l, 2..=4, seed) else {
                continue;
            };
            let profile = classify(&f);
            let sweep = pseudomodel_decide(&f, &EngineConfig::default()).unwrap();
            if let Some(rule) = fast_unsat_rules(&f, &profile) {
                assert_eq!(rule.status, sweep.status, "seed {seed}");
            }
        }
    }
}
