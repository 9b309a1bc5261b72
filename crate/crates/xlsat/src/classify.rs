//! Class membership (monotone, linear, exact linear, l-regular,
//! k-uniform) and the structural audits that every instance of those
//! classes must satisfy.
//!
//! Pairwise clause intersections are computed through the per-variable
//! occurrence index rather than by quadratic set intersection, so the
//! cost is proportional to the number of co-occurrences.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::formula::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("formula is not linear")]
    NotLinear,
    #[error("formula is not exact linear")]
    NotExactLinear,
    #[error("formula is not regular")]
    NotRegular,
    #[error("formula is not uniform")]
    NotUniform,
}

/// Which structural class a formula inhabits, by direct definition checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub monotone: bool,
    pub linear: bool,
    pub exact_linear: bool,
    /// l such that every variable occurs exactly l times.
    #[serde(rename = "l")]
    pub regularity: Option<u32>,
    /// k such that every clause has exactly k literals.
    #[serde(rename = "k")]
    pub uniformity: Option<u32>,
    /// Largest occurrence count of any variable.
    #[serde(rename = "L")]
    pub max_occurrence: u32,
    pub m: usize,
    pub n: usize,
}

/// Outcome of one named structural check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditResult {
    pub name: String,
    pub pass: bool,
    pub details: BTreeMap<String, Value>,
}

impl AuditResult {
    fn new(name: &str) -> AuditResult {
        AuditResult {
            name: name.to_string(),
            pass: true,
            details: BTreeMap::new(),
        }
    }

    fn fail(mut self, key: &str, value: Value) -> AuditResult {
        self.pass = false;
        self.details.insert(key.to_string(), value);
        self
    }

    fn with(mut self, key: &str, value: Value) -> AuditResult {
        self.details.insert(key.to_string(), value);
        self
    }
}

/// Number of shared variables for every connected (unordered) clause pair.
fn shared_var_counts(f: &Formula) -> HashMap<(usize, usize), u32> {
    let mut counts = HashMap::new();
    for v in f.vars() {
        let clauses = f.clauses_containing(v);
        for (i, &a) in clauses.iter().enumerate() {
            for &b in &clauses[i + 1..] {
                *counts.entry((a.min(b), a.max(b))).or_insert(0u32) += 1;
            }
        }
    }
    counts
}

/// First clause pair violating exact linearity, with its shared count.
fn exact_linearity_witness(f: &Formula) -> Option<(usize, usize, u32)> {
    let counts = shared_var_counts(f);
    let m = f.m();
    let mut worst: Option<(usize, usize, u32)> = None;
    for (&(a, b), &c) in &counts {
        if c > 1 {
            let cand = (a, b, c);
            if worst.is_none_or(|w| (cand.0, cand.1) < (w.0, w.1)) {
                worst = Some(cand);
            }
        }
    }
    if worst.is_some() {
        return worst;
    }
    if counts.len() != m * (m - 1) / 2 {
        // some pair shares nothing; find the first one
        for a in 0..m {
            for b in a + 1..m {
                if !counts.contains_key(&(a, b)) {
                    return Some((a, b, 0));
                }
            }
        }
    }
    None
}

pub fn classify(f: &Formula) -> Profile {
    let counts = shared_var_counts(f);
    let m = f.m();
    let linear = counts.values().all(|&c| c <= 1);
    let exact_linear = linear && counts.len() == m * (m - 1) / 2;

    let occ: Vec<u32> = f.vars().map(|v| f.occurrence_count(v)).collect();
    let max_occurrence = occ.iter().copied().max().unwrap_or(0);
    let regularity = if occ.iter().all(|&o| o == occ[0]) {
        Some(occ[0])
    } else {
        None
    };
    let widths: Vec<usize> = f.clauses().iter().map(|c| c.width()).collect();
    let uniformity = if widths.iter().all(|&w| w == widths[0]) {
        Some(widths[0] as u32)
    } else {
        None
    };

    Profile {
        monotone: f.is_monotone(),
        linear,
        exact_linear,
        regularity,
        uniformity,
        max_occurrence,
        m,
        n: f.n(),
    }
}

/// Clause pairs with no variable in common (Δ).
pub fn unconnected_pairs(f: &Formula) -> u64 {
    let m = f.m() as u64;
    let connected = shared_var_counts(f).len() as u64;
    m * (m - 1) / 2 - connected
}

/// Per-clause count of clauses sharing at least one variable with it.
pub(crate) fn connected_degree(f: &Formula) -> Vec<u64> {
    let mut degree = vec![0u64; f.m()];
    for (a, b) in shared_var_counts(f).keys() {
        degree[*a] += 1;
        degree[*b] += 1;
    }
    degree
}

/// True when the clause/variable incidence graph is connected, i.e. the
/// clause set cannot be split into two non-empty parts with disjoint
/// variable sets.
pub fn is_connected(f: &Formula) -> bool {
    let m = f.m();
    let mut seen = vec![false; m];
    let mut queue = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(c) = queue.pop() {
        for v in f.clause(c).vars() {
            for &other in f.clauses_containing(v) {
                if !seen[other] {
                    seen[other] = true;
                    reached += 1;
                    queue.push(other);
                }
            }
        }
    }
    reached == m
}

/// All k in 1..=k_max with k(k-1) divisible by l; the widths an exact
/// linear l-regular formula can have.
pub fn allowed_k(l: u32, k_max: u32) -> Vec<u32> {
    (1..=k_max)
        .filter(|&k| (u64::from(k) * u64::from(k - 1)) % u64::from(l) == 0)
        .collect()
}

fn not_exact_linear(name: &str, f: &Formula) -> AuditResult {
    let audit = AuditResult::new(name).fail("reason", json!("not exact linear"));
    match exact_linearity_witness(f) {
        Some((a, b, c)) => audit
            .with("witness_pair", json!([a + 1, b + 1]))
            .with("witness_shared", json!(c))
            .with("witness_clause", json!(a + 1)),
        None => audit,
    }
}

/// At most L clauses shorter than the largest occurrence L.
pub(crate) fn check_theorem1(f: &Formula, profile: &Profile) -> AuditResult {
    if !profile.exact_linear {
        return not_exact_linear("theorem1", f);
    }
    let big_l = profile.max_occurrence;
    let short: Vec<usize> = f
        .clauses()
        .iter()
        .enumerate()
        .filter(|(_, c)| (c.width() as u32) < big_l)
        .map(|(i, _)| i + 1)
        .collect();
    let min_occ = f
        .vars()
        .map(|v| f.occurrence_count(v))
        .min()
        .unwrap_or(0);
    let mut audit = AuditResult::new("theorem1")
        .with("L", json!(big_l))
        .with("short_clause_count", json!(short.len()))
        .with("has_occurrence_one", json!(min_occ == 1));
    if short.len() as u64 > u64::from(big_l) {
        audit = audit.fail("witness_clauses", json!(short));
    }
    audit
}

/// Sum of occurrences minus width is m-1 for every clause.
pub(crate) fn check_theorem2(f: &Formula, profile: &Profile) -> AuditResult {
    if !profile.exact_linear {
        return not_exact_linear("theorem2", f);
    }
    let invariant = (f.m() - 1) as i64;
    let per_clause: Vec<i64> = f
        .clauses()
        .iter()
        .map(|c| {
            let occ: i64 = c.vars().map(|v| i64::from(f.occurrence_count(v))).sum();
            occ - c.width() as i64
        })
        .collect();
    let mut audit = AuditResult::new("theorem2")
        .with("invariant", json!(invariant))
        .with("per_clause", json!(per_clause));
    if let Some(idx) = per_clause.iter().position(|&v| v != invariant) {
        audit = audit
            .fail("witness_clause", json!(idx + 1))
            .with("witness_value", json!(per_clause[idx]));
    }
    audit
}

/// Regularity forces uniformity with m = 1 + k(l-1), n = k^2 - k(k-1)/l.
pub(crate) fn check_theorem3(f: &Formula, profile: &Profile) -> AuditResult {
    if !profile.exact_linear {
        return not_exact_linear("theorem3", f);
    }
    let Some(l) = profile.regularity else {
        let witness = f
            .vars()
            .find(|&v| f.occurrence_count(v) != f.occurrence_count(crate::formula::Var::new(1)));
        return AuditResult::new("theorem3")
            .fail("reason", json!("not regular"))
            .with(
                "witness_var",
                json!(witness.map(|v| v.index()).unwrap_or(0)),
            );
    };
    let mut audit = AuditResult::new("theorem3")
        .with("l", json!(l))
        .with("m", json!(f.m()))
        .with("n", json!(f.n()));
    let Some(k) = profile.uniformity else {
        return audit.fail("reason", json!("not uniform"));
    };
    audit = audit.with("k", json!(k));
    let (k, l, m, n) = (u64::from(k), u64::from(l), f.m() as u64, f.n() as u64);
    let divisible = (k * (k - 1)) % l == 0;
    let expected_m = 1 + k * (l - 1);
    audit = audit
        .with("divisibility_ok", json!(divisible))
        .with("expected_m", json!(expected_m));
    if !divisible {
        return audit.fail("reason", json!("k(k-1) not a multiple of l"));
    }
    let expected_n = k * k - k * (k - 1) / l;
    audit = audit.with("expected_n", json!(expected_n));
    if m != expected_m || n != expected_n {
        return audit.fail("reason", json!("parameter mismatch"));
    }
    audit
}

/// Sum of occurrences over a clause is m-1+k for uniform exact linear F.
pub(crate) fn check_corollary1(f: &Formula, profile: &Profile) -> AuditResult {
    if !profile.exact_linear {
        return not_exact_linear("corollary1", f);
    }
    let Some(k) = profile.uniformity else {
        return AuditResult::new("corollary1").fail("reason", json!("not uniform"));
    };
    let invariant = (f.m() - 1) as u64 + u64::from(k);
    let per_clause: Vec<u64> = f
        .clauses()
        .iter()
        .map(|c| c.vars().map(|v| u64::from(f.occurrence_count(v))).sum())
        .collect();
    let mut audit = AuditResult::new("corollary1")
        .with("invariant", json!(invariant))
        .with("per_clause", json!(per_clause));
    if let Some(idx) = per_clause.iter().position(|&v| v != invariant) {
        audit = audit
            .fail("witness_clause", json!(idx + 1))
            .with("witness_value", json!(per_clause[idx]));
    }
    audit
}

/// Unconnected pair count matches m(m - m_XL)/2 with m_XL = 1 + k(l-1).
pub(crate) fn check_delta_lemma(f: &Formula, profile: &Profile) -> AuditResult {
    if !profile.linear {
        let audit = AuditResult::new("delta_lemma").fail("reason", json!("not linear"));
        return match exact_linearity_witness(f) {
            Some((a, b, c)) if c > 1 => audit
                .with("witness_pair", json!([a + 1, b + 1]))
                .with("witness_shared", json!(c)),
            _ => audit,
        };
    }
    let Some(l) = profile.regularity else {
        return AuditResult::new("delta_lemma").fail("reason", json!("not regular"));
    };
    let Some(k) = profile.uniformity else {
        return AuditResult::new("delta_lemma").fail("reason", json!("not uniform"));
    };
    let delta = unconnected_pairs(f);
    let m = f.m() as i128;
    let m_xl = 1 + i128::from(k) * (i128::from(l) - 1);
    let expected = m * (m - m_xl) / 2;
    let mut audit = AuditResult::new("delta_lemma")
        .with("delta", json!(delta))
        .with("m_xl", json!(m_xl as i64))
        .with("expected", json!(expected as i64));
    if i128::from(delta) != expected {
        audit = audit.fail("reason", json!("count mismatch"));
    }
    audit
}

pub fn audit_theorem1(f: &Formula) -> Result<AuditResult, ClassifyError> {
    let profile = classify(f);
    if !profile.exact_linear {
        return Err(ClassifyError::NotExactLinear);
    }
    Ok(check_theorem1(f, &profile))
}

pub fn audit_theorem2(f: &Formula) -> Result<AuditResult, ClassifyError> {
    let profile = classify(f);
    if !profile.exact_linear {
        return Err(ClassifyError::NotExactLinear);
    }
    Ok(check_theorem2(f, &profile))
}

pub fn audit_theorem3(f: &Formula) -> Result<AuditResult, ClassifyError> {
    let profile = classify(f);
    if !profile.exact_linear {
        return Err(ClassifyError::NotExactLinear);
    }
    if profile.regularity.is_none() {
        return Err(ClassifyError::NotRegular);
    }
    Ok(check_theorem3(f, &profile))
}

pub fn corollary1_invariant(f: &Formula) -> Result<AuditResult, ClassifyError> {
    let profile = classify(f);
    if !profile.exact_linear {
        return Err(ClassifyError::NotExactLinear);
    }
    if profile.uniformity.is_none() {
        return Err(ClassifyError::NotUniform);
    }
    Ok(check_corollary1(f, &profile))
}

pub fn audit_delta_lemma(f: &Formula) -> Result<AuditResult, ClassifyError> {
    let profile = classify(f);
    if !profile.linear {
        return Err(ClassifyError::NotLinear);
    }
    if profile.regularity.is_none() {
        return Err(ClassifyError::NotRegular);
    }
    if profile.uniformity.is_none() {
        return Err(ClassifyError::NotUniform);
    }
    Ok(check_delta_lemma(f, &profile))
}

/// The class an instance is expected to inhabit, which selects the
/// audits worth running. Derived from the classified profile, or pinned
/// from generator provenance so that a damaged instance still gets
/// audited against its intended class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expectation {
    pub exact_linear: bool,
    pub linear: bool,
    pub regular: bool,
    pub uniform: bool,
}

impl Expectation {
    pub fn from_profile(profile: &Profile) -> Expectation {
        Expectation {
            exact_linear: profile.exact_linear,
            linear: profile.linear,
            regular: profile.regularity.is_some(),
            uniform: profile.uniformity.is_some(),
        }
    }

    /// Exact linear regular uniform families.
    pub fn exact_linear_family() -> Expectation {
        Expectation {
            exact_linear: true,
            linear: true,
            regular: true,
            uniform: true,
        }
    }

    /// Linear (not exact) regular uniform families, such as chains.
    pub fn linear_family() -> Expectation {
        Expectation {
            exact_linear: false,
            linear: true,
            regular: true,
            uniform: true,
        }
    }

    /// No structural expectations beyond regularity.
    pub fn regular_family() -> Expectation {
        Expectation {
            exact_linear: false,
            linear: false,
            regular: true,
            uniform: false,
        }
    }
}

/// Runs every audit applicable under `expected`. Checks run unguarded:
/// if the instance lacks the expected structure the audit fails with a
/// witness instead of being skipped.
pub fn audit_suite(f: &Formula, expected: &Expectation) -> Vec<AuditResult> {
    let profile = classify(f);
    let mut results = Vec::new();
    if expected.exact_linear {
        results.push(check_theorem1(f, &profile));
        results.push(check_theorem2(f, &profile));
        if expected.regular {
            results.push(check_theorem3(f, &profile));
        }
        if expected.uniform {
            results.push(check_corollary1(f, &profile));
        }
    }
    if expected.linear && expected.regular && expected.uniform {
        results.push(check_delta_lemma(f, &profile));
    }
    results
}
