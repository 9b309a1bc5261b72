//! Candidate enumeration for monotone formulas.
//!
//! Under a monotone formula every true variable x contributes its
//! occurrence count l(x) to the number of true literals, so an exact
//! model must pick a variable subset whose occurrence counts sum to the
//! clause count m. Those subsets are the candidates ("pseudomodels"):
//! every exact model is one, not conversely, so sweeping them and
//! testing each decides exact satisfiability.
//!
//! The enumerator keys on the occurrence weights, not on regularity:
//! for an l-regular formula it degenerates to the (n choose m/l)
//! fixed-size subsets, and for general monotone formulas it enumerates
//! the subset-sum solutions with suffix-weight pruning. Subsets are
//! produced in sorted-list lexicographic order.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::formula::{Assignment, Formula};

use super::{EngineConfig, EngineError, Method, SearchStats, Verdict};

/// Streaming enumerator over all assignments whose true-literal count
/// equals the clause count.
pub struct Pseudomodels {
    weights: Vec<u64>,
    suffix: Vec<u64>,
    target: u64,
    n: usize,
    chosen: Vec<usize>,
    pos: usize,
    acc: u64,
    done: bool,
}

impl Pseudomodels {
    fn new(weights: Vec<u64>, target: u64) -> Pseudomodels {
        let n = weights.len();
        let mut suffix = vec![0u64; n + 1];
        for i in (0..n).rev() {
            suffix[i] = suffix[i + 1] + weights[i];
        }
        Pseudomodels {
            weights,
            suffix,
            target,
            n,
            chosen: Vec::new(),
            pos: 0,
            acc: 0,
            done: false,
        }
    }

    /// Pops the innermost choice and moves past it; false when the tree
    /// is exhausted.
    fn backtrack(&mut self) -> bool {
        match self.chosen.pop() {
            Some(p) => {
                self.acc -= self.weights[p];
                self.pos = p + 1;
                true
            }
            None => {
                self.done = true;
                false
            }
        }
    }
}

impl Iterator for Pseudomodels {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        if self.done {
            return None;
        }
        loop {
            if self.acc == self.target {
                let mut values = vec![false; self.n];
                for &p in &self.chosen {
                    values[p] = true;
                }
                // weights are positive, so no extension can stay on
                // target: emit and move on
                self.backtrack();
                return Some(Assignment::from_values(values));
            }
            if self.pos < self.n && self.acc + self.suffix[self.pos] >= self.target {
                if self.acc + self.weights[self.pos] <= self.target {
                    self.chosen.push(self.pos);
                    self.acc += self.weights[self.pos];
                }
                self.pos += 1;
            } else if !self.backtrack() {
                return None;
            }
        }
    }
}

fn occurrence_weights(f: &Formula) -> Vec<u64> {
    f.vars().map(|v| u64::from(f.occurrence_count(v))).collect()
}

/// All assignments with exactly m true literal occurrences, each once,
/// in deterministic order.
pub fn enumerate_pseudomodels(f: &Formula) -> Result<Pseudomodels, EngineError> {
    if !f.is_monotone() {
        return Err(EngineError::NotMonotone);
    }
    Ok(Pseudomodels::new(occurrence_weights(f), f.m() as u64))
}

/// Exact candidate count without enumeration: a binomial coefficient
/// for regular formulas, a subset-sum table otherwise.
pub fn count_pseudomodels(f: &Formula) -> Result<BigUint, EngineError> {
    if !f.is_monotone() {
        return Err(EngineError::NotMonotone);
    }
    let weights = occurrence_weights(f);
    let m = f.m() as u64;
    let regular = weights.iter().all(|&w| w == weights[0]);
    if regular {
        let l = weights[0];
        if !m.is_multiple_of(l) {
            return Ok(BigUint::zero());
        }
        return Ok(num_integer::binomial(
            BigUint::from(f.n()),
            BigUint::from(m / l),
        ));
    }
    let target = m as usize;
    let mut table = vec![BigUint::zero(); target + 1];
    table[0] = BigUint::from(1u32);
    for &w in &weights {
        let w = w as usize;
        if w > target {
            continue;
        }
        for t in (w..=target).rev() {
            let add = table[t - w].clone();
            table[t] += add;
        }
    }
    Ok(table.swap_remove(target))
}

/// Sweeps the candidate set, testing each assignment; the first model
/// in canonical order wins. Errors with `BudgetExceeded` when the exact
/// candidate count is above the configured budget.
pub fn pseudomodel_decide(f: &Formula, cfg: &EngineConfig) -> Result<Verdict, EngineError> {
    let count = count_pseudomodels(f)?;
    if count > BigUint::from(cfg.candidate_budget) {
        return Err(EngineError::BudgetExceeded {
            count,
            budget: cfg.candidate_budget,
        });
    }
    let weights = occurrence_weights(f);
    let regular = weights.iter().all(|&w| w == weights[0]);
    if cfg.workers > 1 && regular && !count.is_zero() {
        let total = u64::try_from(&count).expect("count fits the budget");
        let v = (f.m() as u64 / weights[0]) as usize;
        if total > 1 && v >= 1 {
            return Ok(decide_regular_parallel(f, v, total, count, cfg.workers));
        }
    }
    let mut examined = 0u64;
    for candidate in enumerate_pseudomodels(f)? {
        examined += 1;
        if f.xsat_model_values(candidate.values()) {
            return Ok(Verdict::sat(
                candidate,
                Method::Pseudomodel,
                SearchStats {
                    candidates_examined: examined,
                    pseudomodel_count: Some(count),
                    replication_fallback: false,
                },
            ));
        }
    }
    Ok(Verdict::unsat(
        Method::Pseudomodel,
        SearchStats {
            candidates_examined: examined,
            pseudomodel_count: Some(count),
            replication_fallback: false,
        },
    ))
}

// ---------------------------------------------------------------------
// Partitioned sweep for regular formulas.
//
// Fixed-size subsets have a combinatorial ranking, so the candidate
// space splits into contiguous rank ranges that workers test
// independently. Workers do not communicate; each reports its own first
// model and examined count, and the lowest rank wins, which keeps the
// returned model and the statistics reproducible for a given worker
// count.

fn binom_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result * u128::from(n - i) / u128::from(i + 1);
    }
    result
}

/// The rank-th v-subset of 0..n in lexicographic order.
fn unrank_combination(mut rank: u64, n: usize, v: usize) -> Vec<usize> {
    let mut combo = Vec::with_capacity(v);
    let mut next = 0usize;
    for remaining in (1..=v).rev() {
        let mut candidate = next;
        loop {
            let below = binom_u128((n - candidate - 1) as u64, (remaining - 1) as u64);
            if u128::from(rank) < below {
                break;
            }
            rank -= below as u64;
            candidate += 1;
        }
        combo.push(candidate);
        next = candidate + 1;
    }
    combo
}

/// Advances to the lexicographic successor; false at the last subset.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let v = combo.len();
    for i in (0..v).rev() {
        if combo[i] < n - (v - i) {
            combo[i] += 1;
            for j in i + 1..v {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A worker's first model (by rank) and its examined count.
type RangeResult = (Option<(u64, Vec<usize>)>, u64);

fn decide_regular_parallel(
    f: &Formula,
    v: usize,
    total: u64,
    count: BigUint,
    workers: usize,
) -> Verdict {
    let n = f.n();
    let workers = workers.min(total as usize).max(1);
    let chunk = total.div_ceil(workers as u64);
    let results: Vec<RangeResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let start = w as u64 * chunk;
                let end = (start + chunk).min(total);
                scope.spawn(move || {
                    if start >= end {
                        return (None, 0);
                    }
                    let mut combo = unrank_combination(start, n, v);
                    let mut values = vec![false; n];
                    let mut examined = 0u64;
                    for rank in start..end {
                        values.iter_mut().for_each(|b| *b = false);
                        for &slot in &combo {
                            values[slot] = true;
                        }
                        examined += 1;
                        if f.xsat_model_values(&values) {
                            return (Some((rank, combo)), examined);
                        }
                        if rank + 1 < end && !next_combination(&mut combo, n) {
                            break;
                        }
                    }
                    (None, examined)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    let examined: u64 = results.iter().map(|(_, e)| e).sum();
    let best = results
        .into_iter()
        .filter_map(|(found, _)| found)
        .min_by_key(|(rank, _)| *rank);
    let stats = SearchStats {
        candidates_examined: examined,
        pseudomodel_count: Some(count),
        replication_fallback: false,
    };
    match best {
        Some((_, combo)) => {
            let mut values = vec![false; n];
            for slot in combo {
                values[slot] = true;
            }
            Verdict::sat(Assignment::from_values(values), Method::Pseudomodel, stats)
        }
        None => Verdict::unsat(Method::Pseudomodel, stats),
    }
}
