//! Ground-truth oracle: exhaustive assignment search.
//!
//! Assignments are visited as sets of true variables in sorted-list
//! lexicographic order ({} before {1} before {1,2} before {1,3} before
//! {2}), so the first model found is the canonical one that the
//! candidate sweep would also return. Per-clause true-literal counts
//! are maintained incrementally while the search toggles variables.

use crate::formula::{Assignment, Formula};

use super::{EngineError, Method, SearchStats, Verdict};

struct Search {
    // (clause index, polarity) per variable slot
    var_lits: Vec<Vec<(usize, bool)>>,
    counts: Vec<i32>,
    exactly_one: usize,
    m: usize,
    n: usize,
    values: Vec<bool>,
    examined: u64,
}

impl Search {
    fn flip(&mut self, slot: usize, to_true: bool) {
        for i in 0..self.var_lits[slot].len() {
            let (clause, positive) = self.var_lits[slot][i];
            let delta = if positive == to_true { 1 } else { -1 };
            if self.counts[clause] == 1 {
                self.exactly_one -= 1;
            }
            self.counts[clause] += delta;
            if self.counts[clause] == 1 {
                self.exactly_one += 1;
            }
        }
    }

    fn run(&mut self, next: usize) -> bool {
        self.examined += 1;
        if self.exactly_one == self.m {
            return true;
        }
        for slot in next..self.n {
            self.flip(slot, true);
            self.values[slot] = true;
            if self.run(slot + 1) {
                return true;
            }
            self.flip(slot, false);
            self.values[slot] = false;
        }
        false
    }
}

/// Tests assignments exhaustively; first model in canonical order wins.
pub fn brute_force_decide(f: &Formula, bound: u32) -> Result<Verdict, EngineError> {
    let n = f.n();
    if n > bound as usize {
        return Err(EngineError::TooLarge { n, bound });
    }
    let mut var_lits = vec![Vec::new(); n];
    let mut counts = vec![0i32; f.m()];
    for (idx, clause) in f.clauses().iter().enumerate() {
        for lit in clause.literals() {
            var_lits[lit.var.slot()].push((idx, lit.positive));
            if !lit.positive {
                // negative literals are true under the all-false start
                counts[idx] += 1;
            }
        }
    }
    let exactly_one = counts.iter().filter(|&&c| c == 1).count();
    let mut search = Search {
        var_lits,
        counts,
        exactly_one,
        m: f.m(),
        n,
        values: vec![false; n],
        examined: 0,
    };
    let found = search.run(0);
    let stats = SearchStats {
        candidates_examined: search.examined,
        pseudomodel_count: None,
        replication_fallback: false,
    };
    if found {
        let model = Assignment::from_values(search.values);
        debug_assert!(f.is_xsat_model(&model).unwrap());
        Ok(Verdict::sat(model, Method::BruteForce, stats))
    } else {
        Ok(Verdict::unsat(Method::BruteForce, stats))
    }
}
