//! Extension of an eligible linear formula to an exact linear one.
//!
//! Eligible means monotone, linear, l-regular, k-uniform, with every
//! clause unconnected to exactly l(l-2) other clauses. The extension
//! appends l new clauses of width k+l sharing a single hub variable and
//! gives every original clause l fresh variables, one drawn from each
//! new clause's pool, so that previously unconnected clause pairs
//! become connected through exactly one shared pool variable. Each pool
//! variable may serve l-1 original clauses, which must be pairwise
//! unconnected and not already connected through another pool.
//!
//! Finding the pool-variable assignment is a backtracking search (the
//! hypothesis guarantees the counting identities, not the assignment
//! itself); an exhausted search is reported, never glossed over.

use std::collections::HashSet;

use crate::classify::{audit_theorem3, classify, connected_degree};
use crate::formula::{Clause, Formula};

use super::GenError;

struct Completion<'a> {
    f: &'a Formula,
    l: usize,
    /// Pool variable capacity: how many original clauses share one.
    capacity: usize,
    pool_size: usize,
    /// unconnected[c] = clauses with no variable in common with c.
    unconnected: Vec<HashSet<usize>>,
    /// users[pool][slot] = original clauses assigned this pool variable.
    users: Vec<Vec<Vec<usize>>>,
    /// choice[c][pool] = pool-variable slot serving clause c.
    choice: Vec<Vec<usize>>,
    covered: HashSet<(usize, usize)>,
}

impl Completion<'_> {
    fn compatible(&self, clause: usize, slot_users: &[usize]) -> bool {
        slot_users.len() < self.capacity
            && slot_users.iter().all(|&u| {
                self.unconnected[clause].contains(&u)
                    && !self.covered.contains(&(u.min(clause), u.max(clause)))
            })
    }

    fn assign(&mut self, clause: usize, pool: usize) -> bool {
        if pool == self.l {
            return self.assign_clause(clause + 1);
        }
        // candidates: every slot already in use, then one fresh slot
        // (fresh slots are interchangeable)
        let used = self.users[pool].len();
        for slot in 0..=used {
            if slot == used {
                if used == self.pool_size {
                    break;
                }
                self.users[pool].push(Vec::new());
            } else if !self.compatible(clause, &self.users[pool][slot]) {
                continue;
            }
            let partners: Vec<usize> = self.users[pool][slot].clone();
            for &u in &partners {
                self.covered.insert((u.min(clause), u.max(clause)));
            }
            self.users[pool][slot].push(clause);
            self.choice[clause][pool] = slot;
            if self.assign(clause, pool + 1) {
                return true;
            }
            self.users[pool][slot].pop();
            for &u in &partners {
                self.covered.remove(&(u.min(clause), u.max(clause)));
            }
            if slot == used {
                self.users[pool].pop();
            }
        }
        false
    }

    fn assign_clause(&mut self, clause: usize) -> bool {
        if clause == self.f.m() {
            return true;
        }
        self.assign(clause, 0)
    }
}

/// Adds l clauses and 1 + l(k+l-1) variables turning an eligible linear
/// formula into an exact linear l-regular (k+l)-uniform one with the
/// same exact-satisfiability status.
pub fn extend_to_exact_linear(f: &Formula) -> Result<Formula, GenError> {
    let profile = classify(f);
    let mut missing = Vec::new();
    if !profile.monotone {
        missing.push("monotone");
    }
    if !profile.linear {
        missing.push("linear");
    }
    if profile.regularity.is_none() {
        missing.push("regular");
    }
    if profile.uniformity.is_none() {
        missing.push("uniform");
    }
    if !missing.is_empty() {
        return Err(GenError::NotEligibleGenerator {
            reason: format!("not {}", missing.join(", not ")),
        });
    }
    let l = profile.regularity.unwrap() as usize;
    let k = profile.uniformity.unwrap() as usize;
    let m = f.m();
    let n = f.n();

    let want = l as i64 * (l as i64 - 2);
    let degrees = connected_degree(f);
    for (idx, &connected) in degrees.iter().enumerate() {
        let actual = (m as u64 - 1) - connected;
        if i64::try_from(actual) != Ok(want) {
            return Err(GenError::HypothesisViolated {
                clause: idx as u32 + 1,
                expected: want,
                actual,
            });
        }
    }

    let pool_size = k + l - 1;
    let hub = (n + 1) as u32;
    let pool_var = |pool: usize, slot: usize| (n + 1 + pool * pool_size + slot + 1) as u32;

    let mut unconnected = vec![HashSet::new(); m];
    for a in 0..m {
        for b in a + 1..m {
            if f.clause(a).vars().all(|v| !f.clause(b).contains_var(v)) {
                unconnected[a].insert(b);
                unconnected[b].insert(a);
            }
        }
    }

    let mut search = Completion {
        f,
        l,
        capacity: l - 1,
        pool_size,
        unconnected,
        users: vec![Vec::new(); l],
        choice: vec![vec![0; l]; m],
        covered: HashSet::new(),
    };
    if l < 2 || !search.assign_clause(0) {
        return Err(GenError::SearchExhausted);
    }
    // every pool must be fully populated (the counting identities force
    // it when the search succeeds)
    for pool in 0..l {
        while search.users[pool].len() < pool_size {
            search.users[pool].push(Vec::new());
        }
    }

    let mut clauses: Vec<Clause> = f
        .clauses()
        .iter()
        .enumerate()
        .map(|(c, clause)| {
            let vars = clause
                .vars()
                .map(|v| v.index())
                .chain((0..l).map(|pool| pool_var(pool, search.choice[c][pool])));
            Clause::positive(vars).expect("fresh variables are distinct")
        })
        .collect();
    for pool in 0..l {
        let vars = std::iter::once(hub).chain((0..pool_size).map(|slot| pool_var(pool, slot)));
        clauses.push(Clause::positive(vars).expect("pool variables are distinct"));
    }

    let extended = Formula::with_var_count((n + 1 + l * pool_size) as u32, clauses)
        .expect("hub and pool variables all occur");
    let after = classify(&extended);
    assert!(
        after.monotone
            && after.exact_linear
            && after.regularity == Some(l as u32)
            && after.uniformity == Some((k + l) as u32)
            && audit_theorem3(&extended).expect("exact linear regular").pass,
        "extension construction produced a malformed formula"
    );
    Ok(extended)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{audit_theorem2, corollary1_invariant};
    use crate::engine::{brute_force_decide, Status};
    use crate::formula::Assignment;
    use crate::generators::{gen_complete_graph, gen_linear_chain};

    #[test]
    fn k4_extension_parameters() {
        let k4 = gen_complete_graph(3);
        let extended = extend_to_exact_linear(&k4).unwrap();
        assert_eq!(extended.m(), 6);
        assert_eq!(extended.n(), 15);
        let p = classify(&extended);
        assert!(p.exact_linear);
        assert_eq!(p.regularity, Some(2));
        assert_eq!(p.uniformity, Some(5));
        assert!(audit_theorem2(&extended).unwrap().pass);
        assert!(corollary1_invariant(&extended).unwrap().pass);
    }

    #[test]
    fn extension_preserves_satisfiability_status() {
        let k4 = gen_complete_graph(3);
        let extended = extend_to_exact_linear(&k4).unwrap();
        let before = brute_force_decide(&k4, 25).unwrap();
        let after = brute_force_decide(&extended, 25).unwrap();
        assert_eq!(before.status, after.status);
        assert_eq!(before.status, Status::Sat);
        // a generator model extends by setting the hub true
        let mut values = before.model.unwrap().values().to_vec();
        values.push(true);
        values.extend(std::iter::repeat_n(false, extended.n() - values.len()));
        assert!(extended
            .is_xsat_model(&Assignment::from_values(values))
            .unwrap());
    }

    #[test]
    fn triangle_extension() {
        let triangle = gen_complete_graph(2);
        let extended = extend_to_exact_linear(&triangle).unwrap();
        let p = classify(&extended);
        assert!(p.exact_linear);
        assert_eq!(p.uniformity, Some(4));
        assert_eq!(extended.m(), 5);
        // the triangle is x-unsat and so is its extension
        let before = brute_force_decide(&triangle, 25).unwrap();
        let after = brute_force_decide(&extended, 25).unwrap();
        assert_eq!(before.status, after.status);
        assert_eq!(after.status, Status::Unsat);
    }

    #[test]
    fn hypothesis_violation_is_reported() {
        // a 2-chain: every clause unconnected to 4 others, but l(l-2) = 0
        let (chain, _) = gen_linear_chain(&gen_complete_graph(3), 2).unwrap();
        let err = extend_to_exact_linear(&chain).unwrap_err();
        assert_eq!(
            err,
            GenError::HypothesisViolated {
                clause: 1,
                expected: 0,
                actual: 4
            }
        );
    }

    #[test]
    fn non_uniform_input_is_rejected() {
        let f = Formula::build(vec![
            Clause::positive([1, 2]).unwrap(),
            Clause::positive([2, 3, 4]).unwrap(),
            Clause::positive([1, 3]).unwrap(),
            Clause::positive([4]).unwrap(),
        ])
        .unwrap();
        assert!(matches!(
            extend_to_exact_linear(&f).unwrap_err(),
            GenError::NotEligibleGenerator { .. }
        ));
    }
}
