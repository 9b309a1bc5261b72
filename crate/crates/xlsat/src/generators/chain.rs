//! Linear p-chains and entanglement.
//!
//! A p-chain concatenates p variable-disjoint renamed copies of an
//! exact linear regular uniform generator; copy λ uses variables
//! (λ-1)n+1..λn and clauses (λ-1)m+1..λm. An entanglement swaps one
//! variable occurrence between adjacent copies in the same clause
//! position, which keeps regularity, uniformity and linearity while
//! making the chain inseparable.

use std::fmt;
use std::str::FromStr;

use crate::classify::{audit_theorem3, classify};
use crate::formula::{Clause, Formula, Var};

use super::GenError;

/// One occurrence swap between copy `link` and copy `link`+1: variable
/// `var` of clause `clause` (generator coordinates, 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntanglementOp {
    pub link: u32,
    pub clause: u32,
    pub var: u32,
}

impl fmt::Display for EntanglementOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.link, self.clause, self.var)
    }
}

impl FromStr for EntanglementOp {
    type Err = String;

    /// Parses the `link:clause:var` triplet syntax.
    fn from_str(s: &str) -> Result<EntanglementOp, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("`{s}` is not a link:clause:var triplet"));
        }
        let parse = |name: &str, text: &str| -> Result<u32, String> {
            let value: u32 = text
                .parse()
                .map_err(|_| format!("invalid {name} `{text}` in `{s}`"))?;
            if value == 0 {
                return Err(format!("{name} in `{s}` must be positive"));
            }
            Ok(value)
        };
        Ok(EntanglementOp {
            link: parse("link", parts[0])?,
            clause: parse("clause", parts[1])?,
            var: parse("variable", parts[2])?,
        })
    }
}

impl EntanglementOp {
    /// The two (clause index, variable id) slots the swap touches, in
    /// chain coordinates (0-based clause index).
    fn slots(&self, n0: usize, m0: usize) -> [(usize, u32); 2] {
        let link = self.link as usize;
        let front_clause = (link - 1) * m0 + self.clause as usize - 1;
        let back_clause = link * m0 + self.clause as usize - 1;
        let front_var = ((link - 1) * n0) as u32 + self.var;
        let back_var = (link * n0) as u32 + self.var;
        [(front_clause, front_var), (back_clause, back_var)]
    }
}

/// Recipe for a chain: the generator, the number of links, and the
/// entanglements applied in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpec {
    generator: Formula,
    p: u32,
    entanglements: Vec<EntanglementOp>,
}

impl ChainSpec {
    pub fn generator(&self) -> &Formula {
        &self.generator
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn entanglements(&self) -> &[EntanglementOp] {
        &self.entanglements
    }

    /// Rebuilds the chain formula this recipe describes.
    pub fn instantiate(&self) -> Result<Formula, GenError> {
        let (mut formula, mut spec) = gen_linear_chain(&self.generator, self.p)?;
        for &op in &self.entanglements {
            let (next_formula, next_spec) = entangle(&formula, &spec, op)?;
            formula = next_formula;
            spec = next_spec;
        }
        Ok(formula)
    }
}

/// Concatenates p disjoint renamed copies of the generator. The result
/// is monotone, linear (not exact linear for p >= 2), and keeps the
/// generator's regularity and uniformity.
pub fn gen_linear_chain(generator: &Formula, p: u32) -> Result<(Formula, ChainSpec), GenError> {
    assert!(p >= 1, "a chain has at least one link");
    let profile = classify(generator);
    let mut missing = Vec::new();
    if !profile.monotone {
        missing.push("monotone");
    }
    if !profile.exact_linear {
        missing.push("exact linear");
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
    let audit = audit_theorem3(generator).expect("profile was just checked");
    if !audit.pass {
        return Err(GenError::NotEligibleGenerator {
            reason: "structural parameter audit failed".into(),
        });
    }

    let n0 = generator.n();
    let mut clauses = Vec::with_capacity(generator.m() * p as usize);
    for copy in 0..p as usize {
        let offset = (copy * n0) as u32;
        for clause in generator.clauses() {
            let vars = clause.vars().map(|v| v.index() + offset);
            clauses.push(Clause::positive(vars).expect("copies preserve distinctness"));
        }
    }
    let formula = Formula::with_var_count((n0 * p as usize) as u32, clauses)
        .expect("every copy uses its whole variable block");
    let spec = ChainSpec {
        generator: generator.clone(),
        p,
        entanglements: Vec::new(),
    };
    Ok((formula, spec))
}

/// Applies one occurrence swap between adjacent copies and re-verifies
/// the structural profile of the result.
pub fn entangle(
    chain: &Formula,
    spec: &ChainSpec,
    op: EntanglementOp,
) -> Result<(Formula, ChainSpec), GenError> {
    let n0 = spec.generator.n();
    let m0 = spec.generator.m();
    if spec.p < 2 || op.link == 0 || op.link > spec.p - 1 {
        return Err(GenError::InvalidCoordinates {
            reason: format!("link {} not in 1..={}", op.link, spec.p.saturating_sub(1)),
        });
    }
    if op.clause == 0 || op.clause as usize > m0 {
        return Err(GenError::InvalidCoordinates {
            reason: format!("clause {} not in 1..={m0}", op.clause),
        });
    }
    if op.var == 0 || op.var as usize > n0 {
        return Err(GenError::InvalidCoordinates {
            reason: format!("variable {} not in 1..={n0}", op.var),
        });
    }

    let new_slots = op.slots(n0, m0);
    for prior in &spec.entanglements {
        for used in prior.slots(n0, m0) {
            for slot in new_slots {
                if used == slot {
                    return Err(GenError::SlotAlreadyUsed {
                        clause: slot.0 as u32 + 1,
                        var: slot.1,
                    });
                }
            }
        }
    }

    let [(front_clause, front_var), (back_clause, back_var)] = new_slots;
    for (clause_idx, var) in [(front_clause, front_var), (back_clause, back_var)] {
        if !chain.clause(clause_idx).contains_var(Var::new(var)) {
            return Err(GenError::LiteralAbsent {
                clause: clause_idx as u32 + 1,
                var,
            });
        }
    }

    let mut clauses: Vec<Clause> = chain.clauses().to_vec();
    clauses[front_clause].replace_var(Var::new(front_var), Var::new(back_var));
    clauses[back_clause].replace_var(Var::new(back_var), Var::new(front_var));
    let entangled = Formula::with_var_count(chain.n() as u32, clauses)
        .expect("the swap moves occurrences, it does not drop them");

    let before = classify(chain);
    let after = classify(&entangled);
    if !(after.monotone
        && after.linear
        && after.regularity == before.regularity
        && after.uniformity == before.uniformity)
    {
        return Err(GenError::LinearityBroken {
            reason: format!(
                "profile changed from (linear={}, l={:?}, k={:?}) to (linear={}, l={:?}, k={:?})",
                before.linear,
                before.regularity,
                before.uniformity,
                after.linear,
                after.regularity,
                after.uniformity
            ),
        });
    }

    let mut entanglements = spec.entanglements.clone();
    entanglements.push(op);
    let next_spec = ChainSpec {
        generator: spec.generator.clone(),
        p: spec.p,
        entanglements,
    };
    Ok((entangled, next_spec))
}

/// Reconstructs the chain recipe for a formula known to be a p-chain
/// with the given entanglements: undoes the swaps, slices out the first
/// copy as the generator, and verifies the rebuild reproduces the input.
pub fn recover_chain_spec(
    f: &Formula,
    p: u32,
    ops: &[EntanglementOp],
) -> Result<ChainSpec, GenError> {
    if p == 0 || !f.n().is_multiple_of(p as usize) || !f.m().is_multiple_of(p as usize) {
        return Err(GenError::ChainMismatch {
            reason: format!(
                "{} variables / {} clauses do not split into {p} equal blocks",
                f.n(),
                f.m()
            ),
        });
    }
    let n0 = f.n() / p as usize;
    let m0 = f.m() / p as usize;

    let mut clauses: Vec<Clause> = f.clauses().to_vec();
    for op in ops.iter().rev() {
        let [(front_clause, front_var), (back_clause, back_var)] = op.slots(n0, m0);
        if front_clause >= clauses.len() || back_clause >= clauses.len() {
            return Err(GenError::ChainMismatch {
                reason: format!("entanglement {op} points outside the chain"),
            });
        }
        // the swap is its own inverse on the two slots
        let undone_front = clauses[front_clause].replace_var(Var::new(back_var), Var::new(front_var));
        let undone_back = clauses[back_clause].replace_var(Var::new(front_var), Var::new(back_var));
        if !undone_front || !undone_back {
            return Err(GenError::ChainMismatch {
                reason: format!("entanglement {op} does not match the formula"),
            });
        }
    }

    let first_block: Vec<Clause> = clauses[..m0].to_vec();
    for clause in &first_block {
        for v in clause.vars() {
            if v.index() as usize > n0 {
                return Err(GenError::ChainMismatch {
                    reason: "first block is not variable-disjoint from the rest".into(),
                });
            }
        }
    }
    let generator = Formula::with_var_count(n0 as u32, first_block).map_err(|e| {
        GenError::ChainMismatch {
            reason: format!("first block is not a well-formed generator: {e}"),
        }
    })?;
    let spec = ChainSpec {
        generator,
        p,
        entanglements: ops.to_vec(),
    };
    let rebuilt = spec.instantiate()?;
    if &rebuilt != f {
        return Err(GenError::ChainMismatch {
            reason: "rebuilding the chain does not reproduce the input".into(),
        });
    }
    Ok(spec)
}

/// Machine-readable provenance lines describing a chain recipe.
pub fn chain_provenance(spec: &ChainSpec) -> Vec<String> {
    let mut lines = vec![format!("xlsat chain p={}", spec.p)];
    for op in &spec.entanglements {
        lines.push(format!("xlsat entangle={op}"));
    }
    lines
}

/// Reads back chain provenance lines, if present.
pub fn parse_chain_provenance(comments: &[String]) -> Option<(u32, Vec<EntanglementOp>)> {
    let mut p = None;
    let mut ops = Vec::new();
    for comment in comments {
        let text = comment.trim();
        if let Some(rest) = text.strip_prefix("xlsat chain p=") {
            p = rest.trim().parse().ok();
        } else if let Some(rest) = text.strip_prefix("xlsat entangle=") {
            ops.push(rest.trim().parse().ok()?);
        }
    }
    p.map(|p| (p, ops))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{audit_delta_lemma, is_connected, unconnected_pairs};
    use crate::generators::{gen_complete_graph, gen_fano};

    #[test]
    fn two_chain_of_k4() {
        let k4 = gen_complete_graph(3);
        let (chain, spec) = gen_linear_chain(&k4, 2).unwrap();
        assert_eq!((chain.n(), chain.m()), (12, 8));
        let p = classify(&chain);
        assert!(p.monotone && p.linear && !p.exact_linear);
        assert_eq!(p.regularity, Some(2));
        assert_eq!(p.uniformity, Some(3));
        assert_eq!(spec.p(), 2);
        assert_eq!(unconnected_pairs(&chain), 16);
        assert!(audit_delta_lemma(&chain).unwrap().pass);
        assert!(!is_connected(&chain));
    }

    #[test]
    fn one_chain_is_the_generator() {
        let k4 = gen_complete_graph(3);
        let (chain, _) = gen_linear_chain(&k4, 1).unwrap();
        assert_eq!(chain, k4);
    }

    #[test]
    fn three_chain_of_fano() {
        let (chain, _) = gen_linear_chain(&gen_fano(), 3).unwrap();
        assert_eq!((chain.n(), chain.m()), (21, 21));
        let p = classify(&chain);
        assert_eq!(p.regularity, Some(3));
        assert_eq!(p.uniformity, Some(3));
    }

    #[test]
    fn chain_rejects_ineligible_generator() {
        // linear but not exact linear
        let gen = Formula::build(vec![
            Clause::positive([1, 2]).unwrap(),
            Clause::positive([3, 4]).unwrap(),
        ])
        .unwrap();
        assert!(matches!(
            gen_linear_chain(&gen, 2).unwrap_err(),
            GenError::NotEligibleGenerator { .. }
        ));
    }

    #[test]
    fn entangle_swaps_the_occurrence() {
        let k4 = gen_complete_graph(3);
        let (chain, spec) = gen_linear_chain(&k4, 2).unwrap();
        let op: EntanglementOp = "1:1:1".parse().unwrap();
        let (entangled, spec) = entangle(&chain, &spec, op).unwrap();
        // clause 1 now holds the copy-2 variable 7; clause 5 holds 1
        assert!(entangled.clause(0).contains_var(Var::new(7)));
        assert!(!entangled.clause(0).contains_var(Var::new(1)));
        assert!(entangled.clause(4).contains_var(Var::new(1)));
        assert!(!entangled.clause(4).contains_var(Var::new(7)));
        let p = classify(&entangled);
        assert!(p.monotone && p.linear);
        assert_eq!(p.regularity, Some(2));
        assert_eq!(p.uniformity, Some(3));
        assert!(is_connected(&entangled));
        assert!(audit_delta_lemma(&entangled).unwrap().pass);
        assert_eq!(spec.entanglements().len(), 1);
    }

    #[test]
    fn repeated_slot_is_rejected() {
        let k4 = gen_complete_graph(3);
        let (chain, spec) = gen_linear_chain(&k4, 2).unwrap();
        let op = EntanglementOp {
            link: 1,
            clause: 1,
            var: 1,
        };
        let (chain, spec) = entangle(&chain, &spec, op).unwrap();
        assert!(matches!(
            entangle(&chain, &spec, op).unwrap_err(),
            GenError::SlotAlreadyUsed { .. }
        ));
    }

    #[test]
    fn absent_literal_is_rejected() {
        let k4 = gen_complete_graph(3);
        let (chain, spec) = gen_linear_chain(&k4, 2).unwrap();
        // variable 4 (edge 2-3) does not occur in clause 1 (vertex 1)
        let op = EntanglementOp {
            link: 1,
            clause: 1,
            var: 4,
        };
        assert!(matches!(
            entangle(&chain, &spec, op).unwrap_err(),
            GenError::LiteralAbsent { .. }
        ));
    }

    #[test]
    fn out_of_range_coordinates_are_rejected() {
        let k4 = gen_complete_graph(3);
        let (chain, spec) = gen_linear_chain(&k4, 2).unwrap();
        for op in ["2:1:1", "1:5:1", "1:1:7"] {
            let op: EntanglementOp = op.parse().unwrap();
            assert!(matches!(
                entangle(&chain, &spec, op).unwrap_err(),
                GenError::InvalidCoordinates { .. }
            ));
        }
    }

    #[test]
    fn spec_instantiate_reproduces_the_chain() {
        let k4 = gen_complete_graph(3);
        let (chain, spec) = gen_linear_chain(&k4, 3).unwrap();
        let (chain, spec) = entangle(&chain, &spec, "1:1:1".parse().unwrap()).unwrap();
        let (chain, spec) = entangle(&chain, &spec, "2:3:4".parse().unwrap()).unwrap();
        assert_eq!(spec.instantiate().unwrap(), chain);
    }

    #[test]
    fn recovery_round_trip() {
        let k4 = gen_complete_graph(3);
        let (chain, spec) = gen_linear_chain(&k4, 2).unwrap();
        let op = "1:2:4".parse().unwrap();
        let (chain, spec) = entangle(&chain, &spec, op).unwrap();
        let recovered = recover_chain_spec(&chain, 2, spec.entanglements()).unwrap();
        assert_eq!(&recovered, &spec);

        let lines = chain_provenance(&spec);
        let (p, ops) = parse_chain_provenance(&lines).unwrap();
        assert_eq!(p, 2);
        assert_eq!(ops, spec.entanglements());
    }

    #[test]
    fn recovery_rejects_a_non_chain() {
        let fano = gen_fano();
        assert!(matches!(
            recover_chain_spec(&fano, 2, &[]).unwrap_err(),
            GenError::ChainMismatch { .. }
        ));
    }

    #[test]
    fn entanglement_op_parse_errors() {
        assert!("1:2".parse::<EntanglementOp>().is_err());
        assert!("a:2:3".parse::<EntanglementOp>().is_err());
        assert!("0:2:3".parse::<EntanglementOp>().is_err());
    }
}
