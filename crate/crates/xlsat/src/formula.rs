//! CNF formula data model with occurrence bookkeeping, true-literal
//! counting and the exact-satisfiability model predicate.
//!
//! A [`Formula`] owns its clauses and a per-variable occurrence index.
//! Variables are dense 1-based indices. [`Formula::build`] renumbers
//! arbitrary input indices by first appearance (keeping the original
//! spelling as the variable name); [`Formula::with_var_count`] keeps
//! indices as given and rejects gaps.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("formula has no clauses")]
    EmptyFormula,
    #[error("clause has no literals")]
    EmptyClause,
    #[error("variable {var} occurs more than once in a clause")]
    DuplicateVariable { var: u32 },
    #[error("variable {var} out of range 1..={max}")]
    VariableOutOfRange { var: u32, max: u32 },
    #[error("variable {var} never occurs in any clause")]
    UnusedVariable { var: u32 },
    #[error("assignment over {got} variables applied to a formula with {expected}")]
    DomainMismatch { expected: usize, got: usize },
}

/// A variable, identified by its 1-based index within the owning formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    /// Creates a variable from a 1-based index.
    pub fn new(index: u32) -> Var {
        assert!(index > 0, "variable indices are 1-based");
        Var(index)
    }

    /// The 1-based index.
    pub fn index(self) -> u32 {
        self.0
    }

    /// The 0-based position for array lookups.
    pub fn slot(self) -> usize {
        (self.0 - 1) as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An occurrence of a variable or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: Var,
    pub positive: bool,
}

impl Literal {
    pub fn positive(var: Var) -> Literal {
        Literal { var, positive: true }
    }

    pub fn negative(var: Var) -> Literal {
        Literal { var, positive: false }
    }

    /// DIMACS encoding: the signed variable index.
    pub fn code(self) -> i64 {
        let v = i64::from(self.var.index());
        if self.positive {
            v
        } else {
            -v
        }
    }

    /// True under `value` for the literal's variable.
    pub fn satisfied_by(self, value: bool) -> bool {
        self.positive == value
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// A disjunction of literals over pairwise-distinct variables.
///
/// Clauses are non-empty and mention each variable at most once, so a
/// tautological pair `x, -x` is rejected rather than simplified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Result<Clause, FormulaError> {
        if literals.is_empty() {
            return Err(FormulaError::EmptyClause);
        }
        let mut seen: Vec<u32> = literals.iter().map(|l| l.var.index()).collect();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                return Err(FormulaError::DuplicateVariable { var: w[0] });
            }
        }
        Ok(Clause { literals })
    }

    /// Convenience constructor for a clause of positive literals.
    pub fn positive(vars: impl IntoIterator<Item = u32>) -> Result<Clause, FormulaError> {
        Clause::new(
            vars.into_iter()
                .map(|v| Literal::positive(Var::new(v)))
                .collect(),
        )
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    /// Number of literals, |V(C)|.
    pub fn width(&self) -> usize {
        self.literals.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.literals.iter().map(|l| l.var)
    }

    pub fn contains_var(&self, var: Var) -> bool {
        self.literals.iter().any(|l| l.var == var)
    }

    /// Replaces the variable at the slot currently holding `from` with
    /// `to`, preserving the literal's position and polarity.
    pub(crate) fn replace_var(&mut self, from: Var, to: Var) -> bool {
        for lit in &mut self.literals {
            if lit.var == from {
                lit.var = to;
                return true;
            }
        }
        false
    }
}

/// A CNF formula: an ordered list of clauses over variables 1..=n,
/// every one of which occurs in at least one clause.
#[derive(Debug, Clone)]
pub struct Formula {
    clauses: Vec<Clause>,
    names: Vec<String>,
    occurrences: Vec<Vec<usize>>,
    monotone: bool,
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        self.clauses == other.clauses
    }
}

impl Eq for Formula {}

impl Formula {
    /// Builds a formula from clauses over arbitrary variable indices.
    /// Variables are renumbered densely 1..n in first-appearance order;
    /// the original index is kept as the variable's name.
    pub fn build(clauses: Vec<Clause>) -> Result<Formula, FormulaError> {
        if clauses.is_empty() {
            return Err(FormulaError::EmptyFormula);
        }
        let mut dense: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        let mut names = Vec::new();
        let remapped = clauses
            .into_iter()
            .map(|c| {
                let lits = c
                    .literals
                    .into_iter()
                    .map(|lit| {
                        let next = dense.len() as u32 + 1;
                        let id = *dense.entry(lit.var.index()).or_insert_with(|| {
                            names.push(lit.var.index().to_string());
                            next
                        });
                        Literal {
                            var: Var::new(id),
                            positive: lit.positive,
                        }
                    })
                    .collect();
                Clause { literals: lits }
            })
            .collect();
        Ok(Formula::assemble(remapped, names))
    }

    /// Builds a formula whose clauses already use the final indices
    /// 1..=n. Every index in that range must occur.
    pub fn with_var_count(n: u32, clauses: Vec<Clause>) -> Result<Formula, FormulaError> {
        if clauses.is_empty() {
            return Err(FormulaError::EmptyFormula);
        }
        let mut used = vec![false; n as usize];
        for clause in &clauses {
            for lit in &clause.literals {
                let idx = lit.var.index();
                if idx > n {
                    return Err(FormulaError::VariableOutOfRange { var: idx, max: n });
                }
                used[lit.var.slot()] = true;
            }
        }
        if let Some(slot) = used.iter().position(|&u| !u) {
            return Err(FormulaError::UnusedVariable {
                var: slot as u32 + 1,
            });
        }
        let names = (1..=n).map(|i| i.to_string()).collect();
        Ok(Formula::assemble(clauses, names))
    }

    fn assemble(clauses: Vec<Clause>, names: Vec<String>) -> Formula {
        let n = names.len();
        let mut occurrences = vec![Vec::new(); n];
        let mut monotone = true;
        for (idx, clause) in clauses.iter().enumerate() {
            for lit in &clause.literals {
                occurrences[lit.var.slot()].push(idx);
                monotone &= lit.positive;
            }
        }
        Formula {
            clauses,
            names,
            occurrences,
            monotone,
        }
    }

    /// Number of variables, n.
    pub fn n(&self) -> usize {
        self.names.len()
    }

    /// Number of clauses, m.
    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, idx: usize) -> &Clause {
        &self.clauses[idx]
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (1..=self.n() as u32).map(Var::new)
    }

    /// Occurrence count l(x) of a variable.
    pub fn occurrence_count(&self, var: Var) -> u32 {
        self.occurrences[var.slot()].len() as u32
    }

    /// Indices of the clauses containing a variable.
    pub fn clauses_containing(&self, var: Var) -> &[usize] {
        &self.occurrences[var.slot()]
    }

    /// Largest occurrence count over all variables.
    pub fn max_occurrence(&self) -> u32 {
        self.occurrences
            .iter()
            .map(|o| o.len() as u32)
            .max()
            .unwrap_or(0)
    }

    /// The external name the variable had before dense renumbering.
    pub fn var_name(&self, var: Var) -> &str {
        &self.names[var.slot()]
    }

    /// Total literal count over all clauses.
    pub fn total_literals(&self) -> usize {
        self.clauses.iter().map(Clause::width).sum()
    }

    /// True when every literal is positive.
    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    fn check_domain(&self, y: &Assignment) -> Result<(), FormulaError> {
        if y.n() != self.n() {
            return Err(FormulaError::DomainMismatch {
                expected: self.n(),
                got: y.n(),
            });
        }
        Ok(())
    }

    /// Number of true literal occurrences under `y`.
    pub fn sigma(&self, y: &Assignment) -> Result<u64, FormulaError> {
        self.check_domain(y)?;
        let mut total = 0u64;
        for clause in &self.clauses {
            for lit in &clause.literals {
                if lit.satisfied_by(y.get(lit.var)) {
                    total += 1;
                }
            }
        }
        Ok(total)
    }

    /// True when every clause has exactly one true literal under `y`.
    pub fn is_xsat_model(&self, y: &Assignment) -> Result<bool, FormulaError> {
        self.check_domain(y)?;
        Ok(self.xsat_model_values(y.values()))
    }

    pub(crate) fn xsat_model_values(&self, values: &[bool]) -> bool {
        'clauses: for clause in &self.clauses {
            let mut trues = 0;
            for lit in &clause.literals {
                if lit.satisfied_by(values[lit.var.slot()]) {
                    trues += 1;
                    if trues > 1 {
                        return false;
                    }
                }
            }
            if trues == 1 {
                continue 'clauses;
            }
            return false;
        }
        true
    }
}

/// A total truth assignment over a formula's variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn all_false(n: usize) -> Assignment {
        Assignment {
            values: vec![false; n],
        }
    }

    pub fn from_values(values: Vec<bool>) -> Assignment {
        Assignment { values }
    }

    pub fn from_true_vars(n: usize, true_vars: &[Var]) -> Assignment {
        let mut values = vec![false; n];
        for v in true_vars {
            values[v.slot()] = true;
        }
        Assignment { values }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, var: Var) -> bool {
        self.values[var.slot()]
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.values[var.slot()] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Variables assigned true, in ascending index order.
    pub fn true_vars(&self) -> Vec<Var> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(i, _)| Var::new(i as u32 + 1))
            .collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let trues: Vec<String> = self
            .true_vars()
            .iter()
            .map(|v| v.index().to_string())
            .collect();
        write!(f, "{}", trues.join(" "))
    }
}
