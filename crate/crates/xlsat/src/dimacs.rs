//! DIMACS CNF parsing and serialization.
//!
//! The accepted dialect is strict: optional `c` comment lines, a single
//! `p cnf <n> <m>` header, then one zero-terminated clause per line.
//! Declared counts must match the parsed content exactly; a variable
//! that is declared but never occurs is an error, so `n` stays
//! meaningful for the structural parameter checks downstream.

use thiserror::Error;

use crate::formula::{Clause, Formula, FormulaError, Literal, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("no `p cnf` header found")]
    MissingHeader,
    #[error("{message}")]
    HeaderMismatch { message: String },
    #[error("line {line}: {source}")]
    BadClause { line: usize, source: FormulaError },
}

/// A parsed instance: the formula plus its comment lines in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedInstance {
    pub formula: Formula,
    pub comments: Vec<String>,
}

pub fn parse_dimacs(input: &str) -> Result<ParsedInstance, DimacsError> {
    let mut comments = Vec::new();
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "c" || line.starts_with("c ") {
            comments.push(line.strip_prefix("c ").unwrap_or("").to_string());
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::Syntax {
                    line: line_no,
                    message: "duplicate header".into(),
                });
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 4 || tokens[0] != "p" || tokens[1] != "cnf" {
                return Err(DimacsError::Syntax {
                    line: line_no,
                    message: "header must be `p cnf <vars> <clauses>`".into(),
                });
            }
            let n: u32 = tokens[2].parse().map_err(|_| DimacsError::Syntax {
                line: line_no,
                message: format!("invalid variable count `{}`", tokens[2]),
            })?;
            let m: usize = tokens[3].parse().map_err(|_| DimacsError::Syntax {
                line: line_no,
                message: format!("invalid clause count `{}`", tokens[3]),
            })?;
            header = Some((n, m));
            continue;
        }

        let Some((n, _)) = header else {
            return Err(DimacsError::Syntax {
                line: line_no,
                message: "clause before `p cnf` header".into(),
            });
        };
        let mut literals = Vec::new();
        let mut terminated = false;
        for token in line.split_whitespace() {
            if terminated {
                return Err(DimacsError::Syntax {
                    line: line_no,
                    message: "literal after terminating 0".into(),
                });
            }
            let value: i64 = token.parse().map_err(|_| DimacsError::Syntax {
                line: line_no,
                message: format!("invalid literal `{token}`"),
            })?;
            if value == 0 {
                terminated = true;
                continue;
            }
            let var = value.unsigned_abs();
            if var > u64::from(n) {
                return Err(DimacsError::HeaderMismatch {
                    message: format!(
                        "line {line_no}: literal {value} exceeds the declared {n} variables"
                    ),
                });
            }
            literals.push(Literal {
                var: Var::new(var as u32),
                positive: value > 0,
            });
        }
        if !terminated {
            return Err(DimacsError::Syntax {
                line: line_no,
                message: "clause line missing terminating 0".into(),
            });
        }
        let clause = Clause::new(literals).map_err(|source| DimacsError::BadClause {
            line: line_no,
            source,
        })?;
        clauses.push(clause);
    }

    let Some((n, m)) = header else {
        return Err(DimacsError::MissingHeader);
    };
    if clauses.len() != m {
        return Err(DimacsError::HeaderMismatch {
            message: format!("header declares {m} clauses, found {}", clauses.len()),
        });
    }
    let formula = Formula::with_var_count(n, clauses).map_err(|e| match e {
        FormulaError::UnusedVariable { var } => DimacsError::HeaderMismatch {
            message: format!("variable {var} is declared but never occurs"),
        },
        other => DimacsError::HeaderMismatch {
            message: other.to_string(),
        },
    })?;
    Ok(ParsedInstance { formula, comments })
}

/// Serializes a formula; `provenance` lines are emitted as `c` comments.
/// Parsing the output yields a structurally equal formula.
pub fn write_dimacs(formula: &Formula, provenance: &[String]) -> String {
    let mut out = String::new();
    for line in provenance {
        if line.is_empty() {
            out.push_str("c\n");
        } else {
            out.push_str("c ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out.push_str(&format!("p cnf {} {}\n", formula.n(), formula.m()));
    for clause in formula.clauses() {
        for lit in clause.literals() {
            out.push_str(&lit.code().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_monotone_triangle() {
        let parsed = parse_dimacs("p cnf 3 3\n1 2 0\n2 3 0\n1 3 0\n").unwrap();
        let f = parsed.formula;
        assert_eq!(f.n(), 3);
        assert_eq!(f.m(), 3);
        assert!(f.is_monotone());
        for v in f.vars() {
            assert_eq!(f.occurrence_count(v), 2);
        }
    }

    #[test]
    fn rejects_tautology() {
        let err = parse_dimacs("p cnf 2 1\n1 -1 0\n").unwrap_err();
        assert_eq!(
            err,
            DimacsError::BadClause {
                line: 2,
                source: FormulaError::DuplicateVariable { var: 1 }
            }
        );
    }

    #[test]
    fn rejects_phantom_variable() {
        let err = parse_dimacs("p cnf 5 2\n1 2 0\n3 4 0\n").unwrap_err();
        assert!(matches!(err, DimacsError::HeaderMismatch { .. }));
        assert!(err.to_string().contains("variable 5"));
    }

    #[test]
    fn rejects_clause_count_mismatch() {
        let err = parse_dimacs("p cnf 2 2\n1 2 0\n").unwrap_err();
        assert!(matches!(err, DimacsError::HeaderMismatch { .. }));
    }

    #[test]
    fn rejects_literal_beyond_declared_range() {
        let err = parse_dimacs("p cnf 2 1\n1 3 0\n").unwrap_err();
        assert!(matches!(err, DimacsError::HeaderMismatch { .. }));
    }

    #[test]
    fn rejects_missing_terminator() {
        let err = parse_dimacs("p cnf 2 1\n1 2\n").unwrap_err();
        assert!(matches!(err, DimacsError::Syntax { line: 2, .. }));
    }

    #[test]
    fn rejects_empty_clause_line() {
        let err = parse_dimacs("p cnf 2 1\n0\n").unwrap_err();
        assert_eq!(
            err,
            DimacsError::BadClause {
                line: 2,
                source: FormulaError::EmptyClause
            }
        );
    }

    #[test]
    fn rejects_missing_header() {
        assert_eq!(
            parse_dimacs("c just a comment\n").unwrap_err(),
            DimacsError::MissingHeader
        );
    }

    #[test]
    fn negative_literals_round_trip() {
        let text = "p cnf 3 2\n1 -2 0\n-1 3 0\n";
        let parsed = parse_dimacs(text).unwrap();
        assert!(!parsed.formula.is_monotone());
        assert_eq!(write_dimacs(&parsed.formula, &[]), text);
    }

    #[test]
    fn comments_are_collected_and_re_emitted() {
        let parsed = parse_dimacs("c alpha\nc beta\np cnf 1 1\n1 0\n").unwrap();
        assert_eq!(parsed.comments, vec!["alpha", "beta"]);
        let text = write_dimacs(&parsed.formula, &parsed.comments);
        assert_eq!(text, "c alpha\nc beta\np cnf 1 1\n1 0\n");
    }

    #[test]
    fn triangle_serialization_is_exact() {
        let f = parse_dimacs("p cnf 3 3\n1 2 0\n2 3 0\n1 3 0\n").unwrap().formula;
        assert_eq!(write_dimacs(&f, &[]), "p cnf 3 3\n1 2 0\n2 3 0\n1 3 0\n");
    }

    #[test]
    fn generated_families_round_trip() {
        use crate::classify::classify;
        use crate::generators::{entangle, gen_fano, gen_linear_chain, gen_pg32};
        let (chain, spec) = gen_linear_chain(&gen_fano(), 2).unwrap();
        let (entangled, _) = entangle(
            &chain,
            &spec,
            crate::generators::EntanglementOp {
                link: 1,
                clause: 1,
                var: 1,
            },
        )
        .unwrap();
        for f in [gen_fano(), gen_pg32(), chain.clone(), entangled] {
            let back = parse_dimacs(&write_dimacs(&f, &[])).unwrap().formula;
            assert_eq!(back, f);
            assert_eq!(classify(&back), classify(&f));
        }
        assert!(write_dimacs(&chain, &[]).starts_with("p cnf 14 14\n"));
    }

    proptest! {
        /// Round trip: parse(write(F)) is structurally F, for formulas with
        /// mixed polarities and arbitrary (dense) shapes.
        #[test]
        fn round_trip(seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..10u32);
            let m = rng.gen_range(1..12usize);
            let mut clauses = Vec::new();
            for _ in 0..m {
                let w = rng.gen_range(1..=n);
                let mut vars: Vec<u32> = (1..=n).collect();
                for i in (1..vars.len()).rev() {
                    let j = rng.gen_range(0..=i);
                    vars.swap(i, j);
                }
                let lits = vars
                    .into_iter()
                    .take(w as usize)
                    .map(|v| Literal { var: Var::new(v), positive: rng.gen() })
                    .collect();
                clauses.push(Clause::new(lits).unwrap());
            }
            // ensure every variable occurs: append a clause covering all
            clauses.push(Clause::positive(1..=n).unwrap());
            let f = Formula::with_var_count(n, clauses).unwrap();
            let text = write_dimacs(&f, &["prop".to_string()]);
            let back = parse_dimacs(&text).unwrap();
            prop_assert_eq!(back.formula, f);
            prop_assert_eq!(back.comments, vec!["prop".to_string()]);
        }
    }
}
