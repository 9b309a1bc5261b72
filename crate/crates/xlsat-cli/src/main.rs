//! Command-line workflows over DIMACS files.
//!
//! Exit codes are a stable contract: 0 sat/ok, 1 unsat/any-audit-fail,
//! 2 error, 3 undecided. Every flag can also be set through an
//! `XLSAT_`-prefixed environment variable.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use xlsat::{
    audit_suite, brute_force_decide, classify, decide, emit_report, gen_complete_graph, gen_fano,
    gen_linear_chain, gen_pg32, gen_projective_plane, parse_chain_provenance, parse_dimacs,
    random_monotone_regular, recover_chain_spec, write_dimacs, AuditResult, ChainSpec,
    EngineConfig, EngineError, EntanglementOp, Expectation, Formula, ParsedInstance, Report,
    ReportFormat, Status, Strategy, VerdictSummary,
};

#[derive(Parser)]
#[command(
    name = "xlsat",
    version,
    about = "Classify linear CNF formulas, decide exact satisfiability, generate instance families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "XLSAT_FORMAT")]
    format: Format,

    /// Largest candidate count the pseudomodel sweep will take on
    #[arg(long, global = true, default_value_t = 100_000_000, env = "XLSAT_BUDGET")]
    budget: u64,

    /// Largest variable count for the brute-force oracle
    #[arg(long = "brute-bound", global = true, default_value_t = 25, env = "XLSAT_BRUTE_BOUND")]
    brute_bound: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> ReportFormat {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    Brute,
    Pseudomodel,
    Chain,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Brute => Strategy::Brute,
            StrategyArg::Pseudomodel => Strategy::Pseudomodel,
            StrategyArg::Chain => Strategy::Chain,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the structural profile and applicable audits of an instance
    Classify { path: PathBuf },

    /// Decide exact satisfiability (exit 0 sat, 1 unsat, 3 undecided)
    Decide {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto, env = "XLSAT_STRATEGY")]
        strategy: StrategyArg,
    },

    /// Write an instance of a named family as DIMACS
    #[command(subcommand)]
    Generate(Family),

    /// Run all audits and the oracle cross-check (exit 1 on any failure)
    Verify {
        path: PathBuf,
        /// Audit against this family's class instead of the file's
        /// provenance or classified profile
        #[arg(long, value_enum)]
        family: Option<FamilyClass>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyClass {
    CompleteGraph,
    Fano,
    ProjectivePlane,
    Pg32,
    Extend,
    Chain,
    RandomRegular,
}

impl FamilyClass {
    fn expectation(self) -> Expectation {
        match self {
            FamilyClass::CompleteGraph
            | FamilyClass::Fano
            | FamilyClass::ProjectivePlane
            | FamilyClass::Pg32
            | FamilyClass::Extend => Expectation::exact_linear_family(),
            FamilyClass::Chain => Expectation::linear_family(),
            FamilyClass::RandomRegular => Expectation::regular_family(),
        }
    }
}

#[derive(Subcommand)]
enum Family {
    /// Vertex clauses of the complete graph on k+1 vertices
    CompleteGraph {
        #[arg(long)]
        k: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The 7-point projective plane
    Fano {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Projective plane of prime order q
    ProjectivePlane {
        #[arg(long)]
        q: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Point clauses over the 35 lines of the binary projective 3-space
    Pg32 {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// p disjoint copies of a generator file, optionally entangled
    Chain {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        p: u32,
        /// link:clause:var swap, repeatable, applied in order
        #[arg(long = "entangle")]
        entangle: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply further swaps to an existing chain file
    Entangle {
        #[arg(long)]
        from: PathBuf,
        /// link:clause:var swap, repeatable, applied in order
        #[arg(long = "op")]
        op: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extend an eligible linear instance to an exact linear one
    Extend {
        #[arg(long)]
        from: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Seeded monotone l-regular instance with widths in a range
    RandomRegular {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 2)]
        min_width: u32,
        #[arg(long, default_value_t = 4)]
        max_width: u32,
        #[arg(long, default_value_t = 0, env = "XLSAT_SEED")]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = EngineConfig {
        candidate_budget: cli.budget,
        brute_force_bound: cli.brute_bound,
        ..EngineConfig::default()
    };
    let format = cli.format.into();
    let code = match cli.command {
        Command::Classify { path } => cmd_classify(&path, format),
        Command::Decide { path, strategy } => cmd_decide(&path, strategy.into(), format, &cfg),
        Command::Generate(family) => cmd_generate(family, format),
        Command::Verify { path, family } => cmd_verify(&path, family, format, &cfg),
    };
    ExitCode::from(code)
}

fn load(path: &Path) -> Result<ParsedInstance, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_dimacs(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn fail(message: String) -> u8 {
    eprintln!("error: {message}");
    2
}

/// Chain recipe from provenance comments, when present and consistent.
fn chain_spec_from(instance: &ParsedInstance) -> Result<Option<ChainSpec>, String> {
    let Some((p, ops)) = parse_chain_provenance(&instance.comments) else {
        return Ok(None);
    };
    recover_chain_spec(&instance.formula, p, &ops)
        .map(Some)
        .map_err(|e| e.to_string())
}

fn family_from(comments: &[String]) -> Option<&str> {
    comments.iter().find_map(|c| {
        c.trim()
            .strip_prefix("xlsat family=")
            .and_then(|rest| rest.split_whitespace().next())
    })
}

fn cmd_classify(path: &Path, format: ReportFormat) -> u8 {
    let instance = match load(path) {
        Ok(i) => i,
        Err(e) => return fail(e),
    };
    let profile = classify(&instance.formula);
    let audits = audit_suite(&instance.formula, &Expectation::from_profile(&profile));
    let report = Report {
        instance: path.display().to_string(),
        profile,
        verdict: None,
        audits,
    };
    print!("{}", emit_report(&report, format));
    0
}

fn cmd_decide(path: &Path, strategy: Strategy, format: ReportFormat, cfg: &EngineConfig) -> u8 {
    let instance = match load(path) {
        Ok(i) => i,
        Err(e) => return fail(e),
    };
    let chain = match chain_spec_from(&instance) {
        Ok(c) => c,
        Err(e) if strategy == Strategy::Chain => return fail(e),
        Err(e) => {
            eprintln!("warning: ignoring unusable chain provenance: {e}");
            None
        }
    };
    let f = &instance.formula;
    match decide(f, strategy, chain.as_ref(), cfg) {
        Ok(verdict) => {
            let report = Report {
                instance: path.display().to_string(),
                profile: classify(f),
                verdict: Some(VerdictSummary::from(&verdict)),
                audits: Vec::new(),
            };
            print!("{}", emit_report(&report, format));
            match verdict.status {
                Status::Sat => 0,
                Status::Unsat => 1,
            }
        }
        Err(
            e @ (EngineError::BudgetExceeded { .. }
            | EngineError::Undecidable(_)
            | EngineError::TooLarge { .. }
            | EngineError::NotMonotone),
        ) => {
            eprintln!("undecided: {e}");
            3
        }
        Err(e) => fail(e.to_string()),
    }
}

fn write_instance(
    formula: &Formula,
    provenance: &[String],
    output: Option<&PathBuf>,
    format: ReportFormat,
) -> u8 {
    let text = write_dimacs(formula, provenance);
    let instance_name = match output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                return fail(format!("cannot write {}: {e}", path.display()));
            }
            path.display().to_string()
        }
        None => {
            print!("{text}");
            "<stdout>".to_string()
        }
    };
    let profile = classify(formula);
    let report = Report {
        instance: instance_name,
        profile,
        verdict: None,
        audits: audit_suite(formula, &Expectation::from_profile(&profile)),
    };
    let rendered = emit_report(&report, format);
    // keep stdout clean when the instance itself went there
    if output.is_some() {
        print!("{rendered}");
    } else {
        eprint!("{rendered}");
    }
    0
}

fn parse_ops(texts: &[String]) -> Result<Vec<EntanglementOp>, String> {
    texts.iter().map(|t| t.parse::<EntanglementOp>()).collect()
}

fn cmd_generate(family: Family, format: ReportFormat) -> u8 {
    match family {
        Family::CompleteGraph { k, output } => {
            if !(2..=1000).contains(&k) {
                return fail("complete-graph needs --k in 2..=1000".into());
            }
            let f = gen_complete_graph(k);
            let provenance = vec![format!("xlsat family=complete-graph k={k}")];
            write_instance(&f, &provenance, output.as_ref(), format)
        }
        Family::Fano { output } => {
            let f = gen_fano();
            let provenance = vec!["xlsat family=fano".to_string()];
            write_instance(&f, &provenance, output.as_ref(), format)
        }
        Family::ProjectivePlane { q, output } => {
            if q > 997 {
                return fail("projective-plane needs --q <= 997".into());
            }
            match gen_projective_plane(q) {
                Ok(f) => {
                    let provenance = vec![format!("xlsat family=projective-plane q={q}")];
                    write_instance(&f, &provenance, output.as_ref(), format)
                }
                Err(e) => fail(e.to_string()),
            }
        }
        Family::Pg32 { output } => {
            let f = gen_pg32();
            let provenance = vec!["xlsat family=pg32".to_string()];
            write_instance(&f, &provenance, output.as_ref(), format)
        }
        Family::Chain {
            from,
            p,
            entangle,
            output,
        } => {
            let generator = match load(&from) {
                Ok(i) => i.formula,
                Err(e) => return fail(e),
            };
            if !(1..=1000).contains(&p) {
                return fail("chain needs --p in 1..=1000".into());
            }
            let ops = match parse_ops(&entangle) {
                Ok(ops) => ops,
                Err(e) => return fail(e),
            };
            let (mut chain, mut spec) = match gen_linear_chain(&generator, p) {
                Ok(pair) => pair,
                Err(e) => return fail(e.to_string()),
            };
            for op in ops {
                match xlsat::entangle(&chain, &spec, op) {
                    Ok(pair) => (chain, spec) = pair,
                    Err(e) => return fail(e.to_string()),
                }
            }
            let mut provenance = vec![format!(
                "xlsat family=chain source={}",
                from.display()
            )];
            provenance.extend(xlsat::chain_provenance(&spec));
            write_instance(&chain, &provenance, output.as_ref(), format)
        }
        Family::Entangle { from, op, output } => {
            let instance = match load(&from) {
                Ok(i) => i,
                Err(e) => return fail(e),
            };
            let spec = match chain_spec_from(&instance) {
                Ok(Some(spec)) => spec,
                Ok(None) => {
                    return fail(format!(
                        "{} carries no chain provenance; generate it with `generate chain`",
                        from.display()
                    ))
                }
                Err(e) => return fail(e),
            };
            let ops = match parse_ops(&op) {
                Ok(ops) => ops,
                Err(e) => return fail(e),
            };
            let mut chain = instance.formula;
            let mut spec = spec;
            for op in ops {
                match xlsat::entangle(&chain, &spec, op) {
                    Ok(pair) => (chain, spec) = pair,
                    Err(e) => return fail(e.to_string()),
                }
            }
            let mut provenance = vec![format!(
                "xlsat family=chain source={}",
                from.display()
            )];
            provenance.extend(xlsat::chain_provenance(&spec));
            write_instance(&chain, &provenance, output.as_ref(), format)
        }
        Family::Extend { from, output } => {
            let source = match load(&from) {
                Ok(i) => i.formula,
                Err(e) => return fail(e),
            };
            match xlsat::extend_to_exact_linear(&source) {
                Ok(f) => {
                    let provenance =
                        vec![format!("xlsat family=extend source={}", from.display())];
                    write_instance(&f, &provenance, output.as_ref(), format)
                }
                Err(e) => fail(e.to_string()),
            }
        }
        Family::RandomRegular {
            n,
            l,
            min_width,
            max_width,
            seed,
            output,
        } => {
            if n > 100_000 || l > 1000 {
                return fail("random-regular needs --n <= 100000 and --l <= 1000".into());
            }
            match random_monotone_regular(n, l, min_width..=max_width, seed) {
                Ok(f) => {
                    let provenance = vec![format!(
                        "xlsat family=random-regular n={n} l={l} w={min_width}..{max_width} seed={seed}"
                    )];
                    write_instance(&f, &provenance, output.as_ref(), format)
                }
                Err(e) => fail(e.to_string()),
            }
        }
    }
}

fn cmd_verify(
    path: &Path,
    family: Option<FamilyClass>,
    format: ReportFormat,
    cfg: &EngineConfig,
) -> u8 {
    let instance = match load(path) {
        Ok(i) => i,
        Err(e) => return fail(e),
    };
    let f = &instance.formula;
    let profile = classify(f);
    let expectation = match family {
        Some(family) => family.expectation(),
        None => match family_from(&instance.comments) {
            Some("complete-graph" | "fano" | "projective-plane" | "pg32" | "extend") => {
                Expectation::exact_linear_family()
            }
            Some("chain") => Expectation::linear_family(),
            Some("random-regular") => Expectation::regular_family(),
            _ => Expectation::from_profile(&profile),
        },
    };
    let mut audits = audit_suite(f, &expectation);
    let mut verdict = None;

    if f.n() <= cfg.brute_force_bound as usize {
        let chain = match chain_spec_from(&instance) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("warning: ignoring unusable chain provenance: {e}");
                None
            }
        };
        let mut agreement = AuditResult {
            name: "oracle_agreement".to_string(),
            pass: false,
            details: Default::default(),
        };
        match (
            decide(f, Strategy::Auto, chain.as_ref(), cfg),
            brute_force_decide(f, cfg.brute_force_bound),
        ) {
            (Ok(fast), Ok(oracle)) => {
                agreement.pass = fast.status == oracle.status;
                agreement.details.insert(
                    "decide".to_string(),
                    serde_json::json!(VerdictSummary::from(&fast).status),
                );
                agreement
                    .details
                    .insert("method".to_string(), serde_json::json!(fast.method.as_str()));
                agreement.details.insert(
                    "brute_force".to_string(),
                    serde_json::json!(VerdictSummary::from(&oracle).status),
                );
                verdict = Some(VerdictSummary::from(&fast));
            }
            (fast, oracle) => {
                let e = fast.err().or(oracle.err()).expect("one side failed");
                agreement
                    .details
                    .insert("error".to_string(), serde_json::json!(e.to_string()));
            }
        }
        audits.push(agreement);
    }

    let all_pass = audits.iter().all(|a| a.pass);
    let report = Report {
        instance: path.display().to_string(),
        profile,
        verdict,
        audits,
    };
    print!("{}", emit_report(&report, format));
    if all_pass {
        0
    } else {
        1
    }
}
