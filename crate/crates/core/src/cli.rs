//! Command-line front end for the `tolat` binary.
//!
//! Exit codes: 0 success, 1 a failed check or a structure that is not a
//! lattice (or relation that is not a tolerance), 2 malformed input or usage,
//! 3 an enumeration over the cap.

use std::fmt::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::blocks::block_lattice;
use crate::construction::{build_k, verify_theorem1};
use crate::document::{DocumentError, LatticeDocument};
use crate::dot;
use crate::error::Error;
use crate::lattice::Lattice;
use crate::quotient::{verify_theorem2_converse, verify_theorem2_forward};
use crate::relations::{
    enumerate_congruences_with_cap, enumerate_tolerances_with_cap, is_congruence, is_tolerance, BinaryRelation,
    DEFAULT_ENUMERATION_CAP,
};
use crate::report::VerificationReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tolat", version, about = "Tolerances and congruences of finite lattices")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a document describes a lattice.
    Validate { file: PathBuf },
    /// List the tolerances (or congruences) of a lattice.
    Tolerances {
        file: PathBuf,
        #[arg(long)]
        congruences_only: bool,
        #[arg(long)]
        count_only: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Run the construction and its checks on one or all tolerances.
    Verify {
        file: PathBuf,
        #[arg(long, conflicts_with = "all_tolerances", required_unless_present = "all_tolerances")]
        relation: Option<String>,
        #[arg(long)]
        all_tolerances: bool,
        #[arg(long, value_enum, default_value = "1")]
        theorem: Theorem,
        /// Generate the least tolerance from the relation's pairs.
        #[arg(long)]
        close: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        /// Emit one JSON report per line.
        #[arg(long)]
        json: bool,
    },
    /// Emit a Graphviz diagram.
    Dot {
        file: PathBuf,
        #[arg(long)]
        relation: Option<String>,
        #[arg(long, value_enum, default_value = "hasse")]
        view: View,
        #[arg(long)]
        close: bool,
    },
    /// Print a document for a built-in lattice: chainN, cubeK, M3, N5, or a product `AxB`.
    Builtin { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    /// Every tolerance is the image of a congruence.
    #[value(name = "1")]
    One,
    /// alpha/gamma is a tolerance of L/gamma for congruences alpha, gamma.
    #[value(name = "2")]
    Two,
    /// Every tolerance is psi(alpha/gamma).
    #[value(name = "2conv")]
    TwoConverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum View {
    Hasse,
    Blocks,
    BlockLattice,
    #[value(name = "k", alias = "K")]
    K,
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stdout: String, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        Outcome { code, stdout, stderr }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::fail(code, String::new(), text.trim_end())
            } else {
                Outcome::ok(text)
            }
        }
    }
}

fn execute(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Tolerances {
            file,
            congruences_only,
            count_only,
            cap,
        } => tolerances(&file, congruences_only, count_only, cap),
        Command::Verify {
            file,
            relation,
            all_tolerances: _,
            theorem,
            close,
            cap,
            json,
        } => verify(&file, relation.as_deref(), theorem, close, cap, json),
        Command::Dot {
            file,
            relation,
            view,
            close,
        } => dot_view(&file, relation.as_deref(), view, close),
        Command::Builtin { name } => builtin(&name),
    };
    result.unwrap_or_else(|o| o)
}

fn error_outcome(e: DocumentError) -> Outcome {
    let code = match &e {
        _ if e.is_malformed() => EXIT_MALFORMED,
        DocumentError::Lattice(Error::TooLarge { .. }) => EXIT_TOO_LARGE,
        _ => EXIT_FAILED,
    };
    Outcome::fail(code, String::new(), format!("error: {e}"))
}

fn load(file: &PathBuf) -> Result<(LatticeDocument, Lattice), Outcome> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Outcome::fail(EXIT_MALFORMED, String::new(), format!("error: {}: {e}", file.display())))?;
    let doc = LatticeDocument::parse(&text).map_err(error_outcome)?;
    let lattice = doc.lattice().map_err(error_outcome)?;
    Ok((doc, lattice))
}

fn load_relation(doc: &LatticeDocument, l: &Lattice, name: &str, close: bool) -> Result<BinaryRelation, Outcome> {
    let rel = doc.relation(l, name, close).map_err(error_outcome)?;
    if !is_tolerance(l, &rel).expect("sizes match") {
        return Err(Outcome::fail(
            EXIT_FAILED,
            String::new(),
            format!("error: relation `{name}` is not a tolerance (use --close to generate one)"),
        ));
    }
    Ok(rel)
}

fn enumerate(l: &Lattice, congruences: bool, cap: usize) -> Result<Vec<BinaryRelation>, Outcome> {
    let found = if congruences {
        enumerate_congruences_with_cap(l, cap)
    } else {
        enumerate_tolerances_with_cap(l, cap)
    };
    found.map_err(|e| error_outcome(e.into()))
}

/// `{(x,y), ...}` over pairs with `x < y`, by label.
pub fn format_relation(l: &Lattice, rel: &BinaryRelation) -> String {
    let pairs: Vec<String> = rel
        .upper_pairs()
        .into_iter()
        .map(|(x, y)| format!("({},{})", l.label(x), l.label(y)))
        .collect();
    format!("{{{}}}", pairs.join(", "))
}

fn validate(file: &PathBuf) -> Result<Outcome, Outcome> {
    let (_, l) = load(file)?;
    Ok(Outcome::ok(format!(
        "lattice: {} elements, height {}, bottom {}, top {}\n",
        l.len(),
        l.height(),
        l.label(l.bottom()),
        l.label(l.top())
    )))
}

fn tolerances(file: &PathBuf, congruences: bool, count_only: bool, cap: usize) -> Result<Outcome, Outcome> {
    let (doc, l) = load(file)?;
    let rels = enumerate(&l, congruences, cap)?;
    let mut out = String::new();
    if count_only {
        writeln!(out, "{}", rels.len()).unwrap();
    } else {
        let kind = if congruences { "congruences" } else { "tolerances" };
        writeln!(out, "{kind} of {}: {}", doc.name, rels.len()).unwrap();
        for r in &rels {
            writeln!(out, "{}", format_relation(&l, r)).unwrap();
        }
    }
    Ok(Outcome::ok(out))
}

fn verify(
    file: &PathBuf,
    relation: Option<&str>,
    theorem: Theorem,
    close: bool,
    cap: usize,
    json: bool,
) -> Result<Outcome, Outcome> {
    let (doc, l) = load(file)?;
    let named =
        |rel: BinaryRelation| -> Vec<(String, BinaryRelation)> { vec![(relation.unwrap_or_default().to_owned(), rel)] };
    let listed = |rels: Vec<BinaryRelation>| -> Vec<(String, BinaryRelation)> {
        rels.into_iter().map(|r| (format_relation(&l, &r), r)).collect()
    };

    let mut reports: Vec<VerificationReport> = Vec::new();
    match theorem {
        Theorem::One | Theorem::TwoConverse => {
            let cases = match relation {
                Some(name) => named(load_relation(&doc, &l, name, close)?),
                None => listed(enumerate(&l, false, cap)?),
            };
            for (name, rho) in cases {
                let mut report = if theorem == Theorem::One {
                    verify_theorem1(&l, &rho)
                } else {
                    verify_theorem2_converse(&l, &rho)
                }
                .map_err(|e| error_outcome(e.into()))?;
                report.subject = format!("{} / {name}: {}", doc.name, report.subject);
                reports.push(report);
            }
        }
        Theorem::Two => {
            let congruences = enumerate(&l, true, cap)?;
            let alphas = match relation {
                Some(name) => {
                    let rel = load_relation(&doc, &l, name, close)?;
                    if !is_congruence(&l, &rel).expect("sizes match") {
                        return Err(Outcome::fail(
                            EXIT_FAILED,
                            String::new(),
                            format!("error: relation `{name}` is not a congruence"),
                        ));
                    }
                    named(rel)
                }
                None => listed(congruences.clone()),
            };
            for (alpha_name, alpha) in &alphas {
                for gamma in &congruences {
                    let mut report = verify_theorem2_forward(&l, alpha, gamma).map_err(|e| error_outcome(e.into()))?;
                    report.subject = format!(
                        "{} / alpha {alpha_name} / gamma {}: {}",
                        doc.name,
                        format_relation(&l, gamma),
                        report.subject
                    );
                    reports.push(report);
                }
            }
        }
    }

    let mut out = String::new();
    for r in &reports {
        if json {
            writeln!(out, "{}", serde_json::to_string(r).expect("report serializes")).unwrap();
        } else {
            writeln!(out, "{r}").unwrap();
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    if !json {
        writeln!(out, "{} cases, {} passed", reports.len(), passed).unwrap();
    }
    if passed == reports.len() {
        Ok(Outcome::ok(out))
    } else {
        Err(Outcome::fail(
            EXIT_FAILED,
            out,
            format!("{} of {} cases failed", reports.len() - passed, reports.len()),
        ))
    }
}

fn dot_view(file: &PathBuf, relation: Option<&str>, view: View, close: bool) -> Result<Outcome, Outcome> {
    let (doc, l) = load(file)?;
    if view == View::Hasse {
        return Ok(Outcome::ok(dot::hasse(&l, &doc.name)));
    }
    let name = relation
        .ok_or_else(|| Outcome::fail(EXIT_MALFORMED, String::new(), "error: this view needs --relation NAME"))?;
    let rho = load_relation(&doc, &l, name, close)?;
    let title = format!("{} / {name}", doc.name);
    let text = match view {
        View::Hasse => unreachable!(),
        View::Blocks => dot::blocks(&block_lattice(&l, &rho).map_err(|e| error_outcome(e.into()))?, &title),
        View::BlockLattice => {
            let bl = block_lattice(&l, &rho).map_err(|e| error_outcome(e.into()))?;
            dot::hasse(bl.lattice(), &title)
        }
        View::K => {
            let pk = build_k(&l, &rho).map_err(|e| error_outcome(e.into()))?;
            dot::hasse(pk.k(), &title)
        }
    };
    Ok(Outcome::ok(text))
}

/// Resolves `chainN`, `cubeK`, `M3`, `N5` and `AxB` products.
pub fn builtin_lattice(name: &str) -> Result<Lattice, Error> {
    if let Some((a, b)) = name.split_once('x') {
        return builtin_lattice(a)?.direct_product(&builtin_lattice(b)?);
    }
    let sized = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    if let Some(n) = sized("chain") {
        Lattice::chain(n)
    } else if let Some(k) = sized("cube") {
        Lattice::boolean_cube(k)
    } else {
        Lattice::named(name)
    }
}

fn builtin(name: &str) -> Result<Outcome, Outcome> {
    let l = builtin_lattice(name).map_err(|e| Outcome::fail(EXIT_MALFORMED, String::new(), format!("error: {e}")))?;
    let mut text = LatticeDocument::from_lattice(name, &l).to_json();
    text.push('\n');
    Ok(Outcome::ok(text))
}
