//! Command-line front end.
//!
//! One binary, six subcommands: `check` a proof file, `translate` a formula,
//! `transform` formulas/proofs into new proofs, `decide` propositional
//! sequents, `enum`erate formulas, and `corpus-run` a directory of proof
//! files against their headers. Results go to stdout, diagnostics to stderr;
//! exit 0 = success/provable/all-pass, 1 = check-fail/not-provable/corpus
//! mismatch, 2 = usage or input errors.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::kernel::{check, CheckReport, Proof};
use crate::oracle::{self, Sequent};
use crate::parse::{parse_formula, parse_term};
use crate::sexpr::{self, parse_header, parse_proof, print_proof};
use crate::syntax::{Formula, SystemId, Term};
use crate::transform::{self, Direction, NegForallTarget};
use crate::translate;

const VERSION_LINE: &str = concat!(env!("CARGO_PKG_VERSION"), ", corpus 1.0");

#[derive(Parser)]
#[command(name = "ecumene", version = VERSION_LINE, disable_help_subcommand = true)]
#[command(about = "Proof toolkit for ecumenical natural deduction")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a proof file and print the judgment it establishes
    Check {
        /// Rule system (ne|nek|eci|nj|nk); defaults to the file header's
        #[arg(long)]
        system: Option<String>,
        /// Proof file in the s-expression format
        file: PathBuf,
    },
    /// Map a formula through one of the named translations
    Translate {
        /// One of: teci, tnek, untnek, star, nek2ipl
        #[arg(long)]
        map: String,
        /// Input formula
        #[arg(long)]
        formula: String,
        /// Dialect to parse the formula in; defaults to the map's home system
        #[arg(long)]
        system: Option<String>,
    },
    /// Build a proof from formulas and/or proofs and print it
    Transform {
        /// Operation name; run with a bogus name to list them
        #[arg(long)]
        name: String,
        /// Rule system, where the operation is parameterized by one
        #[arg(long)]
        system: Option<String>,
        /// Primary formula argument
        #[arg(long)]
        formula: Option<String>,
        /// Secondary formula argument
        #[arg(long)]
        formula2: Option<String>,
        /// Primary proof-file argument
        #[arg(long)]
        proof: Option<PathBuf>,
        /// Secondary proof-file argument
        #[arg(long)]
        proof2: Option<PathBuf>,
        /// Term argument (a bare identifier where a variable is expected)
        #[arg(long)]
        term: Option<String>,
        /// Write the resulting proof here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide a propositional sequent
    Decide {
        /// One of: cpl, ipl, eci, nek
        #[arg(long)]
        logic: String,
        /// Hypothesis (repeatable)
        #[arg(long = "assume")]
        assume: Vec<String>,
        /// Goal formula
        #[arg(long)]
        goal: String,
    },
    /// Stream all formulas over the given atoms, one per line
    Enum {
        /// Comma-separated atom names
        #[arg(long)]
        atoms: String,
        /// Maximum connective count
        #[arg(long = "max-size")]
        max_size: usize,
        /// Dialect (ne|nek|eci|nj|nk)
        #[arg(long)]
        dialect: String,
    },
    /// Check every *.proof file in a directory against its header
    CorpusRun {
        /// Directory of proof files
        dir: PathBuf,
    },
}

/// Entry point behind `main`: parse `argv`, dispatch, and hand back the
/// process exit code instead of exiting, so tests can drive it directly.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.cmd {
        Cmd::Check { system, file } => cmd_check(system.as_deref(), &file),
        Cmd::Translate {
            map,
            formula,
            system,
        } => cmd_translate(&map, &formula, system.as_deref()),
        Cmd::Transform {
            name,
            system,
            formula,
            formula2,
            proof,
            proof2,
            term,
            out,
        } => cmd_transform(&TransformArgs {
            name,
            system,
            formula,
            formula2,
            proof,
            proof2,
            term,
            out,
        }),
        Cmd::Decide {
            logic,
            assume,
            goal,
        } => cmd_decide(&logic, &assume, &goal),
        Cmd::Enum {
            atoms,
            max_size,
            dialect,
        } => cmd_enum(&atoms, max_size, &dialect),
        Cmd::CorpusRun { dir } => cmd_corpus_run(&dir),
    }
}

fn input_error(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn system_arg(name: &str) -> Result<SystemId, String> {
    SystemId::from_name(name).ok_or_else(|| format!("unknown system `{name}` (ne|nek|eci|nj|nk)"))
}

/// Read a proof file. A corpus-style `;; system: …` header, when present,
/// supplies the parse dialect; an explicit `--system` beats it; otherwise
/// the caller's default applies.
fn load_proof(
    path: &Path,
    explicit: Option<SystemId>,
    fallback: SystemId,
) -> Result<(SystemId, Proof), String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let system = match explicit {
        Some(s) => s,
        None => parse_header(&text).map(|h| h.system).unwrap_or(fallback),
    };
    let proof =
        parse_proof(&text, system).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((system, proof))
}

fn cmd_check(system: Option<&str>, file: &Path) -> i32 {
    let explicit = match system.map(system_arg).transpose() {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return input_error(format_args!("{}: {e}", file.display())),
    };
    let sys = match explicit.or_else(|| parse_header(&text).ok().map(|h| h.system)) {
        Some(s) => s,
        None => {
            return input_error("no --system given and the file has no `;; system:` header")
        }
    };
    let proof = match parse_proof(&text, sys) {
        Ok(p) => p,
        Err(e) => return input_error(format_args!("{}: {e}", file.display())),
    };
    let report = check(sys, &proof);
    println!("{report}");
    match report {
        CheckReport::Ok(_) => 0,
        CheckReport::Fail { .. } => 1,
    }
}

fn cmd_translate(map: &str, formula: &str, system: Option<&str>) -> i32 {
    let (apply, home): (fn(&Formula) -> Result<Formula, _>, SystemId) = match map {
        "teci" => (translate::t_eci, SystemId::Eci),
        "tnek" => (translate::t_nek, SystemId::Eci),
        "untnek" => (translate::untranslate_nek, SystemId::Nek),
        "star" => (translate::star, SystemId::Ne),
        "nek2ipl" => (translate::nek_to_ipl, SystemId::Nek),
        other => {
            return input_error(format_args!(
                "unknown map `{other}` (teci|tnek|untnek|star|nek2ipl)"
            ))
        }
    };
    let sys = match system.map(system_arg).transpose() {
        Ok(s) => s.unwrap_or(home),
        Err(e) => return input_error(e),
    };
    let f = match parse_formula(formula, sys) {
        Ok(f) => f,
        Err(e) => return input_error(e),
    };
    match apply(&f) {
        Ok(g) => {
            println!("{g}");
            0
        }
        Err(e) => input_error(e),
    }
}

struct TransformArgs {
    name: String,
    system: Option<String>,
    formula: Option<String>,
    formula2: Option<String>,
    proof: Option<PathBuf>,
    proof2: Option<PathBuf>,
    term: Option<String>,
    out: Option<PathBuf>,
}

const TRANSFORM_NAMES: &str = "glivenko1-internal, star-embed, glivenko2-internal, \
eci-label-to-dn, eci-dn-to-label, eci-glivenko2, eci-neg-label-comm-fwd, \
eci-neg-label-comm-bwd, mp-classicalize, eci-to-nek, nek-to-eci, \
forallc-detour-reduce, neg-forallc-existsc, neg-forallc-negforalli, \
nek-forallc-from-refutation, eci-forall-label-instantiate";

impl TransformArgs {
    fn system(&self, default: SystemId) -> Result<SystemId, String> {
        match &self.system {
            Some(name) => system_arg(name),
            None => Ok(default),
        }
    }

    fn required_system(&self) -> Result<SystemId, String> {
        match &self.system {
            Some(name) => system_arg(name),
            None => Err(format!("`{}` needs --system (ne or nek)", self.name)),
        }
    }

    fn formula(&self, sys: SystemId) -> Result<Formula, String> {
        match &self.formula {
            Some(text) => parse_formula(text, sys).map_err(|e| e.to_string()),
            None => Err(format!("`{}` needs --formula", self.name)),
        }
    }

    fn proof(&self, field: &Option<PathBuf>, flag: &str, sys: SystemId) -> Result<Proof, String> {
        let explicit = match &self.system {
            Some(name) => Some(system_arg(name)?),
            None => None,
        };
        match field {
            Some(path) => load_proof(path, explicit, sys).map(|(_, p)| p),
            None => Err(format!("`{}` needs {flag} <file>", self.name)),
        }
    }

    fn term(&self) -> Result<Term, String> {
        match &self.term {
            Some(text) => parse_term(text).map_err(|e| e.to_string()),
            None => Err(format!("`{}` needs --term", self.name)),
        }
    }

    /// Ops that take a bound variable receive it through `--term`.
    fn variable(&self) -> Result<String, String> {
        match self.term()? {
            Term::Var(x) => Ok(x),
            t => Err(format!("expected a variable for --term, got `{t}`")),
        }
    }
}

/// Builds the requested proof and reports which system it lives in, so the
/// output can carry a corpus header.
fn build_transform(args: &TransformArgs) -> Result<(SystemId, Proof), String> {
    let err = |e: transform::TransformError| e.to_string();
    let eci = SystemId::Eci;
    let nek = SystemId::Nek;
    match args.name.as_str() {
        "glivenko1-internal" => {
            let sys = args.required_system()?;
            let p = transform::glivenko1_internal(sys, &args.formula(sys)?).map_err(err)?;
            Ok((sys, p))
        }
        "star-embed" => {
            let sys = args.required_system()?;
            let p = transform::star_embed(sys, &args.formula(sys)?).map_err(err)?;
            Ok((sys, p))
        }
        "glivenko2-internal" => {
            let sys = args.required_system()?;
            let p = transform::glivenko2_internal(sys, &args.formula(sys)?).map_err(err)?;
            Ok((sys, p))
        }
        "eci-label-to-dn" => transform::eci_label_to_dn(&args.formula(args.system(eci)?)?)
            .map(|p| (eci, p))
            .map_err(err),
        "eci-dn-to-label" => transform::eci_dn_to_label(&args.formula(args.system(eci)?)?)
            .map(|p| (eci, p))
            .map_err(err),
        "eci-glivenko2" => transform::eci_glivenko2(&args.formula(args.system(eci)?)?)
            .map(|p| (eci, p))
            .map_err(err),
        "eci-neg-label-comm-fwd" => {
            transform::eci_neg_label_comm(&args.formula(args.system(eci)?)?, Direction::Fwd)
                .map(|p| (eci, p))
                .map_err(err)
        }
        "eci-neg-label-comm-bwd" => {
            transform::eci_neg_label_comm(&args.formula(args.system(eci)?)?, Direction::Bwd)
                .map(|p| (eci, p))
                .map_err(err)
        }
        "mp-classicalize" => {
            let refutation = args.proof(&args.proof, "--proof", eci)?;
            let imp = args.proof(&args.proof2, "--proof2", eci)?;
            transform::mp_classicalize(&refutation, &imp)
                .map(|p| (eci, p))
                .map_err(err)
        }
        "eci-to-nek" => {
            let p = args.proof(&args.proof, "--proof", eci)?;
            transform::eci_to_nek(&p).map(|p| (nek, p)).map_err(err)
        }
        "nek-to-eci" => {
            let p = args.proof(&args.proof, "--proof", nek)?;
            transform::nek_to_eci(&p).map(|p| (eci, p)).map_err(err)
        }
        "forallc-detour-reduce" => {
            let p = args.proof(&args.proof, "--proof", nek)?;
            transform::forallc_detour_reduce(&p)
                .map(|p| (nek, p))
                .map_err(err)
        }
        "neg-forallc-existsc" => {
            let body = args.formula(args.system(nek)?)?;
            transform::neg_forallc_elim(&body, &args.variable()?, NegForallTarget::ExistsC)
                .map(|p| (nek, p))
                .map_err(err)
        }
        "neg-forallc-negforalli" => {
            let body = args.formula(args.system(nek)?)?;
            transform::neg_forallc_elim(&body, &args.variable()?, NegForallTarget::NegForallI)
                .map(|p| (nek, p))
                .map_err(err)
        }
        "nek-forallc-from-refutation" => {
            let body = args.formula(args.system(nek)?)?;
            let x = args.variable()?;
            let refutation = args.proof(&args.proof, "--proof", nek)?;
            transform::nek_forallc_from_refutation(&body, &x, &refutation)
                .map(|p| (nek, p))
                .map_err(err)
        }
        "eci-forall-label-instantiate" => {
            let p = args.proof(&args.proof, "--proof", eci)?;
            transform::eci_forall_label_instantiate(&p, &args.term()?)
                .map(|p| (eci, p))
                .map_err(err)
        }
        other => Err(format!(
            "unknown transform `{other}`; available: {TRANSFORM_NAMES}"
        )),
    }
}

fn cmd_transform(args: &TransformArgs) -> i32 {
    // --formula2 is accepted for symmetry but no current op consumes it
    if args.formula2.is_some() {
        return input_error(format_args!("`{}` takes no --formula2", args.name));
    }
    match build_transform(args) {
        Ok((sys, p)) => {
            // every op's output re-checks; the header makes the file
            // directly consumable by `check` and `corpus-run`
            let judgment = match check(sys, &p) {
                CheckReport::Ok(j) => j,
                CheckReport::Fail { path, reason } => {
                    return input_error(format_args!(
                        "internal: output does not check in {sys} at {path}: {reason}"
                    ));
                }
            };
            let text = format!(
                ";; system: {sys} expect: ok judgment: \"{judgment}\"\n{}",
                print_proof(&p)
            );
            match &args.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        return input_error(format_args!("{}: {e}", path.display()));
                    }
                }
                None => print!("{text}"),
            }
            0
        }
        Err(e) => input_error(e),
    }
}

fn cmd_decide(logic: &str, assume: &[String], goal: &str) -> i32 {
    let (dialect, tag) = match logic {
        "cpl" => (SystemId::Nj, ""),
        "ipl" => (SystemId::Nj, ""),
        "eci" => (SystemId::Eci, " (via teci reduction)"),
        "nek" => (SystemId::Nek, " (via teci reduction)"),
        other => {
            return input_error(format_args!("unknown logic `{other}` (cpl|ipl|eci|nek)"))
        }
    };
    let mut context = Vec::new();
    for text in assume {
        match parse_formula(text, dialect) {
            Ok(f) => context.push(f),
            Err(e) => return input_error(format_args!("in `{text}`: {e}")),
        }
    }
    let goal = match parse_formula(goal, dialect) {
        Ok(f) => f,
        Err(e) => return input_error(format_args!("in `{goal}`: {e}")),
    };
    let sequent = Sequent::new(context, goal);
    let verdict = match logic {
        "cpl" => oracle::cpl_valid(&sequent),
        "ipl" => oracle::ipl_provable(&sequent),
        "eci" => oracle::eci_provable(&sequent),
        _ => oracle::nek_provable(&sequent),
    };
    match verdict {
        Ok(v) if v.provable => {
            println!("provable{tag}");
            0
        }
        Ok(v) => {
            println!("not provable{tag}");
            if let Some(model) = v.countermodel {
                let cells: Vec<String> = model
                    .iter()
                    .map(|(name, value)| format!("{name}={value}"))
                    .collect();
                println!("countermodel: {}", cells.join(", "));
            }
            1
        }
        Err(e) => input_error(e),
    }
}

fn cmd_enum(atoms: &str, max_size: usize, dialect: &str) -> i32 {
    let sys = match system_arg(dialect) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    let names: Vec<String> = atoms
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    match oracle::enumerate_formulas(&names, max_size, sys) {
        Ok(stream) => {
            for f in stream {
                println!("{f}");
            }
            0
        }
        Err(e) => input_error(e),
    }
}

enum FileOutcome {
    Pass,
    Fail(String),
}

fn corpus_file_outcome(text: &str) -> Result<FileOutcome, String> {
    let (header, proof) = sexpr::parse_corpus_file(text).map_err(|e| e.to_string())?;
    let report = check(header.system, &proof);
    Ok(match (header.expect_ok, report) {
        (true, CheckReport::Ok(j)) if j == header.judgment => FileOutcome::Pass,
        (true, CheckReport::Ok(j)) => {
            FileOutcome::Fail(format!("proved {j}, header claims {}", header.judgment))
        }
        (true, CheckReport::Fail { path, reason }) => {
            FileOutcome::Fail(format!("rejected at {path}: {reason}"))
        }
        (false, CheckReport::Ok(j)) => {
            FileOutcome::Fail(format!("expected rejection but proved {j}"))
        }
        (false, CheckReport::Fail { .. }) => FileOutcome::Pass,
    })
}

fn cmd_corpus_run(dir: &Path) -> i32 {
    let entries = match std::fs::read_dir(dir) {
        Ok(it) => it,
        Err(e) => return input_error(format_args!("{}: {e}", dir.display())),
    };
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "proof"))
        .collect();
    files.sort();
    let width = files
        .iter()
        .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().len()))
        .max()
        .unwrap_or(0);
    let mut failures = 0usize;
    for path in &files {
        let name = path.file_name().unwrap_or_default().to_string_lossy();
        let outcome = std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|text| corpus_file_outcome(&text));
        match outcome {
            Ok(FileOutcome::Pass) => println!("{name:width$}  pass"),
            Ok(FileOutcome::Fail(why)) => {
                failures += 1;
                println!("{name:width$}  FAIL  {why}");
            }
            Err(e) => {
                failures += 1;
                println!("{name:width$}  FAIL  {e}");
            }
        }
    }
    println!(
        "{} files, {} pass, {failures} fail",
        files.len(),
        files.len() - failures
    );
    if failures == 0 {
        0
    } else {
        1
    }
}
