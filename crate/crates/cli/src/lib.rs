//! The `kvtower` command line: computing, extending, verifying and
//! tabulating truncated KV solutions stored as JSON documents.
//!
//! Exit codes: 0 success or passed, 1 verification failed, 2 usage or parse
//! error, 3 internal inconsistency.

pub mod document;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use kv_core::{
    bch, check_krv, check_kv, check_sol_kv, extend_solkv_step, gr_leading_rank, krv_dim, lie_dim,
    Error, KVReport, LieElt,
};

pub use document::{parse_document, DocVariant, DocumentError, SolutionDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Degrees above this need `--allow-large`.
pub const DEFAULT_DEGREE_LIMIT: usize = 12;

#[derive(Parser, Debug)]
#[command(
    name = "kvtower",
    version,
    about = "Exact truncated Kashiwara-Vergne solutions"
)]
struct Cli {
    /// Permit degrees above 12 (cost grows roughly like 2^degree).
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print bch(x, y) in the Lyndon basis.
    Bch {
        #[arg(long)]
        degree: usize,
    },
    /// Tabulate dim Lie(x,y)_n and dim krv_n.
    Dims {
        #[arg(long)]
        max_degree: usize,
    },
    /// Check a document against one of the equation systems.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum)]
        variant: VariantArg,
    },
    /// Extend a SolKV document degree by degree.
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        to_degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the identity solution at level 1.
    Seed {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare gr_leading_rank with krv_dim for degrees 1..=N.
    GrTest {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    #[value(name = "SolKV", alias = "solkv")]
    SolKv,
    #[value(name = "KV", alias = "kv")]
    Kv,
    #[value(name = "KRV", alias = "krv")]
    Krv,
}

/// Why a command did not succeed.
enum Failure {
    /// Exit 1; the report has already been printed.
    Failed,
    Usage(String),
    Internal(String),
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ExtensionInconsistent { .. } => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Failed) => EXIT_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let guard = |n: usize, what: &str| -> Outcome {
        if n == 0 {
            return Err(Failure::Usage(format!("{what} must be at least 1")));
        }
        if n > DEFAULT_DEGREE_LIMIT && !cli.allow_large {
            return Err(Failure::Usage(format!(
                "{what} {n} exceeds {DEFAULT_DEGREE_LIMIT}; pass --allow-large to proceed"
            )));
        }
        Ok(())
    };
    match &cli.command {
        Command::Bch { degree } => {
            guard(*degree, "degree")?;
            cmd_bch(*degree, out)
        }
        Command::Dims { max_degree } => {
            guard(*max_degree, "max degree")?;
            cmd_dims(*max_degree, out)
        }
        Command::Verify {
            input,
            degree,
            variant,
        } => {
            guard(*degree, "degree")?;
            cmd_verify(input, *degree, *variant, out)
        }
        Command::Extend {
            input,
            to_degree,
            out: target,
        } => {
            guard(*to_degree, "target degree")?;
            cmd_extend(input, *to_degree, target.as_deref(), out)
        }
        Command::Seed { out: target } => emit(&SolutionDocument::seed(), target.as_deref(), out),
        Command::GrTest { input, degree } => {
            guard(*degree, "degree")?;
            cmd_gr_test(input, *degree, out)
        }
    }
}

fn load(path: &Path) -> Result<SolutionDocument, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(doc: &SolutionDocument, target: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let text = doc.to_json();
    match target {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn cmd_bch(degree: usize, out: &mut dyn Write) -> Outcome {
    let b = bch(&LieElt::x(degree), &LieElt::y(degree))?;
    for (w, c) in b.terms() {
        writeln!(out, "{w} {c}")?;
    }
    Ok(())
}

fn cmd_dims(max_degree: usize, out: &mut dyn Write) -> Outcome {
    writeln!(out, "n lie krv")?;
    for n in 1..=max_degree {
        writeln!(out, "{n} {} {}", lie_dim(n), krv_dim(n)?.0)?;
    }
    Ok(())
}

/// Prints the report and returns whether everything matched.
fn print_report(
    report: &KVReport,
    stated: &SolutionDocument,
    out: &mut dyn Write,
) -> Result<bool, Failure> {
    writeln!(out, "variant {}", report.variant)?;
    writeln!(out, "degree {}", report.degree)?;
    for (w, c) in report.eq1_defect.terms() {
        writeln!(out, "defect {w} {c}")?;
    }
    let mut ok = report.passed;
    match &report.duflo {
        Ok(r) => {
            for (k, c) in r.iter() {
                writeln!(out, "r_{k} {c}")?;
            }
            for k in 2..=r.cap() {
                let given = stated.duflo.get(&k).cloned().unwrap_or_default();
                let derived = r.coeff(k);
                if given != derived {
                    writeln!(out, "defect r_{k} {}", given - derived)?;
                    ok = false;
                }
            }
        }
        Err(residual) => {
            for (w, c) in residual.terms() {
                writeln!(out, "residual {w} {c}")?;
            }
        }
    }
    writeln!(out, "{}", if ok { "PASS" } else { "FAIL" })?;
    Ok(ok)
}

fn cmd_verify(input: &Path, degree: usize, variant: VariantArg, out: &mut dyn Write) -> Outcome {
    let doc = load(input)?;
    if degree > doc.cap {
        return Err(Failure::Usage(format!(
            "degree {degree} exceeds document cap {}",
            doc.cap
        )));
    }
    let f = doc.automorphism();
    let report = match variant {
        VariantArg::SolKv => check_sol_kv(&f, degree)?,
        VariantArg::Kv => check_kv(&f, degree)?,
        VariantArg::Krv => check_krv(&f, degree)?,
    };
    if print_report(&report, &doc, out)? {
        Ok(())
    } else {
        Err(Failure::Failed)
    }
}

fn cmd_extend(
    input: &Path,
    to_degree: usize,
    target: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let doc = load(input)?;
    if doc.variant != DocVariant::SolKV {
        return Err(Failure::Usage(format!(
            "extend needs a SolKV document, found {}",
            doc.variant
        )));
    }
    if to_degree < doc.cap {
        return Err(Failure::Usage(format!(
            "target degree {to_degree} is below the document cap {}",
            doc.cap
        )));
    }
    let mut f = doc.automorphism();
    if !check_sol_kv(&f, f.cap())?.passed {
        return Err(Failure::Usage(format!(
            "input is not a SolKV solution at level {}",
            f.cap()
        )));
    }
    while f.cap() < to_degree {
        f = extend_solkv_step(&f)?;
    }
    let report = check_sol_kv(&f, f.cap())?;
    let duflo = report
        .duflo
        .as_ref()
        .map_err(|_| Failure::Internal(format!("extended solution fails at level {}", f.cap())))?;
    if !report.passed {
        return Err(Failure::Internal(format!(
            "extended solution fails at level {}",
            f.cap()
        )));
    }
    emit(
        &SolutionDocument::from_automorphism(&f, Some(duflo), DocVariant::SolKV),
        target,
        out,
    )
}

fn cmd_gr_test(input: &Path, degree: usize, out: &mut dyn Write) -> Outcome {
    let doc = load(input)?;
    if doc.cap < degree + 1 {
        return Err(Failure::Usage(format!(
            "degree {degree} needs a document of cap at least {}",
            degree + 1
        )));
    }
    let f = doc.automorphism();
    let mut ok = true;
    writeln!(out, "n rank krv")?;
    for n in 1..=degree {
        let rank = gr_leading_rank(&f, n)?;
        let dim = krv_dim(n)?.0;
        writeln!(out, "{n} {rank} {dim}")?;
        ok &= rank == dim;
    }
    writeln!(out, "{}", if ok { "PASS" } else { "FAIL" })?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Failed)
    }
}
