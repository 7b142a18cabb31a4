//! Command-line front end: `seq`, `matrix` and `check`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::poly::Poly;
use crate::rational::{parse_rational, Rational};
use crate::seidel::{Mode, SeidelMatrix};
use crate::sequences::{sequence_terms, SeqName};
use crate::verify::{self, CheckReport, CheckStatus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "degenerate-seidel",
    version,
    about = "Degenerate Euler-Seidel matrices, Bell/Fubini sequences and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first terms of a sequence.
    Seq(SeqArgs),
    /// Build and export an Euler-Seidel matrix.
    Matrix(MatrixArgs),
    /// Run identity checks.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Substitute λ (integer or p/q).
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub lambda: Option<Rational>,
    /// Substitute x (integer or p/q).
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub x: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    /// bell, bell-poly, fubini or fubini-poly
    #[arg(value_parser = seq_arg)]
    pub sequence: SeqName,
    /// Last index to print.
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["seq", "initial"]))]
pub struct MatrixArgs {
    #[arg(long, value_parser = seq_arg)]
    pub seq: Option<SeqName>,
    /// Comma-separated initial terms, e.g. `1,1,2 - l`.
    #[arg(long, value_parser = initial_arg, allow_hyphen_values = true)]
    pub initial: Option<InitialTerms>,
    /// Number of initial terms used (the triangle has `rows` rows).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub rows: Option<u64>,
    #[arg(long, value_parser = mode_arg, default_value = "degenerate")]
    pub mode: Mode,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("selection").required(true).args(["id", "all"]))]
pub struct CheckArgs {
    #[arg(long)]
    pub id: Option<String>,
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = verify::DEFAULT_N_MAX)]
    pub nmax: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Comma-separated initial terms as one argument value. A newtype keeps clap
/// from treating the `Vec` as a multi-value argument.
#[derive(Debug, Clone)]
pub struct InitialTerms(pub Vec<Poly>);

const DEFAULT_ROWS: usize = 5;

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn seq_arg(s: &str) -> Result<SeqName, String> {
    s.parse()
}

fn mode_arg(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn initial_arg(s: &str) -> Result<InitialTerms, String> {
    s.split(',')
        .map(|term| term.parse::<Poly>().map_err(|e| format!("`{term}`: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(InitialTerms)
}

/// Parses `args` (including the program name) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let rendered = err.render().to_string();
            let _ = if err.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Seq(args) => cmd_seq(&args).map(|text| (text, EXIT_OK, args.out.output)),
        Command::Matrix(args) => cmd_matrix(&args).map(|text| (text, EXIT_OK, args.out.output)),
        Command::Check(args) => cmd_check(&args).map(|(text, code)| (text, code, args.output)),
    };
    match result {
        Ok((text, code, output)) => match emit(&text, output.as_ref(), stdout) {
            Ok(()) => code,
            Err(message) => {
                let _ = writeln!(stderr, "error: {message}");
                EXIT_USAGE
            }
        },
        Err(message) => {
            let _ = writeln!(stderr, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn emit(text: &str, output: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), String> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    }
}

#[derive(Serialize)]
struct SeqExport<'a> {
    sequence: &'a str,
    terms: Vec<String>,
}

pub fn cmd_seq(args: &SeqArgs) -> Result<String, String> {
    let terms: Vec<Poly> = sequence_terms(&args.sequence, args.n + 1)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|p| p.eval_partial(args.out.lambda.as_ref(), args.out.x.as_ref()))
        .collect();
    let rendered: Vec<String> = terms.iter().map(Poly::to_string).collect();
    Ok(match args.out.format {
        Format::Text => format!("{}\n", rendered.join(", ")),
        Format::Json => {
            let export = SeqExport {
                sequence: args.sequence.token(),
                terms: rendered,
            };
            format!(
                "{}\n",
                serde_json::to_string(&export).expect("plain data serializes")
            )
        }
        Format::Csv => {
            let header = if terms.iter().all(Poly::is_constant) {
                "n,value"
            } else {
                "n,poly"
            };
            let mut out = format!("{header}\n");
            for (n, term) in rendered.iter().enumerate() {
                out.push_str(&format!("{n},{term}\n"));
            }
            out
        }
    })
}

pub fn cmd_matrix(args: &MatrixArgs) -> Result<String, String> {
    let rows = args.rows.map(|r| r as usize);
    let initial = match (&args.seq, &args.initial) {
        (Some(name), _) => {
            sequence_terms(name, rows.unwrap_or(DEFAULT_ROWS)).map_err(|e| e.to_string())?
        }
        (None, Some(InitialTerms(terms))) => {
            let wanted = rows.unwrap_or(terms.len());
            if wanted > terms.len() {
                return Err(format!(
                    "insufficient initial terms: --rows {wanted} needs {wanted} terms, got {}",
                    terms.len()
                ));
            }
            terms[..wanted].to_vec()
        }
        (None, None) => unreachable!("clap requires --seq or --initial"),
    };
    let matrix = SeidelMatrix::build(&initial, args.mode)
        .map_err(|e| e.to_string())?
        .evaluate(args.out.lambda.as_ref(), args.out.x.as_ref());
    Ok(match args.out.format {
        Format::Json => format!("{}\n", matrix.to_json()),
        Format::Csv => matrix.to_csv(),
        Format::Text => render_matrix_text(&matrix),
    })
}

fn render_matrix_text(m: &SeidelMatrix) -> String {
    let mut out = format!("{} Euler-Seidel matrix, size {}\n", m.mode(), m.size());
    for k in 0..=m.size() {
        out.push_str(&format!("row k={k}\n"));
        for n in 0..=m.size() - k {
            let entry = m.get(n, k).expect("inside the triangle");
            out.push_str(&format!("  a_{{{n},{k}}} = {entry}\n"));
        }
    }
    let fin: Vec<String> = m.final_sequence().iter().map(Poly::to_string).collect();
    out.push_str(&format!("final sequence: {}\n", fin.join(", ")));
    out
}

pub fn cmd_check(args: &CheckArgs) -> Result<(String, i32), String> {
    let reports: Vec<CheckReport> = match &args.id {
        Some(id) => vec![verify::run_check(id, args.nmax).map_err(|e| e.to_string())?],
        None => verify::run_all(args.nmax).map_err(|e| e.to_string())?,
    };
    let code = if reports.iter().any(|r| r.status == CheckStatus::Fail) {
        EXIT_VERIFY_FAILED
    } else {
        EXIT_OK
    };
    let text = match args.format {
        Format::Text => verify::render_table(&reports),
        Format::Json => format!("{}\n", verify::render_json(&reports)),
        Format::Csv => render_check_csv(&reports),
    };
    Ok((text, code))
}

fn render_check_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from("check_id,range,status,n,k_or_l,residual\n");
    for r in reports {
        let (n, k, residual) = match &r.first_failure {
            Some(f) => (
                f.n.to_string(),
                f.k_or_l.map(|k| k.to_string()).unwrap_or_default(),
                f.residual.clone(),
            ),
            None => Default::default(),
        };
        out.push_str(&format!(
            "{},{},{},{n},{k},{residual}\n",
            r.check_id, r.range, r.status
        ));
    }
    out
}
