use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use trform_cli::{emit, error_json, execute, exit_code, parse_spec, ExecOptions, Format, JobError};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

/// Second trace forms of central simple algebras in characteristic two.
///
/// A job is a set of key=value pairs (field, algebra, ext, form, cmd,
/// claim, n, seed) taken from --spec, then from the positional arguments,
/// then from the flags; later values win.
#[derive(Debug, Parser)]
#[command(name = "trform", version)]
struct Args {
    /// Job spec file with key=value lines; `-` reads standard input.
    #[arg(long)]
    spec: Option<String>,
    /// Field, e.g. extend(GF2,"a^2+a+1").
    #[arg(long)]
    field: Option<String>,
    /// Algebra, e.g. Tensor(Mat(3),Mat(3)).
    #[arg(long)]
    algebra: Option<String>,
    /// Extension polynomial in x, for galois-check.
    #[arg(long)]
    ext: Option<String>,
    /// Quadratic form, e.g. "[1,1] + 2*H".
    #[arg(long)]
    form: Option<String>,
    /// form | invariants | witt | galois-check | verify
    #[arg(long)]
    cmd: Option<String>,
    /// Claim id for verify, or `all`.
    #[arg(long)]
    claim: Option<String>,
    /// Degrees for verify, e.g. 2..9 or 3,5.
    #[arg(long)]
    n: Option<String>,
    /// Seed for the splitting-module search; does not change any trace.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Largest algebra degree a job may build.
    #[arg(long, default_value_t = trform_cli::DEFAULT_MAX_DEGREE)]
    max_degree: usize,
    /// Add wall times (ms) to verification reports.
    #[arg(long)]
    timings: bool,
    /// Write the output to this file instead of standard output.
    #[arg(long)]
    output: Option<String>,
    /// Extra key=value pairs.
    pairs: Vec<String>,
}

fn job_text(args: &Args) -> std::io::Result<String> {
    let mut lines = Vec::new();
    match args.spec.as_deref() {
        Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            lines.push(s);
        }
        Some(path) => lines.push(std::fs::read_to_string(path)?),
        None => {}
    }
    lines.extend(args.pairs.iter().cloned());
    let flags = [
        ("field", &args.field),
        ("algebra", &args.algebra),
        ("ext", &args.ext),
        ("form", &args.form),
        ("cmd", &args.cmd),
        ("claim", &args.claim),
        ("n", &args.n),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            lines.push(format!("{k}={v}"));
        }
    }
    if let Some(s) = args.seed {
        lines.push(format!("seed={s}"));
    }
    Ok(lines.join("\n"))
}

fn fail(e: JobError) -> ExitCode {
    eprintln!("{}", error_json(&e));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match job_text(&args) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("trform: {e}");
            return ExitCode::from(2);
        }
    };
    let job = match parse_spec(&text) {
        Ok(j) => j,
        Err(e) => return fail(e.into()),
    };
    let opts = ExecOptions { max_degree: args.max_degree, timings: args.timings };
    let output = match execute(&job, &opts) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    let format = match args.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Table => Format::Table,
    };
    let mut rendered = emit(&output, format);
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    match &args.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("trform: {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(exit_code(&output) as u8)
}
