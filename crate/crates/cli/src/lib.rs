//! Job specs, execution and report output for the `trform` binary.

use std::fmt::Write as _;

use serde_json::{json, Value};
use trform_core::csa::{second_trace_form, Algebra, TraceRoute, Traces};
use trform_core::quadform::{clifford_invariant, QuadraticForm, WittClass};
use trform_core::spec::{parse_field, render_field, AlgebraSpec, FormSpec};
use trform_core::theorems::{self, Claim, Grid, Report, Verdict};
use trform_core::{Error, Field, Poly};

pub const DEFAULT_MAX_DEGREE: usize = 35;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Form,
    Invariants,
    Witt,
    GaloisCheck,
    Verify,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Form => "form",
            Command::Invariants => "invariants",
            Command::Witt => "witt",
            Command::GaloisCheck => "galois-check",
            Command::Verify => "verify",
        }
    }

    fn parse(s: &str) -> Option<Command> {
        [Command::Form, Command::Invariants, Command::Witt, Command::GaloisCheck, Command::Verify]
            .into_iter()
            .find(|c| c.as_str() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimSel {
    All,
    One(Claim),
}

/// A validated job. Keys: `field`, `algebra`, `ext`, `form`, `cmd`,
/// `claim`, `n`, `seed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub field: Option<Field>,
    pub algebra: Option<AlgebraSpec>,
    /// Defining polynomial in `x` of an extension of `field`.
    pub ext: Option<Poly>,
    pub form: Option<FormSpec>,
    pub cmd: Command,
    pub claim: Option<ClaimSel>,
    pub degrees: Option<Vec<usize>>,
    pub seed: u64,
}

impl JobSpec {
    pub fn field_or_default(&self) -> Field {
        self.field.clone().unwrap_or_else(Field::gf2)
    }
}

const KEYS: [&str; 8] = ["field", "algebra", "ext", "form", "cmd", "claim", "n", "seed"];

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
        e => e,
    }
}

/// Splits `key=value` pairs. A key starts at a word boundary outside
/// quotes and brackets; its value runs to the next key. `#` starts a
/// comment that runs to the end of the line.
fn split_pairs(text: &str) -> Result<Vec<(usize, String, usize, String)>, Error> {
    let clean: String = text
        .lines()
        .map(|l| match l.find('#') {
            Some(i) => format!("{}{}", &l[..i], " ".repeat(l.len() - i)),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n");
    let bytes = clean.as_bytes();
    let mut starts = Vec::new();
    let (mut depth, mut quoted) = (0i32, false);
    for i in 0..bytes.len() {
        let ch = bytes[i];
        match ch {
            b'"' => quoted = !quoted,
            b'(' | b'[' if !quoted => depth += 1,
            b')' | b']' if !quoted => depth -= 1,
            _ => {}
        }
        let boundary = i == 0 || bytes[i - 1].is_ascii_whitespace();
        if boundary && depth == 0 && !quoted && ch.is_ascii_lowercase() {
            let len = clean[i..].bytes().take_while(|b| b.is_ascii_lowercase() || *b == b'_' || *b == b'-').count();
            if clean[i + len..].starts_with('=') {
                starts.push((i, len));
            }
        }
    }
    if let Some(first) = clean.find(|c: char| !c.is_whitespace()) {
        if starts.first().is_none_or(|&(s, _)| s != first) {
            return Err(parse_err(first, "expected key=value"));
        }
    }
    let mut out = Vec::new();
    for (k, &(s, len)) in starts.iter().enumerate() {
        let end = starts.get(k + 1).map_or(clean.len(), |x| x.0);
        let vstart = s + len + 1;
        let raw = &clean[vstart..end];
        let lead = raw.len() - raw.trim_start().len();
        out.push((s, clean[s..s + len].to_string(), vstart + lead, raw.trim().to_string()));
    }
    Ok(out)
}

fn parse_degrees(text: &str, pos: usize) -> Result<Vec<usize>, Error> {
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| parse_err(pos, format!("bad degree `{s}`")));
    let mut out = Vec::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        match part.split_once("..") {
            Some((a, b)) => out.extend(num(a)?..=num(b)?),
            None => out.push(num(part)?),
        }
    }
    Ok(out)
}

/// Parses a job spec. Later occurrences of a key override earlier ones.
pub fn parse_spec(text: &str) -> Result<JobSpec, Error> {
    let pairs = split_pairs(text)?;
    let mut get: Vec<Option<(usize, String)>> = vec![None; KEYS.len()];
    for (kpos, key, vpos, value) in pairs {
        let idx = KEYS.iter().position(|k| *k == key).ok_or_else(|| parse_err(kpos, format!("unknown key `{key}`")))?;
        get[idx] = Some((vpos, value));
    }
    let value = |k: &str| get[KEYS.iter().position(|x| *x == k).unwrap()].clone();
    let unquote = |s: &str| s.strip_prefix('"').and_then(|s| s.strip_suffix('"')).unwrap_or(s).to_string();

    let field = match value("field") {
        Some((p, v)) => Some(parse_field(&v).map_err(|e| shift(e, p))?),
        None => None,
    };
    let f = field.clone().unwrap_or_else(Field::gf2);
    let algebra = match value("algebra") {
        Some((p, v)) => Some(AlgebraSpec::parse(&f, &v).map_err(|e| shift(e, p))?),
        None => None,
    };
    let ext = match value("ext") {
        Some((p, v)) => {
            let off = if v.starts_with('"') { p + 1 } else { p };
            let poly = Poly::parse(&f, &unquote(&v), "x").map_err(|e| shift(e, off))?;
            if !poly.is_monic() || poly.degree().unwrap_or(0) == 0 {
                return Err(parse_err(p, "ext must be a monic polynomial of positive degree in x"));
            }
            Some(poly)
        }
        None => None,
    };
    let form = match value("form") {
        Some((p, v)) => Some(FormSpec::parse(&f, &v).map_err(|e| shift(e, p))?),
        None => None,
    };
    let cmd = match value("cmd") {
        Some((p, v)) => Command::parse(&v).ok_or_else(|| parse_err(p, format!("unknown command `{v}`")))?,
        None => return Err(parse_err(0, "missing key `cmd`")),
    };
    let claim = match value("claim") {
        Some((_, v)) if v == "all" => Some(ClaimSel::All),
        Some((p, v)) => Some(ClaimSel::One(v.parse().map_err(|m: String| parse_err(p, m))?)),
        None => None,
    };
    let degrees = match value("n") {
        Some((p, v)) => Some(parse_degrees(&v, p)?),
        None => None,
    };
    let seed = match value("seed") {
        Some((p, v)) => v.parse().map_err(|_| parse_err(p, format!("bad seed `{v}`")))?,
        None => 0,
    };
    let job = JobSpec { field, algebra, ext, form, cmd, claim, degrees, seed };
    validate(&job)?;
    Ok(job)
}

fn validate(job: &JobSpec) -> Result<(), Error> {
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(parse_err(0, format!("`cmd={}` needs {what}", job.cmd.as_str())))
        }
    };
    match job.cmd {
        Command::Form | Command::Invariants | Command::Witt => {
            need(job.algebra.is_some() != job.form.is_some(), "exactly one of `algebra` or `form`")
        }
        Command::GaloisCheck => need(job.ext.is_some(), "`ext`"),
        Command::Verify => Ok(()),
    }
}

/// The canonical text of a job, one `key=value` per line.
pub fn render(job: &JobSpec) -> String {
    let f = job.field_or_default();
    let mut out = String::new();
    if let Some(field) = &job.field {
        writeln!(out, "field={}", render_field(field)).unwrap();
    }
    if let Some(a) = &job.algebra {
        writeln!(out, "algebra={}", a.render(&f)).unwrap();
    }
    if let Some(p) = &job.ext {
        writeln!(out, "ext=\"{}\"", p.format(&f, "x")).unwrap();
    }
    if let Some(q) = &job.form {
        writeln!(out, "form={}", q.render(&f)).unwrap();
    }
    writeln!(out, "cmd={}", job.cmd.as_str()).unwrap();
    match job.claim {
        Some(ClaimSel::All) => writeln!(out, "claim=all").unwrap(),
        Some(ClaimSel::One(c)) => writeln!(out, "claim={c}").unwrap(),
        None => {}
    }
    if let Some(d) = &job.degrees {
        let d: Vec<String> = d.iter().map(|x| x.to_string()).collect();
        writeln!(out, "n={}", d.join(",")).unwrap();
    }
    if job.seed != 0 {
        writeln!(out, "seed={}", job.seed).unwrap();
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct ExecOptions {
    pub max_degree: usize,
    pub timings: bool,
}

impl Default for ExecOptions {
    fn default() -> ExecOptions {
        ExecOptions { max_degree: DEFAULT_MAX_DEGREE, timings: false }
    }
}

/// The result of a job.
#[derive(Clone, Debug)]
pub enum Output {
    Reports(Vec<Report>),
    Value(Value),
}

impl Output {
    /// Some report has a fail verdict.
    pub fn failed(&self) -> bool {
        matches!(self, Output::Reports(r) if r.iter().any(|r| r.verdict == Verdict::Fail))
    }
}

/// Failures of [`execute`]; all map to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("degree {degree} exceeds the cap {max} (raise it with --max-degree)")]
    DegreeCap { degree: usize, max: usize },
}

impl JobError {
    pub fn code(&self) -> &'static str {
        match self {
            JobError::Core(e) => e.code(),
            JobError::DegreeCap { .. } => "degree_cap",
        }
    }
}

fn check_cap(degree: usize, opts: &ExecOptions) -> Result<(), JobError> {
    if degree > opts.max_degree {
        Err(JobError::DegreeCap { degree, max: opts.max_degree })
    } else {
        Ok(())
    }
}

fn build_algebra(job: &JobSpec, spec: &AlgebraSpec, opts: &ExecOptions) -> Result<Algebra, JobError> {
    check_cap(spec.degree(), opts)?;
    let f = job.field_or_default();
    let alg = spec.build(&f)?;
    if job.seed == 0 || alg.degree().is_none() {
        return Ok(alg);
    }
    let traces = Traces::compute_seeded(&alg, TraceRoute::Auto, job.seed)?;
    Ok(alg.with_traces(traces))
}

/// The form a job refers to: T_{A/F} for an algebra, or the literal form.
fn job_form(job: &JobSpec, opts: &ExecOptions) -> Result<QuadraticForm, JobError> {
    let f = job.field_or_default();
    match (&job.algebra, &job.form) {
        (Some(a), _) => Ok(second_trace_form(&build_algebra(job, a, opts)?)?.form),
        (None, Some(q)) => Ok(q.build(&f)?),
        (None, None) => unreachable!("validated"),
    }
}

fn witt_json(w: &WittClass) -> Value {
    let f = &w.field;
    json!({
        "dim": w.dim + w.radical_dim,
        "nonsingular_dim": w.dim,
        "hyperbolic_planes": w.hyperbolic_planes(),
        "anisotropic_dim": w.anisotropic_dim(),
        "arf": f.format(w.arf),
        "arf_bit": w.arf_bit(),
        "radical_dim": w.radical_dim,
    })
}

fn subject(job: &JobSpec) -> Value {
    let f = job.field_or_default();
    match (&job.algebra, &job.form) {
        (Some(a), _) => json!({ "field": render_field(&f), "algebra": a.render(&f) }),
        (None, Some(q)) => json!({ "field": render_field(&f), "form": q.render(&f) }),
        (None, None) => json!({ "field": render_field(&f) }),
    }
}

fn with_subject(job: &JobSpec, body: Value) -> Value {
    let mut v = subject(job);
    if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
        m.extend(b);
    }
    v
}

pub fn execute(job: &JobSpec, opts: &ExecOptions) -> Result<Output, JobError> {
    let f = job.field_or_default();
    match job.cmd {
        Command::Form => {
            let q = job_form(job, opts)?;
            let d = q.block_decompose();
            let fmt = |x: &trform_core::Elem| f.format(*x);
            let body = json!({
                "dim": q.dim(),
                "diag": q.diag().iter().map(fmt).collect::<Vec<_>>(),
                "polar": q.polar().iter().map(|r| r.iter().map(fmt).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "blocks": d.blocks.iter().map(|b| json!({ "a": fmt(&b.a), "b": fmt(&b.b) })).collect::<Vec<_>>(),
                "radical_dim": d.radical_values.len(),
            });
            Ok(Output::Value(with_subject(job, body)))
        }
        Command::Invariants => {
            let q = job_form(job, opts)?;
            let arf = q.arf()?;
            let w = q.witt_class();
            let body = json!({
                "arf": f.format(arf),
                "arf_bit": w.arf_bit(),
                "clifford": clifford_invariant(&q)?.format(&f),
                "witt": witt_json(&w),
            });
            Ok(Output::Value(with_subject(job, body)))
        }
        Command::Witt => {
            let q = job_form(job, opts)?;
            Ok(Output::Value(with_subject(job, json!({ "witt": witt_json(&q.witt_class()) }))))
        }
        Command::GaloisCheck => {
            let p = job.ext.as_ref().expect("validated");
            check_cap(p.degree().unwrap_or(0), opts)?;
            let check = theorems::galois_obstruction(&f, p)?;
            let factors: Vec<String> =
                trform_core::field::poly::factor(&f, p).iter().map(|g| g.format(&f, "x")).collect();
            Ok(Output::Value(json!({
                "field": render_field(&f),
                "ext": p.format(&f, "x"),
                "degree": p.degree(),
                "verdict": check.verdict.as_str(),
                "factors": factors,
                "form": check.form.format_poly(),
                "arf": f.format(check.arf),
                "galois_arf": f.format(check.galois_arf),
                "degenerate": check.degenerate,
            })))
        }
        Command::Verify => {
            let claims: Vec<Claim> = match job.claim {
                None => Vec::new(),
                Some(ClaimSel::All) => Claim::ALL.to_vec(),
                Some(ClaimSel::One(c)) => vec![c],
            };
            let grid = Grid { degrees: job.degrees.clone(), fields: job.field.clone().map(|f| vec![f]) };
            let cases: Vec<_> = claims.into_iter().flat_map(|c| theorems::cases(c, &grid)).collect();
            if let Some(c) = cases.iter().max_by_key(|c| c.degree) {
                check_cap(c.degree, opts)?;
            }
            Ok(Output::Reports(theorems::run_cases(&cases, opts.timings)))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

/// JSON (stable key order) or a plain table for reading.
pub fn emit(output: &Output, format: Format) -> String {
    match (output, format) {
        (Output::Reports(r), Format::Json) => serde_json::to_string_pretty(r).expect("serializable"),
        (Output::Value(v), Format::Json) => serde_json::to_string_pretty(v).expect("serializable"),
        (Output::Reports(r), Format::Table) => report_table(r),
        (Output::Value(v), Format::Table) => value_table(v, ""),
    }
}

fn record_cell(r: &trform_core::theorems::Record) -> String {
    let mut parts = Vec::new();
    if let Some(d) = r.dim {
        parts.push(format!("dim {d}"));
    }
    if let Some(a) = &r.arf {
        parts.push(format!("arf {a}"));
    }
    if let Some(c) = &r.clifford {
        parts.push(format!("C {c}"));
    }
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(", ")
    }
}

fn report_table(reports: &[Report]) -> String {
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            let params: Vec<String> = r.params.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let verdict = serde_json::to_value(r.verdict).unwrap().as_str().unwrap().to_string();
            [r.claim.to_string(), params.join(" "), record_cell(&r.predicted), record_cell(&r.computed), verdict]
        })
        .collect();
    let header = ["claim", "params", "predicted", "computed", "verdict"].map(String::from);
    let mut width = header.clone().map(|h| h.len());
    for row in &rows {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let cells: Vec<String> = row.iter().zip(&width).map(|(c, &w)| format!("{c:<w$}")).collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    let failed = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
    writeln!(out, "{} reports, {} failed", reports.len(), failed).unwrap();
    out
}

fn value_table(v: &Value, indent: &str) -> String {
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, x) in m {
            match x {
                Value::Object(_) => {
                    writeln!(out, "{indent}{k}:").unwrap();
                    out.push_str(&value_table(x, &format!("{indent}  ")));
                }
                Value::String(s) => writeln!(out, "{indent}{k}: {s}").unwrap(),
                _ => writeln!(out, "{indent}{k}: {x}").unwrap(),
            }
        }
    }
    out
}

/// Exit status for a finished run: 1 if any report failed.
pub fn exit_code(output: &Output) -> i32 {
    if output.failed() {
        1
    } else {
        0
    }
}

/// Machine-readable error document for exit code 2.
pub fn error_json(e: &JobError) -> String {
    let pos = match e {
        JobError::Core(Error::Parse { pos, .. }) => Some(*pos),
        _ => None,
    };
    let mut v = json!({ "error": { "code": e.code(), "message": e.to_string() } });
    if let Some(p) = pos {
        v["error"]["pos"] = json!(p);
    }
    serde_json::to_string(&v).expect("serializable")
}
