//! Problem files and corpus verification for the `gsv` tool.

pub mod expect;
pub mod format;
pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use gsv_core::index::{eisenbud_levine_index, gsv_index, poincare_hopf_complex, FieldTag, IndexError, IndexOptions, Problem, DEFAULT_MAX_ATTEMPTS};
use gsv_core::par::{self, Execution};
use gsv_core::sigform::FormPolicy;
use sha2::{Digest, Sha256};
use thiserror::Error;

use expect::{parse_expectation, Expectation};
use format::{parse_document, Document, FormatError, MapProblem};
use report::{compute_doc, compute_text, map_doc, map_text, ComputeDoc, MapDoc};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error: {0}")]
    Parse(FormatError),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("vector field is not tangent; residuals of Xf - Cf:\n{}", residuals.join("\n"))]
    NotTangent { residuals: Vec<String> },
    #[error(transparent)]
    Index(IndexError),
    #[error("{failed} of {total} corpus case(s) failed")]
    VerifyFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Shape(_) => 3,
            CliError::Index(IndexError::NormalizationFailed { .. }) => 4,
            CliError::NotTangent { .. } => 5,
            _ => 1,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Shape(s) => CliError::Shape(s),
            syntax => CliError::Parse(syntax),
        }
    }
}

fn index_error(e: IndexError, vars: &[String]) -> CliError {
    match e {
        IndexError::Shape(s) => CliError::Shape(s),
        IndexError::NotCurve { n, q } => CliError::Shape(format!("{q} equation(s) in {n} variables; only curves (q = n - 1) are supported")),
        IndexError::NotTangent { residuals } => {
            CliError::NotTangent { residuals: residuals.iter().enumerate().map(|(i, r)| format!("  row {}: {}", i + 1, r.to_string_with(vars))).collect() }
        }
        other => CliError::Index(other),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Hex SHA-256 of the file contents.
pub fn problem_hash(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComputeOptions {
    pub json: bool,
    pub seed: Option<u64>,
    pub max_attempts: usize,
    pub check_good: bool,
    pub deform: bool,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions { json: false, seed: None, max_attempts: DEFAULT_MAX_ATTEMPTS, check_good: false, deform: false }
    }
}

fn index_options(opts: &ComputeOptions, exec: Execution) -> IndexOptions {
    IndexOptions {
        seed: opts.seed.unwrap_or(0),
        max_attempts: opts.max_attempts,
        form: opts.seed.map_or(FormPolicy::Default, FormPolicy::Seeded),
        check_good: opts.check_good,
        deform: opts.deform,
        exec,
    }
}

fn curve(doc: Document) -> Result<Problem, CliError> {
    match doc {
        Document::Curve(p) => Ok(p),
        Document::Map(_) => Err(CliError::Shape("file declares a map g; use the 'el' command".into())),
    }
}

fn map(doc: Document) -> Result<MapProblem, CliError> {
    match doc {
        Document::Map(m) => Ok(m),
        Document::Curve(_) => Err(CliError::Shape("file declares f, X, C; the 'el' command needs a map g".into())),
    }
}

/// Runs the index pipeline on the text of a problem file.
pub fn compute_report(text: &str, opts: &ComputeOptions, exec: Execution) -> Result<ComputeDoc, CliError> {
    let start = Instant::now();
    let problem = curve(parse_document(text)?)?;
    let report = gsv_index(&problem, &index_options(opts, exec)).map_err(|e| index_error(e, problem.vars()))?;
    let ms = start.elapsed().as_millis() as u64;
    Ok(compute_doc(&report, problem.vars(), problem_hash(text), opts.seed, ms))
}

fn render<T: serde::Serialize>(doc: &T, json: bool, text: impl FnOnce(&T) -> String) -> String {
    if json {
        serde_json::to_string_pretty(doc).expect("reports serialize") + "\n"
    } else {
        text(doc)
    }
}

/// `compute <file>`.
pub fn cmd_compute(path: &Path, opts: &ComputeOptions) -> Result<String, CliError> {
    let doc = compute_report(&read(path)?, opts, Execution::default())?;
    Ok(render(&doc, opts.json, compute_text))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ElOptions {
    pub json: bool,
    pub seed: Option<u64>,
    /// Overrides the file's field tag.
    pub mode: Option<FieldTag>,
}

/// Classical index of a map file.
pub fn map_report(text: &str, opts: &ElOptions) -> Result<MapDoc, CliError> {
    let start = Instant::now();
    let m = map(parse_document(text)?)?;
    let mode = opts.mode.unwrap_or(m.field);
    let dim = poincare_hopf_complex(&m.g).map_err(|e| index_error(e, &m.vars))?;
    let (classical, index) = match mode {
        FieldTag::Complex => (None, dim as i64),
        FieldTag::Real => {
            let policy = opts.seed.map_or(FormPolicy::Default, FormPolicy::Seeded);
            let c = eisenbud_levine_index(&m.g, policy).map_err(|e| index_error(e, &m.vars))?;
            let index = c.index;
            (Some(c), index)
        }
    };
    let ms = start.elapsed().as_millis() as u64;
    Ok(map_doc(classical.as_ref(), dim, index, mode.as_str(), problem_hash(text), opts.seed, ms))
}

/// `el <file>`.
pub fn cmd_el(path: &Path, opts: &ElOptions) -> Result<String, CliError> {
    let doc = map_report(&read(path)?, opts)?;
    Ok(render(&doc, opts.json, map_text))
}

/// Outcome of one corpus case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Problem files (`*.problem`) of a corpus directory, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Io { path: dir.display().to_string(), message: e.to_string() })?;
    let mut files: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "problem")).collect();
    files.sort();
    Ok(files)
}

struct Observed {
    index: i64,
    dim_b0: Option<usize>,
    dim_b0_mod_df: Option<usize>,
    signature: Option<i64>,
}

fn observe(text: &str) -> Result<Observed, CliError> {
    match parse_document(text)? {
        Document::Curve(_) => {
            let d = compute_report(text, &ComputeOptions::default(), Execution::Sequential)?;
            Ok(Observed {
                index: d.index,
                dim_b0: Some(d.dim_b0),
                dim_b0_mod_df: Some(d.dim_b0_mod_df),
                signature: d.signature.map(|s| s.plus as i64 - s.minus as i64),
            })
        }
        Document::Map(_) => {
            let d = map_report(text, &ElOptions::default())?;
            Ok(Observed { index: d.index, dim_b0: None, dim_b0_mod_df: None, signature: d.signature.map(|s| s.plus as i64 - s.minus as i64) })
        }
    }
}

fn compare(expected: &Expectation, got: &Observed) -> Vec<String> {
    let mut problems = Vec::new();
    let mut check = |key: &str, want: Option<i64>, have: Option<i64>| {
        if let Some(w) = want {
            match have {
                Some(h) if h == w => {}
                Some(h) => problems.push(format!("{key}: expected {w}, got {h}")),
                None => problems.push(format!("{key}: expected {w}, not available")),
            }
        }
    };
    check("index", expected.index, Some(got.index));
    check("dim_B0", expected.dim_b0.map(|v| v as i64), got.dim_b0.map(|v| v as i64));
    check("dim_B0_mod_DF", expected.dim_b0_mod_df.map(|v| v as i64), got.dim_b0_mod_df.map(|v| v as i64));
    check("signature", expected.signature, got.signature);
    problems
}

fn run_case(path: &Path) -> CaseResult {
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let fail = |detail: String| CaseResult { name: name.clone(), passed: false, detail };
    let expect_path = path.with_extension("expect");
    let expected = match read(&expect_path).and_then(|t| parse_expectation(&t).map_err(CliError::from)) {
        Ok(e) if e.is_empty() => return fail("expectation record is empty".into()),
        Ok(e) => e,
        Err(e) => return fail(format!("expectation: {e}")),
    };
    let observed = match read(path).and_then(|t| observe(&t)) {
        Ok(o) => o,
        Err(e) => return fail(format!("error (exit {}): {e}", e.exit_code())),
    };
    let mismatches = compare(&expected, &observed);
    if mismatches.is_empty() {
        let mut detail = format!("index={}", observed.index);
        if let (Some(b), Some(m)) = (observed.dim_b0, observed.dim_b0_mod_df) {
            detail += &format!(" dim_B0={b} dim_B0_mod_DF={m}");
        }
        CaseResult { name, passed: true, detail }
    } else {
        fail(mismatches.join("; "))
    }
}

/// Evaluates every corpus case; results are in file-name order.
pub fn verify_corpus(dir: &Path, jobs: Option<usize>) -> Result<Vec<CaseResult>, CliError> {
    let files = corpus_files(dir)?;
    let run = || par::map(Execution::Parallel, &files, |p| run_case(p));
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().map_err(|e| CliError::Io { path: "thread pool".into(), message: e.to_string() })?;
        return Ok(pool.install(run));
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
    Ok(run())
}

/// `verify <dir>`: the summary table, or `VerifyFailed` carrying it.
pub fn cmd_verify(dir: &Path, jobs: Option<usize>) -> Result<String, (String, CliError)> {
    let results = verify_corpus(dir, jobs).map_err(|e| (String::new(), e))?;
    if results.is_empty() {
        return Ok(format!("warning: no problem files in {}\n0 case(s)\n", dir.display()));
    }
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in &results {
        out += &format!("{}  {:width$}  {}\n", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    out += &format!("{} passed, {failed} failed\n", results.len() - failed);
    if failed > 0 {
        Err((out, CliError::VerifyFailed { failed, total: results.len() }))
    } else {
        Ok(out)
    }
}
