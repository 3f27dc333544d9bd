//! Command dispatch for the `ihl` binary. Every command produces one
//! [`AnalysisReport`]; `main` prints it as JSON and exits with its code.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use ihl_core::complexes::SimplicialComplex;
use ihl_core::formats::{parse_ears, parse_facet_list, parse_facets, parse_h, parse_matrix, parse_monomials};
use ihl_core::macaulay::{check_flatness, check_g_inequalities, is_m_sequence, HVectorChecks};
use ihl_core::matroid::Matroid;
use ihl_core::oseq::{check_ihl, find_pure_o_realization, order_ideal, pure_o_sequence};
use ihl_core::sr::{sr_ihl_check_bounded, Verdict, DEFAULT_COEFF_BOUND};
use ihl_core::{certify_gale_pair, gale_dual, verify_ps_decomposition, Error, IntegerMatrix};

pub const SCHEMA: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
            Status::Inconclusive => 3,
        }
    }

    fn from_pass(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub command: String,
    pub version: String,
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only strings, integers and flags")
    }
}

/// What `main` should do: print `stdout` (if any) and `stderr`, then exit.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Option<AnalysisReport>,
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Parser, Debug)]
#[command(name = "ihl", version, about = "Exact h-vector and Lefschetz certificates for matroid complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct LsopArgs {
    /// Seed for the l.s.o.p. draws
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Extra draws allowed after the first
    #[arg(long, default_value_t = 3)]
    resamples: usize,
    /// Coefficients are drawn uniformly from [-B, B]
    #[arg(long = "coeff-bound", default_value_t = DEFAULT_COEFF_BOUND)]
    coeff_bound: i64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f/h/g-vectors, coloops and h-vector checks for a matroid
    AnalyzeMatroid {
        /// Column vectors as a TSV matrix
        #[arg(long, conflicts_with_all = ["bases", "n"], required_unless_present = "bases")]
        matrix: Option<PathBuf>,
        /// One basis per line
        #[arg(long, requires = "n")]
        bases: Option<PathBuf>,
        /// Ground set size for --bases
        #[arg(long)]
        n: Option<usize>,
        /// Skip the Stanley-Reisner Lefschetz check
        #[arg(long)]
        skip_ihl: bool,
        #[command(flatten)]
        lsop: LsopArgs,
    },
    /// f-, h- and g-vectors of a complex
    FaceVectors {
        #[arg(long)]
        facets: PathBuf,
    },
    /// Macaulay, g-inequality and flatness checks on a sequence
    CheckH {
        /// Comma-separated, e.g. 1,3,3,1
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Pure O-sequence of a monomial set
    Oseq {
        #[arg(long)]
        monomials: PathBuf,
        /// Also compute the Lefschetz ranks of the inverse system
        #[arg(long)]
        check_ihl: bool,
    },
    /// Search for monomials realizing a sequence as a pure O-sequence
    OseqRealize {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value_t = 5)]
        max_vars: usize,
    },
    /// Lefschetz ranks in an Artinian reduction of the Stanley-Reisner ring
    SrIhl {
        #[arg(long)]
        facets: PathBuf,
        #[command(flatten)]
        lsop: LsopArgs,
    },
    /// Integer Gale dual of a configuration
    Gale {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Verify a PS-ear-decomposition
    PsVerify {
        #[arg(long)]
        facets: PathBuf,
        #[arg(long)]
        ears: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::AnalyzeMatroid { .. } => "analyze-matroid",
            Command::FaceVectors { .. } => "face-vectors",
            Command::CheckH { .. } => "check-h",
            Command::Oseq { .. } => "oseq",
            Command::OseqRealize { .. } => "oseq-realize",
            Command::SrIhl { .. } => "sr-ihl",
            Command::Gale { .. } => "gale",
            Command::PsVerify { .. } => "ps-verify",
        }
    }
}

/// Input problem: unreadable file, parse error or violated precondition.
#[derive(Debug)]
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type Run = std::result::Result<(Value, Status, String), InputError>;

fn read(path: &Path) -> std::result::Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {}", path.display(), e)))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

fn h_checks(h: &[i64]) -> (Value, Value, bool) {
    let flat = check_flatness(h);
    let g = check_g_inequalities(h);
    let ok = flat.passed && g.as_ref().is_ok_and(|c| c.passed);
    let g_value = match g {
        Ok(c) => to_value(&c),
        Err(e) => json!({ "passed": false, "error": e.to_string() }),
    };
    (to_value(&flat), g_value, ok)
}

fn passed_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn integer_matrix(path: &Path) -> std::result::Result<IntegerMatrix, InputError> {
    parse_matrix(&read(path)?)?
        .to_integer()
        .ok_or_else(|| InputError(format!("{}: entries must be integers", path.display())))
}

fn sr_value(s: &SimplicialComplex, lsop: &LsopArgs) -> std::result::Result<(Value, Status), InputError> {
    match sr_ihl_check_bounded(s, lsop.seed, lsop.resamples, lsop.coeff_bound) {
        Ok(r) => {
            let status = match r.verdict {
                Some(Verdict::Certified) => Status::Pass,
                _ => Status::Inconclusive,
            };
            Ok((to_value(&r), status))
        }
        // more draws may succeed, so this is not a refutation
        Err(e @ Error::LsopNotFound(_)) => Ok((json!({ "error": e.to_string() }), Status::Inconclusive)),
        Err(e) => Err(e.into()),
    }
}

fn worst(a: Status, b: Status) -> Status {
    let rank = |s: Status| match s {
        Status::Pass => 0,
        Status::Inconclusive => 1,
        Status::Fail => 2,
        Status::Error => 3,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn analyze_matroid(
    matrix: &Option<PathBuf>,
    bases: &Option<PathBuf>,
    n: Option<usize>,
    skip_ihl: bool,
    lsop: &LsopArgs,
) -> Run {
    let m = match (matrix, bases, n) {
        (Some(path), _, _) => Matroid::from_matrix(&parse_matrix(&read(path)?)?)?,
        (None, Some(path), Some(n)) => Matroid::from_bases(n, &parse_facet_list(&read(path)?)?)?,
        _ => return Err(InputError("give --matrix, or --bases with --n".into())),
    };
    let complex = m.independence_complex();
    let fv = complex.face_vectors();
    let coloops = m.coloops();
    let mut status = Status::Pass;
    let mut results = json!({
        "ground": m.ground(),
        "rank": m.rank(),
        "bases": m.bases().len(),
        "coloops": coloops.coloops,
        "coloop_free": coloops.coloop_free,
        "f": fv.f,
        "h": fv.h,
        "g": fv.g,
    });
    let mut summary = format!("rank {}, h = {:?}", m.rank(), fv.h);
    if coloops.coloop_free {
        let (flat, g, ok) = h_checks(&fv.h);
        results["flatness"] = flat;
        results["g_inequalities"] = g;
        status = Status::from_pass(ok);
        summary.push_str(&format!(", flatness+g {}", passed_word(ok)));
        if !skip_ihl {
            let (v, s) = sr_value(&complex, lsop)?;
            results["sr_ihl"] = v;
            status = worst(status, s);
        }
    } else {
        results["skipped"] = json!("flatness, g-inequalities and sr_ihl need a coloop-free matroid");
        summary.push_str(", has coloops");
    }
    Ok((results, status, summary))
}

fn face_vectors_cmd(facets: &Path) -> Run {
    let s = parse_facets(&read(facets)?)?;
    let fv = s.face_vectors();
    let summary = format!("rank {}, f = {:?}, h = {:?}", fv.rank, fv.f, fv.h);
    let results = json!({
        "vertices": s.vertices(),
        "facets": s.facets().len(),
        "pure": s.is_pure(),
        "face_vectors": to_value(&fv),
    });
    Ok((results, Status::Pass, summary))
}

fn check_h_cmd(h: &str) -> Run {
    let h = parse_h(h)?;
    let m = is_m_sequence(&h);
    let flat = check_flatness(&h);
    let g: std::result::Result<HVectorChecks, Error> = check_g_inequalities(&h);
    let ok = m.passed && flat.passed && g.as_ref().is_ok_and(|c| c.passed);
    let results = json!({
        "h": h,
        "m_sequence": to_value(&m),
        "flatness": to_value(&flat),
        "g_inequalities": match &g {
            Ok(c) => to_value(c),
            Err(e) => json!({ "passed": false, "error": e.to_string() }),
        },
    });
    let summary = format!(
        "M-sequence {}, flatness {}, g-inequalities {}",
        passed_word(m.passed),
        passed_word(flat.passed),
        passed_word(g.as_ref().is_ok_and(|c| c.passed))
    );
    Ok((results, Status::from_pass(ok), summary))
}

fn oseq_cmd(monomials: &Path, with_ihl: bool) -> Run {
    let ms = parse_monomials(&read(monomials)?)?;
    let p = pure_o_sequence(&ms);
    let h: Vec<i64> = p.h.iter().map(|&v| v as i64).collect();
    let (flat, g, mut ok) = h_checks(&h);
    let mut results = json!({
        "vars": ms.vars(),
        "degree": ms.degree(),
        "generators": ms.generators(),
        "h": p.h,
        "unused_vars": p.unused_vars,
        "flatness": flat,
        "g_inequalities": g,
    });
    let mut summary = format!("h = {:?}", h);
    if with_ihl {
        let ihl = check_ihl(&order_ideal(&ms));
        ok &= ihl.all_injective();
        summary.push_str(&format!(", Lefschetz maps {}", if ihl.all_injective() { "injective" } else { "not injective" }));
        results["ihl"] = to_value(&ihl);
    }
    Ok((results, Status::from_pass(ok), summary))
}

fn oseq_realize_cmd(h: &str, max_vars: usize) -> Run {
    let h = parse_h(h)?;
    let r = find_pure_o_realization(&h, max_vars)?;
    let found = r.witness.is_some();
    let witness_h = r.witness.as_ref().map(|w| pure_o_sequence(w).h);
    let summary = match &r.witness {
        Some(w) => format!("realized by {} generators", w.generators().len()),
        None => format!("none found among {} candidate sets", r.search_space),
    };
    let results = json!({
        "h": h,
        "found": found,
        "witness": r.witness.as_ref().map(|w| w.generators().to_vec()),
        "witness_h": witness_h,
        // u128 does not fit every JSON reader
        "search_space": r.search_space.to_string(),
        "nodes_visited": r.nodes_visited,
    });
    Ok((results, Status::from_pass(found), summary))
}

fn sr_ihl_cmd(facets: &Path, lsop: &LsopArgs) -> Run {
    let s = parse_facets(&read(facets)?)?;
    let (results, status) = sr_value(&s, lsop)?;
    let summary = match status {
        Status::Pass => "all Lefschetz maps injective".to_string(),
        _ => "no certificate from the drawn systems of parameters".to_string(),
    };
    Ok((results, status, summary))
}

fn matrix_strings(m: &IntegerMatrix) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn gale_cmd(matrix: &Path) -> Run {
    let a = integer_matrix(matrix)?;
    match gale_dual(&a) {
        Ok(b) => {
            let cert = certify_gale_pair(&a, &b)?;
            let ok = cert.holds();
            let results = json!({
                "d": a.rows(),
                "n": a.cols(),
                "b": matrix_strings(&b),
                "certificate": to_value(&cert),
            });
            let summary = format!("{}x{} Gale dual, exactness {}", b.rows(), b.cols(), passed_word(ok));
            Ok((results, Status::from_pass(ok), summary))
        }
        Err(e @ Error::NotExact(_)) => {
            let summary = e.to_string();
            Ok((json!({ "d": a.rows(), "n": a.cols(), "error": summary }), Status::Fail, summary))
        }
        Err(e) => Err(e.into()),
    }
}

fn ps_verify_cmd(facets: &Path, ears: &Path) -> Run {
    let s = parse_facets(&read(facets)?)?;
    let d = parse_ears(&read(ears)?)?;
    let r = verify_ps_decomposition(&s, &d)?;
    let summary = match &r.violation {
        None => format!("valid decomposition with {} ears", d.ears.len()),
        Some(v) => {
            let cond = to_value(&v.condition);
            let at = v.ear.map_or(String::new(), |e| format!(" at ear {e}"));
            format!("{}{}, witness {:?}", cond.as_str().unwrap_or("violation"), at, v.witness)
        }
    };
    Ok((to_value(&r), Status::from_pass(r.passed), summary))
}

fn inputs(cmd: &Command) -> Value {
    let p = |p: &Path| p.display().to_string();
    let op = |p: &Option<PathBuf>| p.as_deref().map(|p| p.display().to_string());
    let lsop_json = |l: &LsopArgs| json!({ "seed": l.seed, "resamples": l.resamples, "coeff_bound": l.coeff_bound });
    match cmd {
        Command::AnalyzeMatroid { matrix, bases, n, skip_ihl, lsop } => json!({
            "matrix": op(matrix), "bases": op(bases), "n": n, "skip_ihl": skip_ihl, "lsop": lsop_json(lsop),
        }),
        Command::FaceVectors { facets } => json!({ "facets": p(facets) }),
        Command::CheckH { h } => json!({ "h": h }),
        Command::Oseq { monomials, check_ihl } => json!({ "monomials": p(monomials), "check_ihl": check_ihl }),
        Command::OseqRealize { h, max_vars } => json!({ "h": h, "max_vars": max_vars }),
        Command::SrIhl { facets, lsop } => json!({ "facets": p(facets), "lsop": lsop_json(lsop) }),
        Command::Gale { matrix } => json!({ "matrix": p(matrix) }),
        Command::PsVerify { facets, ears } => json!({ "facets": p(facets), "ears": p(ears) }),
    }
}

fn dispatch(cmd: &Command) -> Run {
    match cmd {
        Command::AnalyzeMatroid { matrix, bases, n, skip_ihl, lsop } => {
            analyze_matroid(matrix, bases, *n, *skip_ihl, lsop)
        }
        Command::FaceVectors { facets } => face_vectors_cmd(facets),
        Command::CheckH { h } => check_h_cmd(h),
        Command::Oseq { monomials, check_ihl } => oseq_cmd(monomials, *check_ihl),
        Command::OseqRealize { h, max_vars } => oseq_realize_cmd(h, *max_vars),
        Command::SrIhl { facets, lsop } => sr_ihl_cmd(facets, lsop),
        Command::Gale { matrix } => gale_cmd(matrix),
        Command::PsVerify { facets, ears } => ps_verify_cmd(facets, ears),
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { report: None, stdout, stderr, code };
        }
    };
    let command = cli.command.name();
    let (results, status, summary) = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(InputError(msg)) => (json!({ "error": msg }), Status::Error, format!("error: {msg}")),
    };
    let report = AnalysisReport {
        schema: SCHEMA,
        command: command.to_string(),
        version: VERSION.to_string(),
        inputs: inputs(&cli.command),
        results,
        status,
    };
    let stdout = report.to_json() + "\n";
    let stderr = format!("{command}: {} ({summary})\n", passed_status(status));
    Outcome { code: status.exit_code(), report: Some(report), stdout, stderr }
}

fn passed_status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Inconclusive => "inconclusive",
        Status::Error => "error",
    }
}
