//! Commands behind the `unimodal-lab` binary.
//!
//! Every `cmd_*` function is pure apart from reading its input: it returns a
//! rendered [`Report`] and leaves writing and exiting to `main`.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use unimodal_lab::certmax::{certified_alpha, theorem21_bounds, CertError, CertifiedMax, REPORTED_ALPHA};
use unimodal_lab::eclass::{
    max_l, membership_certificate, sandwich_check, EClassError, EClassResult, Membership, ThetaScan,
};
use unimodal_lab::exactpoly::{expand_family, CoeffSeq, FamilyParams, UnimodalReport};
use unimodal_lab::theorem1::{
    case_bound_holds, central_positions, central_ratio, critical_m, generic_min_n, inequality_one_probe, minimal_m,
    probe_upper, Mode, Theorem1Error,
};

pub const SCHEMA: &str = "unimodal-lab/1";
/// Tolerance at which `certmax` must enclose the four-decimal constant.
pub const CERTMAX_DEFAULT_TOL: f64 = 5e-4;
/// Enclosure width of the constant used by `eclass` and `scan-eclass`.
pub const ECLASS_ALPHA_TOL: f64 = 1e-9;
pub const GENERAL_DEFAULT_CAP: u64 = 1000;
pub const THREADS_ENV: &str = "UNIMODAL_LAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Text,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(CliError::Usage(format!("unknown format '{other}' (expected csv, json or text)"))),
        }
    }
}

/// Outcome classes, in increasing order of severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Mismatch,
    Numeric,
    NotFound,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Mismatch => 2,
            Status::Numeric => 3,
            Status::NotFound => 4,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("numeric certification failed: {0}")]
    Numeric(String),
    #[error("not found: {0}")]
    NotFound(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io(_) => 1,
            CliError::Numeric(_) => 3,
            CliError::NotFound(_) => 4,
        }
    }
}

impl From<Theorem1Error> for CliError {
    fn from(e: Theorem1Error) -> Self {
        match e {
            Theorem1Error::NotFound { .. } => CliError::NotFound(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<EClassError> for CliError {
    fn from(e: EClassError) -> Self {
        match e {
            EClassError::BadScan(_) | EClassError::BadParams { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<CertError> for CliError {
    fn from(e: CertError) -> Self {
        match e {
            CertError::BadTolerance(_) | CertError::KTooSmall(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

/// Rendered output of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub body: String,
    pub status: Status,
    /// Printed on stderr; also embedded in JSON bodies.
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Check { m: u64, k: u64 },
    ScanTheorem1 { k_min: u64, k_max: u64, cap: Option<u64> },
    ProbeInequality { k: u64 },
    Eclass { k: u64, m: Option<u64>, grid: usize, tol: f64 },
    ScanEclass { k_min: u64, k_max: u64, grid: usize, tol: f64 },
    Certmax { tol: f64 },
    General { input: PathBuf, cap: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// `None` picks the command's natural format.
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

fn check_range(k_min: u64, k_max: u64, floor: u64) -> Result<(), CliError> {
    if k_min < floor {
        return Err(CliError::Usage(format!("--k-min must be at least {floor}")));
    }
    if k_min > k_max {
        return Err(CliError::Usage(format!("empty range: --k-min {k_min} > --k-max {k_max}")));
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--tol must be positive, got {tol}")))
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        match &self.command {
            Command::Check { m, k } => {
                FamilyParams::new(*m, *k).map_err(|e| CliError::Usage(e.to_string()))?;
            }
            Command::ScanTheorem1 { k_min, k_max, cap } => {
                check_range(*k_min, *k_max, 2)?;
                if let Some(cap) = cap {
                    if *cap < k_max * k_max {
                        return Err(CliError::Usage(format!("--cap {cap} is below k_max^2 = {}", k_max * k_max)));
                    }
                }
            }
            Command::ProbeInequality { k } => {
                if *k < 3 {
                    return Err(CliError::Usage("--k must be at least 3".into()));
                }
            }
            Command::Eclass { k, tol, m, .. } => {
                if *k < 2 {
                    return Err(CliError::Usage("--k must be at least 2".into()));
                }
                if *m == Some(0) {
                    return Err(CliError::Usage("--m must be at least 1".into()));
                }
                check_tol(*tol)?;
            }
            Command::ScanEclass { k_min, k_max, tol, .. } => {
                check_range(*k_min, *k_max, 2)?;
                check_tol(*tol)?;
            }
            Command::Certmax { tol } => check_tol(*tol)?,
            Command::General { .. } => {}
        }
        Ok(())
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

/// Validate and dispatch.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    match &cfg.command {
        Command::Check { m, k } => cmd_check(*m, *k, cfg.format_or(Format::Text)),
        Command::ScanTheorem1 { k_min, k_max, cap } => {
            cmd_scan_theorem1(*k_min, *k_max, *cap, cfg.format_or(Format::Csv))
        }
        Command::ProbeInequality { k } => cmd_probe_inequality(*k, cfg.format_or(Format::Csv)),
        Command::Eclass { k, m, grid, tol } => cmd_eclass(*k, *m, *grid, *tol, cfg.format_or(Format::Json)),
        Command::ScanEclass { k_min, k_max, grid, tol } => {
            cmd_scan_eclass(*k_min, *k_max, *grid, *tol, cfg.format_or(Format::Csv))
        }
        Command::Certmax { tol } => cmd_certmax(*tol, cfg.format_or(Format::Json)),
        Command::General { input, cap } => {
            let text = if input.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(input)?
            };
            cmd_general(&text, *cap, cfg.format_or(Format::Text))
        }
    }
}

/// Decimal with 17 significant digits; `nan`, `inf`, `-inf` otherwise.
pub fn fmt17(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt17).unwrap_or_default()
}

fn csv_body(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

/// Adds the schema tag and serializes; object keys come out sorted, so
/// parsing and re-serializing the result reproduces it byte for byte.
fn json_body(command: &str, mut fields: Value, warnings: &[String]) -> String {
    let obj = fields.as_object_mut().expect("json body is an object");
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("command".into(), json!(command));
    obj.insert("warnings".into(), json!(warnings));
    let mut s = serde_json::to_string_pretty(&fields).expect("serializable");
    s.push('\n');
    s
}

fn rational_f64(r: &BigRational) -> Option<f64> {
    r.to_f64()
}

pub fn cmd_check(m: u64, k: u64, format: Format) -> Result<Report, CliError> {
    let params = FamilyParams::new(m, k).map_err(|e| CliError::Usage(e.to_string()))?;
    let p = expand_family(params);
    let verdicts = UnimodalReport::of(&p);
    let (off, centre) = central_positions(params);
    let (c_off, c_centre) = (p.get(off), p.get(centre));
    let central_condition = !c_centre.is_zero() && c_off <= c_centre;
    let exact_ratio = (!c_centre.is_zero())
        .then(|| BigRational::new(BigInt::from(c_off.clone()), BigInt::from(c_centre.clone())));
    let closed_form = central_ratio(params).ok();
    let predicted = m >= critical_m(k);
    let unimodal = verdicts.unimodal.holds;
    let strong = verdicts.strongly_unimodal.holds;
    let agree = unimodal == predicted && strong == predicted && central_condition == predicted;
    let status = if agree { Status::Ok } else { Status::Mismatch };
    let ratio_value = exact_ratio.as_ref().and_then(rational_f64);

    let body = match format {
        Format::Json => json_body(
            "check",
            json!({
                "m": m,
                "k": k,
                "degree": params.degree(),
                "coefficients": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "unimodal": unimodal,
                "unimodal_witness": verdicts.unimodal.witness,
                "strongly_unimodal": strong,
                "strong_failure": verdicts.strongly_unimodal.failure
                    .map(|(i, kind)| json!({ "index": i, "kind": kind })),
                "central_positions": [off, centre],
                "central_condition": central_condition,
                "central_ratio": exact_ratio.as_ref().map(|r| r.to_string()),
                "central_ratio_value": ratio_value,
                "central_ratio_closed_form": closed_form.as_ref().map(|r| r.to_string()),
                "predicted": predicted,
                "agree": agree,
            }),
            &[],
        ),
        Format::Csv => csv_body(
            &["m", "k", "unimodal", "strongly_unimodal", "central_condition", "central_ratio", "predicted", "agree"],
            &[vec![
                m.to_string(),
                k.to_string(),
                unimodal.to_string(),
                strong.to_string(),
                central_condition.to_string(),
                fmt_opt(ratio_value),
                predicted.to_string(),
                agree.to_string(),
            ]],
        ),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "P = (1+x)^{m} (1+x^{k}), degree {}", params.degree()).unwrap();
            if p.len() <= 64 {
                writeln!(s, "coefficients: {p}").unwrap();
            }
            writeln!(s, "unimodal:           {unimodal}").unwrap();
            writeln!(s, "strongly unimodal:  {strong}").unwrap();
            let ratio = exact_ratio.as_ref().map(|r| r.to_string()).unwrap_or_else(|| "undefined".into());
            writeln!(s, "central condition:  {central_condition} (ratio a[{off}]/a[{centre}] = {ratio})").unwrap();
            writeln!(s, "m >= k^2 - 3 = {}:  {predicted}", critical_m(k)).unwrap();
            writeln!(s, "agree:              {agree}").unwrap();
            s
        }
    };
    Ok(Report { body, status, warnings: Vec::new() })
}

#[derive(Debug, Clone, PartialEq)]
struct ScanRow {
    k: u64,
    strong: Result<u64, Theorem1Error>,
    unimodal: Result<u64, Theorem1Error>,
    predicted: u64,
}

impl ScanRow {
    fn matches(&self) -> bool {
        self.strong == Ok(self.predicted) && self.unimodal == Ok(self.predicted)
    }
}

pub fn cmd_scan_theorem1(k_min: u64, k_max: u64, cap: Option<u64>, format: Format) -> Result<Report, CliError> {
    let mut rows: Vec<ScanRow> = (k_min..=k_max)
        .into_par_iter()
        .map(|k| {
            let cap = cap.unwrap_or(k * k + 8);
            ScanRow {
                k,
                strong: minimal_m(k, Mode::Strong, cap),
                unimodal: minimal_m(k, Mode::Unimodal, cap),
                predicted: critical_m(k),
            }
        })
        .collect();
    rows.sort_by_key(|r| r.k);
    for r in &rows {
        for res in [&r.strong, &r.unimodal] {
            if let Err(e) = res {
                if !matches!(e, Theorem1Error::NotFound { .. }) {
                    return Err(e.clone().into());
                }
            }
        }
    }
    let not_found = rows.iter().any(|r| r.strong.is_err() || r.unimodal.is_err());
    let mismatch = rows.iter().any(|r| !r.matches());
    let status = if not_found {
        Status::NotFound
    } else if mismatch {
        Status::Mismatch
    } else {
        Status::Ok
    };
    let cell = |r: &Result<u64, Theorem1Error>| r.as_ref().map(|m| m.to_string()).unwrap_or_default();

    let body = match format {
        Format::Csv => csv_body(
            &["k", "min_m_strong", "min_m_unimodal", "predicted", "match"],
            &rows
                .iter()
                .map(|r| {
                    vec![r.k.to_string(), cell(&r.strong), cell(&r.unimodal), r.predicted.to_string(), r.matches().to_string()]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => json_body(
            "scan-theorem1",
            json!({
                "rows": rows.iter().map(|r| json!({
                    "k": r.k,
                    "min_m_strong": r.strong.as_ref().ok(),
                    "min_m_unimodal": r.unimodal.as_ref().ok(),
                    "predicted": r.predicted,
                    "match": r.matches(),
                })).collect::<Vec<_>>(),
                "all_match": !mismatch,
            }),
            &[],
        ),
        Format::Text => {
            let mut s = format!("{:>4} {:>12} {:>14} {:>9}  match\n", "k", "min_m_strong", "min_m_unimodal", "k^2-3");
            for r in &rows {
                let show = |v: &Result<u64, Theorem1Error>| if v.is_ok() { cell(v) } else { "not found".into() };
                writeln!(s, "{:>4} {:>12} {:>14} {:>9}  {}", r.k, show(&r.strong), show(&r.unimodal), r.predicted, r.matches())
                    .unwrap();
            }
            s
        }
    };
    Ok(Report { body, status, warnings: Vec::new() })
}

pub fn cmd_probe_inequality(k: u64, format: Format) -> Result<Report, CliError> {
    if k < 3 {
        return Err(CliError::Usage("--k must be at least 3".into()));
    }
    let mut rows = Vec::new();
    for u in k as i64..=probe_upper(k) {
        let probe = inequality_one_probe(k, u)?;
        let case = case_bound_holds(k, u)?;
        rows.push((probe, case));
    }
    let all_hold = rows.iter().all(|(p, _)| p.holds);
    let case_failures = rows.iter().filter(|(_, c)| !c).count();
    let status = if all_hold { Status::Ok } else { Status::Mismatch };
    let f = |r: &BigRational| rational_f64(r).unwrap_or(f64::NAN);

    let body = match format {
        Format::Csv => csv_body(
            &["u", "lhs", "rhs", "holds", "case_bound_holds"],
            &rows
                .iter()
                .map(|(p, c)| vec![p.u.to_string(), fmt17(f(&p.lhs)), fmt17(f(&p.rhs)), p.holds.to_string(), c.to_string()])
                .collect::<Vec<_>>(),
        ),
        Format::Json => json_body(
            "probe-inequality",
            json!({
                "k": k,
                "rows": rows.iter().map(|(p, c)| json!({
                    "u": p.u,
                    "lhs": f(&p.lhs),
                    "rhs": f(&p.rhs),
                    "lhs_exact": p.lhs.to_string(),
                    "rhs_exact": p.rhs.to_string(),
                    "holds": p.holds,
                    "case_bound_holds": c,
                })).collect::<Vec<_>>(),
                "all_hold": all_hold,
                "case_bound_failures": case_failures,
            }),
            &[],
        ),
        Format::Text => {
            let mut s = format!("k = {k}, u in [{k}, {}]\n", probe_upper(k));
            writeln!(s, "{:>6} {:>24} {:>24}  holds  case_bound_holds", "u", "lhs", "rhs").unwrap();
            for (p, c) in &rows {
                writeln!(s, "{:>6} {:>24} {:>24}  {:<5}  {}", p.u, fmt17(f(&p.lhs)), fmt17(f(&p.rhs)), p.holds, c)
                    .unwrap();
            }
            writeln!(s, "inequality holds on the whole range: {all_hold}; case-bound failures: {case_failures}").unwrap();
            s
        }
    };
    Ok(Report { body, status, warnings: Vec::new() })
}

fn certificate_json(c: &Result<Membership, CliError>) -> Value {
    match c {
        Ok(m) => serde_json::to_value(m).expect("serializable"),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn certificate_text(c: &Result<Membership, CliError>) -> String {
    match c {
        Ok(m) if m.member => format!("member (min normalized defect {})", fmt17(m.min_defect)),
        Ok(m) => format!("not a member (defect {} at theta = {})", fmt17(m.min_defect), fmt17(m.theta)),
        Err(e) => format!("inconclusive: {e}"),
    }
}

pub fn cmd_eclass(k: u64, m: Option<u64>, grid: usize, tol: f64, format: Format) -> Result<Report, CliError> {
    let mut warnings = Vec::new();
    if k < 9 {
        warnings.push(format!("k = {k} is below 9, where the k^4 sandwich is established; results are still computed"));
    }
    let alpha = certified_alpha(ECLASS_ALPHA_TOL)?;
    let result = max_l(&ThetaScan::new(k).with_grid(grid).with_tol(tol))?.with_alpha(&alpha.value_enclosure);
    let cert = |n: u64| membership_certificate(n, k, grid).map_err(CliError::from);
    let at = cert(result.m_of_k);
    let below = if result.m_of_k >= 2 { Some(cert(result.m_of_k - 1)) } else { None };
    let requested = m.map(cert);
    let sandwich = sandwich_check(k, &alpha.value_enclosure, grid, &result);
    let bound_class = m.and_then(|n| theorem21_bounds(k, n, &alpha).ok());

    let mut status = Status::Ok;
    let inconclusive = at.is_err() || matches!(below, Some(Err(_))) || matches!(requested, Some(Err(_)));
    let below_nonmember = match &below {
        None => true,
        Some(Ok(c)) => !c.member,
        Some(Err(_)) => false,
    };
    let consistent = matches!(at, Ok(ref c) if c.member) && below_nonmember;
    if inconclusive {
        status = status.max(Status::Numeric);
    } else if !consistent {
        if result.near_integer {
            warnings.push(format!(
                "max L = {} is within 1e-6 of an integer; certificates at m(k) and m(k)-1 disagree with the rounding",
                fmt17(result.max_l)
            ));
        } else {
            status = status.max(Status::Mismatch);
        }
    }
    if k >= 9 && !sandwich.max_in_enclosure {
        status = status.max(Status::Mismatch);
    }
    if result.near_integer {
        warnings.push("maximum is near an integer; m(k) was settled by the membership certificate".into());
    }
    if !sandwich.lower_holds {
        warnings.push(format!(
            "pointwise lower bound D(z)/(1+8/k^2) fails at theta = {}; the term-wise bound {}",
            fmt_opt(sandwich.lower_violation),
            if sandwich.termwise_lower_holds { "holds" } else { "also fails" }
        ));
    }

    let body = match format {
        Format::Json => json_body(
            "eclass",
            json!({
                "result": result,
                "alpha": alpha,
                "certificate_at_m_of_k": certificate_json(&at),
                "certificate_below_m_of_k": below.as_ref().map(certificate_json),
                "requested_m": m,
                "certificate_at_requested_m": requested.as_ref().map(certificate_json),
                "requested_m_bound_class": bound_class,
                "sandwich": sandwich,
                "consistent": consistent,
            }),
            &warnings,
        ),
        Format::Csv => csv_body(
            &[
                "k",
                "max_l",
                "argmax_theta",
                "m_of_k",
                "near_integer",
                "scaled_max",
                "sandwich_lo",
                "sandwich_hi",
                "member_at_m_of_k",
                "member_below_m_of_k",
                "max_in_sandwich",
            ],
            &[vec![
                k.to_string(),
                fmt17(result.max_l),
                fmt17(result.argmax_theta),
                result.m_of_k.to_string(),
                result.near_integer.to_string(),
                fmt17(result.scaled()),
                fmt_opt(result.sandwich_lo),
                fmt_opt(result.sandwich_hi),
                at.as_ref().map(|c| c.member.to_string()).unwrap_or_default(),
                below.as_ref().and_then(|b| b.as_ref().ok()).map(|c| c.member.to_string()).unwrap_or_default(),
                sandwich.max_in_enclosure.to_string(),
            ]],
        ),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "k = {k}").unwrap();
            writeln!(s, "max L        = {} at theta = {}", fmt17(result.max_l), fmt17(result.argmax_theta)).unwrap();
            writeln!(s, "m(k)         = {}", result.m_of_k).unwrap();
            writeln!(s, "max L / k^4  = {}", fmt17(result.scaled())).unwrap();
            writeln!(s, "sandwich     = [{}, {}] -> {}", fmt_opt(result.sandwich_lo), fmt_opt(result.sandwich_hi), sandwich.max_in_enclosure)
                .unwrap();
            writeln!(s, "at m(k):     {}", certificate_text(&at)).unwrap();
            if let Some(b) = &below {
                writeln!(s, "at m(k)-1:   {}", certificate_text(b)).unwrap();
            }
            if let (Some(n), Some(c)) = (m, &requested) {
                writeln!(s, "at m = {n}: {}", certificate_text(c)).unwrap();
            }
            s
        }
    };
    Ok(Report { body, status, warnings })
}

pub fn cmd_scan_eclass(k_min: u64, k_max: u64, grid: usize, tol: f64, format: Format) -> Result<Report, CliError> {
    let alpha = certified_alpha(ECLASS_ALPHA_TOL)?;
    let mut results = (k_min..=k_max)
        .into_par_iter()
        .map(|k| max_l(&ThetaScan::new(k).with_grid(grid).with_tol(tol)).map(|r| r.with_alpha(&alpha.value_enclosure)))
        .collect::<Result<Vec<_>, _>>()?;
    results.sort_by_key(|r| r.k);
    let in_sandwich = |r: &EClassResult| r.in_sandwich(1e-9).unwrap_or(false);
    let mismatch = results.iter().any(|r| r.k >= 9 && !in_sandwich(r));
    let status = if mismatch { Status::Mismatch } else { Status::Ok };
    let mut warnings = Vec::new();
    for r in results.iter().filter(|r| r.near_integer) {
        warnings.push(format!("k = {}: max L = {} is within 1e-6 of an integer", r.k, fmt17(r.max_l)));
    }

    let body = match format {
        Format::Csv => csv_body(
            &["k", "max_l", "argmax_theta", "m_of_k", "near_integer", "scaled_max", "sandwich_lo", "sandwich_hi", "in_sandwich"],
            &results
                .iter()
                .map(|r| {
                    vec![
                        r.k.to_string(),
                        fmt17(r.max_l),
                        fmt17(r.argmax_theta),
                        r.m_of_k.to_string(),
                        r.near_integer.to_string(),
                        fmt17(r.scaled()),
                        fmt_opt(r.sandwich_lo),
                        fmt_opt(r.sandwich_hi),
                        in_sandwich(r).to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => json_body(
            "scan-eclass",
            json!({
                "alpha": alpha,
                "rows": results.iter().map(|r| {
                    let mut v = serde_json::to_value(r).expect("serializable");
                    v["scaled_max"] = json!(r.scaled());
                    v["in_sandwich"] = json!(in_sandwich(r));
                    v
                }).collect::<Vec<_>>(),
            }),
            &warnings,
        ),
        Format::Text => {
            let mut s = format!("{:>4} {:>24} {:>10} {:>24}  in_sandwich\n", "k", "max_l", "m(k)", "max_l/k^4");
            for r in &results {
                writeln!(s, "{:>4} {:>24} {:>10} {:>24}  {}", r.k, fmt17(r.max_l), r.m_of_k, fmt17(r.scaled()), in_sandwich(r))
                    .unwrap();
            }
            s
        }
    };
    Ok(Report { body, status, warnings })
}

fn inside_reference_bracket(c: &CertifiedMax) -> bool {
    use std::f64::consts::PI;
    0.705 * PI < c.crit_bracket.lo && c.crit_bracket.hi < 0.708 * PI
}

pub fn cmd_certmax(tol: f64, format: Format) -> Result<Report, CliError> {
    let cert = certified_alpha(tol)?;
    let contains = cert.contains_reported_value();
    let consistent = cert.consistent_with_reported_accuracy();
    let mut warnings = Vec::new();
    let mut status = Status::Ok;
    if (tol - CERTMAX_DEFAULT_TOL).abs() <= 1e-15 && !contains {
        status = Status::Numeric;
        warnings.push(format!(
            "enclosure [{}, {}] does not contain {REPORTED_ALPHA}; it is {} within the quoted accuracy {CERTMAX_DEFAULT_TOL}",
            fmt17(cert.value_enclosure.lo),
            fmt17(cert.value_enclosure.hi),
            if consistent { "still" } else { "not" }
        ));
    }
    let e = cert.value_enclosure;
    let b = cert.crit_bracket;
    let body = match format {
        Format::Json => json_body(
            "certmax",
            json!({
                "tol": tol,
                "crit_bracket": b,
                "value_enclosure": e,
                "width": e.width(),
                "evaluations": cert.evaluations,
                "reported_value": REPORTED_ALPHA,
                "contains_reported_value": contains,
                "consistent_with_reported_accuracy": consistent,
                "bracket_inside_0_705pi_0_708pi": inside_reference_bracket(&cert),
            }),
            &warnings,
        ),
        Format::Csv => csv_body(
            &["tol", "crit_lo", "crit_hi", "alpha_lo", "alpha_hi", "evaluations", "contains_reported_value"],
            &[vec![
                fmt17(tol),
                fmt17(b.lo),
                fmt17(b.hi),
                fmt17(e.lo),
                fmt17(e.hi),
                cert.evaluations.to_string(),
                contains.to_string(),
            ]],
        ),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "critical point in [{}, {}]", fmt17(b.lo), fmt17(b.hi)).unwrap();
            writeln!(s, "max D in         [{}, {}] (width {})", fmt17(e.lo), fmt17(e.hi), fmt17(e.width())).unwrap();
            writeln!(s, "contains {REPORTED_ALPHA}: {contains}; within {CERTMAX_DEFAULT_TOL} of it: {consistent}").unwrap();
            writeln!(s, "evaluations: {}", cert.evaluations).unwrap();
            s
        }
    };
    Ok(Report { body, status, warnings })
}

/// Whitespace-separated nonnegative decimal integers, lowest degree first.
pub fn parse_coefficients(text: &str) -> Result<CoeffSeq, CliError> {
    let mut coeffs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for token in line.split_whitespace() {
            let value = BigUint::from_str(token).map_err(|_| CliError::Parse {
                line: i + 1,
                message: format!("'{token}' is not a nonnegative integer"),
            })?;
            coeffs.push(value);
        }
    }
    if coeffs.is_empty() {
        return Err(CliError::Parse { line: text.lines().count().max(1), message: "no coefficients found".into() });
    }
    Ok(CoeffSeq::new(coeffs))
}

pub fn cmd_general(text: &str, cap: u64, format: Format) -> Result<Report, CliError> {
    let p = parse_coefficients(text)?;
    if p.is_zero() {
        return Err(CliError::Usage("the polynomial is zero".into()));
    }
    let n = match generic_min_n(&p, cap) {
        Ok(n) => Some(n),
        Err(Theorem1Error::NotFound { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let status = if n.is_some() { Status::Ok } else { Status::NotFound };
    let body = match format {
        Format::Json => json_body(
            "general",
            json!({
                "degree": p.degree(),
                "coefficients": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "cap": cap,
                "n": n,
                "found": n.is_some(),
            }),
            &[],
        ),
        Format::Csv => csv_body(
            &["degree", "cap", "n", "found"],
            &[vec![p.degree().to_string(), cap.to_string(), n.map(|n| n.to_string()).unwrap_or_default(), n.is_some().to_string()]],
        ),
        Format::Text => match n {
            Some(n) => format!("minimal N with (1+x)^N p strongly unimodal: {n}\n"),
            None => format!("no N <= {cap} makes (1+x)^N p strongly unimodal\n"),
        },
    };
    Ok(Report { body, status, warnings: Vec::new() })
}
