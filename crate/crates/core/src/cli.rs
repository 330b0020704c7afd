//! Command-line front end. Every report embeds the run configuration and the
//! library version; JSON and CSV output is deterministic for a fixed config.

use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::classes::aschbacher_obstructions;
use crate::criteria::{ray_criterion, s_r_membership, theorem_applicable};
use crate::density::{density_table, monte_carlo_density, DensityMode, DensityReport};
use crate::drinfeld::DrinfeldModule;
use crate::field::FieldCtx;
use crate::frobenius::Route;
use crate::galois::{accumulate_image, ImageOptions, DEFAULT_MAX_DEG, DEFAULT_MAX_PRIMES};
use crate::poly::{Poly, PolyRing, PrimeIdeal};

pub const VERSION: &str = concat!("drinfeld ", env!("CARGO_PKG_VERSION"));
/// Directory that receives a copy of every report when set.
pub const REPORTS_DIR_ENV: &str = "DRINFELD_REPORTS_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Check,
    RayCheck,
    Reduction,
    Newton,
    GaloisImage,
    GaloisImageT2,
    Density,
    Aschbacher,
    Factor,
    Torsion,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::RayCheck => "ray-check",
            Command::Reduction => "reduction",
            Command::Newton => "newton",
            Command::GaloisImage => "galois-image",
            Command::GaloisImageT2 => "galois-image-t2",
            Command::Density => "density",
            Command::Aschbacher => "aschbacher",
            Command::Factor => "factor",
            Command::Torsion => "torsion",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub command: Command,
    pub p: Option<u64>,
    pub k: u32,
    pub rank: Option<usize>,
    pub g: Option<Vec<Poly>>,
    pub prime: Option<Poly>,
    pub a: Option<Poly>,
    pub f: Option<Poly>,
    pub q: Option<u64>,
    pub max_primes: usize,
    pub max_deg: usize,
    pub samples: usize,
    #[serde(rename = "N")]
    pub n: Option<u32>,
    pub mode: DensityMode,
    pub route: Route,
    pub seed: u64,
    pub format: Format,
    pub jobs: Option<usize>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("outside envelope: {0}")]
    Envelope(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "drinfeld", version, about = "Drinfeld module surjectivity criteria and Galois-image experiments")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Characteristic of F_q.
    #[arg(long)]
    pub p: Option<u64>,
    /// Degree of F_q over F_p.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Coefficients g_1..g_r, e.g. "[1],[1,1]" or "1;T+1".
    #[arg(long)]
    pub g: Option<String>,
    /// A prime of A, e.g. "T+1" or "[1,1]".
    #[arg(long)]
    pub prime: Option<String>,
    /// Element of A for `newton` and `torsion` (default T).
    #[arg(long)]
    pub a: Option<String>,
    /// Polynomial to factor.
    #[arg(long)]
    pub f: Option<String>,
    /// Field size for `aschbacher`.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_MAX_PRIMES)]
    pub max_primes: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_DEG)]
    pub max_deg: usize,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long = "N", alias = "n")]
    pub n: Option<u32>,
    /// closed-form, exhaustive or monte-carlo.
    #[arg(long, default_value = "exhaustive", value_parser = parse_mode)]
    pub mode: DensityMode,
    /// motive or roots.
    #[arg(long, default_value = "motive", value_parser = parse_route)]
    pub route: Route,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

fn parse_mode(s: &str) -> Result<DensityMode, String> {
    serde_json::from_value(Value::String(s.into())).map_err(|_| format!("unknown mode {s:?}"))
}

fn parse_route(s: &str) -> Result<Route, String> {
    serde_json::from_value(Value::String(s.into())).map_err(|_| format!("unknown route {s:?}"))
}

/// Splits `"[1],[1,1]"` or `"1; T+1"` into polynomials.
pub fn parse_poly_list(s: &str) -> Result<Vec<Poly>, CliError> {
    let s = s.trim();
    let parts: Vec<String> = if s.starts_with('[') {
        let mut out = Vec::new();
        let mut depth = 0;
        let mut cur = String::new();
        for ch in s.chars() {
            match ch {
                '[' => {
                    depth += 1;
                    cur.push(ch);
                }
                ']' => {
                    depth -= 1;
                    cur.push(ch);
                    if depth == 0 {
                        out.push(std::mem::take(&mut cur));
                    }
                }
                ',' | ' ' if depth == 0 => {}
                _ if depth == 0 => return Err(invalid(format!("cannot parse coefficient list {s:?}"))),
                _ => cur.push(ch),
            }
        }
        if depth != 0 {
            return Err(invalid(format!("unbalanced brackets in {s:?}")));
        }
        out
    } else {
        s.split(';').map(str::to_string).collect()
    };
    parts.iter().map(|p| Poly::parse(p).map_err(invalid)).collect()
}

impl Cli {
    pub fn into_config(self) -> Result<(RunConfig, Option<std::path::PathBuf>), CliError> {
        let opt_poly = |s: &Option<String>| s.as_deref().map(Poly::parse).transpose().map_err(invalid);
        let config = RunConfig {
            command: self.command,
            p: self.p,
            k: self.k,
            rank: self.rank,
            g: self.g.as_deref().map(parse_poly_list).transpose()?,
            prime: opt_poly(&self.prime)?,
            a: opt_poly(&self.a)?,
            f: opt_poly(&self.f)?,
            q: self.q,
            max_primes: self.max_primes,
            max_deg: self.max_deg,
            samples: self.samples,
            n: self.n,
            mode: self.mode,
            route: self.route,
            seed: self.seed,
            format: self.format,
            jobs: self.jobs,
        };
        Ok((config, self.out))
    }
}

/// A finished run: the rendered report and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub exit_code: i32,
}

struct Payload {
    result: Value,
    warnings: Vec<String>,
    /// CSV rendering: header and rows
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

fn field(cfg: &RunConfig) -> Result<FieldCtx, CliError> {
    let p = cfg.p.ok_or_else(|| invalid("--p is required"))?;
    FieldCtx::new(p, cfg.k).map_err(invalid)
}

fn module(cfg: &RunConfig, ctx: &FieldCtx) -> Result<DrinfeldModule, CliError> {
    let g = cfg.g.clone().ok_or_else(|| invalid("--g is required"))?;
    if let Some(r) = cfg.rank {
        if r != g.len() {
            return Err(invalid(format!("--rank {r} but {} coefficients given", g.len())));
        }
    }
    let ring = PolyRing::new(ctx.clone());
    for f in &g {
        ring.validate(f).map_err(invalid)?;
    }
    DrinfeldModule::new(ctx.clone(), g).map_err(invalid)
}

fn prime(cfg: &RunConfig, ring: &PolyRing) -> Result<PrimeIdeal, CliError> {
    let f = cfg.prime.clone().ok_or_else(|| invalid("--prime is required"))?;
    ring.validate(&f).map_err(invalid)?;
    PrimeIdeal::new(ring, f).map_err(invalid)
}

fn gate_warnings(m: &DrinfeldModule) -> Vec<String> {
    let (ok, note) = theorem_applicable(m.q(), m.rank());
    if ok {
        Vec::new()
    } else {
        vec![note.unwrap_or_else(|| "no theorem applies".into())]
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn execute(cfg: &RunConfig) -> Result<Payload, CliError> {
    let simple = |result: Value, warnings: Vec<String>| Payload {
        result,
        warnings,
        table: None,
    };
    match cfg.command {
        Command::Check | Command::RayCheck => {
            let ctx = field(cfg)?;
            let m = module(cfg, &ctx)?;
            let rep = if cfg.command == Command::Check {
                s_r_membership(&m)
            } else {
                ray_criterion(&m)
            }
            .map_err(invalid)?;
            let mut warnings = gate_warnings(&m);
            if cfg.command == Command::RayCheck {
                warnings.extend(rep.note.clone().filter(|_| !rep.theorem_applicable));
                warnings.dedup();
            }
            Ok(simple(to_value(&rep), warnings))
        }
        Command::Reduction => {
            let ctx = field(cfg)?;
            let m = module(cfg, &ctx)?;
            let l = prime(cfg, m.ring())?;
            Ok(simple(to_value(&m.reduction_at(&l).map_err(invalid)?), vec![]))
        }
        Command::Newton => {
            let ctx = field(cfg)?;
            let m = module(cfg, &ctx)?;
            let l = prime(cfg, m.ring())?;
            let a = cfg.a.clone().unwrap_or_else(Poly::t);
            m.ring().validate(&a).map_err(invalid)?;
            let np = m.newton_polygon(&a, &l).map_err(invalid)?;
            let mut v = to_value(&np);
            v["ramificationDenominators"] = to_value(&np.ramification_denominators());
            Ok(simple(v, vec![]))
        }
        Command::GaloisImage | Command::GaloisImageT2 => {
            let ctx = field(cfg)?;
            let m = module(cfg, &ctx)?;
            let with_t2 = cfg.command == Command::GaloisImageT2;
            if with_t2 && (m.rank() != 2 || m.q() > crate::frobenius::T2_MAX_Q) {
                return Err(CliError::Envelope(format!(
                    "mod-T² sampling needs rank 2 and q <= {}",
                    crate::frobenius::T2_MAX_Q
                )));
            }
            let opts = ImageOptions {
                max_primes: cfg.max_primes,
                max_deg: cfg.max_deg,
                route: cfg.route,
                mod_t2: with_t2,
                stop_early: true,
            };
            let rep = accumulate_image(&m, &opts);
            let header = ["prime", "charPoly", "splittingDegree", "matrix"].map(String::from).to_vec();
            let rows = rep
                .samples
                .iter()
                .map(|s| {
                    vec![
                        s.prime.to_string(),
                        s.char_poly.to_string(),
                        s.splitting_degree.to_string(),
                        serde_json::to_string(&s.matrix.rows()).expect("serialisable"),
                    ]
                })
                .collect();
            Ok(Payload {
                result: to_value(&rep),
                warnings: gate_warnings(&m),
                table: Some((header, rows)),
            })
        }
        Command::Density => {
            let ctx = field(cfg)?;
            let r = cfg.rank.ok_or_else(|| invalid("--rank is required"))?;
            let n = cfg.n.ok_or_else(|| invalid("--N is required"))?;
            let rows: Vec<DensityReport> = match cfg.mode {
                DensityMode::MonteCarlo => vec![monte_carlo_density(&ctx, r, n, cfg.samples, cfg.seed).map_err(envelope)?],
                mode => density_table(&ctx, r, n, mode).map_err(envelope)?,
            };
            let header = DensityReport::CSV_HEADER.split(',').map(String::from).collect();
            let table = rows
                .iter()
                .map(|r| r.csv_row().split(',').map(String::from).collect())
                .collect();
            Ok(Payload {
                result: json!({ "rows": rows }),
                warnings: vec![],
                table: Some((header, table)),
            })
        }
        Command::Aschbacher => {
            let q = cfg.q.or_else(|| cfg.p.map(|p| p.pow(cfg.k))).ok_or_else(|| invalid("--q is required"))?;
            let rep = aschbacher_obstructions(q).map_err(|e| CliError::Envelope(e.to_string()))?;
            let header = ["class", "q0", "order", "qSquaredDivides", "obstructed"].map(String::from).to_vec();
            let rows = rep
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.class.clone(),
                        c.q0.map(|x| x.to_string()).unwrap_or_default(),
                        c.order.map(|x| x.to_string()).unwrap_or_default(),
                        c.q_squared_divides.to_string(),
                        c.obstructed.to_string(),
                    ]
                })
                .collect();
            Ok(Payload {
                result: to_value(&rep),
                warnings: vec![],
                table: Some((header, rows)),
            })
        }
        Command::Factor => {
            let ctx = field(cfg)?;
            let ring = PolyRing::new(ctx);
            let f = cfg.f.clone().ok_or_else(|| invalid("--f is required"))?;
            ring.validate(&f).map_err(invalid)?;
            let fac = ring.factor(&f, cfg.seed).map_err(invalid)?;
            let header = ["prime", "exponent"].map(String::from).to_vec();
            let rows = fac
                .factors
                .iter()
                .map(|(l, e)| vec![l.to_string(), e.to_string()])
                .collect();
            Ok(Payload {
                result: to_value(&fac),
                warnings: vec![],
                table: Some((header, rows)),
            })
        }
        Command::Torsion => {
            let ctx = field(cfg)?;
            let m = module(cfg, &ctx)?;
            let a = cfg.a.clone().unwrap_or_else(Poly::t);
            m.ring().validate(&a).map_err(invalid)?;
            let lin = m.torsion_poly(&a).map_err(|e| CliError::Envelope(e.to_string()))?;
            Ok(simple(
                json!({
                    "a": a,
                    "polynomial": lin.to_string(),
                    "degree": lin.degree().map(|d| d.to_string()),
                }),
                vec![],
            ))
        }
    }
}

fn envelope(e: crate::density::DensityError) -> CliError {
    match e {
        crate::density::DensityError::Envelope(_) => CliError::Envelope(e.to_string()),
        _ => invalid(e),
    }
}

fn csv_text(lines: &[String], header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory");
    for r in rows {
        w.write_record(r).expect("in-memory");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory")).expect("utf8");
    let mut out: String = lines.iter().map(|l| format!("# {l}\n")).collect();
    out.push_str(&body);
    out
}

fn flatten(v: &Value) -> Vec<Vec<String>> {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| {
                let s = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                vec![k.clone(), s]
            })
            .collect(),
        other => vec![vec!["value".into(), other.to_string()]],
    }
}

fn pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        pretty(x, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        out.push_str(&format!("{pad}{k}: ({} entries)\n", items.len()));
                        for i in items {
                            out.push_str(&format!("{pad}  -\n"));
                            pretty(i, indent + 2, out);
                        }
                    }
                    Value::String(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    other => out.push_str(&format!("{pad}{k}: {other}\n")),
                }
            }
        }
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}

/// Runs one configuration. Validation and envelope failures give exit code 2
/// with an error report; theorem-gate violations only add warnings.
pub fn run(cfg: &RunConfig) -> Output {
    if let Some(j) = cfg.jobs {
        // the global pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let start = Instant::now();
    let config = to_value(cfg);
    match execute(cfg) {
        Ok(payload) => {
            let text = match cfg.format {
                Format::Json => {
                    let report = json!({
                        "version": VERSION,
                        "command": cfg.command.name(),
                        "config": config,
                        "warnings": payload.warnings,
                        "result": payload.result,
                    });
                    serde_json::to_string_pretty(&report).expect("serialisable") + "\n"
                }
                Format::Csv => {
                    let mut lines = vec![
                        format!("version={VERSION}"),
                        format!("config={}", serde_json::to_string(&config).expect("serialisable")),
                    ];
                    lines.extend(payload.warnings.iter().map(|w| format!("warning={w}")));
                    match &payload.table {
                        Some((h, rows)) => csv_text(&lines, h, rows),
                        None => csv_text(&lines, &["key".into(), "value".into()], &flatten(&payload.result)),
                    }
                }
                Format::Pretty => {
                    let mut out = format!("{VERSION} · {}\n", cfg.command.name());
                    for w in &payload.warnings {
                        out.push_str(&format!("warning: {w}\n"));
                    }
                    out.push_str("config:\n");
                    pretty(&config, 1, &mut out);
                    out.push_str("result:\n");
                    pretty(&payload.result, 1, &mut out);
                    out.push_str(&format!("elapsed: {:.3?}\n", start.elapsed()));
                    out
                }
            };
            Output { text, exit_code: 0 }
        }
        Err(e) => {
            let report = json!({
                "version": VERSION,
                "command": cfg.command.name(),
                "config": config,
                "error": e.to_string(),
            });
            Output {
                text: serde_json::to_string_pretty(&report).expect("serialisable") + "\n",
                exit_code: e.exit_code(),
            }
        }
    }
}

/// Recovers the configuration embedded in a JSON report.
pub fn config_from_report(report: &str) -> Result<RunConfig, CliError> {
    let v: Value = serde_json::from_str(report).map_err(invalid)?;
    serde_json::from_value(v["config"].clone()).map_err(invalid)
}

/// Parses arguments, runs, and writes the report; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let command = cli.command;
    let (cfg, out) = match cli.into_config() {
        Ok(x) => x,
        Err(e) => {
            eprintln!("{}", json!({ "version": VERSION, "command": command.name(), "error": e.to_string() }));
            return e.exit_code();
        }
    };
    let output = run(&cfg);
    if output.exit_code == 0 {
        print!("{}", output.text);
    } else {
        eprint!("{}", output.text);
    }
    let ext = match cfg.format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Pretty => "txt",
    };
    let target = out.or_else(|| {
        std::env::var_os(REPORTS_DIR_ENV).map(|d| std::path::Path::new(&d).join(format!("{}.{ext}", command.name())))
    });
    if let Some(path) = target {
        if let Some(dir) = path.parent() {
            let _ = std::fs::create_dir_all(dir);
        }
        if let Err(e) = std::fs::write(&path, &output.text) {
            eprintln!("cannot write {}: {e}", path.display());
            return 1;
        }
    }
    output.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> RunConfig {
        let mut full = vec!["drinfeld"];
        full.extend_from_slice(args);
        Cli::try_parse_from(full).unwrap().into_config().unwrap().0
    }

    #[test]
    fn poly_lists() {
        let a = parse_poly_list("[1],[1,1]").unwrap();
        let b = parse_poly_list("1; T+1").unwrap();
        assert_eq!(a, b);
        assert!(parse_poly_list("[1],[1").is_err());
        assert!(parse_poly_list("[1]x[1]").is_err());
    }

    #[test]
    fn check_example() {
        let out = run(&cfg(&["check", "--p", "2", "--k", "2", "--rank", "2", "--g", "[1],[1,1]"]));
        assert_eq!(out.exit_code, 0);
        let v: Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["result"]["member"], true);
        assert_eq!(v["result"]["witnesses"][0], "T+1");
        assert_eq!(v["version"], VERSION);
    }

    #[test]
    fn validation_errors_exit_2() {
        for args in [
            &["check", "--p", "4", "--g", "[1],[1]"][..],
            &["check", "--p", "2", "--g", "[1],[0]"],
            &["check", "--p", "2", "--g", "[1],[5]"],
            &["check", "--p", "2", "--rank", "3", "--g", "[1],[1]"],
            &["reduction", "--p", "2", "--g", "[1],[1]", "--prime", "T^2+1"],
            &["density", "--p", "2", "--rank", "2", "--N", "20"],
            &["galois-image-t2", "--p", "7", "--g", "[1],[1,1]"],
            &["aschbacher", "--q", "8"],
        ] {
            let out = run(&cfg(args));
            assert_eq!(out.exit_code, 2, "{args:?}");
            assert!(out.text.contains("\"error\""));
        }
    }

    #[test]
    fn gate_is_a_warning() {
        let out = run(&cfg(&["check", "--p", "3", "--g", "[1],[1,1]"]));
        assert_eq!(out.exit_code, 0);
        let v: Value = serde_json::from_str(&out.text).unwrap();
        assert!(!v["warnings"].as_array().unwrap().is_empty());
    }

    #[test]
    fn config_round_trip() {
        for args in [
            &["check", "--p", "2", "--k", "2", "--g", "[1],[1,1]"][..],
            &["density", "--p", "2", "--k", "2", "--rank", "2", "--N", "3"],
            &["density", "--p", "3", "--rank", "2", "--N", "4", "--mode", "monte-carlo", "--samples", "2000", "--seed", "9"],
            &["galois-image", "--p", "3", "--g", "[1],[1,1]", "--max-deg", "2"],
            &["factor", "--p", "5", "--f", "T^4+4"],
            &["torsion", "--p", "2", "--g", "[1],[1]", "--a", "T^2"],
            &["newton", "--p", "11", "--g", "[1],[1],[0,1,1]", "--prime", "T+1"],
        ] {
            let c = cfg(args);
            let first = run(&c);
            assert_eq!(first.exit_code, 0, "{args:?}: {}", first.text);
            let back = config_from_report(&first.text).unwrap();
            assert_eq!(back, c);
            assert_eq!(run(&back).text, first.text);
        }
    }

    #[test]
    fn density_exact_ratio() {
        let out = run(&cfg(&["density", "--p", "2", "--k", "2", "--rank", "2", "--N", "3", "--mode", "exhaustive"]));
        let v: Value = serde_json::from_str(&out.text).unwrap();
        let row = &v["result"]["rows"][2];
        // (q³−q²)²/(q³(q³−1)) with q = 4: 2304/4032
        assert_eq!(row["ratioS1"], "4/7");
        assert_eq!(row["s1Enumerated"], "2304");
    }

    #[test]
    fn csv_output() {
        let mut c = cfg(&["density", "--p", "2", "--rank", "2", "--N", "3", "--format", "csv"]);
        let out = run(&c);
        let lines: Vec<&str> = out.text.lines().collect();
        assert!(lines[0].starts_with("# version="));
        assert!(lines[1].starts_with("# config="));
        assert_eq!(lines[2], DensityReport::CSV_HEADER);
        assert_eq!(lines.len(), 6);
        c.command = Command::Aschbacher;
        c.q = Some(11);
        assert!(run(&c).text.contains("obstructed"));
    }

    #[test]
    fn aschbacher_q11() {
        let out = run(&cfg(&["aschbacher", "--q", "11"]));
        let v: Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["result"]["allObstructed"], true);
    }
}
