//! Suite runner: run configuration, deterministic execution and report files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use kahlerlab::backends::{Fixture, FixtureKind};
use kahlerlab::check::{self, CheckResult, CheckSpec, Status, Suite, Tol, CONVENTIONS, SCHEMA_VERSION};
use kahlerlab::variation::fd::FdOptions;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config-error: {0}")]
    Config(String),
    #[error("io-error: {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("not-found: unknown check id `{0}`")]
    NotFound(String),
}

impl CliError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }
}

/// Exit status of a run with failing checks.
pub const EXIT_FAIL: i32 = 1;
/// Exit status of configuration and I/O errors.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteSel {
    Identity,
    Variation,
    Soliton,
    Obstruction,
    All,
}

impl SuiteSel {
    fn covers(self, s: Suite) -> bool {
        match self {
            SuiteSel::All => true,
            SuiteSel::Identity => s == Suite::Identity,
            SuiteSel::Variation => s == Suite::Variation,
            SuiteSel::Soliton => s == Suite::Soliton,
            SuiteSel::Obstruction => s == Suite::Obstruction,
        }
    }
}

impl FromStr for SuiteSel {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.trim().to_ascii_lowercase()))
            .map_err(|_| CliError::Config(format!("unknown suite `{s}`")))
    }
}

/// Absolute tolerances replacing a class default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassTolerances {
    /// Identity class on FLAT2.
    pub identity_flat: Option<f64>,
    /// Identity class on every other fixture.
    pub identity: Option<f64>,
    pub first: Option<f64>,
    pub second: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub suites: Vec<SuiteSel>,
    pub fixtures: Vec<FixtureKind>,
    /// Restricts the run to these check IDs; empty selects every check of the suites.
    pub checks: Vec<String>,
    pub seeds: Vec<u64>,
    pub fd: FdOptions,
    pub tolerances: ClassTolerances,
    pub tolerance_scale: f64,
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses the available parallelism.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suites: vec![SuiteSel::All],
            fixtures: FixtureKind::ALL.to_vec(),
            checks: Vec::new(),
            seeds: vec![1],
            fd: FdOptions::default(),
            tolerances: ClassTolerances::default(),
            tolerance_scale: 1.0,
            out: None,
            jobs: 0,
        }
    }
}

fn positive(field: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!("field `{field}`: must be a positive number, got {v}")))
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            e => e,
        })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (field, empty) in
            [("suites", self.suites.is_empty()), ("fixtures", self.fixtures.is_empty()), ("seeds", self.seeds.is_empty())]
        {
            if empty {
                return Err(CliError::Config(format!("field `{field}`: must not be empty")));
            }
        }
        positive("tolerance_scale", self.tolerance_scale)?;
        let t = &self.tolerances;
        for (field, v) in [
            ("tolerances.identity_flat", t.identity_flat),
            ("tolerances.identity", t.identity),
            ("tolerances.first", t.first),
            ("tolerances.second", t.second),
        ] {
            if let Some(v) = v {
                positive(field, v)?;
            }
        }
        positive("fd.base_step", self.fd.base_step)?;
        if self.fd.richardson_levels < 2 {
            return Err(CliError::Config("field `fd.richardson_levels`: must be at least 2".into()));
        }
        for id in &self.checks {
            if check::find(id).is_err() {
                return Err(CliError::Config(format!("field `checks`: unknown check id `{id}`")));
            }
        }
        Ok(())
    }

    /// Selected checks in registry order.
    pub fn selected(&self) -> Vec<&'static CheckSpec> {
        check::registry()
            .into_iter()
            .filter(|c| self.suites.iter().any(|s| s.covers(c.suite)))
            .filter(|c| self.checks.is_empty() || self.checks.iter().any(|id| id == c.id))
            .collect()
    }

    pub fn tolerance(&self, spec: &CheckSpec, kind: FixtureKind) -> f64 {
        let t = &self.tolerances;
        let base = match spec.tol {
            Tol::Identity if kind == FixtureKind::Flat2 => t.identity_flat,
            Tol::Identity => t.identity,
            Tol::First => t.first,
            Tol::Second => t.second,
            Tol::Fixed(_) => None,
        };
        base.unwrap_or_else(|| spec.tol.value(kind)) * self.tolerance_scale
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// The JSON report: schema tag, conventions hash, counts and one record per (check, fixture, seed).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub conventions_hash: String,
    pub summary: Summary,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed > 0 {
            EXIT_FAIL
        } else {
            0
        }
    }

    /// Structural checks a consumer can rely on.
    pub fn validate(&self) -> Result<(), String> {
        if self.schema != SCHEMA_VERSION {
            return Err(format!("schema `{}` is not `{SCHEMA_VERSION}`", self.schema));
        }
        for r in &self.results {
            let within = r.residual_sup.is_some_and(|s| s <= r.tolerance);
            match r.status {
                Status::Pass if !within => return Err(format!("{} on {} passes above tolerance", r.check_id, r.fixture)),
                Status::Skipped if r.reason.as_deref().is_none_or(str::is_empty) => {
                    return Err(format!("{} on {} is skipped without a reason", r.check_id, r.fixture))
                }
                _ => {}
            }
            if r.conventions_hash != self.conventions_hash {
                return Err(format!("{} carries a foreign conventions hash", r.check_id));
            }
        }
        Ok(())
    }
}

/// Runs every selected check on every applicable fixture and seed.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let fixtures = cfg
        .fixtures
        .iter()
        .map(|k| Fixture::builtin(*k).map_err(|e| CliError::Config(format!("fixture {k}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let mut tasks = Vec::new();
    for spec in cfg.selected() {
        for fx in &fixtures {
            if spec.applies_to(fx.kind) {
                for &seed in &cfg.seeds {
                    tasks.push((spec, fx, seed));
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Config(format!("field `jobs`: {e}")))?;
    let results: Vec<CheckResult> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(spec, fx, seed)| check::run_check_at(spec, fx, *seed, cfg.fd, cfg.tolerance(spec, fx.kind)))
            .collect()
    });
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    let summary = Summary {
        total: results.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
    };
    Ok(Report { schema: SCHEMA_VERSION.into(), conventions_hash: check::conventions_hash(), summary, results })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| format!("{x:e}"))
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

/// One row per result.
pub fn summary_csv(report: &Report) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "check_id",
        "fixture",
        "seed",
        "status",
        "residual_sup",
        "residual_l2",
        "tolerance",
        "convergence_order",
        "nominal_order",
        "runtime_ms",
        "reason",
    ])?;
    for r in &report.results {
        w.write_record([
            r.check_id.clone(),
            r.fixture.to_string(),
            r.seed.to_string(),
            status_name(r.status).into(),
            fmt_opt(r.residual_sup),
            fmt_opt(r.residual_l2),
            format!("{:e}", r.tolerance),
            fmt_opt(r.convergence_order),
            fmt_opt(r.nominal_order),
            r.runtime_ms.to_string(),
            r.reason.clone().unwrap_or_default(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is UTF-8"))
}

/// FD convergence table of the derivative checks.
pub fn convergence_csv(report: &Report) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["check_id", "fixture", "seed", "fd_step", "observed_order", "nominal_order", "richardson_correction", "residual_sup"])?;
    for r in report.results.iter().filter(|r| r.nominal_order.is_some()) {
        w.write_record([
            r.check_id.clone(),
            r.fixture.to_string(),
            r.seed.to_string(),
            fmt_opt(r.notes.get("fd_step").copied()),
            fmt_opt(r.convergence_order),
            fmt_opt(r.nominal_order),
            fmt_opt(r.notes.get("richardson_correction").copied()),
            fmt_opt(r.residual_sup),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is UTF-8"))
}

/// Human-readable table.
pub fn table(report: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<16} {:<6} {:>4}  {:<7} {:>10} {:>8} {:>6} {:>8}  reason",
        "check", "fixture", "seed", "status", "residual", "tol", "order", "ms"
    );
    for r in &report.results {
        let _ = writeln!(
            s,
            "{:<16} {:<6} {:>4}  {:<7} {:>10} {:>8.0e} {:>6} {:>8}  {}",
            r.check_id,
            r.fixture.to_string(),
            r.seed,
            status_name(r.status),
            r.residual_sup.map_or_else(|| "-".into(), |x| format!("{x:.2e}")),
            r.tolerance,
            r.convergence_order.map_or_else(|| "-".into(), |x| format!("{x:.2}")),
            r.runtime_ms,
            r.reason.as_deref().unwrap_or("")
        );
    }
    let m = &report.summary;
    let _ = writeln!(s, "\n{} checks: {} passed, {} failed, {} skipped", m.total, m.passed, m.failed, m.skipped);
    s
}

/// Writes `report.json`, `summary.csv`, `convergence.csv` and `table.txt` into `dir`.
pub fn write_reports(report: &Report, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let csv_err = |p: &Path, e: csv::Error| CliError::io(p, std::io::Error::other(e.to_string()));
    let mut files = Vec::new();
    let json = serde_json::to_string_pretty(report).expect("report serializes");
    let items = [
        ("report.json", Ok(json + "\n")),
        ("summary.csv", summary_csv(report)),
        ("convergence.csv", convergence_csv(report)),
        ("table.txt", Ok(table(report))),
    ];
    for (name, body) in items {
        let path = dir.join(name);
        let body = body.map_err(|e| csv_err(&path, e))?;
        fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
        files.push(path);
    }
    Ok(files)
}

/// Metadata of one check: statement, anchor, fixtures, tolerance class and the conventions.
pub fn explain(id: &str) -> Result<String, CliError> {
    let spec = check::find(id).map_err(|_| CliError::NotFound(id.to_string()))?;
    let mut s = String::new();
    let _ = writeln!(s, "{}  ({} suite)", spec.id, spec.suite.name());
    let _ = writeln!(s, "statement: {}", spec.statement);
    let _ = writeln!(s, "anchor:    {}", spec.anchor);
    let fixtures: Vec<String> = spec.fixtures.iter().map(|k| k.to_string()).collect();
    let _ = writeln!(s, "fixtures:  {}", fixtures.join(", "));
    let tols: Vec<String> = spec.fixtures.iter().map(|k| format!("{k} {:.0e}", spec.tol.value(*k))).collect();
    let _ = writeln!(s, "tolerance: {} ({})", spec.tol.class(), tols.join(", "));
    let _ = writeln!(s, "conventions (sha256 {}):", check::conventions_hash());
    let conv: serde_json::Map<String, serde_json::Value> =
        serde_json::from_str(CONVENTIONS).expect("conventions manifest is a JSON object");
    for (k, v) in conv {
        let v = v.as_str().map_or_else(|| v.to_string(), str::to_string);
        let _ = writeln!(s, "  {k}: {v}");
    }
    Ok(s)
}

/// One line per registered check.
pub fn list(suites: &[SuiteSel]) -> String {
    let mut s = String::new();
    for c in check::registry().into_iter().filter(|c| suites.iter().any(|x| x.covers(c.suite))) {
        let fixtures: Vec<String> = c.fixtures.iter().map(|k| k.to_string()).collect();
        let _ = writeln!(s, "{:<16} {:<12} {}", c.id, c.suite.name(), fixtures.join(","));
    }
    s
}
