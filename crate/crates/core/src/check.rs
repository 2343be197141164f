//! Check records, residual accumulation and the check registry.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::backends::{BackendError, Fixture, FixtureKind};
use crate::tensor::Tensor;
use crate::tensorcalc::{Geo, GeomError};
use crate::variation::fd::{FdError, FdOptions};
use crate::Jet;

/// Version tag written into every report.
pub const SCHEMA_VERSION: &str = "kahlerlab-report/1";

/// The conventions manifest shipped with the crate.
pub const CONVENTIONS: &str = include_str!("../conventions.json");

/// Hex SHA-256 of the conventions manifest.
pub fn conventions_hash() -> String {
    use sha2::{Digest, Sha256};
    let d = Sha256::digest(CONVENTIONS.as_bytes());
    d.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error(transparent)]
    Fd(#[from] FdError),
    #[error(transparent)]
    Jet(#[from] crate::jet::JetError),
    #[error("bad-input: {0}")]
    BadInput(String),
    #[error("degenerate-basis: Gram condition number {0:.3e}")]
    DegenerateBasis(f64),
    #[error("flow-diverged: {0}")]
    FlowDiverged(String),
    #[error("fixture {fixture} is outside the declared class of {id}")]
    FixtureMismatch { id: String, fixture: FixtureKind },
    #[error("unknown check id `{0}`")]
    NotFound(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identity,
    Variation,
    Soliton,
    Obstruction,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Identity, Suite::Variation, Suite::Soliton, Suite::Obstruction];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identity => "identity",
            Suite::Variation => "variation",
            Suite::Soliton => "soliton",
            Suite::Obstruction => "obstruction",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub fixture: FixtureKind,
    pub seed: u64,
    pub residual_sup: Option<f64>,
    pub residual_l2: Option<f64>,
    pub tolerance: f64,
    pub convergence_order: Option<f64>,
    pub nominal_order: Option<f64>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, f64>,
    pub runtime_ms: u64,
    pub conventions_hash: String,
}

/// Tolerance class of a check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tol {
    /// 1e-12 on FLAT2, 1e-8 elsewhere.
    Identity,
    /// Extrapolated first t-derivatives.
    First,
    /// Extrapolated second t-derivatives.
    Second,
    Fixed(f64),
}

impl Tol {
    /// Name of the tolerance class, as used in run configurations.
    pub fn class(self) -> &'static str {
        match self {
            Tol::Identity => "identity",
            Tol::First => "first",
            Tol::Second => "second",
            Tol::Fixed(_) => "fixed",
        }
    }

    pub fn value(self, fixture: FixtureKind) -> f64 {
        match self {
            Tol::Identity if fixture == FixtureKind::Flat2 => 1e-12,
            Tol::Identity => 1e-8,
            Tol::First => 1e-6,
            Tol::Second => 1e-5,
            Tol::Fixed(t) => t,
        }
    }
}

/// Sup and RMS of pointwise residual norms.
#[derive(Debug, Clone, Default)]
pub struct Residual {
    sup: f64,
    sumsq: f64,
    n: usize,
    nonfinite: bool,
}

impl Residual {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: f64) {
        if !r.is_finite() {
            self.nonfinite = true;
            return;
        }
        let r = r.abs();
        self.sup = self.sup.max(r);
        self.sumsq += r * r;
        self.n += 1;
    }

    /// Pointwise g-norm of the value of `t`.
    pub fn push_tensor(&mut self, geo: &Geo, t: &Tensor) {
        if !t.is_finite() {
            self.nonfinite = true;
            return;
        }
        self.push(geo.norm_value(t));
    }

    pub fn push_jet(&mut self, j: &Jet) {
        self.push(j.value());
    }

    pub fn merge(&mut self, o: &Residual) {
        self.sup = self.sup.max(o.sup);
        self.sumsq += o.sumsq;
        self.n += o.n;
        self.nonfinite |= o.nonfinite;
    }

    pub fn sup(&self) -> f64 {
        if self.nonfinite {
            f64::NAN
        } else {
            self.sup
        }
    }

    pub fn l2(&self) -> f64 {
        if self.nonfinite || self.n == 0 {
            f64::NAN
        } else {
            (self.sumsq / self.n as f64).sqrt()
        }
    }

    pub fn outcome(&self) -> Outcome {
        Outcome { sup: self.sup(), l2: self.l2(), ..Outcome::default() }
    }
}

/// Measured result of a check body.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub sup: f64,
    pub l2: f64,
    pub order: Option<f64>,
    pub nominal: Option<f64>,
    pub notes: BTreeMap<String, f64>,
}

impl Outcome {
    pub fn with_order(mut self, order: Option<f64>, nominal: f64) -> Self {
        self.order = order;
        self.nominal = Some(nominal);
        self
    }

    pub fn note(mut self, key: &str, v: f64) -> Self {
        self.notes.insert(key.to_string(), v);
        self
    }
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Measured(Outcome),
    Skipped(String),
}

/// Everything a check body may use.
pub struct Ctx<'a> {
    pub fx: &'a Fixture,
    pub seed: u64,
    pub fd: FdOptions,
}

pub type CheckFn = fn(&Ctx) -> Result<Verdict, CheckError>;

/// One registered check.
pub struct CheckSpec {
    pub id: &'static str,
    pub suite: Suite,
    pub fixtures: &'static [FixtureKind],
    /// Statement being verified.
    pub statement: &'static str,
    /// Name of the source identity the check realizes.
    pub anchor: &'static str,
    pub tol: Tol,
    pub run: CheckFn,
}

impl CheckSpec {
    pub fn applies_to(&self, k: FixtureKind) -> bool {
        self.fixtures.contains(&k)
    }
}

pub const ALL_FIXTURES: &[FixtureKind] =
    &[FixtureKind::Flat2, FixtureKind::Pert2, FixtureKind::Riem4, FixtureKind::Kah4, FixtureKind::Fs];
pub const KAHLER: &[FixtureKind] = &[FixtureKind::Flat2, FixtureKind::Pert2, FixtureKind::Kah4, FixtureKind::Fs];
pub const FS_ONLY: &[FixtureKind] = &[FixtureKind::Fs];

/// Every check, in stable ID order within each suite.
pub fn registry() -> Vec<&'static CheckSpec> {
    let mut v: Vec<&'static CheckSpec> = Vec::new();
    v.extend(crate::identities::CHECKS.iter());
    v.extend(crate::variation::catalog::CHECKS.iter());
    v.extend(crate::soliton::CHECKS.iter());
    v
}

pub fn find(id: &str) -> Result<&'static CheckSpec, CheckError> {
    registry().into_iter().find(|c| c.id == id).ok_or_else(|| CheckError::NotFound(id.to_string()))
}

/// Runs one check and folds its outcome into a record. Errors and panics become failures.
pub fn run_check(spec: &CheckSpec, fx: &Fixture, seed: u64, fd: FdOptions, tol_scale: f64) -> CheckResult {
    run_check_at(spec, fx, seed, fd, spec.tol.value(fx.kind) * tol_scale)
}

/// [`run_check`] against an explicit tolerance.
pub fn run_check_at(spec: &CheckSpec, fx: &Fixture, seed: u64, fd: FdOptions, tolerance: f64) -> CheckResult {
    let mut rec = CheckResult {
        check_id: spec.id.to_string(),
        fixture: fx.kind,
        seed,
        residual_sup: None,
        residual_l2: None,
        tolerance,
        convergence_order: None,
        nominal_order: None,
        status: Status::Fail,
        reason: None,
        notes: BTreeMap::new(),
        runtime_ms: 0,
        conventions_hash: conventions_hash(),
    };
    if !spec.applies_to(fx.kind) {
        rec.reason = Some(CheckError::FixtureMismatch { id: spec.id.into(), fixture: fx.kind }.to_string());
        return rec;
    }
    let ctx = Ctx { fx, seed, fd };
    let t0 = Instant::now();
    let out = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (spec.run)(&ctx)));
    rec.runtime_ms = t0.elapsed().as_millis() as u64;
    match out {
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            rec.reason = Some(format!("internal error: {msg}"));
        }
        Ok(Err(e)) => rec.reason = Some(e.to_string()),
        Ok(Ok(Verdict::Skipped(why))) => {
            rec.status = Status::Skipped;
            rec.reason = Some(why);
        }
        Ok(Ok(Verdict::Measured(o))) => {
            rec.residual_sup = o.sup.is_finite().then_some(o.sup);
            rec.residual_l2 = o.l2.is_finite().then_some(o.l2);
            rec.convergence_order = o.order;
            rec.nominal_order = o.nominal;
            rec.notes = o.notes;
            let within = o.sup.is_finite() && o.sup <= tolerance;
            let order_ok = match (o.order, o.nominal) {
                (Some(q), Some(p)) => (q - p).abs() <= 0.5,
                _ => true,
            };
            if !o.sup.is_finite() {
                rec.reason = Some("non-finite residual".into());
            } else if !within {
                rec.reason = Some(format!("residual {:.3e} exceeds tolerance {:.1e}", o.sup, tolerance));
            } else if !order_ok {
                rec.reason = Some(format!(
                    "observed FD order {:.2} is not within 0.5 of {}",
                    o.order.unwrap_or(f64::NAN),
                    o.nominal.unwrap_or(f64::NAN)
                ));
            }
            rec.status = if within && order_ok { Status::Pass } else { Status::Fail };
        }
    }
    rec
}
