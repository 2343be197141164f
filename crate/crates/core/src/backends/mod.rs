//! Compact fixtures: flat and perturbed tori, and CP¹ with the Fubini-Study metric.

pub mod fields;
pub mod quadrature;
pub mod random;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jet::JetPoint;
use crate::tensor::{Down, Tensor, Up};
use crate::tensorcalc::{Geo, GeomError};
use crate::Jet;
use fields::TrigPoly;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BackendError {
    #[error("degenerate-metric: {0}")]
    DegenerateMetric(String),
    #[error("bad-volume: total Ω-measure {0} differs from 1")]
    BadVolume(f64),
    #[error("nan-in-field: non-finite value at node {0}")]
    NanInField(usize),
    #[error("no-overlap: point {0:?} is not in the chart overlap")]
    NoOverlap(Vec<f64>),
    #[error("bad descriptor: {0}")]
    BadDescriptor(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FixtureKind {
    #[serde(rename = "FLAT2")]
    Flat2,
    #[serde(rename = "PERT2")]
    Pert2,
    #[serde(rename = "RIEM4")]
    Riem4,
    #[serde(rename = "KAH4")]
    Kah4,
    #[serde(rename = "FS")]
    Fs,
}

impl FixtureKind {
    pub const ALL: [FixtureKind; 5] =
        [FixtureKind::Flat2, FixtureKind::Pert2, FixtureKind::Riem4, FixtureKind::Kah4, FixtureKind::Fs];

    pub fn name(self) -> &'static str {
        match self {
            FixtureKind::Flat2 => "FLAT2",
            FixtureKind::Pert2 => "PERT2",
            FixtureKind::Riem4 => "RIEM4",
            FixtureKind::Kah4 => "KAH4",
            FixtureKind::Fs => "FS",
        }
    }

    pub fn is_kahler(self) -> bool {
        self != FixtureKind::Riem4
    }

    pub fn is_soliton(self) -> bool {
        self == FixtureKind::Fs
    }

    fn default_epsilon(self) -> f64 {
        match self {
            FixtureKind::Flat2 | FixtureKind::Fs => 0.0,
            FixtureKind::Pert2 => 0.01,
            FixtureKind::Riem4 => 0.05,
            FixtureKind::Kah4 => 0.0005,
        }
    }

    fn default_grid(self) -> Vec<usize> {
        match self {
            FixtureKind::Flat2 => vec![16, 16],
            FixtureKind::Pert2 => vec![32, 32],
            FixtureKind::Riem4 | FixtureKind::Kah4 => vec![10, 10, 10, 10],
            FixtureKind::Fs => vec![24, 48],
        }
    }
}

impl fmt::Display for FixtureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FixtureKind {
    type Err = BackendError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FixtureKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| BackendError::BadDescriptor(format!("unknown fixture kind `{s}`")))
    }
}

/// JSON-readable fixture description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureDescriptor {
    pub kind: FixtureKind,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub grid: Option<Vec<usize>>,
}

impl FixtureDescriptor {
    pub fn new(kind: FixtureKind) -> Self {
        Self { kind, seed: 0, epsilon: None, grid: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendKind {
    Torus2,
    Torus4,
    Cp1,
}

#[derive(Debug, Clone)]
pub struct Backend {
    pub kind: BackendKind,
    pub real_dim: usize,
    pub complex_dim: usize,
    pub is_fano: bool,
    pub nodes: Vec<JetPoint>,
    /// Coordinate (Lebesgue) measure of each node's cell in its chart.
    pub coord_weights: Vec<f64>,
}

#[derive(Debug, Clone)]
enum Metric {
    Flat,
    /// Kähler potential on T^{2n}: second derivatives of φ in real coordinates.
    Potential { phi2: Vec<TrigPoly> },
    Trig { p: Vec<TrigPoly> },
    FubiniStudy,
}

#[derive(Debug, Clone)]
enum Density {
    Lebesgue,
    ExpTrig { q: TrigPoly, z: f64 },
    FsArea,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tag {
    Riemannian,
    Kahler,
    FanoSoliton,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub desc: FixtureDescriptor,
    pub kind: FixtureKind,
    pub backend: Backend,
    pub tags: Vec<Tag>,
    metric: Metric,
    density: Density,
    omega_weights: Vec<f64>,
}

pub fn make_fixture(desc: &FixtureDescriptor) -> Result<Fixture, BackendError> {
    Fixture::new(desc.clone())
}

impl Fixture {
    pub fn builtin(kind: FixtureKind) -> Result<Fixture, BackendError> {
        Fixture::new(FixtureDescriptor::new(kind))
    }

    pub fn new(desc: FixtureDescriptor) -> Result<Fixture, BackendError> {
        let kind = desc.kind;
        let eps = desc.epsilon.unwrap_or(kind.default_epsilon());
        let grid = desc.grid.clone().unwrap_or(kind.default_grid());
        let mut rng = ChaCha8Rng::seed_from_u64(desc.seed ^ 0x6b61_686c_6572);
        let (dim, bkind) = match kind {
            FixtureKind::Flat2 | FixtureKind::Pert2 => (2, BackendKind::Torus2),
            FixtureKind::Riem4 | FixtureKind::Kah4 => (4, BackendKind::Torus4),
            FixtureKind::Fs => (2, BackendKind::Cp1),
        };
        if bkind != BackendKind::Cp1 && grid.len() != dim || bkind == BackendKind::Cp1 && grid.len() != 2 {
            return Err(BackendError::BadDescriptor(format!("grid {grid:?} does not fit {kind}")));
        }
        if grid.iter().any(|&n| n < 2) {
            return Err(BackendError::BadDescriptor("grid sizes must be at least 2".into()));
        }
        let (metric, density) = match kind {
            FixtureKind::Flat2 => (Metric::Flat, Density::Lebesgue),
            FixtureKind::Pert2 => {
                // φ = ε sin(2πx) cos(2πy) = ½ε[sin 2π(x+y) + sin 2π(x−y)]
                let phi = TrigPoly::sin(2, eps / 2.0, vec![1, 1]).plus(&TrigPoly::sin(2, eps / 2.0, vec![1, -1]));
                let q = TrigPoly::sin(2, 1.0, vec![0, 1]);
                (potential_metric(&phi), Density::ExpTrig { z: normalizer(&q, &grid), q })
            }
            FixtureKind::Riem4 => {
                let mut p = Vec::new();
                for a in 0..4 {
                    for b in 0..4 {
                        p.push(if b >= a { TrigPoly::random(&mut rng, 4, 2, 1, eps) } else { TrigPoly::zero(4) });
                    }
                }
                for a in 0..4 {
                    for b in 0..a {
                        p[a * 4 + b] = p[b * 4 + a].clone();
                    }
                }
                let q = TrigPoly::random(&mut rng, 4, 2, 1, 0.2);
                (Metric::Trig { p }, Density::ExpTrig { z: normalizer(&q, &grid), q })
            }
            FixtureKind::Kah4 => {
                let phi = TrigPoly::random(&mut rng, 4, 3, 1, eps);
                let q = TrigPoly::random(&mut rng, 4, 2, 1, 0.2);
                (potential_metric(&phi), Density::ExpTrig { z: normalizer(&q, &grid), q })
            }
            FixtureKind::Fs => (Metric::FubiniStudy, Density::FsArea),
        };
        let backend = match bkind {
            BackendKind::Cp1 => {
                let mut nodes = Vec::new();
                let mut w = Vec::new();
                for (p, area) in quadrature::sphere_grid(grid[0], grid[1]) {
                    let pt = sphere_to_chart(p);
                    let lam = fs_conformal_factor(&pt.coords);
                    nodes.push(pt);
                    w.push(area / lam);
                }
                Backend { kind: bkind, real_dim: 2, complex_dim: 1, is_fano: true, nodes, coord_weights: w }
            }
            _ => {
                let (pts, w) = quadrature::torus_grid(&grid);
                Backend {
                    kind: bkind,
                    real_dim: dim,
                    complex_dim: dim / 2,
                    is_fano: false,
                    nodes: pts.into_iter().map(|c| JetPoint::new(0, c)).collect(),
                    coord_weights: w,
                }
            }
        };
        let mut tags = vec![Tag::Riemannian];
        if kind.is_kahler() {
            tags.push(Tag::Kahler);
        }
        if kind.is_soliton() {
            tags.push(Tag::FanoSoliton);
        }
        let mut fx = Fixture { desc, kind, backend, tags, metric, density, omega_weights: vec![] };
        let mut weights = Vec::with_capacity(fx.backend.nodes.len());
        for (i, p) in fx.backend.nodes.iter().enumerate() {
            let x = p.lift(0).expect("order-0 lift");
            let g = fx.metric(p.chart, &x);
            let vals = g.values();
            if !cholesky_ok(dim, &vals) {
                return Err(BackendError::DegenerateMetric(format!("metric not SPD at node {i} ({:?})", p.coords)));
            }
            let rho = fx.density(p.chart, &x).value();
            if !(rho > 0.0) || !rho.is_finite() {
                return Err(BackendError::BadVolume(rho));
            }
            weights.push(rho * fx.backend.coord_weights[i]);
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(BackendError::BadVolume(total));
        }
        fx.omega_weights = weights;
        Ok(fx)
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn dim(&self) -> usize {
        self.backend.real_dim
    }

    pub fn has_tag(&self, t: Tag) -> bool {
        self.tags.contains(&t)
    }

    pub fn is_kahler(&self) -> bool {
        self.has_tag(Tag::Kahler)
    }

    pub fn is_soliton(&self) -> bool {
        self.has_tag(Tag::FanoSoliton)
    }

    /// Metric components at chart jets.
    pub fn metric(&self, chart: usize, x: &[Jet]) -> Tensor {
        let n = x.len();
        let one = x[0].constant_like(1.0);
        match &self.metric {
            Metric::Flat => Tensor::from_fn(n, &[Down, Down], |i| if i[0] == i[1] { one.clone() } else { one.zero_like() }),
            Metric::Potential { phi2 } => {
                let h: Vec<Jet> = phi2.iter().map(|p| p.eval_jet(x)).collect();
                kahler_potential_metric(n, &h, &one)
            }
            Metric::Trig { p } => Tensor::from_fn(n, &[Down, Down], |i| {
                let v = p[i[0] * n + i[1]].eval_jet(x);
                if i[0] == i[1] {
                    v + 1.0
                } else {
                    v
                }
            }),
            Metric::FubiniStudy => {
                let _ = chart;
                let lam = fs_lambda(x);
                Tensor::from_fn(2, &[Down, Down], |i| if i[0] == i[1] { lam.clone() } else { lam.zero_like() })
            }
        }
    }

    /// Coordinate density of Ω at chart jets.
    pub fn density(&self, _chart: usize, x: &[Jet]) -> Jet {
        match &self.density {
            Density::Lebesgue => x[0].constant_like(1.0),
            Density::ExpTrig { q, z } => q.eval_jet(x).exp() * (1.0 / z),
            Density::FsArea => fs_lambda(x) * (1.0 / (4.0 * PI)),
        }
    }

    /// The constant complex structure J^a_b of the chart (J∂_{x_k} = ∂_{y_k}).
    pub fn complex_structure(&self, like: &Jet) -> Option<Tensor> {
        if !self.is_kahler() {
            return None;
        }
        Some(standard_j(self.dim(), like))
    }

    pub fn geo_at(&self, chart: usize, x: &[Jet]) -> Result<Geo, GeomError> {
        let g = self.metric(chart, x);
        let rho = self.density(chart, x);
        let j = self.complex_structure(&x[0]);
        Geo::new(g, rho, j)
    }

    pub fn geo(&self, p: &JetPoint, order: usize) -> Result<Geo, GeomError> {
        let x = p.lift(order).map_err(|e| GeomError::BadValence(e.to_string()))?;
        self.geo_at(p.chart, &x)
    }

    /// Ω-weights of the quadrature nodes.
    pub fn omega_weights(&self) -> &[f64] {
        &self.omega_weights
    }

    pub fn nodes(&self) -> &[JetPoint] {
        &self.backend.nodes
    }

    /// `Σ_i w_i f(x_i)` over the quadrature nodes.
    pub fn integrate(&self, values: &[f64]) -> Result<f64, BackendError> {
        let mut acc = 0.0;
        for (i, (v, w)) in values.iter().zip(&self.omega_weights).enumerate() {
            if !v.is_finite() {
                return Err(BackendError::NanInField(i));
            }
            acc += v * w;
        }
        Ok(acc)
    }

    /// Evaluates `f` at every node in parallel and integrates against Ω.
    pub fn integrate_fn<F>(&self, f: F) -> Result<f64, BackendError>
    where
        F: Fn(&JetPoint) -> f64 + Sync,
    {
        let vals: Vec<f64> = self.backend.nodes.par_iter().map(&f).collect();
        self.integrate(&vals)
    }

    /// Evaluates a vector-valued integrand at all nodes, in node order.
    pub fn node_values<T: Send, F>(&self, f: F) -> Vec<T>
    where
        F: Fn(&JetPoint) -> T + Sync,
    {
        self.backend.nodes.par_iter().map(&f).collect()
    }

    /// Seeded random evaluation points, with a margin from chart boundaries on CP¹.
    pub fn sample_points(&self, n: usize, seed: u64) -> Vec<JetPoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a4d_504c_4553);
        (0..n)
            .map(|_| match self.backend.kind {
                BackendKind::Cp1 => {
                    let v: [f64; 3] = loop {
                        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
                        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                        if r > 0.1 && r < 1.0 {
                            break [v[0] / r, v[1] / r, v[2] / r];
                        }
                    };
                    sphere_to_chart(v)
                }
                _ => JetPoint::new(0, (0..self.dim()).map(|_| rng.gen::<f64>()).collect()),
            })
            .collect()
    }

    /// Number of members of the holomorphic vector-field basis.
    pub fn holomorphic_count(&self) -> usize {
        match self.backend.kind {
            BackendKind::Cp1 => 3,
            _ => self.dim(),
        }
    }

    /// Real holomorphic vector field `2 Re(a ∂_z)`: on CP¹ the generators ∂_z, z∂_z, z²∂_z,
    /// on tori the constant coordinate fields.
    pub fn holomorphic_field(&self, i: usize, chart: usize, x: &[Jet]) -> Tensor {
        match self.backend.kind {
            BackendKind::Cp1 => {
                let (a, b) = (&x[0], &x[1]);
                let one = a.constant_like(1.0);
                let (re, im) = match (chart, i) {
                    (0, 0) => (one, a.zero_like()),
                    (0, 1) => (a.clone(), b.clone()),
                    (0, _) => (a * a - b * b, a * b * 2.0),
                    (_, 0) => (-(a * a - b * b), -(a * b * 2.0)),
                    (_, 1) => (-a, -b),
                    _ => (-one, a.zero_like()),
                };
                Tensor::vector(vec![re, im])
            }
            _ => Tensor::vector((0..self.dim()).map(|k| x[0].constant_like(if k == i { 1.0 } else { 0.0 })).collect()),
        }
    }
}

impl Fixture {
    /// Closed form of the Λ-basis function `u_i = −½(div^Ω ξ_i + i div^Ω Jξ_i)` as `(Re, Im)`,
    /// where one is known: on CP¹, `(X + iY, Z, −X + iY)` for `a ∈ {1, z, z²}`.
    pub fn lambda_closed_form(&self, i: usize, chart: usize, x: &[Jet]) -> Option<(Jet, Jet)> {
        if self.backend.kind != BackendKind::Cp1 {
            return None;
        }
        let ([xx, yy, zz], _) = fields::sphere_embedding(chart, x);
        Some(match i {
            0 => (xx, yy),
            1 => (zz.clone(), zz.zero_like()),
            _ => (-xx, yy),
        })
    }
}

fn cholesky_ok(n: usize, a: &[f64]) -> bool {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(s > 0.0) {
                    return false;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    true
}

/// Normalizes e^q against the fixture's own grid so that the discrete Ω-measure is exactly 1.
fn normalizer(q: &TrigPoly, grid: &[usize]) -> f64 {
    let (pts, w) = quadrature::torus_grid(grid);
    pts.iter().zip(&w).map(|(p, w)| w * q.eval_f64(p).exp()).sum()
}

fn potential_metric(phi: &TrigPoly) -> Metric {
    let n = phi.dim;
    let mut phi2 = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            phi2.push(phi.deriv(a).deriv(b));
        }
    }
    Metric::Potential { phi2 }
}

/// Real metric of the Hermitian form `H = I + 2∂∂̄φ` in coordinates (x_1, y_1, x_2, y_2, …).
fn kahler_potential_metric(n: usize, h: &[Jet], one: &Jet) -> Tensor {
    let m = n / 2;
    // φ_{j k̄} = ¼[φ_{x_j x_k} + φ_{y_j y_k} + i(φ_{x_j y_k} − φ_{y_j x_k})]
    let d2 = |a: usize, b: usize| &h[a * n + b];
    let mut re = vec![one.zero_like(); m * m];
    let mut im = vec![one.zero_like(); m * m];
    for j in 0..m {
        for k in 0..m {
            let (xj, yj, xk, yk) = (2 * j, 2 * j + 1, 2 * k, 2 * k + 1);
            re[j * m + k] = (d2(xj, xk) + d2(yj, yk)) * 0.5 + if j == k { 1.0 } else { 0.0 };
            im[j * m + k] = (d2(xj, yk) - d2(yj, xk)) * 0.5;
        }
    }
    Tensor::from_fn(n, &[Down, Down], |i| {
        let (a, b) = (i[0], i[1]);
        let (j, k) = (a / 2, b / 2);
        match (a % 2, b % 2) {
            (0, 0) | (1, 1) => re[j * m + k].clone(),
            (0, 1) => im[j * m + k].clone(),
            _ => -&im[j * m + k],
        }
    })
}

/// Standard complex structure on R^{2n} with J∂_{x_k} = ∂_{y_k}.
pub fn standard_j(n: usize, like: &Jet) -> Tensor {
    Tensor::from_fn(n, &[Up, Down], |i| {
        let (a, b) = (i[0], i[1]);
        let v = if a / 2 == b / 2 && a % 2 == 1 && b % 2 == 0 {
            1.0
        } else if a / 2 == b / 2 && a % 2 == 0 && b % 2 == 1 {
            -1.0
        } else {
            0.0
        };
        like.constant_like(v)
    })
}

/// λ = 4/(1 + |z|²)², the conformal factor of the unit-curvature Fubini-Study metric.
fn fs_lambda(x: &[Jet]) -> Jet {
    let s = &x[0] * &x[0] + &x[1] * &x[1] + 1.0;
    (&s * &s).recip() * 4.0
}

fn fs_conformal_factor(c: &[f64]) -> f64 {
    let s = 1.0 + c[0] * c[0] + c[1] * c[1];
    4.0 / (s * s)
}

/// Chart point of a unit-sphere point: chart 0 on the closed southern hemisphere.
pub fn sphere_to_chart(p: [f64; 3]) -> JetPoint {
    if p[2] <= 0.0 {
        JetPoint::new(0, vec![p[0] / (1.0 - p[2]), p[1] / (1.0 - p[2])])
    } else {
        JetPoint::new(1, vec![p[0] / (1.0 + p[2]), -p[1] / (1.0 + p[2])])
    }
}

/// Unit-sphere point of a chart point.
pub fn chart_to_sphere(p: &JetPoint) -> [f64; 3] {
    let (a, b) = (p.coords[0], p.coords[1]);
    let s = 1.0 + a * a + b * b;
    if p.chart == 0 {
        [2.0 * a / s, 2.0 * b / s, 1.0 - 2.0 / s]
    } else {
        [2.0 * a / s, -2.0 * b / s, 2.0 / s - 1.0]
    }
}

/// Transforms tensor components at `point` (given in `from`) into chart `to` on CP¹.
/// Up slots transform with the Jacobian of w = 1/z, Down slots with its inverse transpose.
pub fn chart_transition(t: &[f64], slots: &[crate::tensor::Slot], from: usize, to: usize, point: &[f64]) -> Result<(Vec<f64>, Vec<f64>), BackendError> {
    let (a, b) = (point[0], point[1]);
    let r2 = a * a + b * b;
    if !(0.01..=100.0).contains(&r2) {
        return Err(BackendError::NoOverlap(point.to_vec()));
    }
    let image = vec![a / r2, -b / r2];
    if from == to {
        return Ok((t.to_vec(), point.to_vec()));
    }
    // the map (a, b) ↦ (a, −b)/r² is its own inverse, so both directions share a formula
    let r4 = r2 * r2;
    let jac = [(b * b - a * a) / r4, -2.0 * a * b / r4, 2.0 * a * b / r4, (b * b - a * a) / r4];
    let det = jac[0] * jac[3] - jac[1] * jac[2];
    let inv = [jac[3] / det, -jac[1] / det, -jac[2] / det, jac[0] / det];
    let rank = slots.len();
    let n = 2usize;
    let total = n.pow(rank as u32);
    let mut out = t.to_vec();
    for s in 0..rank {
        let mut next = vec![0.0; total];
        for lin in 0..total {
            let mut idx = vec![0; rank];
            let mut l = lin;
            for k in (0..rank).rev() {
                idx[k] = l % n;
                l /= n;
            }
            let mut acc = 0.0;
            for m in 0..n {
                let mut src = idx.clone();
                src[s] = m;
                let ls = src.iter().fold(0, |acc, &i| acc * n + i);
                let coef = match slots[s] {
                    Up => jac[idx[s] * 2 + m],
                    Down => inv[m * 2 + idx[s]],
                };
                acc += coef * out[ls];
            }
            next[lin] = acc;
        }
        out = next;
    }
    Ok((out, image))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat2_is_flat_and_unweighted() {
        let fx = Fixture::builtin(FixtureKind::Flat2).unwrap();
        let geo = fx.geo(&JetPoint::new(0, vec![0.3, 0.6]), 3).unwrap();
        assert_eq!(geo.f.value(), 0.0);
        assert_eq!(geo.gamma.max_abs(), 0.0);
        let total: f64 = fx.omega_weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn integrals_on_flat_torus() {
        let fx = Fixture::builtin(FixtureKind::Flat2).unwrap();
        let odd = fx.integrate_fn(|p| (2.0 * PI * p.coords[0]).sin()).unwrap();
        assert!(odd.abs() < 1e-12);
        let dirichlet = fx
            .integrate_fn(|p| {
                let x = p.lift(1).unwrap();
                let geo = fx.geo_at(0, &x).unwrap();
                let u = (&x[0] * (2.0 * PI)).sin();
                geo.norm2(&geo.d_scalar(&u)).value()
            })
            .unwrap();
        assert!((dirichlet - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn fubini_study_data() {
        let fx = Fixture::builtin(FixtureKind::Fs).unwrap();
        let total: f64 = fx.omega_weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        for p in fx.sample_points(20, 1) {
            let geo = fx.geo(&p, 3).unwrap();
            assert!((geo.f.value() - (4.0 * PI).ln()).abs() < 1e-13);
            let ric = geo.ricci().unwrap();
            assert!(ric.sub(&geo.g.truncate(1)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn chart_transition_examples() {
        let (v, w) = chart_transition(&[1.0, 0.0], &[Up], 0, 1, &[1.0, 0.0]).unwrap();
        assert_eq!(w, vec![1.0, 0.0]);
        assert!((v[0] + 1.0).abs() < 1e-15 && v[1].abs() < 1e-15);
        let p = [0.7, -0.4];
        let g0 = fs_conformal_factor(&p);
        let (g1, img) = chart_transition(&[g0, 0.0, 0.0, g0], &[Down, Down], 0, 1, &p).unwrap();
        let lam1 = fs_conformal_factor(&img);
        assert!((g1[0] - lam1).abs() < 1e-11 && g1[1].abs() < 1e-11 && (g1[3] - lam1).abs() < 1e-11);
        let (back, p2) = chart_transition(&g1, &[Down, Down], 1, 0, &img).unwrap();
        assert!((back[0] - g0).abs() < 1e-12 && (p2[0] - p[0]).abs() < 1e-12);
        assert!(matches!(chart_transition(&[1.0], &[], 0, 1, &[0.0, 0.0]), Err(BackendError::NoOverlap(_))));
    }

    #[test]
    fn descriptors_round_trip_and_determinism() {
        let d: FixtureDescriptor = serde_json::from_str(r#"{"kind":"RIEM4","seed":7,"epsilon":0.05,"grid":[6,6,6,6]}"#).unwrap();
        let a = make_fixture(&d).unwrap();
        let b = make_fixture(&d).unwrap();
        let p = JetPoint::new(0, vec![0.1, 0.2, 0.3, 0.4]);
        let ga = a.metric(0, &p.lift(2).unwrap());
        let gb = b.metric(0, &p.lift(2).unwrap());
        assert!(ga.data.iter().zip(&gb.data).all(|(x, y)| x == y));
        let bad: Result<FixtureDescriptor, _> = serde_json::from_str(r#"{"kind":"KLEIN"}"#);
        assert!(bad.is_err());
        let huge = FixtureDescriptor { epsilon: Some(5.0), ..FixtureDescriptor::new(FixtureKind::Pert2) };
        assert!(matches!(make_fixture(&huge), Err(BackendError::DegenerateMetric(_))));
    }
}
