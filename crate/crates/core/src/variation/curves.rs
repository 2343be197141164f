//! One-parameter families `t ↦ (g_t, Ω_t, J_t)` evaluated as jets at chart points.
//!
//! Spatial data is jet-exact at every `t`; only the `t`-dependence is differentiated
//! numerically. Three kinds are provided: linear metric/volume variations, pullbacks by
//! the flow of a Hamiltonian vector field, and curves of ω-compatible complex structures.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::backends::fields::ScalarFn;
use crate::backends::{standard_j, Fixture};
use crate::check::CheckError;
use crate::jet::JetPoint;
use crate::kahler::anti_linear_part;
use crate::tensor::{det, invert, sum, Down, Tensor, Up};
use crate::tensorcalc::{Geo, GeomError};
use crate::variation::fd::{fd_derivative, FdError, FdOptions, FdReport};
use crate::Jet;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("flow-diverged: {0}")]
    FlowDiverged(String),
    #[error("t = {0} is outside the validity window")]
    Window(f64),
}

impl From<CurveError> for CheckError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Geom(g) => CheckError::Geom(g),
            CurveError::FlowDiverged(s) => CheckError::FlowDiverged(s),
            CurveError::Window(t) => CheckError::Fd(FdError::OutsideWindow(0, format!("t = {t}"))),
        }
    }
}

/// Tensor field closure that may borrow from a fixture.
pub type Field<'a> = Arc<dyn Fn(usize, &[Jet]) -> Tensor + Send + Sync + 'a>;
/// Scalar field closure that may borrow from a fixture.
pub type SFn<'a> = Arc<dyn Fn(usize, &[Jet]) -> Jet + Send + Sync + 'a>;

/// Geometry of a curve member at one point.
#[derive(Clone, Debug)]
pub struct CurveData {
    pub chart: usize,
    /// Coordinate jets of the evaluation point.
    pub x: Vec<Jet>,
    pub g: Tensor,
    pub rho: Jet,
    pub j: Option<Tensor>,
}

impl CurveData {
    pub fn geo(&self) -> Result<Geo, GeomError> {
        Geo::new(self.g.clone(), self.rho.clone(), self.j.clone())
    }
}

pub trait Curve: Send + Sync {
    /// `(g_t, ρ_t, J_t)` at `p` with jets of the given order.
    fn data(&self, t: f64, p: &JetPoint, order: usize) -> Result<CurveData, CurveError>;

    fn t_max(&self) -> f64;

    fn check_window(&self, t: f64) -> Result<(), CurveError> {
        if t.abs() > self.t_max() {
            return Err(CurveError::Window(t));
        }
        Ok(())
    }
}

/// `g_t = g + t v`, `Ω_t = (1 + t V*) Ω`.
pub struct LinearCurve<'a> {
    pub fx: &'a Fixture,
    pub v: Field<'a>,
    pub vstar: SFn<'a>,
    pub t_max: f64,
}

impl Curve for LinearCurve<'_> {
    fn data(&self, t: f64, p: &JetPoint, order: usize) -> Result<CurveData, CurveError> {
        self.check_window(t)?;
        let x = lift(p, order)?;
        let g = self.fx.metric(p.chart, &x).add(&(self.v)(p.chart, &x).scale(t));
        let s = (self.vstar)(p.chart, &x) * t + 1.0;
        if !(s.value() > 0.0) {
            return Err(CurveError::Window(t));
        }
        let rho = self.fx.density(p.chart, &x) * s;
        let j = self.fx.complex_structure(&x[0]);
        Ok(CurveData { chart: p.chart, x, g, rho, j })
    }

    fn t_max(&self) -> f64 {
        self.t_max
    }
}

/// Pullback of `(g, Ω, J)` by the time-`t` flow of `X = ½ J∇u = −½ ω⁻¹du`.
///
/// The flow is integrated with `steps` fixed RK4 steps of size `t/steps` on coordinate
/// jets lifted one order higher, so that `DΨ_t` is available to the requested order.
pub struct PullbackCurve<'a> {
    pub fx: &'a Fixture,
    pub u: Arc<dyn ScalarFn + 'a>,
    pub steps: usize,
    pub t_max: f64,
}

impl<'a> PullbackCurve<'a> {
    pub fn new(fx: &'a Fixture, u: Arc<dyn ScalarFn + 'a>) -> Self {
        Self { fx, u, steps: 32, t_max: 0.125 }
    }

    /// Components of `X = ½J∇u` at the coordinate jets `y`.
    pub fn field(&self, chart: usize, y: &[Jet]) -> Vec<Jet> {
        let n = y.len();
        let g = self.fx.metric(chart, y);
        let gi = invert(n, &g.data);
        let du = self.u.as_ref().grad(chart, y);
        let grad: Vec<Jet> = (0..n).map(|a| sum(n, |c| &gi[a * n + c] * &du[c])).collect();
        // J∂_{x_k} = ∂_{y_k}: (J w)^{2k} = −w^{2k+1}, (J w)^{2k+1} = w^{2k}
        (0..n).map(|a| if a % 2 == 0 { &grad[a + 1] * -0.5 } else { &grad[a - 1] * 0.5 }).collect()
    }

    /// Image of the coordinate jets `x` under the time-`t` flow.
    pub fn flow(&self, chart: usize, x: &[Jet], t: f64) -> Result<Vec<Jet>, CurveError> {
        let mut y = x.to_vec();
        if t == 0.0 {
            return Ok(y);
        }
        let dt = t / self.steps as f64;
        let axpy = |y: &[Jet], k: &[Jet], c: f64| -> Vec<Jet> { y.iter().zip(k).map(|(a, b)| a + &(b * c)).collect() };
        for _ in 0..self.steps {
            let k1 = self.field(chart, &y);
            let k2 = self.field(chart, &axpy(&y, &k1, dt / 2.0));
            let k3 = self.field(chart, &axpy(&y, &k2, dt / 2.0));
            let k4 = self.field(chart, &axpy(&y, &k3, dt));
            for a in 0..y.len() {
                let inc = (&k1[a] + &(&k2[a] * 2.0) + &(&k3[a] * 2.0) + &k4[a]) * (dt / 6.0);
                y[a] += inc;
            }
            if y.iter().any(|c| !c.is_finite()) {
                return Err(CurveError::FlowDiverged(format!("non-finite state at t = {t}")));
            }
        }
        Ok(y)
    }

    /// `DΨ_t` as an endomorphism-shaped matrix `∂_b Ψ^a` together with `Ψ_t`.
    pub fn jacobian(&self, p: &JetPoint, t: f64, order: usize) -> Result<(Vec<Jet>, Tensor), CurveError> {
        let x = lift(p, order + 1)?;
        let y = self.flow(p.chart, &x, t)?;
        let n = x.len();
        let dpsi = Tensor::from_fn(n, &[Up, Down], |i| y[i[0]].d(i[1]));
        Ok((y, dpsi))
    }

    /// `Ψ_t*ω − ω` at `p` (values only).
    pub fn symplectic_residual(&self, p: &JetPoint, t: f64) -> Result<f64, CurveError> {
        let (y, dpsi) = self.jacobian(p, t, 0)?;
        let x = lift(p, 0)?;
        let w_at = |z: &[Jet]| omega_matrix(&self.fx.metric(p.chart, z));
        let w_y = w_at(&y.iter().map(|c| c.truncate(0)).collect::<Vec<_>>());
        let w_x = w_at(&x);
        let n = x.len();
        let pulled = Tensor::from_fn(n, &[Down, Down], |i| {
            sum(n, |a| sum(n, |b| dpsi.at(&[a, i[0]]) * w_y.at(&[a, b]) * dpsi.at(&[b, i[1]])))
        });
        Ok(pulled.sub(&w_x).max_abs())
    }
}

impl Curve for PullbackCurve<'_> {
    fn data(&self, t: f64, p: &JetPoint, order: usize) -> Result<CurveData, CurveError> {
        self.check_window(t)?;
        let (y, dpsi) = self.jacobian(p, t, order)?;
        let n = y.len();
        let yo: Vec<Jet> = y.iter().map(|c| c.truncate(order)).collect();
        let gy = self.fx.metric(p.chart, &yo);
        let g = Tensor::from_fn(n, &[Down, Down], |i| {
            sum(n, |a| sum(n, |b| dpsi.at(&[a, i[0]]) * gy.at(&[a, b]) * dpsi.at(&[b, i[1]])))
        });
        let rho = self.fx.density(p.chart, &yo) * det(n, &dpsi.data);
        let j = match self.fx.complex_structure(&yo[0]) {
            Some(j0) => {
                let inv = Tensor { dim: n, slots: vec![Up, Down], data: invert(n, &dpsi.data) };
                Some(inv.compose(&j0).compose(&dpsi))
            }
            None => None,
        };
        let x = lift(p, order)?;
        Ok(CurveData { chart: p.chart, x, g, rho, j })
    }

    fn t_max(&self) -> f64 {
        self.t_max
    }
}

/// ω-compatible complex structures `J_t = (I + tμ) J (I + tμ)⁻¹` with `g_t = ω(·, J_t ·)` and
/// Ω fixed. `μ` is the J-anti-linear part of `g⁻¹v` for a symmetric `v`, hence g-symmetric
/// and ω-skew, which keeps `J_t` compatible with ω.
pub struct ComplexCurve<'a> {
    pub fx: &'a Fixture,
    pub v: Field<'a>,
    pub t_max: f64,
}

impl ComplexCurve<'_> {
    pub fn mu(&self, chart: usize, x: &[Jet]) -> Tensor {
        let n = x.len();
        let g = self.fx.metric(chart, x);
        let gi = Tensor { dim: n, slots: vec![Up, Up], data: invert(n, &g.data) };
        let v = (self.v)(chart, x);
        let vs = Tensor::from_fn(n, &[Up, Down], |i| sum(n, |c| gi.at(&[i[0], c]) * v.at(&[c, i[1]])));
        anti_linear_part(&standard_j(n, &x[0]), &vs)
    }
}

impl Curve for ComplexCurve<'_> {
    fn data(&self, t: f64, p: &JetPoint, order: usize) -> Result<CurveData, CurveError> {
        self.check_window(t)?;
        let x = lift(p, order)?;
        let n = x.len();
        let j0 = standard_j(n, &x[0]);
        let pm = Tensor::identity(n, &x[0]).add(&self.mu(p.chart, &x).scale(t));
        let pinv = Tensor { dim: n, slots: vec![Up, Down], data: invert(n, &pm.data) };
        let jt = pm.compose(&j0).compose(&pinv);
        let g0 = self.fx.metric(p.chart, &x);
        let w = omega_matrix(&g0);
        let g = Tensor::from_fn(n, &[Down, Down], |i| sum(n, |c| w.at(&[i[0], c]) * jt.at(&[c, i[1]])));
        let rho = self.fx.density(p.chart, &x);
        Ok(CurveData { chart: p.chart, x, g, rho, j: Some(jt) })
    }

    fn t_max(&self) -> f64 {
        self.t_max
    }
}

/// `ω_{ab} = g(J∂_a, ∂_b)` for the standard J.
pub fn omega_matrix(g: &Tensor) -> Tensor {
    let n = g.dim;
    let j = standard_j(n, g.like());
    Tensor::from_fn(n, &[Down, Down], |i| sum(n, |c| j.at(&[c, i[0]]) * g.at(&[c, i[1]])))
}

fn lift(p: &JetPoint, order: usize) -> Result<Vec<Jet>, CurveError> {
    p.lift(order).map_err(|e| CurveError::Geom(GeomError::BadValence(e.to_string())))
}

/// Flattened Taylor coefficients of a tensor.
fn flatten(t: &Tensor, out: &mut Vec<f64>) {
    for c in &t.data {
        out.extend_from_slice(c.taylor());
    }
}

fn rebuild(template: &Tensor, flat: &[f64]) -> Tensor {
    let mut off = 0;
    let data = template
        .data
        .iter()
        .map(|c| {
            let len = c.taylor().len();
            let j = Jet::from_taylor(c.dim(), c.order(), flat[off..off + len].to_vec()).expect("template shape");
            off += len;
            j
        })
        .collect();
    Tensor { dim: template.dim, slots: template.slots.clone(), data }
}

/// `t`-derivative of a tensor-valued map evaluated at several points at once. The map
/// receives the point index alongside the point.
///
/// Every Taylor coefficient is differentiated, so the result is again a jet tensor and may
/// be fed to further spatial operators. Evaluation over points runs in parallel.
pub fn fd_tensors<F>(
    points: &[JetPoint],
    map: F,
    t0: f64,
    deriv: usize,
    opts: &FdOptions,
) -> Result<(Vec<Tensor>, FdReport), CheckError>
where
    F: Fn(f64, usize, &JetPoint) -> Result<Tensor, CheckError> + Sync,
{
    let templates: Vec<Tensor> = points.par_iter().enumerate().map(|(k, p)| map(t0, k, p)).collect::<Result<_, _>>()?;
    let eval = |t: f64| -> Result<Vec<f64>, CheckError> {
        let ts: Vec<Tensor> = points.par_iter().enumerate().map(|(k, p)| map(t, k, p)).collect::<Result<_, _>>()?;
        let mut flat = Vec::new();
        for (k, tt) in ts.iter().enumerate() {
            if tt.data.len() != templates[k].data.len() {
                return Err(CheckError::Fd(FdError::ShapeMismatch));
            }
            flatten(tt, &mut flat);
        }
        Ok(flat)
    };
    let rep = fd_derivative(eval, t0, deriv, opts)?;
    let mut out = Vec::with_capacity(points.len());
    let mut off = 0;
    for t in &templates {
        let len: usize = t.data.iter().map(|c| c.taylor().len()).sum();
        out.push(rebuild(t, &rep.value[off..off + len]));
        off += len;
    }
    Ok((out, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::fields::SpherePoly;
    use crate::backends::FixtureKind;

    #[test]
    fn zero_hamiltonian_is_identity() {
        let fx = Fixture::builtin(FixtureKind::Fs).unwrap();
        let c = PullbackCurve::new(&fx, Arc::new(SpherePoly::new(vec![])));
        for p in fx.sample_points(4, 1) {
            let d0 = c.data(0.0, &p, 1).unwrap();
            let d1 = c.data(0.1, &p, 1).unwrap();
            assert!(d0.g.sub(&d1.g).max_abs() < 1e-15);
        }
    }

    #[test]
    fn pullback_is_symplectic() {
        let fx = Fixture::builtin(FixtureKind::Fs).unwrap();
        let u = SpherePoly::new(vec![([1, 0, 0], 0.7), ([0, 1, 1], 0.5), ([0, 0, 2], -0.3)]);
        let c = PullbackCurve::new(&fx, Arc::new(u));
        for p in fx.sample_points(6, 3) {
            for t in [-0.1, 0.05, 0.1] {
                assert!(c.symplectic_residual(&p, t).unwrap() < 1e-8);
            }
        }
    }

    #[test]
    fn complex_curve_stays_compatible() {
        let fx = Fixture::builtin(FixtureKind::Kah4).unwrap();
        let mut gen = crate::backends::random::FieldGen::new(&fx, 4);
        let v = gen.sym2(0.3);
        let c = ComplexCurve { fx: &fx, v: Arc::new(move |ch, x: &[Jet]| v(ch, x)), t_max: 0.2 };
        for p in fx.sample_points(3, 9) {
            let d = c.data(0.1, &p, 1).unwrap();
            let j = d.j.clone().unwrap();
            let jj = j.compose(&j).add(&Tensor::identity(4, &d.x[0]));
            assert!(jj.max_abs() < 1e-12);
            assert!(d.g.sub(&d.g.swap_slots(0, 1)).max_abs() < 1e-12);
            assert!(d.geo().is_ok());
        }
    }
}
