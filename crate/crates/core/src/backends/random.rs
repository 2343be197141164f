//! Seeded smooth test fields.
//!
//! Tori get band-limited trig polynomials. On CP¹ every field is the pullback of an
//! ambient polynomial object on R³ through the embedding, so it is smooth across both
//! charts. Metric-dependent valences (vectors, endomorphisms) are obtained from these
//! covariant fields with the fixture's own `g` at evaluation time.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fields::{sphere_embedding, ScalarFn, SpherePoly, TField, TrigPoly};
use super::{BackendKind, Fixture};
use crate::tensor::{Down, Tensor};
use crate::Jet;

pub type SField = Arc<dyn ScalarFn>;

impl ScalarFn for Arc<dyn ScalarFn> {
    fn eval(&self, chart: usize, x: &[Jet]) -> Jet {
        (**self).eval(chart, x)
    }

    fn grad(&self, chart: usize, x: &[Jet]) -> Vec<Jet> {
        (**self).grad(chart, x)
    }
}

/// `c₀ + Σ c_k f_k`.
pub struct Combo {
    pub offset: f64,
    pub terms: Vec<(f64, SField)>,
}

impl ScalarFn for Combo {
    fn eval(&self, chart: usize, x: &[Jet]) -> Jet {
        let mut acc = x[0].constant_like(self.offset);
        for (c, f) in &self.terms {
            acc += f.eval(chart, x) * *c;
        }
        acc
    }

    fn grad(&self, chart: usize, x: &[Jet]) -> Vec<Jet> {
        let mut acc: Vec<Jet> = x.iter().map(|v| v.zero_like()).collect();
        for (c, f) in &self.terms {
            for (a, d) in acc.iter_mut().zip(f.grad(chart, x)) {
                *a += d * *c;
            }
        }
        acc
    }
}

/// Deterministic field generator bound to one fixture.
pub struct FieldGen<'a> {
    fx: &'a Fixture,
    rng: ChaCha8Rng,
}

impl<'a> FieldGen<'a> {
    pub fn new(fx: &'a Fixture, seed: u64) -> Self {
        Self { fx, rng: ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ 0x0066_6965_6c64) }
    }

    fn sphere(&self) -> bool {
        self.fx.backend.kind == BackendKind::Cp1
    }

    pub fn scalar(&mut self, amp: f64) -> SField {
        if self.sphere() {
            Arc::new(SpherePoly::random(&mut self.rng, 2, amp))
        } else {
            Arc::new(TrigPoly::random(&mut self.rng, self.fx.dim(), 3, 1, amp))
        }
    }

    /// A scalar shifted to have zero Ω-mean on the fixture's quadrature.
    pub fn mean_zero_scalar(&mut self, amp: f64) -> SField {
        let f = self.scalar(amp);
        mean_zero(self.fx, f)
    }

    /// A 1-form.
    pub fn form(&mut self, amp: f64) -> TField {
        if self.sphere() {
            let w: Vec<SpherePoly> = (0..3).map(|_| SpherePoly::random(&mut self.rng, 2, amp)).collect();
            Arc::new(move |chart, x: &[Jet]| {
                let (p, d) = sphere_embedding(chart, x);
                let wv: Vec<Jet> = w.iter().map(|w| w.eval_xyz(&p)).collect();
                Tensor::form((0..2).map(|a| &wv[0] * &d[0][a] + &wv[1] * &d[1][a] + &wv[2] * &d[2][a]).collect())
            })
        } else {
            let n = self.fx.dim();
            let c: Vec<TrigPoly> = (0..n).map(|_| TrigPoly::random(&mut self.rng, n, 3, 1, amp)).collect();
            Arc::new(move |_, x: &[Jet]| Tensor::form(c.iter().map(|p| p.eval_jet(x)).collect()))
        }
    }

    /// A symmetric 2-tensor.
    pub fn sym2(&mut self, amp: f64) -> TField {
        self.bilinear(amp, true)
    }

    /// A general covariant 2-tensor; `symmetric` forces symmetry.
    pub fn bilinear(&mut self, amp: f64, symmetric: bool) -> TField {
        if self.sphere() {
            let mut p: Vec<SpherePoly> = (0..9).map(|_| SpherePoly::random(&mut self.rng, 1, amp)).collect();
            if symmetric {
                for i in 0..3 {
                    for j in 0..i {
                        p[i * 3 + j] = p[j * 3 + i].clone();
                    }
                }
            }
            Arc::new(move |chart, x: &[Jet]| {
                let (pt, d) = sphere_embedding(chart, x);
                let pv: Vec<Jet> = p.iter().map(|q| q.eval_xyz(&pt)).collect();
                Tensor::from_fn(2, &[Down, Down], |ab| {
                    let mut acc = x[0].zero_like();
                    for i in 0..3 {
                        for j in 0..3 {
                            acc += &pv[i * 3 + j] * &d[i][ab[0]] * &d[j][ab[1]];
                        }
                    }
                    acc
                })
            })
        } else {
            let n = self.fx.dim();
            let mut c: Vec<TrigPoly> = (0..n * n).map(|_| TrigPoly::random(&mut self.rng, n, 3, 1, amp)).collect();
            if symmetric {
                for a in 0..n {
                    for b in 0..a {
                        c[a * n + b] = c[b * n + a].clone();
                    }
                }
            }
            Arc::new(move |_, x: &[Jet]| Tensor::from_fn(n, &[Down, Down], |ab| c[ab[0] * n + ab[1]].eval_jet(x)))
        }
    }
}

/// Shifts `f` by its Ω-mean so that `∫ f Ω = 0` on the quadrature.
pub fn mean_zero(fx: &Fixture, f: SField) -> SField {
    let m = mean(fx, &f);
    Arc::new(Combo { offset: -m, terms: vec![(1.0, f)] })
}

/// `∫ f Ω` by quadrature.
pub fn mean(fx: &Fixture, f: &SField) -> f64 {
    fx.integrate_fn(|p| f.eval(p.chart, &p.lift(0).expect("order-0 lift")).value()).unwrap_or(f64::NAN)
}
