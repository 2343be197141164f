//! Closed-form scalar functions with exact symbolic gradients.
//!
//! Band-limited trig polynomials live on tori; polynomials in the embedding
//! coordinates (X, Y, Z) of the unit sphere live on CP¹ in either chart.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::Rng;

use crate::tensor::Tensor;
use crate::Jet;

/// A scalar function evaluable at chart jets, with a coordinate gradient that keeps full order.
pub trait ScalarFn: Send + Sync {
    fn eval(&self, chart: usize, x: &[Jet]) -> Jet;
    fn grad(&self, chart: usize, x: &[Jet]) -> Vec<Jet>;
}

/// Tensor field given by a closure over (chart, coordinate jets).
pub type TField = Arc<dyn Fn(usize, &[Jet]) -> Tensor + Send + Sync>;

#[derive(Clone, Debug, PartialEq)]
pub struct TrigTerm {
    pub amp: f64,
    pub k: Vec<i32>,
    pub phase: f64,
}

/// `Σ amp · cos(2π k·x + phase)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly {
    pub dim: usize,
    pub terms: Vec<TrigTerm>,
}

impl TrigPoly {
    pub fn new(dim: usize, terms: Vec<TrigTerm>) -> Self {
        Self { dim, terms }
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: vec![] }
    }

    /// `amp · sin(2π k·x)`.
    pub fn sin(dim: usize, amp: f64, k: Vec<i32>) -> Self {
        Self::new(dim, vec![TrigTerm { amp, k, phase: -PI / 2.0 }])
    }

    pub fn cos(dim: usize, amp: f64, k: Vec<i32>) -> Self {
        Self::new(dim, vec![TrigTerm { amp, k, phase: 0.0 }])
    }

    /// Seeded random polynomial with modes in [-kmax, kmax]^dim and amplitudes in [-amp, amp].
    pub fn random<R: Rng>(rng: &mut R, dim: usize, nterms: usize, kmax: i32, amp: f64) -> Self {
        let terms = (0..nterms)
            .map(|_| {
                let mut k: Vec<i32> = (0..dim).map(|_| rng.gen_range(-kmax..=kmax)).collect();
                if k.iter().all(|&x| x == 0) {
                    k[rng.gen_range(0..dim)] = 1;
                }
                TrigTerm { amp: rng.gen_range(-amp..=amp), k, phase: rng.gen_range(0.0..2.0 * PI) }
            })
            .collect();
        Self { dim, terms }
    }

    pub fn plus(&self, o: &TrigPoly) -> TrigPoly {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        TrigPoly { dim: self.dim, terms }
    }

    pub fn scaled(&self, s: f64) -> TrigPoly {
        TrigPoly { dim: self.dim, terms: self.terms.iter().map(|t| TrigTerm { amp: t.amp * s, ..t.clone() }).collect() }
    }

    pub fn deriv(&self, axis: usize) -> TrigPoly {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.k[axis] != 0)
            .map(|t| TrigTerm { amp: t.amp * 2.0 * PI * t.k[axis] as f64, k: t.k.clone(), phase: t.phase + PI / 2.0 })
            .collect();
        TrigPoly { dim: self.dim, terms }
    }

    pub fn eval_jet(&self, x: &[Jet]) -> Jet {
        let mut acc = x[0].zero_like();
        for t in &self.terms {
            let mut arg = x[0].constant_like(t.phase);
            for (d, &k) in t.k.iter().enumerate() {
                if k != 0 {
                    arg += &x[d] * (2.0 * PI * k as f64);
                }
            }
            acc += arg.cos() * t.amp;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let arg: f64 = t.k.iter().zip(x).map(|(&k, &xi)| 2.0 * PI * k as f64 * xi).sum::<f64>() + t.phase;
                t.amp * arg.cos()
            })
            .sum()
    }

    /// Largest |k|_∞ over the terms.
    pub fn band(&self) -> i32 {
        self.terms.iter().flat_map(|t| t.k.iter().map(|k| k.abs())).max().unwrap_or(0)
    }
}

impl ScalarFn for TrigPoly {
    fn eval(&self, _chart: usize, x: &[Jet]) -> Jet {
        self.eval_jet(x)
    }

    fn grad(&self, _chart: usize, x: &[Jet]) -> Vec<Jet> {
        (0..self.dim).map(|a| self.deriv(a).eval_jet(x)).collect()
    }
}

/// Embedding coordinates (X, Y, Z) of the unit sphere from stereographic chart jets,
/// together with their chart partials `[∂_x, ∂_y]` for each of X, Y, Z.
///
/// Chart 0 is `z = x + iy` with `Z = (|z|² − 1)/(|z|² + 1)`; chart 1 is `w = 1/z`.
pub fn sphere_embedding(chart: usize, x: &[Jet]) -> ([Jet; 3], [[Jet; 2]; 3]) {
    let (a, b) = (&x[0], &x[1]);
    let s = a * a + b * b + 1.0;
    let si = s.recip();
    let si2 = &si * &si;
    let two_si = &si * 2.0;
    let xx = a * &two_si;
    let yy = b * &two_si;
    let dxa = &two_si - &(a * a * &si2 * 4.0);
    let dxb = -(a * b * &si2 * 4.0);
    let dyb = &two_si - &(b * b * &si2 * 4.0);
    let dza = a * &si2 * 4.0;
    let dzb = b * &si2 * 4.0;
    if chart == 0 {
        let z = -(&two_si - 1.0);
        ([xx, yy, z], [[dxa, dxb.clone()], [dxb, dyb], [dza, dzb]])
    } else {
        let z = &two_si - 1.0;
        ([xx, -yy, z], [[dxa, dxb.clone()], [-dxb, -dyb], [-dza, -dzb]])
    }
}

/// Polynomial in the embedding coordinates (X, Y, Z) of S² ≅ CP¹.
#[derive(Clone, Debug, PartialEq)]
pub struct SpherePoly {
    pub terms: Vec<([u8; 3], f64)>,
}

impl SpherePoly {
    pub fn new(terms: Vec<([u8; 3], f64)>) -> Self {
        Self { terms }
    }

    pub fn coordinate(i: usize) -> Self {
        let mut e = [0u8; 3];
        e[i] = 1;
        Self { terms: vec![(e, 1.0)] }
    }

    /// Seeded random polynomial of total degree ≤ `deg` with coefficients in [-amp, amp].
    pub fn random<R: Rng>(rng: &mut R, deg: u8, amp: f64) -> Self {
        let mut terms = Vec::new();
        for a in 0..=deg {
            for b in 0..=(deg - a) {
                for c in 0..=(deg - a - b) {
                    if a + b + c > 0 {
                        terms.push(([a, b, c], rng.gen_range(-amp..=amp)));
                    }
                }
            }
        }
        Self { terms }
    }

    fn deriv_embedded(&self, i: usize) -> SpherePoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, c)| {
                let mut e2 = *e;
                e2[i] -= 1;
                (e2, c * e[i] as f64)
            })
            .collect();
        SpherePoly { terms }
    }

    pub fn eval_xyz(&self, p: &[Jet; 3]) -> Jet {
        let mut acc = p[0].zero_like();
        for (e, c) in &self.terms {
            let mut m = p[0].constant_like(*c);
            for i in 0..3 {
                for _ in 0..e[i] {
                    m = &m * &p[i];
                }
            }
            acc += m;
        }
        acc
    }

    pub fn eval_point(&self, p: [f64; 3]) -> f64 {
        self.terms.iter().map(|(e, c)| c * p[0].powi(e[0] as i32) * p[1].powi(e[1] as i32) * p[2].powi(e[2] as i32)).sum()
    }
}

impl ScalarFn for SpherePoly {
    fn eval(&self, chart: usize, x: &[Jet]) -> Jet {
        let (p, _) = sphere_embedding(chart, x);
        self.eval_xyz(&p)
    }

    fn grad(&self, chart: usize, x: &[Jet]) -> Vec<Jet> {
        let (p, d) = sphere_embedding(chart, x);
        let partials: Vec<Jet> = (0..3).map(|i| self.deriv_embedded(i).eval_xyz(&p)).collect();
        (0..2).map(|a| &partials[0] * &d[0][a] + &partials[1] * &d[1][a] + &partials[2] * &d[2][a]).collect()
    }
}

/// Any scalar function plus a constant.
pub struct Shifted<F: ScalarFn>(pub F, pub f64);

impl<F: ScalarFn> ScalarFn for Shifted<F> {
    fn eval(&self, chart: usize, x: &[Jet]) -> Jet {
        self.0.eval(chart, x) + self.1
    }

    fn grad(&self, chart: usize, x: &[Jet]) -> Vec<Jet> {
        self.0.grad(chart, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::JetPoint;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trig_gradient_matches_jet_derivative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = TrigPoly::random(&mut rng, 4, 5, 2, 0.5);
        let x = JetPoint::new(0, vec![0.1, 0.7, 0.3, 0.9]).lift(3).unwrap();
        let v = p.eval(0, &x);
        let g = p.grad(0, &x);
        for a in 0..4 {
            let d = v.d(a);
            for (u, w) in d.taylor().iter().zip(g[a].taylor()) {
                assert!((u - w).abs() < 1e-11);
            }
        }
        assert!((v.value() - p.eval_f64(&[0.1, 0.7, 0.3, 0.9])).abs() < 1e-14);
    }

    #[test]
    fn sphere_poly_gradient_and_chart_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = SpherePoly::random(&mut rng, 3, 1.0);
        for chart in 0..2 {
            let x = JetPoint::new(chart, vec![0.4, -0.3]).lift(3).unwrap();
            let v = p.eval(chart, &x);
            let g = p.grad(chart, &x);
            for a in 0..2 {
                for (u, w) in v.d(a).taylor().iter().zip(g[a].taylor()) {
                    assert!((u - w).abs() < 1e-12);
                }
            }
        }
        // z = 0.4 − 0.3i and w = 1/z are the same point
        let (zx, zy) = (0.4, -0.3);
        let r2 = zx * zx + zy * zy;
        let a = p.eval(0, &JetPoint::new(0, vec![zx, zy]).lift(0).unwrap()).value();
        let b = p.eval(1, &JetPoint::new(1, vec![zx / r2, -zy / r2]).lift(0).unwrap()).value();
        assert!((a - b).abs() < 1e-13);
    }
}
