//! Levi-Civita calculus weighted by a volume form `Ω = e^{-f} dV_g`.
//!
//! Pairings follow the frozen conventions: `⟨A,B⟩ = Σ_k g(Ae_k, Be_k)` for
//! endomorphisms and `Σ_{k,l} u(e_k,e_l) v(e_k,e_l)` for 2-tensors, with no
//! extra factors. All adjoints are weighted unless taken on [`Geo::unweighted`].

use thiserror::Error;

use crate::tensor::{det, invert, multi_indices, sum, Down, Slot, Tensor, Up};
use crate::Jet;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("order-exhausted: need jets of order {need}, have {have}")]
    OrderExhausted { need: usize, have: usize },
    #[error("degenerate-metric: metric not positive definite (det {0})")]
    DegenerateMetric(f64),
    #[error("bad-valence: {0}")]
    BadValence(String),
    #[error("bad-degree: generalized contraction needs a form of degree ≥ 1")]
    BadDegree,
    #[error("unsupported-geometry: {0}")]
    UnsupportedGeometry(String),
    #[error("unsupported-degree: form degree {0} is not handled")]
    UnsupportedDegree(usize),
    #[error("bad-input: {0}")]
    BadInput(String),
}

/// Fails with `OrderExhausted` unless `t` carries jets of at least order `need`.
pub fn need_order(t: &Tensor, need: usize) -> Result<(), GeomError> {
    let have = t.order();
    if have < need {
        return Err(GeomError::OrderExhausted { need, have });
    }
    Ok(())
}

/// Pointwise geometry at one chart point: metric, weight and their derived jets.
#[derive(Clone, Debug)]
pub struct Geo {
    pub dim: usize,
    pub g: Tensor,
    pub ginv: Tensor,
    /// Γ^a_{bc}.
    pub gamma: Tensor,
    pub rho: Jet,
    pub f: Jet,
    pub df: Tensor,
    pub grad_f: Tensor,
    pub j: Option<Tensor>,
    /// R^a_{bcd} with R(∂_c, ∂_d)∂_b = R^a_{bcd} ∂_a; present when g has order ≥ 2.
    pub riem: Option<Tensor>,
}

impl Geo {
    /// Builds the derived data from `g` (order ≥ 1), the Ω-density `rho` and an optional `J`.
    pub fn new(g: Tensor, rho: Jet, j: Option<Tensor>) -> Result<Geo, GeomError> {
        let dim = g.dim;
        let order = g.order();
        if order < 1 {
            return Err(GeomError::OrderExhausted { need: 1, have: order });
        }
        let d = det(dim, &g.data);
        if !(d.value() > 0.0) || (0..dim).any(|i| !(g.at(&[i, i]).value() > 0.0)) {
            return Err(GeomError::DegenerateMetric(d.value()));
        }
        let ginv = Tensor { dim, slots: vec![Up, Up], data: invert(dim, &g.data) };
        let dg: Vec<Tensor> = (0..dim).map(|c| g.map(|x| x.d(c))).collect();
        let ginv_lo = ginv.truncate(order - 1);
        let gamma = Tensor::from_fn(dim, &[Up, Down, Down], |i| {
            let (a, b, c) = (i[0], i[1], i[2]);
            sum(dim, |e| ginv_lo.at(&[a, e]) * (dg[b].at(&[e, c]) + dg[c].at(&[e, b]) - dg[e].at(&[b, c])))
                * 0.5
        });
        let f = d.ln() * 0.5 - rho.ln();
        let df = Tensor::form((0..dim).map(|a| f.d(a)).collect());
        let grad_f = raise_vec(&ginv, &df);
        let riem = if order >= 2 {
            let gl = gamma.truncate(order - 2);
            Some(Tensor::from_fn(dim, &[Up, Down, Down, Down], |i| {
                let (a, b, c, dd) = (i[0], i[1], i[2], i[3]);
                gamma.at(&[a, dd, b]).d(c) - gamma.at(&[a, c, b]).d(dd)
                    + sum(dim, |e| gl.at(&[a, c, e]) * gl.at(&[e, dd, b]) - gl.at(&[a, dd, e]) * gl.at(&[e, c, b]))
            }))
        } else {
            None
        };
        Ok(Geo { dim, g, ginv, gamma, rho, f, df, grad_f, j, riem })
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// The same metric with `Ω` replaced by the normalized Riemannian volume (f constant).
    pub fn unweighted(&self) -> Geo {
        let mut out = self.clone();
        out.f = self.f.constant_like(0.0);
        out.df = self.df.map(|x| x.zero_like());
        out.grad_f = self.grad_f.map(|x| x.zero_like());
        out
    }

    pub fn j(&self) -> Result<&Tensor, GeomError> {
        self.j.as_ref().ok_or_else(|| GeomError::UnsupportedGeometry("fixture has no complex structure".into()))
    }

    pub fn ricci(&self) -> Result<Tensor, GeomError> {
        let r = self.riem.as_ref().ok_or(GeomError::OrderExhausted { need: 2, have: self.order() })?;
        Ok(Tensor::from_fn(self.dim, &[Down, Down], |i| sum(self.dim, |a| r.at(&[a, i[0], a, i[1]]).clone())))
    }

    /// Ric*(g) = g⁻¹ Ric.
    pub fn ricci_endo(&self) -> Result<Tensor, GeomError> {
        Ok(self.sharp(&self.ricci()?))
    }

    pub fn scalar_curvature(&self) -> Result<Jet, GeomError> {
        Ok(self.ricci_endo()?.trace(0, 1).data[0].clone())
    }

    /// Curvature action `R̊(v)(Y,Z) = Σ Rm(e_k, Y, Z, e_l) v(e_k, e_l)`, so that `R̊(g) = Ric`.
    pub fn curvature_action(&self, v: &Tensor) -> Result<Tensor, GeomError> {
        let r = self.riem.as_ref().ok_or(GeomError::OrderExhausted { need: 2, have: self.order() })?;
        let vs = self.sharp(v);
        let n = self.dim;
        Ok(Tensor::from_fn(n, &[Down, Down], |i| {
            let mut terms = Vec::with_capacity(n * n);
            for k in 0..n {
                for e in 0..n {
                    terms.push(vs.at(&[k, e]) * r.at(&[e, i[1], k, i[0]]));
                }
            }
            terms.into_iter().reduce(|a, b| a + b).unwrap()
        }))
    }

    /// Covariant derivative; the new derivative slot comes first.
    pub fn nabla(&self, t: &Tensor) -> Tensor {
        let n = self.dim;
        let gam = self.gamma.truncate(t.order().saturating_sub(1).min(self.gamma.order()));
        let mut slots = vec![Down];
        slots.extend(&t.slots);
        let rank = t.rank();
        Tensor::from_fn(n, &slots, |i| {
            let k = i[0];
            let idx = &i[1..];
            let mut acc = t.at(idx).d(k);
            let mut tmp = idx.to_vec();
            for s in 0..rank {
                let orig = idx[s];
                for m in 0..n {
                    tmp[s] = m;
                    match t.slots[s] {
                        Up => acc += gam.at(&[orig, k, m]) * t.at(&tmp),
                        Down => acc -= gam.at(&[m, k, orig]) * t.at(&tmp),
                    }
                }
                tmp[s] = orig;
            }
            acc
        })
    }

    pub fn d_scalar(&self, u: &Jet) -> Tensor {
        Tensor::form((0..self.dim).map(|a| u.d(a)).collect())
    }

    pub fn grad(&self, u: &Jet) -> Tensor {
        raise_vec(&self.ginv, &self.d_scalar(u))
    }

    pub fn hessian(&self, u: &Jet) -> Tensor {
        self.nabla(&self.d_scalar(u))
    }

    /// Lowers an Up slot with g.
    pub fn lower(&self, t: &Tensor, s: usize) -> Tensor {
        assert_eq!(t.slots[s], Up);
        self.move_slot(t, s, &self.g, Down)
    }

    /// Raises a Down slot with g⁻¹.
    pub fn raise(&self, t: &Tensor, s: usize) -> Tensor {
        assert_eq!(t.slots[s], Down);
        self.move_slot(t, s, &self.ginv, Up)
    }

    fn move_slot(&self, t: &Tensor, s: usize, m: &Tensor, to: Slot) -> Tensor {
        let mut slots = t.slots.clone();
        slots[s] = to;
        let mo = m.truncate(t.order());
        Tensor::from_fn(self.dim, &slots, |i| {
            let mut tmp = i.to_vec();
            sum(self.dim, |k| {
                tmp[s] = k;
                mo.at(&[i[s], k]) * t.at(&tmp)
            })
        })
    }

    /// v* = g⁻¹ v.
    pub fn sharp(&self, v: &Tensor) -> Tensor {
        self.raise(v, 0)
    }

    /// g A as a bilinear form.
    pub fn flat(&self, a: &Tensor) -> Tensor {
        self.lower(a, 0)
    }

    pub fn flat_vec(&self, v: &Tensor) -> Tensor {
        self.lower(v, 0)
    }

    pub fn sharp_form(&self, a: &Tensor) -> Tensor {
        self.raise(a, 0)
    }

    /// Full metric pairing of two tensors of equal valence.
    pub fn pair(&self, a: &Tensor, b: &Tensor) -> Jet {
        assert_eq!(a.slots, b.slots, "pairing needs equal valence");
        let mut bb = b.clone();
        for s in 0..b.rank() {
            bb = match bb.slots[s] {
                Up => self.lower(&bb, s),
                Down => self.raise(&bb, s),
            };
        }
        let mut acc = &a.data[0] * &bb.data[0];
        for k in 1..a.data.len() {
            acc += &a.data[k] * &bb.data[k];
        }
        acc
    }

    pub fn norm2(&self, a: &Tensor) -> Jet {
        self.pair(a, a)
    }

    /// Pointwise g-norm of the value of a tensor.
    pub fn norm_value(&self, a: &Tensor) -> f64 {
        let t = a.truncate(0);
        let me = Geo { g: self.g.truncate(0), ginv: self.ginv.truncate(0), ..self.shallow() };
        me.pair(&t, &t).value().max(0.0).sqrt()
    }

    fn shallow(&self) -> Geo {
        Geo {
            dim: self.dim,
            g: self.g.clone(),
            ginv: self.ginv.clone(),
            gamma: self.gamma.clone(),
            rho: self.rho.clone(),
            f: self.f.clone(),
            df: self.df.clone(),
            grad_f: self.grad_f.clone(),
            j: None,
            riem: None,
        }
    }

    pub fn g_vec(&self, a: &Tensor, b: &Tensor) -> Jet {
        self.pair(a, b)
    }

    /// div^Ω ξ = Tr ∇ξ − df(ξ).
    pub fn div(&self, xi: &Tensor) -> Jet {
        let nx = self.nabla(xi);
        sum(self.dim, |a| nx.at(&[a, a]) - &self.df.data[a] * &xi.data[a])
    }

    /// div^Ω ξ computed as ρ⁻¹ ∂_a(ρ ξ^a) with ρ the coordinate density of Ω.
    pub fn div_density(&self, xi: &Tensor) -> Jet {
        sum(self.dim, |a| (&self.rho * &xi.data[a]).d(a)) / &self.rho.truncate(xi.order() - 1)
    }

    /// Weighted adjoint of ∇ acting on the Down slot `s` of `t`:
    /// `−Σ_k (∇_{e_k} t)(…, e_k at s, …) + t(…, ∇f at s, …)`.
    pub fn adjoint(&self, t: &Tensor, s: usize) -> Tensor {
        assert_eq!(t.slots[s], Down, "adjoint contracts a covariant slot");
        let nt = self.nabla(t);
        let raised = self.raise(&nt, 0);
        let div_part = raised.trace(0, s + 1);
        let weight = t.insert(s, &self.grad_f.truncate(t.order()));
        weight.sub(&div_part)
    }

    /// ∇*^Ω u for a symmetric 2-tensor, as a 1-form.
    pub fn adjoint_sym2(&self, u: &Tensor) -> Tensor {
        self.adjoint(u, 0)
    }

    /// ∇*^Ω A for an endomorphism, as a vector field.
    pub fn adjoint_endo(&self, a: &Tensor) -> Tensor {
        self.adjoint(a, 1)
    }

    /// Δ^Ω u = −tr ∇²u + ⟨∇f, ∇u⟩.
    pub fn laplacian(&self, u: &Jet) -> Jet {
        let h = self.hessian(u);
        let gi = self.ginv.truncate(h.order());
        let tr = sum(self.dim, |a| sum(self.dim, |b| gi.at(&[a, b]) * h.at(&[a, b])));
        let du = self.d_scalar(u);
        let gf = self.grad_f.truncate(du.order());
        sum(self.dim, |a| &gf.data[a] * &du.data[a]) - tr
    }

    /// Δ^Ω u as ∇*^Ω applied to du.
    pub fn laplacian_adjoint(&self, u: &Jet) -> Jet {
        self.adjoint(&self.d_scalar(u), 0).data[0].clone()
    }

    /// M_g(u, v)(ξ) = 2∇v(e_k, u*e_k, ξ) + ∇u(ξ, v*e_k, e_k).
    pub fn m_form(&self, u: &Tensor, v: &Tensor) -> Tensor {
        let n = self.dim;
        let nu = self.nabla(u);
        let nv = self.nabla(v);
        let us = self.sharp(u).truncate(nv.order());
        let vs = self.sharp(v).truncate(nu.order());
        let gi = self.ginv.truncate(nu.order().min(nv.order()));
        Tensor::form(
            (0..n)
                .map(|m| {
                    let mut terms = Vec::new();
                    for a in 0..n {
                        for b in 0..n {
                            for c in 0..n {
                                terms.push(gi.at(&[a, b]) * us.at(&[c, b]) * nv.at(&[a, c, m]) * 2.0);
                                terms.push(gi.at(&[b, a]) * vs.at(&[c, b]) * nu.at(&[m, c, a]));
                            }
                        }
                    }
                    terms.into_iter().reduce(|x, y| x + y).unwrap()
                })
                .collect(),
        )
    }

    /// M_g(u, v) by explicit summation over a g-orthonormal frame.
    pub fn m_form_frame(&self, u: &Tensor, v: &Tensor, frame: &[Tensor]) -> Tensor {
        let n = self.dim;
        let nu = self.nabla(u);
        let nv = self.nabla(v);
        let us = self.sharp(u);
        let vs = self.sharp(v);
        Tensor::form(
            (0..n)
                .map(|m| {
                    let mut e_m = Tensor::zeros(n, &[Up], &nu.data[0]);
                    e_m.data[m] = e_m.data[m].constant_like(1.0);
                    let mut acc = nu.data[0].zero_like();
                    for e in frame {
                        let ue = us.apply(e);
                        let ve = vs.apply(e);
                        acc += eval3(&nv, e, &ue, &e_m) * 2.0 + eval3(&nu, &e_m, &ve, e);
                    }
                    acc
                })
                .collect(),
        )
    }

    /// g-orthonormal frame from the Cholesky factor of g, optionally rotated by `q`.
    pub fn frame(&self, q: Option<&[f64]>) -> Vec<Tensor> {
        let n = self.dim;
        let g = &self.g.data;
        let mut l: Vec<Jet> = vec![g[0].zero_like(); n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut s = g[i * n + j].clone();
                for k in 0..j {
                    s -= &l[i * n + k] * &l[j * n + k];
                }
                l[i * n + j] = if i == j { s.sqrt() } else { s / &l[j * n + j] };
            }
        }
        // columns of L^{-T}
        let linv = invert(n, &l);
        let base: Vec<Tensor> = (0..n).map(|k| Tensor::vector((0..n).map(|a| linv[k * n + a].clone()).collect())).collect();
        match q {
            None => base,
            Some(q) => (0..n)
                .map(|k| {
                    Tensor::vector((0..n).map(|a| sum(n, |m| &base[m].data[a] * q[m * n + k])).collect())
                })
                .collect(),
        }
    }

    /// g-transpose A^T = g⁻¹ Aᵗ g.
    pub fn transpose(&self, a: &Tensor) -> Tensor {
        let n = self.dim;
        let g = self.g.truncate(a.order());
        let gi = self.ginv.truncate(a.order());
        Tensor::from_fn(n, &[Up, Down], |i| {
            let mut terms = Vec::new();
            for c in 0..n {
                for d in 0..n {
                    terms.push(gi.at(&[i[0], c]) * a.at(&[d, c]) * g.at(&[d, i[1]]));
                }
            }
            terms.into_iter().reduce(|x, y| x + y).unwrap()
        })
    }

    /// Tr_g(∇A · A) = Σ_k (∇_{e_k}A)(A e_k).
    pub fn tr_nabla_a_a(&self, a: &Tensor) -> Tensor {
        let na = self.nabla(a);
        let n = self.dim;
        let gi = self.ginv.truncate(na.order());
        let at = a.truncate(na.order());
        Tensor::vector(
            (0..n)
                .map(|b| {
                    let mut terms = Vec::new();
                    for p in 0..n {
                        for c in 0..n {
                            for d in 0..n {
                                terms.push(gi.at(&[p, c]) * na.at(&[p, b, d]) * at.at(&[d, c]));
                            }
                        }
                    }
                    terms.into_iter().reduce(|x, y| x + y).unwrap()
                })
                .collect(),
        )
    }
}

fn raise_vec(ginv: &Tensor, a: &Tensor) -> Tensor {
    let n = a.dim;
    let gi = ginv.truncate(a.order());
    Tensor::vector((0..n).map(|i| sum(n, |k| gi.at(&[i, k]) * &a.data[k])).collect())
}

/// Evaluates a fully covariant 3-tensor on three vectors.
fn eval3(t: &Tensor, x: &Tensor, y: &Tensor, z: &Tensor) -> Jet {
    let n = t.dim;
    let mut acc = t.data[0].zero_like();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                acc += t.at(&[a, b, c]) * &x.data[a] * &y.data[b] * &z.data[c];
            }
        }
    }
    acc
}

/// A ⌐ B := Alt(B ∘ A) for an endomorphism `a` and a bilinear `b` whose last two slots
/// are Down: `(A⌐B)(x, y) = B(Ax, y) − B(Ay, x)`.
pub fn contraction(a: &Tensor, b: &Tensor) -> Result<Tensor, GeomError> {
    if a.slots != [Up, Down] {
        return Err(GeomError::BadValence("contraction needs an endomorphism".into()));
    }
    let r = b.rank();
    if r < 2 || b.slots[r - 1] != Down || b.slots[r - 2] != Down {
        return Err(GeomError::BadValence("contraction needs two trailing covariant slots".into()));
    }
    let n = a.dim;
    Ok(Tensor::from_fn(n, &b.slots, |i| {
        let (x, y) = (i[r - 2], i[r - 1]);
        let mut tmp = i.to_vec();
        sum(n, |m| {
            tmp[r - 2] = m;
            tmp[r - 1] = y;
            let t1 = a.at(&[m, x]) * b.at(&tmp);
            tmp[r - 1] = x;
            t1 - a.at(&[m, y]) * b.at(&tmp)
        })
    }))
}

/// (α⌐β)(ξ_1, …, ξ_{p+q−1}) = Σ_{|I|=p} ε_I β(α(ξ_I), ξ_∁I).
///
/// `alpha` has slots (Up, Down^p); `beta` has `value_rank` leading value slots followed by
/// q ≥ 1 Down form slots.
pub fn generalized_contraction(alpha: &Tensor, beta: &Tensor, value_rank: usize) -> Result<Tensor, GeomError> {
    let p = alpha.rank().checked_sub(1).ok_or(GeomError::BadDegree)?;
    if p == 0 {
        return Err(GeomError::BadDegree);
    }
    if alpha.slots[0] != Up || alpha.slots[1..].iter().any(|s| *s != Down) {
        return Err(GeomError::BadValence("α must be a T_X-valued form".into()));
    }
    let q = beta.rank() - value_rank;
    if q == 0 {
        return Err(GeomError::BadValence("β must have a form slot".into()));
    }
    let deg = p + q - 1;
    let n = alpha.dim;
    let mut slots = beta.slots[..value_rank].to_vec();
    slots.extend(std::iter::repeat(Down).take(deg));
    let subsets: Vec<(Vec<usize>, Vec<usize>, f64)> = multi_indices(2, deg)
        .into_iter()
        .filter(|mask| mask.iter().sum::<usize>() == p)
        .map(|mask| {
            let ins: Vec<usize> = (0..deg).filter(|&k| mask[k] == 1).collect();
            let outs: Vec<usize> = (0..deg).filter(|&k| mask[k] == 0).collect();
            let inv = ins.iter().map(|&a| outs.iter().filter(|&&b| b < a).count()).sum::<usize>();
            (ins, outs, if inv % 2 == 0 { 1.0 } else { -1.0 })
        })
        .collect();
    Ok(Tensor::from_fn(n, &slots, |i| {
        let (val, xs) = i.split_at(value_rank);
        let mut acc: Option<Jet> = None;
        for (ins, outs, sign) in &subsets {
            let mut ai = vec![0];
            ai.extend(ins.iter().map(|&k| xs[k]));
            let mut bi = val.to_vec();
            bi.push(0);
            bi.extend(outs.iter().map(|&k| xs[k]));
            let term = sum(n, |m| {
                ai[0] = m;
                bi[value_rank] = m;
                alpha.at(&ai) * beta.at(&bi)
            }) * *sign;
            acc = Some(match acc {
                None => term,
                Some(s) => s + term,
            });
        }
        acc.unwrap()
    }))
}

/// Unnormalized alternation over the last two slots: `Alt(C)(x, y) = C(x, y) − C(y, x)`.
pub fn alt2(c: &Tensor) -> Tensor {
    let r = c.rank();
    c.sub(&c.swap_slots(r - 2, r - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::JetPoint;
    use std::f64::consts::PI;

    fn flat_geo(order: usize) -> (Geo, Vec<Jet>) {
        let x = JetPoint::new(0, vec![0.21, 0.37]).lift(order).unwrap();
        let one = x[0].constant_like(1.0);
        let g = Tensor::from_fn(2, &[Down, Down], |i| if i[0] == i[1] { one.clone() } else { one.zero_like() });
        (Geo::new(g, one, None).unwrap(), x)
    }

    #[test]
    fn flat_gradient_and_laplacian_of_fourier_mode() {
        let (geo, x) = flat_geo(3);
        let u = (&x[0] * (2.0 * PI)).sin();
        let du = geo.d_scalar(&u);
        assert!((du.data[0].value() - 2.0 * PI * (2.0 * PI * 0.21).cos()).abs() < 1e-14);
        assert_eq!(du.data[1].value(), 0.0);
        let lap = geo.laplacian(&u);
        assert!((lap.value() - 4.0 * PI * PI * u.value()).abs() < 1e-12);
        assert!(geo.gamma.max_abs() == 0.0);
        assert!(geo.riem.as_ref().unwrap().max_abs() == 0.0);
    }

    #[test]
    fn contraction_examples() {
        let (_, x) = flat_geo(1);
        let one = x[0].constant_like(1.0);
        let id = Tensor::identity(2, &one);
        let sym = Tensor::from_fn(2, &[Down, Down], |i| one.scale((1 + i[0] + i[1]) as f64));
        assert_eq!(contraction(&id, &sym).unwrap().max_abs(), 0.0);
        let anti = Tensor::from_fn(2, &[Down, Down], |i| one.scale(i[0] as f64 - i[1] as f64));
        let c = contraction(&id, &anti).unwrap();
        assert_eq!(c.sub(&anti.scale(2.0)).max_abs(), 0.0);
        assert!(contraction(&sym, &anti).is_err());
        assert_eq!(generalized_contraction(&Tensor::vector(vec![one.clone(), one.clone()]), &anti, 0).unwrap_err(), GeomError::BadDegree);
    }
}
