//! Complex-structure operators on Kähler fixtures.
//!
//! T_X-valued q-forms are real tensors with the value slot first: a vector field
//! (q = 0), an endomorphism `[Up, Down]` (q = 1) or `[Up, Down, Down]` (q = 2).
//! `∇^{0,1}_ξ T = ½(∇_ξ T + J∇_{Jξ} T)` with J acting on the value slot, and
//! `∂̄ = Alt ∇^{0,1}` without normalization. Complex-valued objects are carried as
//! real/imaginary pairs.

use crate::tensor::{sum, Down, Tensor, Up};
use crate::tensorcalc::{contraction, generalized_contraction, need_order, Geo, GeomError};
use crate::Jet;

type Res<T> = Result<T, GeomError>;

/// A complex scalar `re + i im`.
#[derive(Clone, Debug)]
pub struct Cx {
    pub re: Jet,
    pub im: Jet,
}

impl Cx {
    pub fn new(re: Jet, im: Jet) -> Cx {
        Cx { re, im }
    }

    pub fn real(re: Jet) -> Cx {
        let im = re.zero_like();
        Cx { re, im }
    }

    pub fn conj(&self) -> Cx {
        Cx { re: self.re.clone(), im: -&self.im }
    }

    pub fn add(&self, o: &Cx) -> Cx {
        Cx { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        Cx { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn scale(&self, s: f64) -> Cx {
        Cx { re: &self.re * s, im: &self.im * s }
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        Cx { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    pub fn abs_value(&self) -> f64 {
        self.re.value().hypot(self.im.value())
    }
}

/// A complex tensor `re + i im` with shared valence.
#[derive(Clone, Debug)]
pub struct CTensor {
    pub re: Tensor,
    pub im: Tensor,
}

impl CTensor {
    pub fn new(re: Tensor, im: Tensor) -> CTensor {
        CTensor { re, im }
    }

    pub fn real(re: Tensor) -> CTensor {
        let im = re.map(|x| x.zero_like());
        CTensor { re, im }
    }

    pub fn add(&self, o: &CTensor) -> CTensor {
        CTensor { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CTensor) -> CTensor {
        CTensor { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn scale(&self, s: f64) -> CTensor {
        CTensor { re: self.re.scale(s), im: self.im.scale(s) }
    }

    /// Multiplication by `a + ib`.
    pub fn cmul(&self, a: f64, b: f64) -> CTensor {
        CTensor { re: self.re.scale(a).sub(&self.im.scale(b)), im: self.re.scale(b).add(&self.im.scale(a)) }
    }

    pub fn conj(&self) -> CTensor {
        CTensor { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn swap_slots(&self, a: usize, b: usize) -> CTensor {
        CTensor { re: self.re.swap_slots(a, b), im: self.im.swap_slots(a, b) }
    }

    pub fn max_abs(&self) -> f64 {
        self.re.data.iter().zip(&self.im.data).map(|(a, b)| a.value().hypot(b.value())).fold(0.0, f64::max)
    }
}

/// A T^{1,0}-valued (0, p)-form, p ∈ {0, 1}, with slots `[Up, Down^p]`.
#[derive(Clone, Debug)]
pub struct CForm {
    pub degree: usize,
    pub t: CTensor,
}

pub fn j_of(geo: &Geo) -> Res<&Tensor> {
    geo.j()
}

/// `J` applied to the Up slot `s`.
pub fn apply_j(j: &Tensor, t: &Tensor, s: usize) -> Tensor {
    assert_eq!(t.slots[s], Up);
    let n = t.dim;
    Tensor::from_fn(n, &t.slots, |i| {
        let mut tmp = i.to_vec();
        sum(n, |m| {
            tmp[s] = m;
            j.at(&[i[s], m]) * t.at(&tmp)
        })
    })
}

/// `t` with `J` inserted into the Down slot `s`, i.e. `t(…, Jξ, …)`.
pub fn precompose_j(j: &Tensor, t: &Tensor, s: usize) -> Tensor {
    assert_eq!(t.slots[s], Down);
    let n = t.dim;
    Tensor::from_fn(n, &t.slots, |i| {
        let mut tmp = i.to_vec();
        sum(n, |m| {
            tmp[s] = m;
            j.at(&[m, i[s]]) * t.at(&tmp)
        })
    })
}

/// Sup of the values of `AJ + JA`.
pub fn anti_linearity_defect(geo: &Geo, a: &Tensor) -> Res<f64> {
    let j = geo.j()?;
    Ok(a.compose(j).add(&j.compose(a)).max_abs())
}

/// Projects an endomorphism onto its J-anti-linear part `½(A + JAJ)`.
pub fn anti_linear_part(j: &Tensor, a: &Tensor) -> Tensor {
    a.add(&j.compose(a).compose(j)).scale(0.5)
}

/// Splits a tensor whose slot 0 is a derivative slot into `(∇^{1,0}, ∇^{0,1})`, with J
/// acting on the Up slot `value_slot`.
pub fn bidegree_split(geo: &Geo, nt: &Tensor, value_slot: usize) -> Res<(Tensor, Tensor)> {
    let j = geo.j()?;
    let twisted = apply_j(j, &precompose_j(j, nt, 0), value_slot);
    Ok((nt.sub(&twisted).scale(0.5), nt.add(&twisted).scale(0.5)))
}

/// `∇^{0,1} T` for a tensor whose first slot is its value slot.
pub fn nabla01(geo: &Geo, t: &Tensor) -> Res<Tensor> {
    Ok(bidegree_split(geo, &geo.nabla(t), 1)?.1)
}

pub fn nabla10(geo: &Geo, t: &Tensor) -> Res<Tensor> {
    Ok(bidegree_split(geo, &geo.nabla(t), 1)?.0)
}

/// ∂̄ξ as an endomorphism: `(∂̄ξ)(η) = ∇^{0,1}_η ξ`.
pub fn dbar_vf(geo: &Geo, xi: &Tensor) -> Res<Tensor> {
    need_order(xi, 1)?;
    Ok(nabla01(geo, xi)?.swap_slots(0, 1))
}

/// ∂̄A for a T_X-valued 1-form: `(∂̄A)(ξ, η) = ∇^{0,1}_ξ A(η) − ∇^{0,1}_η A(ξ)`.
pub fn dbar_form(geo: &Geo, a: &Tensor) -> Res<Tensor> {
    need_order(a, 1)?;
    let n = nabla01(geo, a)?.swap_slots(0, 1);
    Ok(n.sub(&n.swap_slots(1, 2)))
}

/// ∂̄ on T_X-valued q-forms, q ∈ {0, 1}.
pub fn dbar_t(geo: &Geo, t: &Tensor) -> Res<Tensor> {
    match t.rank() {
        1 => dbar_vf(geo, t),
        2 => dbar_form(geo, t),
        r => Err(GeomError::UnsupportedDegree(r - 1)),
    }
}

/// The weighted formal adjoint `∂̄*^{g,Ω}` on T_X-valued q-forms, q ∈ {1, 2}.
pub fn dbar_adjoint(geo: &Geo, t: &Tensor) -> Res<Tensor> {
    geo.j()?;
    need_order(t, 1)?;
    match t.rank() {
        2 => Ok(geo.adjoint_endo(t)),
        3 => Ok(geo.adjoint(t, 1).scale(2.0)),
        r => Err(GeomError::UnsupportedDegree(r - 1)),
    }
}

/// Anti-holomorphic Ω-Hodge-Witten Laplacian on T_X-valued q-forms, q ∈ {0, 1}.
pub fn hodge_witten(geo: &Geo, t: &Tensor, q: usize) -> Res<Tensor> {
    geo.j()?;
    if q >= 2 {
        return Err(GeomError::UnsupportedDegree(q));
    }
    if t.rank() != q + 1 || t.slots[0] != Up {
        return Err(GeomError::BadValence(format!("expected a T_X-valued {q}-form")));
    }
    need_order(t, 2)?;
    match q {
        0 => Ok(geo.adjoint_endo(&dbar_vf(geo, t)?)),
        _ => {
            let first = dbar_vf(geo, &geo.adjoint_endo(t))?;
            let second = geo.adjoint(&dbar_form(geo, t)?, 1);
            Ok(first.add(&second))
        }
    }
}

/// `∂^g ∇f = ½(∇²f − J∇_{J·}∇f)` as an endomorphism.
pub fn partial_grad_f(geo: &Geo) -> Res<Tensor> {
    Ok(bidegree_split(geo, &geo.nabla(&geo.grad_f), 1)?.0.swap_slots(0, 1))
}

/// The weight terms `∇f ⌐ ∇^{0,1}A + A ∂^g∇f` separating Δ^{Ω,−J} from Δ^{−J}.
pub fn hodge_weight_terms(geo: &Geo, a: &Tensor) -> Res<Tensor> {
    let n01 = nabla01(geo, a)?;
    let gf = geo.grad_f.truncate(n01.order());
    let first = n01.insert(0, &gf);
    let second = a.truncate(n01.order()).compose(&partial_grad_f(geo)?);
    Ok(first.add(&second))
}

/// Three evaluations of `∂̄*^{g,Ω}A` for anti-linear A: the weighted adjoint, the
/// unweighted adjoint plus `A∇f`, and `−Tr_g ∇^{1,0}A + A∇f` (the (0,1) trace vanishes).
pub fn dbar_adjoint_routes(geo: &Geo, a: &Tensor) -> Res<[Tensor; 3]> {
    need_order(a, 1)?;
    let r1 = dbar_adjoint(geo, a)?;
    let a_gf = a.apply(&geo.grad_f.truncate(a.order())).truncate(a.order() - 1);
    let r2 = geo.unweighted().adjoint_endo(a).add(&a_gf);
    let n10 = nabla10(geo, a)?;
    let tr = geo.raise(&n10, 0).trace(0, 2);
    let r3 = tr.neg().add(&a_gf);
    Ok([r1, r2, r3])
}

/// `B^Ω u = g(∇u, J∇f) = du(J∇f)`.
pub fn b_operator(geo: &Geo, u: &Jet) -> Res<Jet> {
    let j = geo.j()?;
    let jgf = j.apply(&geo.grad_f);
    let du = geo.d_scalar(u);
    Ok(sum(geo.dim, |a| &du.data[a] * &jgf.data[a]))
}

/// `B^Ω u` computed as `div^Ω(J∇u)`.
pub fn b_operator_div(geo: &Geo, u: &Jet) -> Res<Jet> {
    let j = geo.j()?;
    Ok(geo.div(&j.apply(&geo.grad(u))))
}

/// `Δ^Ω_{g,J} u = Δ^Ω u − i B^Ω u`.
pub fn complex_laplacian(geo: &Geo, u: &Cx) -> Res<Cx> {
    let (l1, l2) = (geo.laplacian(&u.re), geo.laplacian(&u.im));
    let (b1, b2) = (b_operator(geo, &u.re)?, b_operator(geo, &u.im)?);
    Ok(Cx { re: l1 + b2, im: l2 - b1 })
}

/// `(Δ^Ω_{g,J} − 2) u`.
pub fn complex_laplacian_shifted(geo: &Geo, u: &Cx) -> Res<Cx> {
    let l = complex_laplacian(geo, u)?;
    Ok(l.sub(&Cx { re: u.re.truncate(l.re.order()), im: u.im.truncate(l.im.order()) }.scale(2.0)))
}

/// `P^Ω_{g,J} w = (Δ^Ω_{g,J} − 2) conj((Δ^Ω_{g,J} − 2) w)` for real `w`; needs jets of order 4.
pub fn p_operator(geo: &Geo, w: &Jet) -> Res<Cx> {
    if w.order() < 4 {
        return Err(GeomError::OrderExhausted { need: 4, have: w.order() });
    }
    let inner = complex_laplacian_shifted(geo, &Cx::real(w.clone()))?.conj();
    complex_laplacian_shifted(geo, &inner)
}

/// `∇_{g,J} ψ̄ = ∇ψ₁ − J∇ψ₂`.
pub fn nabla_gj_conj(geo: &Geo, psi: &Cx) -> Res<Tensor> {
    let j = geo.j()?;
    Ok(geo.grad(&psi.re).sub(&j.apply(&geo.grad(&psi.im))))
}

// ---------------------------------------------------------------------------
// complex forms: Lie bracket and Maurer-Cartan

fn cnabla(geo: &Geo, t: &CTensor) -> CTensor {
    CTensor { re: geo.nabla(&t.re), im: geo.nabla(&t.im) }
}

/// Complex `(∇^{1,0}, ∇^{0,1})` split in the derivative slot: `½(∇_ξ ∓ i∇_{Jξ})`.
fn cdecompose(j: &Tensor, nt: &CTensor) -> (CTensor, CTensor) {
    let jr = precompose_j(j, &nt.re, 0);
    let ji = precompose_j(j, &nt.im, 0);
    // −i(jr + i ji) = ji − i jr
    let minus_i = CTensor { re: ji.clone(), im: jr.neg() };
    let plus_i = CTensor { re: ji.neg(), im: jr };
    (nt.add(&minus_i).scale(0.5), nt.add(&plus_i).scale(0.5))
}

/// Complex-bilinear generalized contraction, with interior product when `alpha` is a vector.
fn ccontract(alpha: &CTensor, beta: &CTensor) -> Res<CTensor> {
    let gc = |a: &Tensor, b: &Tensor| -> Res<Tensor> {
        if a.rank() == 1 {
            // (ξ ⌐ β)(…) = β(ξ, …) on the first form slot
            Ok(b.insert(1, a))
        } else {
            generalized_contraction(a, b, 1)
        }
    };
    let rr = gc(&alpha.re, &beta.re)?;
    let ii = gc(&alpha.im, &beta.im)?;
    let ri = gc(&alpha.re, &beta.im)?;
    let ir = gc(&alpha.im, &beta.re)?;
    Ok(CTensor { re: rr.sub(&ii), im: ri.add(&ir) })
}

/// `∂^ω β = Alt ∇^{1,0} β` for a T^{1,0}-valued (0, q)-form, value slot first.
fn cpartial(geo: &Geo, beta: &CForm) -> Res<CTensor> {
    let j = geo.j()?;
    let (n10, _) = cdecompose(j, &cnabla(geo, &beta.t));
    let v = n10.swap_slots(0, 1);
    Ok(match beta.degree {
        0 => v,
        1 => v.sub(&v.swap_slots(1, 2)),
        d => return Err(GeomError::UnsupportedDegree(d)),
    })
}

/// Complex `∂̄ = Alt ∇^{0,1}` on a T^{1,0}-valued (0,1)-form.
fn cdbar1(geo: &Geo, theta: &CTensor) -> Res<CTensor> {
    let j = geo.j()?;
    let (_, n01) = cdecompose(j, &cnabla(geo, theta));
    let v = n01.swap_slots(0, 1);
    Ok(v.sub(&v.swap_slots(1, 2)))
}

/// Commutator of complex vector fields in coordinates: `X^b ∂_b Y^a − Y^b ∂_b X^a`.
fn cbracket_vf(x: &CTensor, y: &CTensor) -> CTensor {
    let n = x.re.dim;
    let comp = |xr: &Tensor, xi: &Tensor, yr: &Tensor, yi: &Tensor| -> (Tensor, Tensor) {
        let re = Tensor::vector(
            (0..n)
                .map(|a| sum(n, |b| &xr.data[b] * yr.data[a].d(b) - &xi.data[b] * yi.data[a].d(b)))
                .collect(),
        );
        let im = Tensor::vector(
            (0..n)
                .map(|a| sum(n, |b| &xr.data[b] * yi.data[a].d(b) + &xi.data[b] * yr.data[a].d(b)))
                .collect(),
        );
        (re, im)
    };
    let (p_re, p_im) = comp(&x.re, &x.im, &y.re, &y.im);
    let (q_re, q_im) = comp(&y.re, &y.im, &x.re, &x.im);
    CTensor { re: p_re.sub(&q_re), im: p_im.sub(&q_im) }
}

/// `α(∂_{z̄_k})` for a (0,1)-form: `½(α(∂_{x_k}) + iα(∂_{y_k}))`.
fn frame_component(alpha: &CTensor, k: usize) -> CTensor {
    let n = alpha.re.dim;
    let col = |t: &Tensor, c: usize| Tensor::vector((0..n).map(|a| t.at(&[a, c]).clone()).collect());
    let x = CTensor { re: col(&alpha.re, 2 * k), im: col(&alpha.im, 2 * k) };
    let y = CTensor { re: col(&alpha.re, 2 * k + 1), im: col(&alpha.im, 2 * k + 1) };
    x.add(&y.cmul(0.0, 1.0)).scale(0.5)
}

/// `dz̄_k(∂_c)` as (re, im).
fn dzbar(k: usize, c: usize) -> (f64, f64) {
    if c == 2 * k {
        (1.0, 0.0)
    } else if c == 2 * k + 1 {
        (0.0, -1.0)
    } else {
        (0.0, 0.0)
    }
}

/// Exterior Lie product of T^{1,0}-valued (0,p)/(0,q)-forms with p, q ∈ {0, 1}, through the
/// coordinate frame `ζ_k = ∂_{z_k}` and coframe `dz̄_k`.
pub fn lie_bracket_forms(geo: &Geo, alpha: &CForm, beta: &CForm) -> Res<CForm> {
    geo.j()?;
    let n = geo.dim;
    let m = n / 2;
    let comps = |f: &CForm| -> Vec<CTensor> {
        match f.degree {
            0 => vec![f.t.clone()],
            _ => (0..m).map(|k| frame_component(&f.t, k)).collect(),
        }
    };
    let (ca, cb) = (comps(alpha), comps(beta));
    let order = alpha.t.re.order().min(beta.t.re.order()) - 1;
    let like = alpha.t.re.like().truncate(order);
    let degree = alpha.degree + beta.degree;
    if degree > 2 || alpha.degree > 1 || beta.degree > 1 {
        return Err(GeomError::UnsupportedDegree(degree));
    }
    let mut slots = vec![Up];
    slots.extend(std::iter::repeat_n(Down, degree));
    let mut re = Tensor::zeros(n, &slots, &like);
    let mut im = Tensor::zeros(n, &slots, &like);
    for (k, xa) in ca.iter().enumerate() {
        for (l, xb) in cb.iter().enumerate() {
            let br = cbracket_vf(xa, xb);
            // coefficient form: dz̄_K ∧ dz̄_L evaluated on coordinate vectors
            for idx in crate::tensor::multi_indices(n, degree) {
                let (cr, ci) = match (alpha.degree, beta.degree) {
                    (0, 0) => (1.0, 0.0),
                    (1, 0) => dzbar(k, idx[0]),
                    (0, 1) => dzbar(l, idx[0]),
                    _ => {
                        let (a1, b1) = dzbar(k, idx[0]);
                        let (a2, b2) = dzbar(l, idx[1]);
                        let (a3, b3) = dzbar(k, idx[1]);
                        let (a4, b4) = dzbar(l, idx[0]);
                        (a1 * a2 - b1 * b2 - (a3 * a4 - b3 * b4), a1 * b2 + b1 * a2 - (a3 * b4 + b3 * a4))
                    }
                };
                if cr == 0.0 && ci == 0.0 {
                    continue;
                }
                for a in 0..n {
                    let mut full = vec![a];
                    full.extend(&idx);
                    let (vr, vi) = (&br.re.data[a], &br.im.data[a]);
                    let r = vr * cr - vi * ci;
                    let i = vr * ci + vi * cr;
                    *re.at_mut(&full) += &r;
                    *im.at_mut(&full) += &i;
                }
            }
        }
    }
    Ok(CForm { degree, t: CTensor { re, im } })
}

/// Right-hand side of the exterior Lie product lemma:
/// `α ⌐ ∂^ω β − (−1)^{|α||β|} β ⌐ ∂^ω α`.
pub fn lie_bracket_connection(geo: &Geo, alpha: &CForm, beta: &CForm) -> Res<CForm> {
    let pa = cpartial(geo, alpha)?;
    let pb = cpartial(geo, beta)?;
    let o = pa.re.order();
    let trunc = |t: &CTensor| CTensor { re: t.re.truncate(o), im: t.im.truncate(o) };
    let left = ccontract(&trunc(&alpha.t), &pb)?;
    let right = ccontract(&trunc(&beta.t), &pa)?;
    let sign = if alpha.degree * beta.degree % 2 == 0 { 1.0 } else { -1.0 };
    Ok(CForm { degree: alpha.degree + beta.degree, t: left.sub(&right.scale(sign)) })
}

/// The T^{1,0}-valued (0,1)-form `θ = ½(μ − iJμ)` attached to an anti-linear μ.
pub fn theta_of(j: &Tensor, mu: &Tensor) -> CTensor {
    CTensor { re: mu.scale(0.5), im: j.compose(mu).scale(-0.5) }
}

/// The T^{1,0}-valued vector `½(ξ − iJξ)`.
pub fn vf10(j: &Tensor, xi: &Tensor) -> CTensor {
    CTensor { re: xi.scale(0.5), im: j.apply(xi).scale(-0.5) }
}

#[derive(Clone, Debug)]
pub struct McResiduals {
    /// `∂̄θ + θ ⌐ ∂^ω θ`.
    pub complex: CTensor,
    /// `∂̄μ + μ ⌐ ∇^{1,0}μ`.
    pub real: Tensor,
    /// `R_re − (R_cx + conj R_cx)`.
    pub equivalence: Tensor,
    /// `(I+μ) ⌐ J∇μ − (I+μ)J ⌐ ∇μ − 2J R_re`.
    pub explicit: Tensor,
}

/// Maurer-Cartan residuals of an anti-linear μ in complex and real form, linked by `2θ = μ − iJμ`.
pub fn maurer_cartan_residuals(geo: &Geo, mu: &Tensor) -> Res<McResiduals> {
    let j = geo.j()?.clone();
    need_order(mu, 1)?;
    let scale = mu.max_abs().max(1.0);
    if anti_linearity_defect(geo, mu)? > 1e-10 * scale {
        return Err(GeomError::BadInput("μ is not J-anti-linear".into()));
    }
    let theta = theta_of(&j, mu);
    let theta_form = CForm { degree: 1, t: theta.clone() };
    let p_theta = cpartial(geo, &theta_form)?;
    let o = p_theta.re.order();
    let th = CTensor { re: theta.re.truncate(o), im: theta.im.truncate(o) };
    let complex = cdbar1(geo, &theta)?.add(&ccontract(&th, &p_theta)?);

    let n10 = nabla10(geo, mu)?.swap_slots(0, 1);
    let mu_o = mu.truncate(o);
    let real = dbar_form(geo, mu)?.add(&contraction(&mu_o, &n10)?);
    let equivalence = real.sub(&complex.re.scale(2.0));

    let nmu = geo.nabla(mu).swap_slots(0, 1);
    let i_mu = Tensor::identity(geo.dim, &mu_o.data[0]).add(&mu_o);
    let j_nmu = apply_j(&j, &nmu, 0);
    let e = contraction(&i_mu, &j_nmu)?.sub(&contraction(&i_mu.compose(&j), &nmu)?);
    let explicit = e.sub(&apply_j(&j, &real, 0).scale(2.0));
    Ok(McResiduals { complex, real, equivalence, explicit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::{Fixture, FixtureKind};
    use crate::jet::JetPoint;

    fn kah4_point(order: usize) -> (Fixture, Geo, Vec<Jet>) {
        let fx = Fixture::builtin(FixtureKind::Kah4).unwrap();
        let p = JetPoint::new(0, vec![0.13, 0.71, 0.42, 0.05]);
        let x = p.lift(order).unwrap();
        let geo = fx.geo_at(0, &x).unwrap();
        (fx, geo, x)
    }

    fn random_anti_linear(geo: &Geo, x: &[Jet], seed: f64) -> Tensor {
        let n = geo.dim;
        let raw = Tensor::from_fn(n, &[Up, Down], |i| {
            let k = (i[0] * n + i[1]) as f64;
            (&x[i[0]] * (1.3 + k * 0.1 + seed)).sin() * (0.2 + 0.05 * k) + (&x[i[1]] * (0.7 * seed + 2.0)).cos() * 0.1
        });
        anti_linear_part(geo.j().unwrap(), &raw)
    }

    #[test]
    fn holomorphic_fields_on_fs_are_dbar_closed() {
        let fx = Fixture::builtin(FixtureKind::Fs).unwrap();
        for p in fx.sample_points(10, 2) {
            let x = p.lift(2).unwrap();
            let geo = fx.geo_at(p.chart, &x).unwrap();
            for i in 0..3 {
                let xi = fx.holomorphic_field(i, p.chart, &x);
                assert!(dbar_vf(&geo, &xi).unwrap().max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dbar_squared_vanishes_on_kah4() {
        let (_, geo, x) = kah4_point(4);
        let psi = Cx::new((&x[0] * 6.0).sin() * (&x[3] * 6.0).cos(), (&x[1] * 6.0 + &x[2] * 6.0).sin());
        let v = nabla_gj_conj(&geo, &psi).unwrap();
        let a = dbar_vf(&geo, &v).unwrap();
        assert!(anti_linearity_defect(&geo, &a).unwrap() < 1e-12);
        assert!(dbar_form(&geo, &a).unwrap().max_abs() < 1e-9);
    }

    #[test]
    fn hodge_witten_weight_relation() {
        let (_, geo, x) = kah4_point(3);
        let a = random_anti_linear(&geo, &x, 0.3);
        let lhs = hodge_witten(&geo, &a, 1).unwrap();
        let rhs = hodge_witten(&geo.unweighted(), &a, 1).unwrap().truncate(0).add(&hodge_weight_terms(&geo, &a).unwrap().truncate(0));
        assert!(lhs.truncate(0).sub(&rhs.truncate(0)).max_abs() < 1e-9);
        assert_eq!(hodge_witten(&geo, &a, 2).unwrap_err(), GeomError::UnsupportedDegree(2));
    }

    #[test]
    fn adjoint_routes_agree() {
        let (_, geo, x) = kah4_point(2);
        let a = random_anti_linear(&geo, &x, 1.1);
        let [r1, r2, r3] = dbar_adjoint_routes(&geo, &a).unwrap();
        assert!(r1.sub(&r2).max_abs() < 1e-11);
        assert!(r1.sub(&r3).max_abs() < 1e-11);
    }

    #[test]
    fn maurer_cartan_equivalence() {
        let (_, geo, x) = kah4_point(2);
        let mu = random_anti_linear(&geo, &x, 0.7);
        let r = maurer_cartan_residuals(&geo, &mu).unwrap();
        assert!(r.equivalence.max_abs() < 1e-10, "{}", r.equivalence.max_abs());
        assert!(r.explicit.max_abs() < 1e-10, "{}", r.explicit.max_abs());
        let bad = Tensor::identity(4, &x[0]);
        assert!(matches!(maurer_cartan_residuals(&geo, &bad), Err(GeomError::BadInput(_))));
    }

    #[test]
    fn lie_bracket_lemma() {
        let (_, geo, x) = kah4_point(2);
        let j = geo.j().unwrap().clone();
        let a = CForm { degree: 1, t: theta_of(&j, &random_anti_linear(&geo, &x, 0.2)) };
        let b = CForm { degree: 1, t: theta_of(&j, &random_anti_linear(&geo, &x, 0.9)) };
        let xi = Tensor::vector((0..4).map(|k| (&x[k] * 6.0 + 0.3 * k as f64).sin()).collect());
        let c = CForm { degree: 0, t: vf10(&j, &xi) };
        for (p, q) in [(&a, &b), (&c, &b), (&a, &c), (&c, &c)] {
            let lhs = lie_bracket_forms(&geo, p, q).unwrap();
            let rhs = lie_bracket_connection(&geo, p, q).unwrap();
            assert!(lhs.t.sub(&rhs.t).max_abs() < 1e-10, "p={} q={} {}", p.degree, q.degree, lhs.t.sub(&rhs.t).max_abs());
        }
    }
}
