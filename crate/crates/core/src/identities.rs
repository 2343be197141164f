//! Pointwise and integrated identities of the tensor calculus and Kähler layers.
//!
//! Pointwise checks evaluate both sides on seeded sample points with exact jets; integrated
//! checks use the fixture's own Ω-quadrature.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::backends::fields::{ScalarFn, TField};
use crate::backends::random::{FieldGen, SField};
use crate::backends::Fixture;
use crate::check::{CheckError, CheckSpec, Ctx, Residual, Suite, Tol, Verdict, ALL_FIXTURES, FS_ONLY, KAHLER};
use crate::jet::JetPoint;
use crate::kahler::{
    anti_linear_part, apply_j, b_operator, b_operator_div, bidegree_split, dbar_adjoint, dbar_adjoint_routes,
    dbar_form, dbar_vf, hodge_weight_terms, hodge_witten, lie_bracket_connection, lie_bracket_forms,
    maurer_cartan_residuals, nabla_gj_conj, p_operator, precompose_j, theta_of, vf10, CForm, Cx,
};
use crate::tensor::{Down, Tensor, Up};
use crate::tensorcalc::{contraction, generalized_contraction, Geo};
use crate::Jet;

type Res<T> = Result<T, CheckError>;

const NPTS: usize = 100;
const AMP: f64 = 0.5;

/// Seeded test fields of one check.
struct Fields<'a> {
    gen: FieldGen<'a>,
}

impl<'a> Fields<'a> {
    fn new(ctx: &Ctx<'a>, salt: u64) -> Self {
        Fields { gen: FieldGen::new(ctx.fx, ctx.seed ^ salt) }
    }

    fn scalar(&mut self) -> SField {
        self.gen.scalar(AMP)
    }

    fn form(&mut self) -> TField {
        self.gen.form(AMP)
    }

    fn sym2(&mut self) -> TField {
        self.gen.sym2(AMP)
    }

    fn bilinear(&mut self) -> TField {
        self.gen.bilinear(AMP, false)
    }
}

fn sval(f: &SField, chart: usize, x: &[Jet]) -> Jet {
    f.eval(chart, x)
}

pub(crate) fn vals(t: &Tensor) -> Tensor {
    t.truncate(0)
}

/// `a − b` on values.
pub(crate) fn vdiff(a: &Tensor, b: &Tensor) -> Tensor {
    vals(a).sub(&vals(b))
}

pub(crate) fn sdiff(a: &Jet, b: &Jet) -> Tensor {
    Tensor::scalar(a.truncate(0) - b.truncate(0))
}

/// Runs `body` at seeded sample points and accumulates the g-norms of the returned residuals.
pub(crate) fn pointwise<F>(ctx: &Ctx, order: usize, body: F) -> Res<Verdict>
where
    F: Fn(&Geo, usize, &[Jet]) -> Res<Vec<Tensor>> + Sync,
{
    let pts = ctx.fx.sample_points(NPTS, ctx.seed);
    let parts: Vec<Res<Residual>> = pts
        .par_iter()
        .map(|p| {
            let x = p.lift(order)?;
            let geo = ctx.fx.geo_at(p.chart, &x)?;
            let mut r = Residual::new();
            for t in body(&geo, p.chart, &x)? {
                r.push_tensor(&geo, &t);
            }
            Ok(r)
        })
        .collect();
    let mut res = Residual::new();
    for r in parts {
        res.merge(&r?);
    }
    Ok(Verdict::Measured(res.outcome().note("points", pts.len() as f64)))
}

/// Ω-integrals of `k` integrands evaluated together at every quadrature node.
pub(crate) fn integrals<F>(fx: &Fixture, order: usize, k: usize, body: F) -> Res<Vec<f64>>
where
    F: Fn(&Geo, usize, &[Jet]) -> Res<Vec<f64>> + Sync,
{
    let per_node: Vec<Res<Vec<f64>>> = fx.node_values(|p: &JetPoint| {
        let x = p.lift(order)?;
        let geo = fx.geo_at(p.chart, &x)?;
        body(&geo, p.chart, &x)
    });
    let mut cols = vec![Vec::with_capacity(per_node.len()); k];
    for v in per_node {
        for (c, x) in cols.iter_mut().zip(v?) {
            c.push(x);
        }
    }
    cols.iter().map(|c| Ok(fx.integrate(c)?)).collect()
}

pub(crate) fn measured(residuals: &[f64]) -> Verdict {
    let mut r = Residual::new();
    residuals.iter().for_each(|x| r.push(*x));
    Verdict::Measured(r.outcome())
}

/// A seeded g-orthogonal matrix, from the QR factor of a Gaussian-like matrix.
fn random_rotation(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0072_6f74);
    let m = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    let q = m.qr().q();
    (0..n * n).map(|k| q[(k / n, k % n)]).collect()
}

/// `∇A` as `(η, ξ) ↦ (∇_η A)ξ` stored with slots `[Up, Down ξ, Down η]`.
fn nabla_hat(geo: &Geo, a: &Tensor) -> Tensor {
    let na = geo.nabla(a);
    Tensor::from_fn(geo.dim, &[Up, Down, Down], |i| na.at(&[i[2], i[0], i[1]]).clone())
}

// ---------------------------------------------------------------------------
// Riemannian layer

fn id_nabla_g(ctx: &Ctx) -> Res<Verdict> {
    pointwise(ctx, 1, |geo, _, _| Ok(vec![geo.nabla(&geo.g)]))
}

fn id_nabla_j(ctx: &Ctx) -> Res<Verdict> {
    pointwise(ctx, 1, |geo, _, _| Ok(vec![geo.nabla(geo.j()?)]))
}

fn id_sharp(ctx: &Ctx) -> Res<Verdict> {
    let mut f = Fields::new(ctx, 0x01);
    let (v, b) = (f.sym2(), f.bilinear());
    pointwise(ctx, 1, |geo, c, x| {
        let v = v(c, x);
        let b = b(c, x);
        let vs = geo.sharp(&v);
        Ok(vec![
            vdiff(&geo.flat(&vs), &v),
            vdiff(&geo.flat(&geo.sharp(&b)), &b),
            // v* of a symmetric v is g-self-adjoint
            vdiff(&geo.transpose(&vs), &vs),
        ])
    })
}

fn id_div_density(ctx: &Ctx) -> Res<Verdict> {
    let a = Fields::new(ctx, 0x02).form();
    pointwise(ctx, 2, |geo, c, x| {
        let xi = geo.sharp_form(&a(c, x));
        Ok(vec![sdiff(&geo.div(&xi), &geo.div_density(&xi))])
    })
}

fn id_div_grad(ctx: &Ctx) -> Res<Verdict> {
    let u = Fields::new(ctx, 0x03).scalar();
    pointwise(ctx, 2, |geo, c, x| {
        let u = sval(&u, c, x);
        let d = geo.div(&geo.grad(&u));
        let l = geo.laplacian(&u);
        Ok(vec![Tensor::scalar(d.truncate(0) + l.truncate(0))])
    })
}

fn id_lap_adjoint(ctx: &Ctx) -> Res<Verdict> {
    let u = Fields::new(ctx, 0x04).scalar();
    pointwise(ctx, 2, |geo, c, x| {
        let u = sval(&u, c, x);
        Ok(vec![
            sdiff(&geo.laplacian(&u), &geo.laplacian_adjoint(&u)),
            // ∇*^Ω g = df
            vdiff(&geo.adjoint_sym2(&geo.g), &geo.df),
        ])
    })
}

fn id_mg_frame(ctx: &Ctx) -> Res<Verdict> {
    let mut f = Fields::new(ctx, 0x05);
    let (u, v) = (f.sym2(), f.sym2());
    let q = random_rotation(ctx.fx.dim(), ctx.seed);
    pointwise(ctx, 1, |geo, c, x| {
        let (u, v) = (u(c, x), v(c, x));
        let m = geo.m_form(&u, &v);
        Ok(vec![
            vdiff(&m, &geo.m_form_frame(&u, &v, &geo.frame(None))),
            vdiff(&m, &geo.m_form_frame(&u, &v, &geo.frame(Some(&q)))),
        ])
    })
}

fn id_mg_vv(ctx: &Ctx) -> Res<Verdict> {
    let v = Fields::new(ctx, 0x06).sym2();
    pointwise(ctx, 2, |geo, c, x| {
        let v = v(c, x);
        let vs = geo.sharp(&v);
        let lhs = geo.m_form(&v, &v);
        let w = geo.adjoint_endo(&vs);
        let first = v.truncate(w.order()).insert(0, &w).scale(2.0);
        let second = geo.flat_vec(&geo.adjoint_endo(&vs.compose(&vs))).scale(-2.0);
        let third = geo.d_scalar(&geo.norm2(&v)).scale(0.5);
        let rhs = vals(&first).add(&vals(&second)).add(&vals(&third));
        Ok(vec![vdiff(&lhs, &rhs)])
    })
}

fn id_contraction(ctx: &Ctx) -> Res<Verdict> {
    let mut f = Fields::new(ctx, 0x07);
    let (a1, a2, b, c3) = (f.bilinear(), f.bilinear(), f.bilinear(), f.bilinear());
    pointwise(ctx, 1, |geo, c, x| {
        let a1 = vals(&geo.sharp(&a1(c, x)));
        let a2 = vals(&geo.sharp(&a2(c, x)));
        let b = vals(&b(c, x));
        let id = Tensor::identity(geo.dim, &a1.data[0]);
        // a T_X-valued 2-form
        let s = vals(&geo.sharp(&c3(c, x)));
        let w = Tensor::from_fn(geo.dim, &[Up, Down, Down], |i| s.at(&[i[0], i[1]]) * b.at(&[i[1], i[2]]));
        let w = w.sub(&w.swap_slots(1, 2));
        let lin = contraction(&a1.add(&a2.scale(2.0)), &b)?;
        let split = contraction(&a1, &b)?.add(&contraction(&a2, &b)?.scale(2.0));
        Ok(vec![
            lin.sub(&split),
            contraction(&id, &b)?.sub(&b.sub(&b.swap_slots(0, 1))),
            contraction(&a1, &b)?.sub(&generalized_contraction(&a1, &b, 0)?),
            contraction(&a1, &w)?.sub(&generalized_contraction(&a1, &w, 1)?),
        ])
    })
}

fn id_div_ua(ctx: &Ctx) -> Res<Verdict> {
    let mut f = Fields::new(ctx, 0x08);
    let (u, b) = (f.scalar(), f.bilinear());
    pointwise(ctx, 1, |geo, c, x| {
        let u = sval(&u, c, x);
        let a = geo.sharp(&b(c, x));
        let lhs = geo.adjoint_endo(&a.mul_jet(&u));
        let rhs = vals(&a.apply(&geo.grad(&u)).neg()).add(&vals(&geo.adjoint_endo(&a).mul_jet(&u.truncate(0))));
        Ok(vec![vdiff(&lhs, &rhs)])
    })
}

fn id_div_uxi(ctx: &Ctx) -> Res<Verdict> {
    let mut f = Fields::new(ctx, 0x09);
    let (u, a) = (f.scalar(), f.form());
    pointwise(ctx, 1, |geo, c, x| {
        let u = sval(&u, c, x);
        let xi = geo.sharp_form(&a(c, x));
        let lhs = geo.div(&xi.mul_jet(&u));
        let rhs = geo.g_vec(&vals(&geo.grad(&u)), &vals(&xi)) + u.truncate(0) * geo.div(&xi).truncate(0);
        Ok(vec![sdiff(&lhs, &rhs)])
    })
}

fn id_div_a2(ctx: &Ctx) -> Res<Verdict> {
    let v = Fields::new(ctx, 0x0a).sym2();
    pointwise(ctx, 1, |geo, c, x| {
        let a = geo.sharp(&v(c, x));
        let lhs = geo.adjoint_endo(&a.compose(&a));
        let rhs = vals(&geo.tr_nabla_a_a(&a).neg()).add(&vals(&a.truncate(0).apply(&vals(&geo.adjoint_endo(&a)))));
        Ok(vec![vdiff(&lhs, &rhs)])
    })
}

fn id_div_ev(ctx: &Ctx) -> Res<Verdict> {
    let mut f = Fields::new(ctx, 0x0b);
    let (v, a) = (f.sym2(), f.form());
    pointwise(ctx, 1, |geo, c, x| {
        let am = geo.sharp(&v(c, x));
        let xi = geo.sharp_form(&a(c, x));
        let lhs = geo.div(&am.apply(&xi));
        let nxi = geo.nabla(&xi).swap_slots(0, 1);
        let rhs = geo.pair(&vals(&am), &vals(&nxi)) - geo.g_vec(&vals(&geo.adjoint_endo(&am)), &vals(&xi));
        Ok(vec![sdiff(&lhs, &rhs)])
    })
}

fn id_div_tr(ctx: &Ctx) -> Res<Verdict> {
    let v = Fields::new(ctx, 0x0c).sym2();
    pointwise(ctx, 2, |geo, c, x| {
        let a = geo.sharp(&v(c, x));
        let lhs = geo.div(&geo.tr_nabla_a_a(&a));
        let hat = nabla_hat(geo, &a);
        let star = geo.adjoint(&hat, 1);
        let na = vals(&geo.nabla(&a));
        let hat_pair = geo.pair(&vals(&hat), &na.swap_slots(0, 1));
        let rhs = hat_pair - geo.pair(&vals(&star), &vals(&a));
        Ok(vec![sdiff(&lhs, &rhs)])
    })
}

// ---------------------------------------------------------------------------
// Kähler layer

pub(crate) fn anti_linear(geo: &Geo, b: &Tensor) -> Res<Tensor> {
    Ok(anti_linear_part(geo.j()?, &geo.sharp(b)))
}

fn id_split(ctx: &Ctx) -> Res<Verdict> {
    let a = Fields::new(ctx, 0x10).form();
    pointwise(ctx, 1, |geo, c, x| {
        let j = geo.j()?;
        let xi = geo.sharp_form(&a(c, x));
        let n = geo.nabla(&xi);
        let (n10, n01) = bidegree_split(geo, &n, 1)?;
        Ok(vec![
            n10.add(&n01).sub(&n),
            precompose_j(j, &n01, 0).add(&apply_j(j, &n01, 1)),
            precompose_j(j, &n10, 0).sub(&apply_j(j, &n10, 1)),
        ])
    })
}

fn id_holo(ctx: &Ctx) -> Res<Verdict> {
    let fx = ctx.fx;
    pointwise(ctx, 1, |geo, c, x| {
        (0..fx.holomorphic_count()).map(|i| Ok(dbar_vf(geo, &fx.holomorphic_field(i, c, x))?)).collect()
    })
}

fn id_dbar2(ctx: &Ctx) -> Res<Verdict> {
    let mut f = Fields::new(ctx, 0x11);
    let (a, p, q) = (f.form(), f.scalar(), f.scalar());
    pointwise(ctx, 3, |geo, c, x| {
        let xi = geo.sharp_form(&a(c, x));
        let psi = Cx::new(sval(&p, c, x), sval(&q, c, x));
        let eta = dbar_vf(geo, &nabla_gj_conj(geo, &psi)?)?;
        let j = geo.j()?;
        Ok(vec![
            dbar_form(geo, &dbar_vf(geo, &xi)?)?,
            dbar_form(geo, &eta)?,
            eta.compose(j).add(&j.compose(&eta)),
        ])
    })
}

fn id_hw_weight(ctx: &Ctx) -> Res<Verdict> {
    let b = Fields::new(ctx, 0x12).bilinear();
    pointwise(ctx, 2, |geo, c, x| {
        let a = anti_linear(geo, &b(c, x))?;
        let lhs = hodge_witten(geo, &a, 1)?;
        let rhs = vals(&hodge_witten(&geo.unweighted(), &a, 1)?).add(&vals(&hodge_weight_terms(geo, &a)?));
        Ok(vec![vdiff(&lhs, &rhs)])
    })
}

fn id_dbar_star(ctx: &Ctx) -> Res<Verdict> {
    let b = Fields::new(ctx, 0x13).bilinear();
    pointwise(ctx, 1, |geo, c, x| {
        let a = anti_linear(geo, &b(c, x))?;
        let [r1, r2, r3] = dbar_adjoint_routes(geo, &a)?;
        Ok(vec![vdiff(&r1, &r2), vdiff(&r1, &r3)])
    })
}

fn id_b_div(ctx: &Ctx) -> Res<Verdict> {
    let u = Fields::new(ctx, 0x14).scalar();
    pointwise(ctx, 2, |geo, c, x| {
        let u = sval(&u, c, x);
        Ok(vec![sdiff(&b_operator(geo, &u)?, &b_operator_div(geo, &u)?)])
    })
}

fn id_p_real(ctx: &Ctx) -> Res<Verdict> {
    let u = Fields::new(ctx, 0x15).scalar();
    pointwise(ctx, 4, |geo, c, x| Ok(vec![Tensor::scalar(p_operator(geo, &sval(&u, c, x))?.im.truncate(0))]))
}

fn id_lie(ctx: &Ctx) -> Res<Verdict> {
    let mut f = Fields::new(ctx, 0x16);
    let (b1, b2, a) = (f.bilinear(), f.bilinear(), f.form());
    pointwise(ctx, 2, |geo, c, x| {
        let j = geo.j()?.clone();
        let t1 = CForm { degree: 1, t: theta_of(&j, &anti_linear(geo, &b1(c, x))?) };
        let t2 = CForm { degree: 1, t: theta_of(&j, &anti_linear(geo, &b2(c, x))?) };
        let z = CForm { degree: 0, t: vf10(&j, &geo.sharp_form(&a(c, x))) };
        let mut out = Vec::new();
        for (p, q) in [(&t1, &t2), (&z, &t2), (&t1, &z), (&z, &z)] {
            let lhs = lie_bracket_forms(geo, p, q)?;
            let rhs = lie_bracket_connection(geo, p, q)?;
            let d = lhs.t.sub(&rhs.t);
            out.push(vals(&d.re));
            out.push(vals(&d.im));
            // graded antisymmetry [α, β] = −(−1)^{pq}[β, α]
            let swapped = lie_bracket_forms(geo, q, p)?;
            let sign = if p.degree * q.degree % 2 == 0 { 1.0 } else { -1.0 };
            let e = lhs.t.add(&swapped.t.scale(sign));
            out.push(vals(&e.re));
            out.push(vals(&e.im));
        }
        Ok(out)
    })
}

fn id_mc(ctx: &Ctx) -> Res<Verdict> {
    let b = Fields::new(ctx, 0x17).bilinear();
    pointwise(ctx, 2, |geo, c, x| {
        let mu = anti_linear(geo, &b(c, x))?;
        let r = maurer_cartan_residuals(geo, &mu)?;
        Ok(vec![vals(&r.equivalence), vals(&r.explicit)])
    })
}

// ---------------------------------------------------------------------------
// integrated identities

fn id_int_div(ctx: &Ctx) -> Res<Verdict> {
    let a = Fields::new(ctx, 0x20).form();
    let r = integrals(ctx.fx, 1, 1, |geo, c, x| Ok(vec![geo.div(&geo.sharp_form(&a(c, x))).value()]))?;
    Ok(measured(&r))
}

fn id_int_adj(ctx: &Ctx) -> Res<Verdict> {
    let mut f = Fields::new(ctx, 0x21);
    let (u, a) = (f.sym2(), f.form());
    let r = integrals(ctx.fx, 1, 1, |geo, c, x| {
        let (u, a) = (u(c, x), a(c, x));
        let left = geo.pair(&vals(&geo.adjoint_sym2(&u)), &vals(&a));
        let right = geo.pair(&vals(&u), &vals(&geo.nabla(&a)));
        Ok(vec![(left - right).value()])
    })?;
    Ok(measured(&r))
}

fn id_int_lap(ctx: &Ctx) -> Res<Verdict> {
    let mut f = Fields::new(ctx, 0x22);
    let (u, w) = (f.scalar(), f.scalar());
    let r = integrals(ctx.fx, 2, 3, |geo, c, x| {
        let (u, w) = (sval(&u, c, x), sval(&w, c, x));
        let (lu, lw) = (geo.laplacian(&u).value(), geo.laplacian(&w).value());
        let du = geo.d_scalar(&u);
        Ok(vec![lu * w.value() - u.value() * lw, u.value() * lu - geo.norm2(&du).value(), u.value() * lu])
    })?;
    // symmetry, the energy identity, and positivity of ∫uΔu
    Ok(measured(&[r[0], r[1], (-r[2]).max(0.0)]))
}

/// A T_X-valued 2-form of type (0,2): anti-linear in each form slot, alternating.
fn form02(geo: &Geo, t: &Tensor) -> Res<Tensor> {
    let j = geo.j()?;
    let p1 = t.add(&apply_j(j, &precompose_j(j, t, 1), 0)).scale(0.5);
    let p2 = p1.add(&apply_j(j, &precompose_j(j, &p1, 2), 0)).scale(0.5);
    Ok(p2.sub(&p2.swap_slots(1, 2)))
}

fn id_int_dbar(ctx: &Ctx) -> Res<Verdict> {
    let mut f = Fields::new(ctx, 0x23);
    let (a, b1, b2) = (f.form(), f.bilinear(), f.bilinear());
    let r = integrals(ctx.fx, 1, 2, |geo, c, x| {
        let xi = geo.sharp_form(&a(c, x));
        let a1 = anti_linear(geo, &b1(c, x))?;
        // q = 0 against an anti-linear endomorphism
        let zero = geo.pair(&vals(&dbar_vf(geo, &xi)?), &vals(&a1)) - geo.pair(&vals(&xi), &vals(&dbar_adjoint(geo, &a1)?));
        // q = 1 against a (0,2)-form
        let s = geo.sharp(&b2(c, x));
        let t = Tensor::from_fn(geo.dim, &[Up, Down, Down], |i| s.at(&[i[0], i[1]]) * (1.0 - 0.3 * i[2] as f64));
        let w = form02(geo, &t)?;
        let one = geo.pair(&vals(&dbar_form(geo, &a1)?), &vals(&w)) - geo.pair(&vals(&a1), &vals(&dbar_adjoint(geo, &w)?));
        Ok(vec![zero.value(), one.value()])
    })?;
    Ok(measured(&r))
}

macro_rules! id_check {
    ($id:expr, $fx:expr, $anchor:expr, $stmt:expr, $run:expr) => {
        CheckSpec { id: $id, suite: Suite::Identity, fixtures: $fx, statement: $stmt, anchor: $anchor, tol: Tol::Identity, run: $run }
    };
}

pub static CHECKS: &[CheckSpec] = &[
    id_check!("ID-DIV-DENSITY", ALL_FIXTURES, "Ω-divergence as d(ξ⌐Ω)/Ω", "div^Ω ξ = Tr ∇ξ − df(ξ) = ρ⁻¹∂_a(ρξ^a)", id_div_density),
    id_check!("ID-B-DIV", KAHLER, "first order operator B^Ω", "B^Ω u = g(∇u, J∇f) = div^Ω(J∇u)", id_b_div),
    id_check!("ID-CONTRACT", ALL_FIXTURES, "Appendix contraction operation", "A⌐B is bilinear, I⌐B = B − Bᵗ, and the general contraction agrees at p = 1, q = 2", id_contraction),
    id_check!("ID-DBAR2", KAHLER, "∂̄ on T_X-valued forms", "∂̄∂̄ξ = 0, ∂̄∂̄∇_{g,J}ψ̄ = 0 and ∂̄∇_{g,J}ψ̄ is J-anti-linear", id_dbar2),
    id_check!("ID-DBARSTAR-3", KAHLER, "L2omOm-prod", "∂̄*^{g,Ω}A = ∇*A + A∇f = −Tr_g ∇^{1,0}A + A∇f for anti-linear A", id_dbar_star),
    id_check!("ID-DIV-A2", ALL_FIXTURES, "elementary divergence identities", "∇*^Ω A² = −Tr_g(∇A·A) + A∇*^Ω A", id_div_a2),
    id_check!("ID-DIV-EV", ALL_FIXTURES, "div-Ev", "div^Ω(Aξ) = −⟨∇*^Ω A, ξ⟩ + ⟨A, ∇ξ⟩ for g-symmetric A", id_div_ev),
    id_check!("ID-DIV-GRAD", ALL_FIXTURES, "weighted Laplacian", "div^Ω ∇u = −Δ^Ω u", id_div_grad),
    id_check!("ID-DIV-TR", ALL_FIXTURES, "Appendix div-Tr", "div^Ω Tr_g(∇A·A) = −⟨∇*^Ω ∇̂A, A⟩ + ⟨∇̂A, ∇A⟩ for g-symmetric A", id_div_tr),
    id_check!("ID-DIV-UA", ALL_FIXTURES, "elementary divergence identities", "∇*^Ω(uA) = −A∇u + u∇*^Ω A", id_div_ua),
    id_check!("ID-DIV-UXI", ALL_FIXTURES, "elementary divergence identities", "div^Ω(uξ) = ⟨∇u, ξ⟩ + u div^Ω ξ", id_div_uxi),
    id_check!("ID-HOLO", KAHLER, "holomorphic vector fields", "∂̄ξ = 0 for the holomorphic fields of the fixture", id_holo),
    id_check!("ID-HW-WEIGHT", KAHLER, "Om-AntHol-Hdg-Lap", "Δ^{Ω,−J}A = Δ^{−J}A + ∇f⌐∇^{0,1}A + A∂^g∇f for anti-linear A", id_hw_weight),
    id_check!("ID-INT-ADJ", ALL_FIXTURES, "Glb-Rm-m", "∫⟨∇*^Ω u, α⟩Ω = ∫⟨u, ∇α⟩Ω", id_int_adj),
    id_check!("ID-INT-DBAR", KAHLER, "L2omOm-prod", "∫⟨∂̄T, S⟩Ω = ∫⟨T, ∂̄*^{g,Ω}S⟩Ω in degrees 0 and 1", id_int_dbar),
    id_check!("ID-INT-DIV", ALL_FIXTURES, "Ω-divergence theorem", "∫div^Ω ξ Ω = 0", id_int_div),
    id_check!("ID-INT-LAP", ALL_FIXTURES, "weighted Laplacian", "∫(Δ^Ω u)w Ω = ∫u Δ^Ω w Ω and ∫u Δ^Ω u Ω = ∫|∇u|²Ω ≥ 0", id_int_lap),
    id_check!("ID-LAP-ADJ", ALL_FIXTURES, "weighted Laplacian", "Δ^Ω u = ∇*^Ω du and ∇*^Ω g = df", id_lap_adjoint),
    id_check!("ID-LIE", KAHLER, "Expression of the exterior Lie product", "[α, β] = α⌐∂^ω β − (−1)^{|α||β|} β⌐∂^ω α, graded antisymmetric", id_lie),
    id_check!("ID-MC-EQUIV", KAHLER, "super-complexMCARTAN / super-realMCARTAN", "real MC residual = 2 Re of the complex one, and the explicit real form agrees", id_mc),
    id_check!("ID-MG-FRAME", ALL_FIXTURES, "the real valued 1-form M_g", "M_g(u, v) does not depend on the orthonormal frame", id_mg_frame),
    id_check!("ID-MG-VV", ALL_FIXTURES, "the real valued 1-form M_g", "M_g(v, v) = 2v(∇*^Ω v*, ·) − 2g∇*^Ω(v*)² + ½d|v|²", id_mg_vv),
    id_check!("ID-NABLA-G", ALL_FIXTURES, "Levi-Civita connection", "∇g = 0", id_nabla_g),
    id_check!("ID-NABLA-J", KAHLER, "Kähler condition", "∇J = 0", id_nabla_j),
    id_check!("ID-P-REAL", FS_ONLY, "dec-P-op", "P^Ω_{g,J} maps real functions to real functions at a soliton", id_p_real),
    id_check!("ID-SHARP", ALL_FIXTURES, "v* = g⁻¹v", "g(v*ξ, η) = v(ξ, η), and v* is g-self-adjoint for symmetric v", id_sharp),
    id_check!("ID-SPLIT", KAHLER, "bidegree split of ∇", "∇ = ∇^{1,0} + ∇^{0,1} with the J-types of each part", id_split),
];
