//! Named first and second variation checks: an FD derivative along a curve against a
//! closed formula evaluated on the base geometry.

use std::sync::{Arc, OnceLock};

use crate::backends::fields::{ScalarFn, SpherePoly, TField};
use crate::backends::random::{mean, FieldGen, SField};
use crate::backends::{BackendKind, Fixture, FixtureKind};
use crate::check::{CheckError, CheckSpec, Ctx, Outcome, Residual, Suite, Tol, Verdict, ALL_FIXTURES, FS_ONLY, KAHLER};
use crate::jet::JetPoint;
use crate::kahler::{anti_linear_part, dbar_form, dbar_vf, hodge_witten, nabla10};
use crate::soliton::{bakry_emery_h, perelman_h};
use crate::tensor::{invert, sum, Down, Tensor, Up};
use crate::tensorcalc::{contraction, Geo, GeomError};
use crate::variation::curves::{fd_tensors, ComplexCurve, Curve, CurveData, LinearCurve, PullbackCurve};
use crate::variation::fd::FdReport;
use crate::Jet;

type Res<T> = Result<T, CheckError>;

const NPTS: usize = 6;
/// Base point of the gauge-curve checks.
const T_GAUGE: f64 = 0.05;
const PULLBACK: &[FixtureKind] = &[FixtureKind::Pert2, FixtureKind::Fs];

fn points(ctx: &Ctx) -> Vec<JetPoint> {
    ctx.fx.sample_points(NPTS, ctx.seed)
}

fn amp(fx: &Fixture) -> f64 {
    match fx.kind {
        FixtureKind::Fs => 0.2,
        _ => 0.3,
    }
}

/// A direction `(v, V*)`.
struct Direction {
    v: TField,
    vstar: SField,
}

/// Seeded direction with `∫ V* Ω = 0`.
fn direction(ctx: &Ctx, salt: u64) -> Direction {
    let mut gen = FieldGen::new(ctx.fx, ctx.seed ^ salt);
    let a = amp(ctx.fx);
    Direction { v: gen.sym2(a), vstar: gen.mean_zero_scalar(a) }
}

fn linear<'a>(fx: &'a Fixture, v: TField, vstar: SField) -> LinearCurve<'a> {
    LinearCurve { fx, v, vstar: Arc::new(move |c, x: &[Jet]| vstar.eval(c, x)), t_max: 0.2 }
}

pub(crate) fn hamiltonian(ctx: &Ctx) -> SField {
    if ctx.fx.backend.kind == BackendKind::Cp1 {
        // degree-two part moves the round metric; degree one is Killing
        Arc::new(SpherePoly::new(vec![([2, 0, 0], 0.6), ([0, 1, 1], 0.5), ([1, 0, 1], -0.4), ([0, 0, 1], 0.3)]))
    } else {
        FieldGen::new(ctx.fx, ctx.seed ^ 0x4a).scalar(0.1)
    }
}

fn pullback<'a>(ctx: &Ctx<'a>) -> PullbackCurve<'a> {
    PullbackCurve::new(ctx.fx, hamiltonian(ctx))
}

fn outcome(res: &Residual, reps: &[&FdReport]) -> Outcome {
    // the report furthest from its nominal order speaks for the check
    let worst = reps
        .iter()
        .max_by(|a, b| {
            let da = a.order.map_or(0.0, |q| (q - a.nominal).abs());
            let db = b.order.map_or(0.0, |q| (q - b.nominal).abs());
            da.total_cmp(&db)
        })
        .expect("at least one FD report");
    let mut o = res.outcome().with_order(worst.order, worst.nominal).note("fd_step", worst.step);
    o = o.note("richardson_correction", reps.iter().map(|r| r.correction).fold(0.0, f64::max));
    o
}

/// Pushes `scale · dᵏ/dtᵏ lhs(curve_t)|_{t0}` against a formula at every sample point.
/// `resid` receives the derivative, the base data and geometry and returns the residual tensor.
#[allow(clippy::too_many_arguments)]
fn fd_check<C, L, R>(ctx: &Ctx, curve: &C, t0: f64, deriv: usize, order: usize, lhs: L, resid: R) -> Res<Verdict>
where
    C: Curve,
    L: Fn(&CurveData) -> Res<Tensor> + Sync,
    R: Fn(&Tensor, &CurveData, &Geo) -> Res<Tensor>,
{
    let pts = points(ctx);
    let (d, rep) = fd_tensors(&pts, |t, _, p| lhs(&curve.data(t, p, order)?), t0, deriv, &ctx.fd)?;
    let mut res = Residual::new();
    for (k, p) in pts.iter().enumerate() {
        let base = curve.data(t0, p, order)?;
        let geo = base.geo()?;
        let r = resid(&d[k], &base, &geo)?;
        res.push_tensor(&geo, &r.truncate(0));
    }
    Ok(Verdict::Measured(outcome(&res, &[&rep])))
}

fn vals(t: &Tensor) -> Tensor {
    t.truncate(0)
}

/// `a − b` on values.
fn vdiff(a: &Tensor, b: &Tensor) -> Tensor {
    vals(a).sub(&vals(b))
}

/// `u(w, ·)` for a 2-tensor `u`.
fn first_slot(u: &Tensor, w: &Tensor) -> Tensor {
    let o = u.order().min(w.order());
    u.truncate(o).insert(0, &w.truncate(o))
}

fn pair0(geo: &Geo, a: &Tensor, b: &Tensor) -> f64 {
    geo.pair(&vals(a), &vals(b)).value()
}

/// `W = ∇*^Ω v* + ∇V*`.
fn w_field(geo: &Geo, vs: &Tensor, vstar: &Jet) -> Tensor {
    let a = geo.adjoint_endo(vs);
    let g = geo.grad(vstar);
    let o = a.order().min(g.order());
    a.truncate(o).add(&g.truncate(o))
}

/// Endomorphism `e ↦ ∇_e X`.
fn nabla_endo(geo: &Geo, x: &Tensor) -> Tensor {
    geo.nabla(x).swap_slots(0, 1)
}

/// `∂^g X = ∇^{1,0}X` as an endomorphism.
fn partial_vf(geo: &Geo, x: &Tensor) -> Res<Tensor> {
    Ok(nabla10(geo, x)?.swap_slots(0, 1))
}

/// `A ⌐ ∇^{1,0}A` for an endomorphism `A`.
fn a_contract_n10(geo: &Geo, a: &Tensor) -> Res<Tensor> {
    let n = nabla10(geo, a)?.swap_slots(0, 1);
    Ok(contraction(&a.truncate(n.order()), &n)?)
}

/// Components `g⁻¹ v` from fixture data, frozen in `t`.
fn base_sharp(fx: &Fixture, chart: usize, x: &[Jet], v: &Tensor) -> Tensor {
    let n = x.len();
    let gi = invert(n, &fx.metric(chart, x).data);
    Tensor::from_fn(n, &[Up, Down], |i| sum(n, |c| &gi[i[0] * n + c] * v.at(&[c, i[1]])))
}

// ---------------------------------------------------------------------------
// weighted Lichnerowicz operator

/// `L^Ω v = ∇*^Ω∇v − 2 s R̊(v)` with curvature sign `s`.
pub fn lichnerowicz(geo: &Geo, v: &Tensor, sign: f64) -> Result<Tensor, GeomError> {
    let rough = geo.adjoint(&geo.nabla(v), 0);
    let curv = geo.curvature_action(v)?;
    let o = rough.order().min(curv.order());
    Ok(rough.truncate(o).sub(&curv.truncate(o).scale(2.0 * sign)))
}

/// Sup of `L^Ω A − 2Δ^{−J}A − [Ric*, A] − ∇_{∇f}A` for the anti-linear part `A` of `v*`,
/// with `L` built from curvature sign `sign`.
pub fn lichnerowicz_defect(geo: &Geo, v: &Tensor, sign: f64) -> Result<f64, GeomError> {
    let j = geo.j()?.clone();
    let a = anti_linear_part(&j, &geo.sharp(v));
    let lv = geo.sharp(&lichnerowicz(geo, &geo.flat(&a), sign)?);
    let hw = hodge_witten(&geo.unweighted(), &a, 1)?.scale(2.0);
    let br = geo.ricci_endo()?.commutator(&a.truncate(geo.order() - 2));
    let weight = geo.nabla(&a).insert(0, &geo.grad_f.truncate(a.order()));
    let rhs = vals(&hw).add(&vals(&br)).add(&vals(&weight));
    Ok(vals(&lv).sub(&rhs).max_abs())
}

/// Curvature sign of the weighted Lichnerowicz operator, fixed once on the round sphere.
/// Returns `(sign, residual of the chosen sign, residual of the rejected sign)`.
pub fn lichnerowicz_sign() -> (f64, f64, f64) {
    static SIGN: OnceLock<(f64, f64, f64)> = OnceLock::new();
    *SIGN.get_or_init(|| {
        let fx = Fixture::builtin(FixtureKind::Fs).expect("builtin FS");
        let v = FieldGen::new(&fx, 0x11c4).sym2(0.5);
        let (mut plus, mut minus) = (0.0f64, 0.0f64);
        for p in fx.sample_points(4, 7) {
            let x = p.lift(3).expect("lift");
            let geo = fx.geo_at(p.chart, &x).expect("FS geometry");
            let vv = v(p.chart, &x);
            plus = plus.max(lichnerowicz_defect(&geo, &vv, 1.0).expect("defect"));
            minus = minus.max(lichnerowicz_defect(&geo, &vv, -1.0).expect("defect"));
        }
        if plus <= minus {
            (1.0, plus, minus)
        } else {
            (-1.0, minus, plus)
        }
    })
}

// ---------------------------------------------------------------------------
// linear-curve checks

fn v_adj(ctx: &Ctx) -> Res<Verdict> {
    let d = direction(ctx, 1);
    let u = FieldGen::new(ctx.fx, ctx.seed ^ 0x75).sym2(0.5);
    let c = linear(ctx.fx, d.v.clone(), d.vstar.clone());
    fd_check(
        ctx,
        &c,
        0.0,
        1,
        2,
        |cd| Ok(cd.geo()?.adjoint_sym2(&u(cd.chart, &cd.x))),
        |dl, cd, geo| {
            let uu = u(cd.chart, &cd.x);
            let v = (d.v)(cd.chart, &cd.x);
            let w = w_field(geo, &geo.sharp(&v), &d.vstar.eval(cd.chart, &cd.x));
            let rhs = vals(&geo.m_form(&v, &uu)).sub(&vals(&first_slot(&uu, &w)).scale(2.0));
            Ok(vals(dl).scale(2.0).sub(&rhs))
        },
    )
}

fn v_trcov(ctx: &Ctx) -> Res<Verdict> {
    let d = direction(ctx, 2);
    let u = FieldGen::new(ctx.fx, ctx.seed ^ 0x76).sym2(0.5);
    let c = linear(ctx.fx, d.v.clone(), d.vstar.clone());
    fd_check(
        ctx,
        &c,
        0.0,
        1,
        2,
        |cd| Ok(cd.geo()?.nabla(&u(cd.chart, &cd.x))),
        |dl, cd, geo| {
            let n = geo.dim;
            let lhs = geo.raise(&vals(dl), 0).trace(0, 1).scale(2.0);
            let uu = u(cd.chart, &cd.x);
            let us = vals(&geo.sharp(&uu));
            let v = (d.v)(cd.chart, &cd.x);
            let w0 = geo.sharp_form(&geo.unweighted().adjoint_sym2(&v));
            let nv = vals(&geo.nabla(&v));
            let gi = vals(&geo.ginv);
            let tau = geo.raise(&nv, 1).trace(1, 2);
            let t1 = vals(&first_slot(&uu, &w0)).scale(2.0);
            let t2 = Tensor::form((0..n).map(|b| sum(n, |a| tau.at(&[a]) * us.at(&[a, b]))).collect());
            let t3 = Tensor::form(
                (0..n)
                    .map(|b| sum(n, |a| sum(n, |l| sum(n, |k| nv.at(&[b, a, l]) * us.at(&[a, k]) * gi.at(&[k, l])))))
                    .collect(),
            );
            Ok(lhs.sub(&t1.add(&t2).sub(&t3)))
        },
    )
}

fn f_dot(geo: &Geo, v: &Tensor, vstar: &Jet) -> Jet {
    geo.sharp(v).trace(0, 1).data[0].clone() * 0.5 - vstar
}

fn v_grad(ctx: &Ctx) -> Res<Verdict> {
    let d = direction(ctx, 3);
    let c = linear(ctx.fx, d.v.clone(), d.vstar.clone());
    fd_check(
        ctx,
        &c,
        0.0,
        1,
        2,
        |cd| Ok(cd.geo()?.grad_f.clone()),
        |dl, cd, geo| {
            let v = (d.v)(cd.chart, &cd.x);
            let fd = f_dot(geo, &v, &d.vstar.eval(cd.chart, &cd.x));
            let rhs = vals(&geo.grad(&fd)).sub(&vals(&geo.sharp(&v).apply(&geo.grad_f)));
            Ok(vdiff(dl, &rhs))
        },
    )
}

fn v_f(ctx: &Ctx) -> Res<Verdict> {
    let d = direction(ctx, 4);
    let c = linear(ctx.fx, d.v.clone(), d.vstar.clone());
    fd_check(
        ctx,
        &c,
        0.0,
        1,
        1,
        |cd| Ok(Tensor::scalar(cd.geo()?.f)),
        |dl, cd, geo| {
            let v = (d.v)(cd.chart, &cd.x);
            Ok(vdiff(dl, &Tensor::scalar(f_dot(geo, &v, &d.vstar.eval(cd.chart, &cd.x)))))
        },
    )
}

fn v_div1(ctx: &Ctx) -> Res<Verdict> {
    let d = direction(ctx, 5);
    let alpha = FieldGen::new(ctx.fx, ctx.seed ^ 0x77).form(0.5);
    let c = linear(ctx.fx, d.v.clone(), d.vstar.clone());
    fd_check(
        ctx,
        &c,
        0.0,
        1,
        2,
        |cd| {
            let geo = cd.geo()?;
            Ok(Tensor::scalar(geo.div(&geo.sharp_form(&alpha(cd.chart, &cd.x)))))
        },
        |dl, cd, geo| {
            let a = alpha(cd.chart, &cd.x);
            let vs = geo.sharp(&(d.v)(cd.chart, &cd.x));
            let w = w_field(geo, &vs, &d.vstar.eval(cd.chart, &cd.x));
            let na = nabla_endo(geo, &geo.sharp_form(&a));
            let aw = sum(geo.dim, |k| a.at(&[k]).truncate(0) * w.at(&[k]).truncate(0));
            let rhs = -pair0(geo, &na, &vs) + aw.value();
            Ok(Tensor::scalar(dl.data[0].truncate(0) - rhs))
        },
    )
}

fn v_div2(ctx: &Ctx) -> Res<Verdict> {
    let d = direction(ctx, 6);
    let c = linear(ctx.fx, d.v.clone(), d.vstar.clone());
    fd_check(
        ctx,
        &c,
        0.0,
        1,
        3,
        |cd| {
            let geo = cd.geo()?;
            let v = (d.v)(cd.chart, &cd.x);
            Ok(Tensor::scalar(geo.div(&geo.adjoint_endo(&geo.sharp(&v)))))
        },
        |dl, cd, geo| {
            let v = (d.v)(cd.chart, &cd.x);
            let vs = geo.sharp(&v);
            let vst = d.vstar.eval(cd.chart, &cd.x);
            let w = w_field(geo, &vs, &vst);
            let nvs = geo.nabla(&vs);
            let hat = nvs.swap_slots(0, 2);
            let t1 = -0.25 * geo.laplacian(&geo.norm2(&v)).value();
            let t2 = -pair0(geo, &geo.adjoint(&hat, 0), &vs);
            let t3 = pair0(geo, &hat, &nvs);
            let adj_v = geo.adjoint_sym2(&v);
            let t4 = 2.0 * sum(geo.dim, |k| adj_v.at(&[k]).truncate(0) * w.at(&[k]).truncate(0)).value();
            let y = geo.adjoint_endo(&vs).scale(2.0);
            let gv = geo.grad(&vst);
            let o = y.order().min(gv.order());
            let t5 = -pair0(geo, &nabla_endo(geo, &y.truncate(o).add(&gv.truncate(o))), &vs);
            Ok(Tensor::scalar(dl.data[0].truncate(0) - (t1 + t2 + t3 + t4 + t5)))
        },
    )
}

fn v_super(ctx: &Ctx) -> Res<Verdict> {
    let d = direction(ctx, 7);
    let fx = ctx.fx;
    let c = linear(fx, d.v.clone(), d.vstar.clone());
    fd_check(
        ctx,
        &c,
        0.0,
        1,
        2,
        |cd| {
            let a = base_sharp(fx, cd.chart, &cd.x, &(d.v)(cd.chart, &cd.x));
            Ok(cd.geo()?.adjoint_endo(&a))
        },
        |dl, cd, geo| {
            let v = (d.v)(cd.chart, &cd.x);
            let vs = geo.sharp(&v);
            let w = w_field(geo, &vs, &d.vstar.eval(cd.chart, &cd.x));
            let rhs = vals(&geo.grad(&geo.norm2(&v))).scale(0.5).sub(&vals(&vs.truncate(w.order()).apply(&w)).scale(2.0));
            Ok(vals(dl).scale(2.0).sub(&rhs))
        },
    )
}

/// `2 DH(v, V) = (Δ^Ω − 2)V* − div^Ω(∇*^Ω v + dV*) − ⟨v, h⟩` at the base point (values).
fn dh_formula(geo: &Geo, v: &Tensor, vstar: &Jet) -> Res<f64> {
    let h = bakry_emery_h(geo)?;
    let a = geo.adjoint_sym2(v);
    let dv = geo.d_scalar(vstar);
    let o = a.order().min(dv.order());
    let div = geo.div(&geo.sharp_form(&a.truncate(o).add(&dv.truncate(o))));
    Ok(geo.laplacian(vstar).value() - 2.0 * vstar.value() - div.value() - pair0(geo, v, &h))
}

fn v_dh(ctx: &Ctx) -> Res<Verdict> {
    let d = direction(ctx, 8);
    let c = linear(ctx.fx, d.v.clone(), d.vstar.clone());
    fd_check(
        ctx,
        &c,
        0.0,
        1,
        2,
        |cd| Ok(Tensor::scalar(perelman_h(&cd.geo()?)?)),
        |dl, cd, geo| {
            let v = (d.v)(cd.chart, &cd.x);
            let rhs = dh_formula(geo, &v, &d.vstar.eval(cd.chart, &cd.x))?;
            Ok(Tensor::scalar(dl.data[0].truncate(0) * 2.0 - rhs))
        },
    )
}

fn v_trans(ctx: &Ctx) -> Res<Verdict> {
    let d = direction(ctx, 9);
    let a = FieldGen::new(ctx.fx, ctx.seed ^ 0x78).bilinear(0.5, false);
    let endo = move |ch: usize, x: &[Jet]| {
        let b = a(ch, x);
        Tensor { dim: b.dim, slots: vec![Up, Down], data: b.data }
    };
    let c = linear(ctx.fx, d.v.clone(), d.vstar.clone());
    fd_check(
        ctx,
        &c,
        0.0,
        1,
        1,
        |cd| Ok(cd.geo()?.transpose(&endo(cd.chart, &cd.x))),
        |dl, cd, geo| {
            let at = geo.transpose(&endo(cd.chart, &cd.x));
            let gs = geo.sharp(&(d.v)(cd.chart, &cd.x));
            Ok(vdiff(dl, &at.commutator(&gs)))
        },
    )
}

// ---------------------------------------------------------------------------
// Hessian of H

/// Speed correction `(θ₀, Θ₀*)` of the linear curve: `θ₀ = V*v − v(·, v*·)`,
/// `Θ₀* = ¼(|v|² − 2V*² − κ)`.
fn speed_correction<'a>(fx: &'a Fixture, d: &Direction, kappa: f64) -> LinearCurve<'a> {
    let (v1, s1) = (d.v.clone(), d.vstar.clone());
    let theta = move |ch: usize, x: &[Jet]| {
        let v = v1(ch, x);
        let vs = base_sharp(fx, ch, x, &v);
        let s = s1.eval(ch, x);
        let n = x.len();
        Tensor::from_fn(n, &[Down, Down], |i| v.at(i) * &s - sum(n, |c| v.at(&[i[0], c]) * vs.at(&[c, i[1]])))
    };
    let (v2, s2) = (d.v.clone(), d.vstar.clone());
    let big = move |ch: usize, x: &[Jet]| {
        let v = v2(ch, x);
        let vs = base_sharp(fx, ch, x, &v);
        let s = s2.eval(ch, x);
        let n2 = vs.compose(&vs).trace(0, 1).data[0].clone();
        (n2 - &s * &s * 2.0 - kappa) * 0.25
    };
    LinearCurve { fx, v: Arc::new(theta), vstar: Arc::new(big), t_max: 0.2 }
}

/// Pointwise `d²/dt² H − DH(θ₀, Θ₀)` along the linear curve of `d`, with its FD reports.
fn hessian_lhs(ctx: &Ctx, d: &Direction, kappa: f64, pts: &[JetPoint]) -> Res<(Vec<f64>, FdReport, FdReport)> {
    let c1 = linear(ctx.fx, d.v.clone(), d.vstar.clone());
    let c2 = speed_correction(ctx.fx, d, kappa);
    let h_of = |c: &dyn Curve, t: f64, p: &JetPoint| -> Res<Tensor> { Ok(Tensor::scalar(perelman_h(&c.data(t, p, 2)?.geo()?)?)) };
    let (d2, r2) = fd_tensors(pts, |t, _, p| h_of(&c1, t, p), 0.0, 2, &ctx.fd)?;
    let (d1, r1) = fd_tensors(pts, |t, _, p| h_of(&c2, t, p), 0.0, 1, &ctx.fd)?;
    Ok((d2.iter().zip(&d1).map(|(a, b)| a.data[0].value() - b.data[0].value()).collect(), r2, r1))
}

/// Base-point pieces shared by both Hessian formulas.
struct HessTerms {
    lv_v: f64,
    norm_v: f64,
    vstar: f64,
    v_h: f64,
}

fn hess_terms(geo: &Geo, v: &Tensor, vstar: &Jet) -> Res<HessTerms> {
    let (sign, _, _) = lichnerowicz_sign();
    let lv = lichnerowicz(geo, v, sign)?;
    let h = bakry_emery_h(geo)?;
    Ok(HessTerms { lv_v: pair0(geo, &lv, v), norm_v: geo.norm2(v).value(), vstar: vstar.value(), v_h: pair0(geo, v, &h) })
}

/// `½[−½⟨Lv,v⟩ − Δ(¼|v|² + V*²) + ½|v|² + V*² − ½κ − 2|W|² + ⟨∇(2∇*v* + 3∇V*), v*⟩
///   + ⟨∇*v*, ∇*v* + 2∇V*⟩ + V*(div ∇*v* + ⟨v,h⟩)]`.
fn hessian_rhs(geo: &Geo, v: &Tensor, vstar: &Jet, kappa: f64) -> Res<f64> {
    let t = hess_terms(geo, v, vstar)?;
    let vs = geo.sharp(v);
    let y = geo.adjoint_endo(&vs);
    let gv = geo.grad(vstar);
    let o = y.order().min(gv.order());
    let (y, gv) = (y.truncate(o), gv.truncate(o));
    let w = y.add(&gv);
    let lap = geo.laplacian(&(geo.norm2(v) * 0.25 + vstar * vstar)).value();
    let mix = pair0(geo, &nabla_endo(geo, &y.scale(2.0).add(&gv.scale(3.0))), &vs);
    let yy = pair0(geo, &y, &y.add(&gv.scale(2.0)));
    let div = geo.div(&y).value();
    let s = -0.5 * t.lv_v - lap + 0.5 * t.norm_v + t.vstar * t.vstar - 0.5 * kappa - 2.0 * pair0(geo, &w, &w)
        + mix
        + yy
        + t.vstar * (div + t.v_h);
    Ok(0.5 * s)
}

const KAPPA: f64 = 1.0;

fn hessian_residuals(ctx: &Ctx, d: &Direction, kappa: f64) -> Res<(Vec<f64>, FdReport, FdReport)> {
    let pts = points(ctx);
    let (lhs, r2, r1) = hessian_lhs(ctx, d, kappa, &pts)?;
    let mut out = Vec::with_capacity(pts.len());
    for (k, p) in pts.iter().enumerate() {
        let x = p.lift(2).map_err(|e| GeomError::BadValence(e.to_string()))?;
        let geo = ctx.fx.geo_at(p.chart, &x)?;
        let rhs = hessian_rhs(&geo, &(d.v)(p.chart, &x), &d.vstar.eval(p.chart, &x), kappa)?;
        out.push(lhs[k] - rhs);
    }
    Ok((out, r2, r1))
}

fn v_hess(ctx: &Ctx) -> Res<Verdict> {
    let d = direction(ctx, 10);
    let (r, r2, r1) = hessian_residuals(ctx, &d, KAPPA)?;
    let mut res = Residual::new();
    r.iter().for_each(|x| res.push(*x));
    let (sign, good, bad) = lichnerowicz_sign();
    let o = outcome(&res, &[&r2, &r1]).note("kappa", KAPPA).note("lichnerowicz_sign", sign);
    Ok(Verdict::Measured(o.note("lichnerowicz_calibration", good).note("lichnerowicz_rejected", bad)))
}

fn v_hess_kappa(ctx: &Ctx) -> Res<Verdict> {
    let d = direction(ctx, 10);
    let runs: Vec<Vec<f64>> =
        [0.0, 1.0, 10.0].iter().map(|&k| hessian_residuals(ctx, &d, k).map(|r| r.0)).collect::<Res<_>>()?;
    let mut res = Residual::new();
    for k in 0..runs[0].len() {
        let col: Vec<f64> = runs.iter().map(|r| r[k]).collect();
        let hi = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = col.iter().cloned().fold(f64::INFINITY, f64::min);
        res.push(hi - lo);
    }
    Ok(Verdict::Measured(res.outcome()))
}

/// A direction with `∇*^Ω v* + ∇V* = 0`: `v = u g`, `V* = u − ∫u` when the weight is
/// constant, otherwise `v = c e^f g`, `V* = 0`.
fn f_direction(ctx: &Ctx) -> Direction {
    let fx = ctx.fx;
    let flat_weight = matches!(fx.kind, FixtureKind::Flat2 | FixtureKind::Fs);
    let fx2 = Fixture::builtin(fx.kind).expect("builtin fixture");
    if flat_weight {
        let u = FieldGen::new(fx, ctx.seed ^ 0x79).scalar(amp(fx));
        let m = mean(fx, &u);
        let u1 = u.clone();
        let v: TField = Arc::new(move |ch, x: &[Jet]| fx2.metric(ch, x).mul_jet(&u1.eval(ch, x)));
        let vstar: SField = Arc::new(crate::backends::random::Combo { offset: -m, terms: vec![(1.0, u)] });
        Direction { v, vstar }
    } else {
        let c = amp(fx);
        let v: TField = Arc::new(move |ch, x: &[Jet]| {
            let g = fx2.metric(ch, x);
            let f = crate::tensor::det(x.len(), &g.data).ln() * 0.5 - fx2.density(ch, x).ln();
            g.mul_jet(&(f.exp() * c))
        });
        let vstar: SField = Arc::new(crate::backends::random::Combo { offset: 0.0, terms: vec![] });
        Direction { v, vstar }
    }
}

fn v_hess_f(ctx: &Ctx) -> Res<Verdict> {
    let d = f_direction(ctx);
    let pts = points(ctx);
    let (lhs, r2, r1) = hessian_lhs(ctx, &d, KAPPA, &pts)?;
    let mut res = Residual::new();
    let mut constraint = Residual::new();
    for (k, p) in pts.iter().enumerate() {
        let x = p.lift(2).map_err(|e| GeomError::BadValence(e.to_string()))?;
        let geo = ctx.fx.geo_at(p.chart, &x)?;
        let v = (d.v)(p.chart, &x);
        let vst = d.vstar.eval(p.chart, &x);
        constraint.push_tensor(&geo, &w_field(&geo, &geo.sharp(&v), &vst));
        let t = hess_terms(&geo, &v, &vst)?;
        let nn = pair0(&geo, &geo.nabla(&geo.adjoint_sym2(&v)), &v);
        let q = geo.norm2(&v) * 0.5 + &vst * &vst - 0.5 * KAPPA;
        let shifted = geo.laplacian(&q).value() - 2.0 * q.value();
        let rhs = -0.5 * (t.lv_v + 2.0 * nn) - 0.5 * shifted + t.vstar * t.v_h;
        res.push(2.0 * lhs[k] - rhs);
    }
    Ok(Verdict::Measured(outcome(&res, &[&r2, &r1]).note("constraint_residual", constraint.sup())))
}

// ---------------------------------------------------------------------------
// gauge and complex-structure curves

/// `(ġ*_t, ġ_t)` at `t0` on every point, with whole-jet FD.
fn g_dot(curve: &dyn Curve, ctx: &Ctx, pts: &[JetPoint], t0: f64, order: usize) -> Res<(Vec<Tensor>, FdReport)> {
    Ok(fd_tensors(pts, |t, _, p| Ok(curve.data(t, p, order)?.g), t0, 1, &ctx.fd)?)
}

fn j_dot(curve: &dyn Curve, ctx: &Ctx, pts: &[JetPoint], t0: f64, order: usize) -> Res<(Vec<Tensor>, FdReport)> {
    Ok(fd_tensors(pts, |t, _, p| curve.data(t, p, order)?.j.ok_or_else(no_j), t0, 1, &ctx.fd)?)
}

fn no_j() -> CheckError {
    CheckError::Geom(GeomError::UnsupportedGeometry("curve has no complex structure".into()))
}

fn v_gdot(ctx: &Ctx) -> Res<Verdict> {
    let c = pullback(ctx);
    let pts = points(ctx);
    let mut res = Residual::new();
    let mut reps = Vec::new();
    for t0 in [0.0, T_GAUGE] {
        let (gd, r1) = g_dot(&c, ctx, &pts, t0, 1)?;
        let (jd, r2) = j_dot(&c, ctx, &pts, t0, 1)?;
        let (gdd, r3) = fd_tensors(&pts, |t, _, p| Ok(c.data(t, p, 1)?.g), t0, 2, &ctx.fd)?;
        for (k, p) in pts.iter().enumerate() {
            let base = c.data(t0, p, 1)?;
            let geo = base.geo()?;
            let j = vals(geo.j()?);
            let gs = vals(&geo.sharp(&gd[k]));
            res.push_tensor(&geo, &gs.add(&j.compose(&vals(&jd[k]))));
            let gss = vals(&geo.sharp(&gdd[k]));
            let lin = gss.sub(&j.compose(&gss).compose(&j)).scale(0.5);
            res.push_tensor(&geo, &lin.sub(&gs.compose(&gs)));
        }
        reps.extend([r1, r2, r3]);
    }
    Ok(Verdict::Measured(outcome(&res, &reps.iter().collect::<Vec<_>>())))
}

/// `N := ½ J N_std` with `N_std(ξ,η) = [Jξ,Jη] − J[Jξ,η] − J[ξ,Jη] − [ξ,η]` in coordinates.
pub fn nijenhuis(j: &Tensor) -> Tensor {
    let n = j.dim;
    let dj = |a: usize, b: usize, c: usize| j.at(&[a, b]).d(c);
    let jl = j.truncate(j.order().saturating_sub(1));
    let std = Tensor::from_fn(n, &[Up, Down, Down], |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        sum(n, |d| {
            jl.at(&[d, b]) * dj(a, c, d) - jl.at(&[d, c]) * dj(a, b, d) - jl.at(&[a, d]) * (dj(d, c, b) - dj(d, b, c))
        })
    });
    Tensor::from_fn(n, &[Up, Down, Down], |i| sum(n, |e| jl.at(&[i[0], e]) * std.at(&[e, i[1], i[2]]))).scale(0.5)
}

fn complex_direction<'a>(ctx: &Ctx<'a>) -> ComplexCurve<'a> {
    let v = FieldGen::new(ctx.fx, ctx.seed ^ 0x7a).sym2(amp(ctx.fx));
    ComplexCurve { fx: ctx.fx, v, t_max: 0.2 }
}

fn v_nj(ctx: &Ctx) -> Res<Verdict> {
    let pts = points(ctx);
    let mut res = Residual::new();
    // first variation at the integrable base point
    let c = complex_direction(ctx);
    let (dn, rep) = fd_tensors(&pts, |t, _, p| Ok(nijenhuis(&c.data(t, p, 2)?.j.ok_or_else(no_j)?)), 0.0, 1, &ctx.fd)?;
    let mut reps = vec![rep];
    let mut along = Residual::new();
    for (k, p) in pts.iter().enumerate() {
        let base = c.data(0.0, p, 2)?;
        let geo = base.geo()?;
        let mu = c.mu(p.chart, &base.x);
        let jdot = mu.compose(geo.j()?).scale(2.0);
        res.push_tensor(&geo, &vdiff(&dn[k], &dbar_form(&geo, &jdot)?));
    }
    // along gauge curves: ∂̄_{J_t} J̇_t = 0 and N_{J_t} = 0
    if PULLBACK.contains(&ctx.fx.kind) {
        let pc = pullback(ctx);
        for t0 in [0.0, T_GAUGE, 0.1] {
            let (jd, r) = j_dot(&pc, ctx, &pts, t0, 2)?;
            reps.push(r);
            for (k, p) in pts.iter().enumerate() {
                let base = pc.data(t0, p, 2)?;
                let geo = base.geo()?;
                along.push_tensor(&geo, &vals(&dbar_form(&geo, &jd[k])?));
                along.push_tensor(&geo, &vals(&nijenhuis(geo.j()?)));
            }
        }
        res.merge(&along);
    }
    let o = outcome(&res, &reps.iter().collect::<Vec<_>>());
    Ok(Verdict::Measured(if along.l2().is_nan() { o } else { o.note("gauge_curve_residual", along.sup()) }))
}

fn v_dbarvar(ctx: &Ctx) -> Res<Verdict> {
    let c = pullback(ctx);
    let pts = points(ctx);
    let (gd, r1) = g_dot(&c, ctx, &pts, T_GAUGE, 2)?;
    let bases: Vec<(CurveData, Geo)> = pts
        .iter()
        .map(|p| {
            let b = c.data(T_GAUGE, p, 2)?;
            let g = b.geo()?;
            Ok((b, g))
        })
        .collect::<Res<_>>()?;
    let a: Vec<Tensor> = gd.iter().zip(&bases).map(|(g, (_, geo))| geo.sharp(g)).collect();
    let (dd, r2) = fd_tensors(&pts, |t, k, p| Ok(dbar_form(&c.data(t, p, 2)?.geo()?, &a[k])?), T_GAUGE, 1, &ctx.fd)?;
    let mut res = Residual::new();
    for k in 0..pts.len() {
        let geo = &bases[k].1;
        res.push_tensor(geo, &vals(&dd[k]).add(&vals(&a_contract_n10(geo, &a[k])?)));
    }
    Ok(Verdict::Measured(outcome(&res, &[&r1, &r2])))
}

fn v_secord(ctx: &Ctx) -> Res<Verdict> {
    let c = pullback(ctx);
    let pts = points(ctx);
    let (gd, r1) = g_dot(&c, ctx, &pts, T_GAUGE, 2)?;
    let (gdd, r2) = fd_tensors(&pts, |t, _, p| Ok(c.data(t, p, 2)?.g), T_GAUGE, 2, &ctx.fd)?;
    let mut res = Residual::new();
    for (k, p) in pts.iter().enumerate() {
        let geo = c.data(T_GAUGE, p, 2)?.geo()?;
        let gs = geo.sharp(&gd[k]);
        let b = geo.sharp(&gdd[k]).sub(&gs.compose(&gs));
        res.push_tensor(&geo, &vdiff(&dbar_form(&geo, &b)?, &a_contract_n10(&geo, &gs)?));
    }
    Ok(Verdict::Measured(outcome(&res, &[&r1, &r2])))
}

fn v_dbarvf(ctx: &Ctx) -> Res<Verdict> {
    let c = pullback(ctx);
    let pts = points(ctx);
    let alpha = FieldGen::new(ctx.fx, ctx.seed ^ 0x7b).form(0.5);
    let fx = ctx.fx;
    // a fixed vector field: components frozen from the base metric
    let xi = |ch: usize, x: &[Jet]| {
        let n = x.len();
        let gi = invert(n, &fx.metric(ch, x).data);
        let a = alpha(ch, x);
        Tensor::vector((0..n).map(|i| sum(n, |k| &gi[i * n + k] * a.at(&[k]))).collect())
    };
    let (gd, r1) = g_dot(&c, ctx, &pts, T_GAUGE, 2)?;
    let (dd, r2) = fd_tensors(&pts, |t, _, p| {
        let cd = c.data(t, p, 2)?;
        Ok(dbar_vf(&cd.geo()?, &xi(cd.chart, &cd.x))?)
    }, T_GAUGE, 1, &ctx.fd)?;
    let mut res = Residual::new();
    for (k, p) in pts.iter().enumerate() {
        let cd = c.data(T_GAUGE, p, 2)?;
        let geo = cd.geo()?;
        let gs = geo.sharp(&gd[k]);
        let x = xi(cd.chart, &cd.x);
        let t1 = geo.nabla(&gs).insert(0, &x.truncate(1));
        let t2 = vals(&partial_vf(&geo, &x)?).commutator(&vals(&gs));
        let t3 = vals(&dbar_vf(&geo, &x)?).commutator(&vals(&gs));
        let rhs = vals(&t1).sub(&t2).add(&t3);
        res.push_tensor(&geo, &vals(&dd[k]).scale(2.0).sub(&rhs));
    }
    Ok(Verdict::Measured(outcome(&res, &[&r1, &r2])))
}

fn v_kursym(ctx: &Ctx) -> Res<Verdict> {
    let c = pullback(ctx);
    let pts = points(ctx);
    let mut res = Residual::new();
    let mut reps = Vec::new();
    for t0 in [0.0, T_GAUGE, 0.1] {
        let (gd, r) = g_dot(&c, ctx, &pts, t0, 2)?;
        reps.push(r);
        for (k, p) in pts.iter().enumerate() {
            let geo = c.data(t0, p, 2)?.geo()?;
            let b = vals(&dbar_vf(&geo, &geo.adjoint_endo(&geo.sharp(&gd[k])))?);
            res.push_tensor(&geo, &b.sub(&geo.transpose(&b)));
        }
    }
    Ok(Verdict::Measured(outcome(&res, &reps.iter().collect::<Vec<_>>())))
}

/// Threshold on `‖∇*^Ω ġ*₀ + ∇Ω̇*₀‖` below which the direction counts as lying in 𝔽.
const F_THRESHOLD: f64 = 1e-6;

fn v_kur1(ctx: &Ctx) -> Res<Verdict> {
    let c = pullback(ctx);
    let pts = points(ctx);
    let (gd, r1) = g_dot(&c, ctx, &pts, 0.0, 2)?;
    let (rd, _) = fd_tensors(&pts, |t, _, p| Ok(Tensor::scalar(c.data(t, p, 2)?.rho)), 0.0, 1, &ctx.fd)?;
    let mut pre = Residual::new();
    let mut size = Residual::new();
    let mut bases = Vec::new();
    for (k, p) in pts.iter().enumerate() {
        let geo = c.data(0.0, p, 2)?.geo()?;
        let gs = geo.sharp(&gd[k]);
        let omega_dot = &rd[k].data[0] / &geo.rho;
        pre.push_tensor(&geo, &w_field(&geo, &gs, &omega_dot));
        size.push_tensor(&geo, &gs);
        bases.push((geo, gs));
    }
    if size.sup() < 1e-10 {
        return Ok(Verdict::Skipped("trivial direction: ġ₀ vanishes".into()));
    }
    if !(pre.sup() <= F_THRESHOLD) {
        return Ok(Verdict::Skipped(format!(
            "precondition unmet: ‖∇*ġ*₀ + ∇Ω̇*₀‖ = {:.3e} > {F_THRESHOLD:.0e}; no direction of the Hamiltonian gauge family lies in 𝔽",
            pre.sup()
        )));
    }
    let (gdd, r2) = fd_tensors(&pts, |t, _, p| Ok(c.data(t, p, 3)?.g), 0.0, 2, &ctx.fd)?;
    let mut res = Residual::new();
    for (k, (geo, gs)) in bases.iter().enumerate() {
        let second = geo.sharp(&gdd[k]).sub(&gs.compose(gs));
        let b = vals(&dbar_vf(geo, &geo.adjoint_endo(&second))?);
        let corr = vals(&partial_vf(geo, &geo.adjoint_endo(gs))?).commutator(&vals(gs));
        res.push_tensor(geo, &b.sub(&geo.transpose(&b)).sub(&corr));
    }
    Ok(Verdict::Measured(outcome(&res, &[&r1, &r2]).note("precondition", pre.sup())))
}

fn v_fundcx(_ctx: &Ctx) -> Res<Verdict> {
    Ok(Verdict::Skipped(
        "trivial mode: the harmonic space of T_X-valued (0,1)-forms on CP¹ is {0}, so the only admissible J̇₀ is 0 and both sides vanish identically".into(),
    ))
}

fn v_flow_symp(ctx: &Ctx) -> Res<Verdict> {
    let c = pullback(ctx);
    let mut res = Residual::new();
    for p in points(ctx) {
        for t in [-0.1, 0.05, 0.1] {
            res.push(c.symplectic_residual(&p, t)?);
        }
    }
    Ok(Verdict::Measured(res.outcome()))
}

fn v_flow_jdot(ctx: &Ctx) -> Res<Verdict> {
    let c = pullback(ctx);
    let pts = points(ctx);
    let (jd, rep) = j_dot(&c, ctx, &pts, 0.0, 1)?;
    let mut res = Residual::new();
    for (k, p) in pts.iter().enumerate() {
        let x = p.lift(1).map_err(|e| GeomError::BadValence(e.to_string()))?;
        let geo = ctx.fx.geo_at(p.chart, &x)?;
        let xv = c.field(p.chart, &x);
        let n = x.len();
        let dx = Tensor::from_fn(n, &[Up, Down], |i| xv[i[0]].d(i[1]));
        let j = vals(geo.j()?);
        let lie = j.compose(&dx).sub(&dx.compose(&j));
        res.push_tensor(&geo, &vdiff(&jd[k], &lie));
    }
    Ok(Verdict::Measured(outcome(&res, &[&rep])))
}

pub static CHECKS: &[CheckSpec] = &[
    CheckSpec {
        id: "V-ADJ",
        suite: Suite::Variation,
        fixtures: ALL_FIXTURES,
        statement: "2 d/dt ∇*^Ω u = M_g(v, u) − 2 u(∇*^Ω v* + ∇V*, ·) for a fixed symmetric u",
        anchor: "var-adjDer",
        tol: Tol::First,
        run: v_adj,
    },
    CheckSpec {
        id: "V-TRCOV",
        suite: Suite::Variation,
        fixtures: ALL_FIXTURES,
        statement: "2 Tr_g(d/dt ∇u)(μ) = 2u(∇*v*, μ) + ∇v(u*μ, e_k, e_k) − ∇v(μ, u*e_k, e_k), unweighted ∇*",
        anchor: "Tr-varCov",
        tol: Tol::First,
        run: v_trcov,
    },
    CheckSpec {
        id: "V-GRAD",
        suite: Suite::Variation,
        fixtures: ALL_FIXTURES,
        statement: "d/dt ∇_g f = ∇ḟ − v*∇f",
        anchor: "var-grad",
        tol: Tol::First,
        run: v_grad,
    },
    CheckSpec {
        id: "V-F",
        suite: Suite::Variation,
        fixtures: ALL_FIXTURES,
        statement: "ḟ = ½ Tr_g v − V*",
        anchor: "var-f",
        tol: Tol::First,
        run: v_f,
    },
    CheckSpec {
        id: "V-DIV1",
        suite: Suite::Variation,
        fixtures: ALL_FIXTURES,
        statement: "D(div^Ω)(v, V) α = −⟨∇α*, v*⟩ + α(∇*^Ω v* + ∇V*)",
        anchor: "Ω-divergence variation lemma",
        tol: Tol::First,
        run: v_div1,
    },
    CheckSpec {
        id: "V-DIV2",
        suite: Suite::Variation,
        fixtures: ALL_FIXTURES,
        statement: "D(div^Ω ∇*^Ω)(v, V) v = −¼Δ|v|² − ⟨∇*^Ω ∇̂v*, v*⟩ + ⟨∇̂v*, ∇v*⟩ + 2∇*^Ω v·W − ⟨∇(2∇*^Ω v* + ∇V*), v*⟩, W = ∇*^Ω v* + ∇V*",
        anchor: "var-div2",
        tol: Tol::First,
        run: v_div2,
    },
    CheckSpec {
        id: "V-SUPER",
        suite: Suite::Variation,
        fixtures: ALL_FIXTURES,
        statement: "2 D(∇*^Ω)(v, V) v* = ½∇|v|² − 2v*(∇*^Ω v* + ∇V*)",
        anchor: "super-var-Div",
        tol: Tol::First,
        run: v_super,
    },
    CheckSpec {
        id: "V-DH",
        suite: Suite::Variation,
        fixtures: ALL_FIXTURES,
        statement: "2 dH/dt = (Δ^Ω − 2)V* − div^Ω(∇*^Ω v + dV*) − ⟨v, h⟩",
        anchor: "first variation of H",
        tol: Tol::First,
        run: v_dh,
    },
    CheckSpec {
        id: "V-HESS",
        suite: Suite::Variation,
        fixtures: ALL_FIXTURES,
        statement: "d²H/dt² − DH(θ₀, Θ₀) equals the Hessian form of H, with the G-value replaced by a constant κ",
        anchor: "Hessian lemma of H with speed correction",
        tol: Tol::Second,
        run: v_hess,
    },
    CheckSpec {
        id: "V-HESS-KAPPA",
        suite: Suite::Variation,
        fixtures: ALL_FIXTURES,
        statement: "the assembled Hessian residual does not depend on κ ∈ {0, 1, 10}",
        anchor: "Hessian lemma of H with speed correction",
        tol: Tol::Fixed(1e-8),
        run: v_hess_kappa,
    },
    CheckSpec {
        id: "V-HESS-F",
        suite: Suite::Variation,
        fixtures: ALL_FIXTURES,
        statement: "for ∇*^Ω v* = −∇V*: 2∇DH = −½⟨(L^Ω + 2∇∇*^Ω)v, v⟩ − ½(Δ^Ω − 2)[½|v|² + V*² − ½κ] + V*⟨v, h⟩",
        anchor: "corol-sec-varH",
        tol: Tol::Second,
        run: v_hess_f,
    },
    CheckSpec {
        id: "V-GDOT",
        suite: Suite::Variation,
        fixtures: PULLBACK,
        statement: "along ω-compatible curves ġ* = −JJ̇ and (g̈*)^{1,0} = (ġ*)²",
        anchor: "differentiated definition of ġ*",
        tol: Tol::Second,
        run: v_gdot,
    },
    CheckSpec {
        id: "V-NJ",
        suite: Suite::Variation,
        fixtures: KAHLER,
        statement: "d/dt N_J = ∂̄J̇ at integrable J; ∂̄_{J_t}J̇_t = 0 and N_{J_t} = 0 along gauge curves",
        anchor: "Nijenhuis variation along J_t",
        tol: Tol::First,
        run: v_nj,
    },
    CheckSpec {
        id: "V-DBARVAR",
        suite: Suite::Variation,
        fixtures: PULLBACK,
        statement: "(d/dt ∂̄_{J_t}) ġ* = −ġ* ⌐ ∇^{1,0} ġ*",
        anchor: "variation of ∂̄ along 𝒥_ω curves",
        tol: Tol::First,
        run: v_dbarvar,
    },
    CheckSpec {
        id: "V-SECORD",
        suite: Suite::Variation,
        fixtures: PULLBACK,
        statement: "∂̄_{J_t}(g̈* − (ġ*)²) = ġ* ⌐ ∇^{1,0} ġ*",
        anchor: "sec-ord-Defm",
        tol: Tol::Second,
        run: v_secord,
    },
    CheckSpec {
        id: "V-DBARVF",
        suite: Suite::Variation,
        fixtures: PULLBACK,
        statement: "2 d/dt ∂̄_{J_t} ξ = ∇_ξ ġ* − [∂^g ξ, ġ*] + [∂̄ξ, ġ*] for a fixed field ξ",
        anchor: "∂̄ variation on vector fields",
        tol: Tol::First,
        run: v_dbarvf,
    },
    CheckSpec {
        id: "V-TRANS",
        suite: Suite::Variation,
        fixtures: ALL_FIXTURES,
        statement: "d/dt A^T_{g_t} = [A^T, ġ*]",
        anchor: "variation of the g-transpose",
        tol: Tol::First,
        run: v_trans,
    },
    CheckSpec {
        id: "V-KURSYM",
        suite: Suite::Variation,
        fixtures: FS_ONLY,
        statement: "∂̄_{J_t} ∇*^{Ω_t} ġ*_t is g_t-symmetric along soliton gauge curves",
        anchor: "basic-kuranishSym",
        tol: Tol::First,
        run: v_kursym,
    },
    CheckSpec {
        id: "V-KUR1",
        suite: Suite::Variation,
        fixtures: FS_ONLY,
        statement: "for (ġ₀, Ω̇₀) ∈ 𝔽: B − B^T = [∂^g ∇*^Ω ġ*₀, ġ*₀], B = ∂̄∇*^Ω d/dt ġ*_t at 0",
        anchor: "first-kur-sm",
        tol: Tol::Second,
        run: v_kur1,
    },
    CheckSpec {
        id: "V-FUNDCX",
        suite: Suite::Variation,
        fixtures: FS_ONLY,
        statement: "∇*^Ω(J̇ ⌐ ∇^{1,0} J̇) is symmetric for harmonic J̇₀",
        anchor: "fund-cx-def-sm",
        tol: Tol::First,
        run: v_fundcx,
    },
    CheckSpec {
        id: "V-FLOW-SYMP",
        suite: Suite::Variation,
        fixtures: PULLBACK,
        statement: "the Hamiltonian flow is symplectic: Ψ_t*ω = ω for |t| ≤ 0.1",
        anchor: "one-parameter group of ω-symplectomorphisms",
        tol: Tol::Fixed(1e-8),
        run: v_flow_symp,
    },
    CheckSpec {
        id: "V-FLOW-JDOT",
        suite: Suite::Variation,
        fixtures: PULLBACK,
        statement: "J̇₀ = L_X J = −½ L_{ω⁻¹du} J along the pullback curve",
        anchor: "one-parameter group of ω-symplectomorphisms",
        tol: Tol::Fixed(1e-7),
        run: v_flow_jdot,
    },
];
