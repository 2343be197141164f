//! Dense truncated Taylor jets in up to four variables, order at most four.
//!
//! A jet stores the Taylor coefficients `∂^α f / α!` for every multi-index
//! `|α| ≤ K` in graded order, so the first `count(k)` coefficients always form
//! the order-`k` truncation. Operands of mixed order combine at the lower order,
//! and differentiation drops the order by one.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_traits::{Float, FromPrimitive};
use thiserror::Error;

pub const MAX_ORDER: usize = 4;
pub const MAX_DIM: usize = 4;

/// Real scalar type a jet can be built over.
pub trait Scalar: Float + FromPrimitive + Debug + Send + Sync + 'static {}
impl Scalar for f32 {}
impl Scalar for f64 {}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("unsupported-order: jet order {0} exceeds {MAX_ORDER}")]
    UnsupportedOrder(usize),
    #[error("bad-axis: axis {axis} out of range for dimension {dim}")]
    BadAxis { axis: usize, dim: usize },
    #[error("unsupported jet dimension {0}")]
    BadDim(usize),
    #[error("domain-error: {op} of nonpositive value {value}")]
    Domain { op: &'static str, value: f64 },
    #[error("singular-jet: division by a jet with zero value")]
    Singular,
    #[error("order-exhausted: jet of order 0 cannot be differentiated")]
    OrderExhausted,
}

struct Table {
    alphas: Vec<[u8; MAX_DIM]>,
    count: [usize; MAX_ORDER + 1],
    lookup: Vec<u16>,
    /// (i, j, k) with α_i + α_j = α_k, grouped by |α_k|.
    triples: Vec<(u16, u16, u16)>,
    triple_count: [usize; MAX_ORDER + 1],
    /// For each axis and each β with |β| < MAX_ORDER: index of β + e_axis and β_axis + 1.
    shift: Vec<Vec<(u16, u16)>>,
}

fn lookup_key(a: &[u8; MAX_DIM]) -> usize {
    a.iter().fold(0, |acc, &x| acc * (MAX_ORDER + 1) + x as usize)
}

impl Table {
    fn build(dim: usize) -> Table {
        let mut alphas = Vec::new();
        for total in 0..=MAX_ORDER {
            let mut level = Vec::new();
            let mut a = [0u8; MAX_DIM];
            enumerate(dim, 0, total, &mut a, &mut level);
            alphas.extend(level);
        }
        let mut count = [0; MAX_ORDER + 1];
        for (k, c) in count.iter_mut().enumerate() {
            *c = alphas.iter().filter(|a| deg(a) <= k).count();
        }
        let mut lookup = vec![u16::MAX; (MAX_ORDER + 1).pow(MAX_DIM as u32)];
        for (i, a) in alphas.iter().enumerate() {
            lookup[lookup_key(a)] = i as u16;
        }
        let mut triples = Vec::new();
        let mut triple_count = [0; MAX_ORDER + 1];
        for k in 0..alphas.len() {
            for i in 0..alphas.len() {
                let ai = alphas[i];
                let ak = alphas[k];
                if (0..MAX_DIM).all(|d| ai[d] <= ak[d]) {
                    let mut aj = [0u8; MAX_DIM];
                    for d in 0..MAX_DIM {
                        aj[d] = ak[d] - ai[d];
                    }
                    let j = lookup[lookup_key(&aj)];
                    triples.push((i as u16, j, k as u16));
                }
            }
            let dk = deg(&alphas[k]);
            for (m, c) in triple_count.iter_mut().enumerate() {
                if m >= dk {
                    *c = triples.len();
                }
            }
        }
        let mut shift = Vec::new();
        for axis in 0..dim {
            let mut s = Vec::new();
            for b in alphas.iter().take(count[MAX_ORDER - 1]) {
                let mut up = *b;
                up[axis] += 1;
                s.push((lookup[lookup_key(&up)], b[axis] as u16 + 1));
            }
            shift.push(s);
        }
        Table { alphas, count, lookup, triples, triple_count, shift }
    }
}

fn deg(a: &[u8; MAX_DIM]) -> usize {
    a.iter().map(|&x| x as usize).sum()
}

fn enumerate(dim: usize, pos: usize, left: usize, a: &mut [u8; MAX_DIM], out: &mut Vec<[u8; MAX_DIM]>) {
    if pos + 1 == dim {
        a[pos] = left as u8;
        out.push(*a);
        a[pos] = 0;
        return;
    }
    for take in (0..=left).rev() {
        a[pos] = take as u8;
        enumerate(dim, pos + 1, left - take, a, out);
    }
    a[pos] = 0;
}

fn table(dim: usize) -> &'static Table {
    static TABLES: [OnceLock<Table>; MAX_DIM] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    TABLES[dim - 1].get_or_init(|| Table::build(dim))
}

/// Number of coefficients of a jet in `dim` variables truncated at `order`.
pub fn coeff_count(dim: usize, order: usize) -> usize {
    table(dim).count[order]
}

/// Truncated Taylor jet over the scalar type `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetScalar<T> {
    dim: u8,
    order: u8,
    c: Vec<T>,
}

fn check_shape(dim: usize, order: usize) -> Result<(), JetError> {
    if dim == 0 || dim > MAX_DIM {
        return Err(JetError::BadDim(dim));
    }
    if order > MAX_ORDER {
        return Err(JetError::UnsupportedOrder(order));
    }
    Ok(())
}

fn t_of<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("scalar conversion")
}

const FACT: [f64; 5] = [1.0, 1.0, 2.0, 6.0, 24.0];

impl<T: Scalar> JetScalar<T> {
    pub fn constant(c: T, dim: usize, order: usize) -> Result<Self, JetError> {
        check_shape(dim, order)?;
        let mut v = vec![T::zero(); coeff_count(dim, order)];
        v[0] = c;
        Ok(Self { dim: dim as u8, order: order as u8, c: v })
    }

    /// The coordinate function `x_axis` expanded around `value`.
    pub fn variable(value: T, axis: usize, dim: usize, order: usize) -> Result<Self, JetError> {
        check_shape(dim, order)?;
        if axis >= dim {
            return Err(JetError::BadAxis { axis, dim });
        }
        let mut j = Self::constant(value, dim, order)?;
        if order > 0 {
            j.c[1 + axis] = T::one();
        }
        Ok(j)
    }

    /// Builds a jet from raw Taylor coefficients in graded order.
    pub fn from_taylor(dim: usize, order: usize, coeffs: Vec<T>) -> Result<Self, JetError> {
        check_shape(dim, order)?;
        assert_eq!(coeffs.len(), coeff_count(dim, order), "coefficient count");
        Ok(Self { dim: dim as u8, order: order as u8, c: coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn value(&self) -> T {
        self.c[0]
    }

    pub fn taylor(&self) -> &[T] {
        &self.c
    }

    /// Multi-indices in storage order.
    pub fn multi_indices(&self) -> impl Iterator<Item = &'static [u8; MAX_DIM]> {
        table(self.dim()).alphas[..self.c.len()].iter()
    }

    /// The partial derivative `∂^α f` at the expansion point.
    pub fn partial(&self, alpha: &[usize]) -> T {
        let mut a = [0u8; MAX_DIM];
        let mut total = 0;
        let mut fact = 1.0;
        for (d, &x) in alpha.iter().enumerate() {
            a[d] = x as u8;
            total += x;
            fact *= FACT[x.min(4)];
        }
        if total > self.order() {
            return T::zero();
        }
        let idx = table(self.dim()).lookup[lookup_key(&a)] as usize;
        self.c[idx] * t_of(fact)
    }

    pub fn zero_like(&self) -> Self {
        Self { dim: self.dim, order: self.order, c: vec![T::zero(); self.c.len()] }
    }

    pub fn constant_like(&self, v: T) -> Self {
        let mut z = self.zero_like();
        z.c[0] = v;
        z
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            dim: self.dim,
            order: order as u8,
            c: self.c[..coeff_count(self.dim(), order)].to_vec(),
        }
    }

    /// Partial derivative along `axis`; the result has one order less.
    pub fn try_d(&self, axis: usize) -> Result<Self, JetError> {
        if axis >= self.dim() {
            return Err(JetError::BadAxis { axis, dim: self.dim() });
        }
        if self.order == 0 {
            return Err(JetError::OrderExhausted);
        }
        let tb = table(self.dim());
        let n = tb.count[self.order() - 1];
        let c = tb.shift[axis][..n]
            .iter()
            .map(|&(src, f)| self.c[src as usize] * t_of(f as f64))
            .collect();
        Ok(Self { dim: self.dim, order: self.order - 1, c })
    }

    /// Panicking form of [`try_d`](Self::try_d) for internal formulas whose order budget is fixed.
    pub fn d(&self, axis: usize) -> Self {
        self.try_d(axis).expect("jet differentiation")
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|x| x.is_finite())
    }

    pub fn scale(&self, s: T) -> Self {
        Self { dim: self.dim, order: self.order, c: self.c.iter().map(|&x| x * s).collect() }
    }

    fn zip(&self, o: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!(self.dim, o.dim, "jet dimension mismatch");
        let order = self.order.min(o.order);
        let n = coeff_count(self.dim(), order as usize);
        let c = (0..n).map(|i| f(self.c[i], o.c[i])).collect();
        Self { dim: self.dim, order, c }
    }

    fn product(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "jet dimension mismatch");
        let order = self.order.min(o.order) as usize;
        let tb = table(self.dim());
        let mut c = vec![T::zero(); tb.count[order]];
        for &(i, j, k) in &tb.triples[..tb.triple_count[order]] {
            c[k as usize] = c[k as usize] + self.c[i as usize] * o.c[j as usize];
        }
        Self { dim: self.dim, order: order as u8, c }
    }

    /// Evaluates `Σ_n d[n]/n! (self − a₀)^n`, where `d[n]` is the n-th derivative of a
    /// univariate function at `a₀ = self.value()`.
    fn compose(&self, d: [T; MAX_ORDER + 1]) -> Self {
        let k = self.order();
        let mut tail = self.clone();
        tail.c[0] = T::zero();
        let mut r = self.constant_like(d[k] / t_of(FACT[k]));
        for n in (0..k).rev() {
            r = r.product(&tail);
            r.c[0] = r.c[0] + d[n] / t_of(FACT[n]);
        }
        r
    }

    pub fn exp(&self) -> Self {
        let e = self.value().exp();
        self.compose([e; 5])
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose([s, c, -s, -c, s])
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose([c, -s, -c, s, c])
    }

    /// Natural logarithm with IEEE semantics (NaN for nonpositive values).
    pub fn ln(&self) -> Self {
        let a = self.value();
        let r = a.recip();
        let one = T::one();
        let two = one + one;
        let six: T = t_of(6.0);
        self.compose([a.ln(), r, -r * r, two * r * r * r, -six * r * r * r * r])
    }

    pub fn powf(&self, p: T) -> Self {
        let a = self.value();
        let mut d = [T::zero(); 5];
        let mut coef = T::one();
        for (n, dn) in d.iter_mut().enumerate() {
            *dn = coef * a.powf(p - t_of(n as f64));
            coef = coef * (p - t_of(n as f64));
        }
        self.compose(d)
    }

    pub fn sqrt(&self) -> Self {
        self.powf(t_of(0.5))
    }

    pub fn powi(&self, n: i32) -> Self {
        if n >= 0 {
            let mut r = self.constant_like(T::one());
            for _ in 0..n {
                r = r.product(self);
            }
            r
        } else {
            self.recip().powi(-n)
        }
    }

    pub fn recip(&self) -> Self {
        let r = self.value().recip();
        let mut d = [T::zero(); 5];
        let mut p = r;
        for (n, dn) in d.iter_mut().enumerate() {
            let sign = if n % 2 == 0 { T::one() } else { -T::one() };
            *dn = sign * t_of(FACT[n]) * p;
            p = p * r;
        }
        self.compose(d)
    }

    pub fn try_ln(&self) -> Result<Self, JetError> {
        if !(self.value() > T::zero()) {
            return Err(JetError::Domain { op: "log", value: self.value().to_f64().unwrap_or(f64::NAN) });
        }
        Ok(self.ln())
    }

    pub fn try_sqrt(&self) -> Result<Self, JetError> {
        if !(self.value() > T::zero()) {
            return Err(JetError::Domain { op: "sqrt", value: self.value().to_f64().unwrap_or(f64::NAN) });
        }
        Ok(self.sqrt())
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, JetError> {
        if o.value() == T::zero() {
            return Err(JetError::Singular);
        }
        Ok(self.product(&o.recip()))
    }

    /// `self^p` for a jet exponent, via `exp(p log self)`.
    pub fn try_pow(&self, p: &Self) -> Result<Self, JetError> {
        Ok(self.try_ln()?.product(p).exp())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<T: Scalar> $tr<&JetScalar<T>> for &JetScalar<T> {
            type Output = JetScalar<T>;
            fn $m(self, o: &JetScalar<T>) -> JetScalar<T> {
                $body(self, o)
            }
        }
        impl<T: Scalar> $tr<JetScalar<T>> for JetScalar<T> {
            type Output = JetScalar<T>;
            fn $m(self, o: JetScalar<T>) -> JetScalar<T> {
                $body(&self, &o)
            }
        }
        impl<T: Scalar> $tr<&JetScalar<T>> for JetScalar<T> {
            type Output = JetScalar<T>;
            fn $m(self, o: &JetScalar<T>) -> JetScalar<T> {
                $body(&self, o)
            }
        }
        impl<T: Scalar> $tr<JetScalar<T>> for &JetScalar<T> {
            type Output = JetScalar<T>;
            fn $m(self, o: JetScalar<T>) -> JetScalar<T> {
                $body(self, &o)
            }
        }
    };
}

binop!(Add, add, |a: &JetScalar<T>, b: &JetScalar<T>| a.zip(b, |x, y| x + y));
binop!(Sub, sub, |a: &JetScalar<T>, b: &JetScalar<T>| a.zip(b, |x, y| x - y));
binop!(Mul, mul, |a: &JetScalar<T>, b: &JetScalar<T>| a.product(b));
binop!(Div, div, |a: &JetScalar<T>, b: &JetScalar<T>| a.product(&b.recip()));

impl<T: Scalar> Neg for JetScalar<T> {
    type Output = JetScalar<T>;
    fn neg(self) -> JetScalar<T> {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Neg for &JetScalar<T> {
    type Output = JetScalar<T>;
    fn neg(self) -> JetScalar<T> {
        self.scale(-T::one())
    }
}

impl<T: Scalar> AddAssign<&JetScalar<T>> for JetScalar<T> {
    fn add_assign(&mut self, o: &JetScalar<T>) {
        if o.order < self.order {
            *self = self.truncate(o.order());
        }
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a = *a + *b;
        }
    }
}

impl<T: Scalar> AddAssign<JetScalar<T>> for JetScalar<T> {
    fn add_assign(&mut self, o: JetScalar<T>) {
        *self += &o;
    }
}

impl<T: Scalar> SubAssign<&JetScalar<T>> for JetScalar<T> {
    fn sub_assign(&mut self, o: &JetScalar<T>) {
        if o.order < self.order {
            *self = self.truncate(o.order());
        }
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a = *a - *b;
        }
    }
}

impl<T: Scalar> SubAssign<JetScalar<T>> for JetScalar<T> {
    fn sub_assign(&mut self, o: JetScalar<T>) {
        *self -= &o;
    }
}

impl<T: Scalar> MulAssign<T> for JetScalar<T> {
    fn mul_assign(&mut self, s: T) {
        for a in self.c.iter_mut() {
            *a = *a * s;
        }
    }
}

macro_rules! scalar_ops {
    ($t:ty) => {
        impl Mul<$t> for JetScalar<$t> {
            type Output = JetScalar<$t>;
            fn mul(self, s: $t) -> Self {
                self.scale(s)
            }
        }
        impl Mul<$t> for &JetScalar<$t> {
            type Output = JetScalar<$t>;
            fn mul(self, s: $t) -> JetScalar<$t> {
                self.scale(s)
            }
        }
        impl Mul<JetScalar<$t>> for $t {
            type Output = JetScalar<$t>;
            fn mul(self, j: JetScalar<$t>) -> JetScalar<$t> {
                j.scale(self)
            }
        }
        impl Mul<&JetScalar<$t>> for $t {
            type Output = JetScalar<$t>;
            fn mul(self, j: &JetScalar<$t>) -> JetScalar<$t> {
                j.scale(self)
            }
        }
        impl Add<$t> for JetScalar<$t> {
            type Output = JetScalar<$t>;
            fn add(mut self, s: $t) -> Self {
                self.c[0] += s;
                self
            }
        }
        impl Add<$t> for &JetScalar<$t> {
            type Output = JetScalar<$t>;
            fn add(self, s: $t) -> JetScalar<$t> {
                self.clone() + s
            }
        }
        impl Sub<$t> for JetScalar<$t> {
            type Output = JetScalar<$t>;
            fn sub(mut self, s: $t) -> Self {
                self.c[0] -= s;
                self
            }
        }
        impl Sub<$t> for &JetScalar<$t> {
            type Output = JetScalar<$t>;
            fn sub(self, s: $t) -> JetScalar<$t> {
                self.clone() - s
            }
        }
        impl Div<$t> for JetScalar<$t> {
            type Output = JetScalar<$t>;
            fn div(self, s: $t) -> Self {
                self.scale(1.0 / s)
            }
        }
        impl Div<$t> for &JetScalar<$t> {
            type Output = JetScalar<$t>;
            fn div(self, s: $t) -> JetScalar<$t> {
                self.scale(1.0 / s)
            }
        }
    };
}

scalar_ops!(f64);
scalar_ops!(f32);

/// A point of a chart.
#[derive(Clone, Debug, PartialEq)]
pub struct JetPoint {
    pub chart: usize,
    pub coords: Vec<f64>,
}

impl JetPoint {
    pub fn new(chart: usize, coords: Vec<f64>) -> Self {
        Self { chart, coords }
    }

    /// Coordinate jets of every axis at this point.
    pub fn lift(&self, order: usize) -> Result<Vec<JetScalar<f64>>, JetError> {
        let dim = self.coords.len();
        (0..dim).map(|i| JetScalar::variable(self.coords[i], i, dim, order)).collect()
    }
}

pub fn jet_const(c: f64, dim: usize, order: usize) -> Result<JetScalar<f64>, JetError> {
    JetScalar::constant(c, dim, order)
}

pub fn jet_coordinate(axis: usize, point: &JetPoint, order: usize) -> Result<JetScalar<f64>, JetError> {
    let dim = point.coords.len();
    if axis >= dim {
        return Err(JetError::BadAxis { axis, dim });
    }
    JetScalar::variable(point.coords[axis], axis, dim, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type J = JetScalar<f64>;

    #[test]
    fn table_sizes() {
        assert_eq!(coeff_count(2, 4), 15);
        assert_eq!(coeff_count(4, 4), 70);
        assert_eq!(coeff_count(4, 0), 1);
        assert_eq!(coeff_count(2, 1), 3);
    }

    #[test]
    fn constants_and_coordinates() {
        let c = jet_const(1.0, 2, 2).unwrap();
        assert_eq!(c.taylor(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(jet_const(0.0, 4, 4).unwrap().taylor().iter().all(|&x| x == 0.0));
        assert_eq!(jet_const(PI, 2, 0).unwrap().taylor(), &[PI]);
        assert_eq!(jet_const(1.0, 2, 5), Err(JetError::UnsupportedOrder(5)));
        let p = JetPoint::new(0, vec![0.3, 0.7]);
        let x = jet_coordinate(0, &p, 2).unwrap();
        assert_eq!((x.value(), x.partial(&[1, 0]), x.partial(&[0, 1]), x.partial(&[2, 0])), (0.3, 1.0, 0.0, 0.0));
        let y = jet_coordinate(1, &p, 1).unwrap();
        assert_eq!((y.value(), y.partial(&[0, 1])), (0.7, 1.0));
        assert_eq!(jet_coordinate(0, &p, 0).unwrap().taylor(), &[0.3]);
        assert_eq!(jet_coordinate(2, &p, 1), Err(JetError::BadAxis { axis: 2, dim: 2 }));
    }

    #[test]
    fn trig_product_partials() {
        let (x0, y0) = (0.137, 0.481);
        let p = JetPoint::new(0, vec![x0, y0]);
        let v = p.lift(4).unwrap();
        let f = (&v[0] * (2.0 * PI)).sin() * (&v[1] * (2.0 * PI)).cos();
        let w = 2.0 * PI;
        // d^a/dx^a sin(wx) = w^a sin(wx + aπ/2)
        for a in 0..=4usize {
            for b in 0..=(4 - a) {
                let exact = w.powi(a as i32) * (w * x0 + a as f64 * PI / 2.0).sin()
                    * w.powi(b as i32) * (w * y0 + b as f64 * PI / 2.0).cos();
                let scale = w.powi((a + b) as i32).max(1.0);
                assert!((f.partial(&[a, b]) - exact).abs() <= 1e-14 * scale, "{a} {b}");
            }
        }
    }

    #[test]
    fn exp_of_zero_and_square_derivative() {
        let z = jet_const(0.0, 2, 3).unwrap();
        assert_eq!(z.exp(), jet_const(1.0, 2, 3).unwrap());
        let x = J::variable(3.0, 0, 1, 2).unwrap();
        let sq = &x * &x;
        assert_eq!(sq.partial(&[1]), 6.0);
        assert_eq!(sq.partial(&[2]), 2.0);
    }

    #[test]
    fn domain_and_singular_errors() {
        let x = J::variable(-1.0, 0, 2, 2).unwrap();
        assert!(matches!(x.try_ln(), Err(JetError::Domain { op: "log", .. })));
        assert!(matches!(x.try_sqrt(), Err(JetError::Domain { op: "sqrt", .. })));
        let z = jet_const(0.0, 2, 2).unwrap();
        assert_eq!(x.try_div(&z), Err(JetError::Singular));
        assert_eq!(z.try_d(0).unwrap().order(), 1);
        assert_eq!(jet_const(1.0, 2, 0).unwrap().try_d(0), Err(JetError::OrderExhausted));
    }

    #[test]
    fn inverse_function_pairs() {
        let p = JetPoint::new(0, vec![0.4, 0.9, 0.2, 0.6]);
        let v = p.lift(4).unwrap();
        let a = &v[0] * &v[1] + v[2].sin() + 2.0;
        let roundtrip = a.ln().exp();
        let sq = a.sqrt() * a.sqrt();
        let inv = &a * &a.recip();
        let pw = a.powf(2.5) * a.powf(-2.5);
        for (i, &c) in a.taylor().iter().enumerate() {
            assert!((roundtrip.taylor()[i] - c).abs() < 1e-13);
            assert!((sq.taylor()[i] - c).abs() < 1e-13);
        }
        assert!((inv.value() - 1.0).abs() < 1e-15);
        assert!(inv.taylor()[1..].iter().all(|x| x.abs() < 1e-13));
        assert!(pw.taylor()[1..].iter().all(|x| x.abs() < 1e-12));
        let s2c2 = a.sin() * a.sin() + a.cos() * a.cos();
        assert!(s2c2.taylor()[1..].iter().all(|x| x.abs() < 1e-13));
    }

    #[test]
    fn derivative_commutes_with_product_rule() {
        let p = JetPoint::new(0, vec![0.2, 0.3]);
        let v = p.lift(4).unwrap();
        let f = v[0].sin() * v[1].exp();
        let g = &v[0] * &v[1] * &v[1];
        let lhs = (&f * &g).d(1);
        let rhs = f.d(1) * &g + &f * g.d(1);
        assert_eq!(lhs.order(), 3);
        for (a, b) in lhs.taylor().iter().zip(rhs.taylor()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn single_precision_jets() {
        let x = JetScalar::<f32>::variable(0.5, 0, 2, 3).unwrap();
        let f = x.exp() * x.sin();
        let exact = 0.5f32.exp() * (0.5f32.sin() + 0.5f32.cos());
        assert!((f.partial(&[1, 0]) - exact).abs() < 1e-6);
    }
}
