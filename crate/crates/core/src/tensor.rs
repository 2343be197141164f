//! Coordinate-component tensors whose entries are jets.
//!
//! Components are stored row-major over the slots. A covariant derivative is
//! always prepended as a new first `Down` slot.

use crate::Jet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Up,
    Down,
}

pub use Slot::{Down, Up};

#[derive(Clone, Debug)]
pub struct Tensor {
    pub dim: usize,
    pub slots: Vec<Slot>,
    pub data: Vec<Jet>,
}

/// All multi-indices of the given rank, in storage order.
pub fn multi_indices(dim: usize, rank: usize) -> Vec<Vec<usize>> {
    let n = dim.pow(rank as u32);
    (0..n)
        .map(|mut lin| {
            let mut idx = vec![0; rank];
            for s in (0..rank).rev() {
                idx[s] = lin % dim;
                lin /= dim;
            }
            idx
        })
        .collect()
}

impl Tensor {
    pub fn from_fn(dim: usize, slots: &[Slot], mut f: impl FnMut(&[usize]) -> Jet) -> Tensor {
        let data = multi_indices(dim, slots.len()).iter().map(|i| f(i)).collect();
        Tensor { dim, slots: slots.to_vec(), data }
    }

    pub fn zeros(dim: usize, slots: &[Slot], like: &Jet) -> Tensor {
        let z = like.zero_like();
        Tensor { dim, slots: slots.to_vec(), data: vec![z; dim.pow(slots.len() as u32)] }
    }

    pub fn scalar(j: Jet) -> Tensor {
        Tensor { dim: j.dim(), slots: vec![], data: vec![j] }
    }

    pub fn vector(v: Vec<Jet>) -> Tensor {
        Tensor { dim: v.len(), slots: vec![Up], data: v }
    }

    pub fn form(v: Vec<Jet>) -> Tensor {
        Tensor { dim: v.len(), slots: vec![Down], data: v }
    }

    /// Identity endomorphism with the jet shape of `like`.
    pub fn identity(dim: usize, like: &Jet) -> Tensor {
        Tensor::from_fn(dim, &[Up, Down], |i| like.constant_like(if i[0] == i[1] { 1.0 } else { 0.0 }))
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn lin(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn at(&self, idx: &[usize]) -> &Jet {
        &self.data[self.lin(idx)]
    }

    pub fn at_mut(&mut self, idx: &[usize]) -> &mut Jet {
        let l = self.lin(idx);
        &mut self.data[l]
    }

    pub fn order(&self) -> usize {
        self.data.iter().map(|j| j.order()).min().unwrap_or(0)
    }

    pub fn like(&self) -> &Jet {
        &self.data[0]
    }

    pub fn map(&self, f: impl Fn(&Jet) -> Jet) -> Tensor {
        Tensor { dim: self.dim, slots: self.slots.clone(), data: self.data.iter().map(f).collect() }
    }

    pub fn truncate(&self, order: usize) -> Tensor {
        self.map(|j| j.truncate(order))
    }

    /// Order-0 truncation, i.e. the plain component values.
    pub fn values(&self) -> Vec<f64> {
        self.data.iter().map(|j| j.value()).collect()
    }

    fn zip(&self, o: &Tensor, f: impl Fn(&Jet, &Jet) -> Jet) -> Tensor {
        assert_eq!(self.slots, o.slots, "valence mismatch");
        Tensor {
            dim: self.dim,
            slots: self.slots.clone(),
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &Tensor) -> Tensor {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Tensor) -> Tensor {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Tensor {
        self.map(|j| j * s)
    }

    pub fn mul_jet(&self, u: &Jet) -> Tensor {
        self.map(|j| j * u)
    }

    pub fn neg(&self) -> Tensor {
        self.scale(-1.0)
    }

    /// Linear combination `Σ c_i T_i`.
    pub fn lincomb(terms: &[(f64, &Tensor)]) -> Tensor {
        let mut acc = terms[0].1.scale(terms[0].0);
        for (c, t) in &terms[1..] {
            acc = acc.add(&t.scale(*c));
        }
        acc
    }

    /// Swaps two slots (e.g. the hat operation on ∇A).
    pub fn swap_slots(&self, a: usize, b: usize) -> Tensor {
        let mut slots = self.slots.clone();
        slots.swap(a, b);
        Tensor::from_fn(self.dim, &slots, |i| {
            let mut j = i.to_vec();
            j.swap(a, b);
            self.at(&j).clone()
        })
    }

    /// Contracts slot `a` against slot `b` (one must be Up, the other Down).
    pub fn trace(&self, a: usize, b: usize) -> Tensor {
        assert_ne!(self.slots[a], self.slots[b], "trace needs opposite variances");
        let slots: Vec<Slot> =
            self.slots.iter().enumerate().filter(|(k, _)| *k != a && *k != b).map(|(_, s)| *s).collect();
        Tensor::from_fn(self.dim, &slots, |i| {
            let mut full = vec![0; self.rank()];
            let mut acc: Option<Jet> = None;
            for m in 0..self.dim {
                let mut it = i.iter();
                for (k, slot) in full.iter_mut().enumerate() {
                    *slot = if k == a || k == b { m } else { *it.next().unwrap() };
                }
                let v = self.at(&full);
                acc = Some(match acc {
                    None => v.clone(),
                    Some(s) => s + v,
                });
            }
            acc.unwrap()
        })
    }

    /// Endomorphism product `(AB)^a_b = A^a_c B^c_b`.
    pub fn compose(&self, o: &Tensor) -> Tensor {
        let n = self.dim;
        Tensor::from_fn(n, &[Up, Down], |i| sum(n, |c| self.at(&[i[0], c]) * o.at(&[c, i[1]])))
    }

    /// `A ξ` for an endomorphism and a vector.
    pub fn apply(&self, v: &Tensor) -> Tensor {
        let n = self.dim;
        Tensor::vector((0..n).map(|a| sum(n, |c| self.at(&[a, c]) * &v.data[c])).collect())
    }

    /// Inserts the vector `v` into slot `s` (contraction with a Down slot).
    pub fn insert(&self, s: usize, v: &Tensor) -> Tensor {
        assert_eq!(self.slots[s], Down);
        let slots: Vec<Slot> = self.slots.iter().enumerate().filter(|(k, _)| *k != s).map(|(_, x)| *x).collect();
        Tensor::from_fn(self.dim, &slots, |i| {
            let mut full = i.to_vec();
            full.insert(s, 0);
            sum(self.dim, |m| {
                full[s] = m;
                self.at(&full) * &v.data[m]
            })
        })
    }

    /// Endomorphism commutator `[A, B] = AB − BA`.
    pub fn commutator(&self, o: &Tensor) -> Tensor {
        self.compose(o).sub(&o.compose(self))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|j| j.value().abs()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|j| j.is_finite())
    }
}

/// `Σ_{m < n} f(m)`.
pub fn sum(n: usize, mut f: impl FnMut(usize) -> Jet) -> Jet {
    let mut acc = f(0);
    for m in 1..n {
        acc += f(m);
    }
    acc
}

/// Inverse of a small jet matrix given row-major, by Gauss-Jordan elimination with
/// partial pivoting on the values.
pub fn invert(n: usize, m: &[Jet]) -> Vec<Jet> {
    let like = &m[0];
    let mut a: Vec<Jet> = m.to_vec();
    let mut inv: Vec<Jet> = (0..n * n).map(|k| like.constant_like(if k / n == k % n { 1.0 } else { 0.0 })).collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x * n + col].value().abs().total_cmp(&a[y * n + col].value().abs())).unwrap();
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
                inv.swap(piv * n + k, col * n + k);
            }
        }
        let r = a[col * n + col].recip();
        for k in 0..n {
            a[col * n + k] = &a[col * n + k] * &r;
            inv[col * n + k] = &inv[col * n + k] * &r;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = a[row * n + col].clone();
            for k in 0..n {
                let t = &factor * &a[col * n + k];
                a[row * n + k] -= &t;
                let t = &factor * &inv[col * n + k];
                inv[row * n + k] -= &t;
            }
        }
    }
    inv
}

/// Determinant of a small jet matrix (row-major) by cofactor expansion.
pub fn det(n: usize, m: &[Jet]) -> Jet {
    if n == 1 {
        return m[0].clone();
    }
    let mut acc: Option<Jet> = None;
    for c in 0..n {
        let minor: Vec<Jet> =
            (1..n).flat_map(|r| (0..n).filter(move |&k| k != c).map(move |k| (r, k))).map(|(r, k)| m[r * n + k].clone()).collect();
        let term = &m[c] * &det(n - 1, &minor);
        acc = Some(match acc {
            None => term,
            Some(s) => if c % 2 == 0 { s + term } else { s - term },
        });
    }
    acc.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::JetPoint;

    #[test]
    fn inverse_and_determinant() {
        let x = JetPoint::new(0, vec![0.3, 0.1]).lift(2).unwrap();
        let m = vec![&x[0] + 2.0, x[1].sin(), x[1].sin(), &x[0] * &x[1] + 3.0];
        let inv = invert(2, &m);
        for i in 0..2 {
            for j in 0..2 {
                let p = sum(2, |k| &m[i * 2 + k] * &inv[k * 2 + j]);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((p.value() - want).abs() < 1e-14);
                assert!(p.taylor()[1..].iter().all(|c| c.abs() < 1e-13));
            }
        }
        let d = det(2, &m);
        let direct = &m[0] * &m[3] - &m[1] * &m[2];
        assert!(d.taylor().iter().zip(direct.taylor()).all(|(a, b)| (a - b).abs() < 1e-14));
    }

    #[test]
    fn trace_and_swap() {
        let one = crate::jet_const(1.0, 2, 0).unwrap();
        let t = Tensor::from_fn(2, &[Up, Down], |i| one.scale((1 + i[0] * 2 + i[1]) as f64));
        assert_eq!(t.trace(0, 1).data[0].value(), 1.0 + 4.0);
        let s = t.swap_slots(0, 1);
        assert_eq!(s.at(&[0, 1]).value(), t.at(&[1, 0]).value());
        assert_eq!(s.slots, vec![Down, Up]);
    }
}
