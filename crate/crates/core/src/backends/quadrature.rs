//! Node sets: periodic trapezoid grids and a Gauss-Legendre × uniform sphere grid.

use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on [-1, 1] via Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Trapezoid nodes on the periodic box [0,1)^d with equal weights.
pub fn torus_grid(sizes: &[usize]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let total: usize = sizes.iter().product();
    let w = 1.0 / total as f64;
    let mut nodes = Vec::with_capacity(total);
    for mut lin in 0..total {
        let mut c = vec![0.0; sizes.len()];
        for (d, &n) in sizes.iter().enumerate().rev() {
            c[d] = (lin % n) as f64 / n as f64;
            lin /= n;
        }
        nodes.push(c);
    }
    (nodes, vec![w; total])
}

/// Unit-sphere points (X, Y, Z) with area weights summing to 4π.
pub fn sphere_grid(n_theta: usize, n_phi: usize) -> Vec<([f64; 3], f64)> {
    let (zs, ws) = gauss_legendre(n_theta);
    let mut out = Vec::with_capacity(n_theta * n_phi);
    for (z, wz) in zs.iter().zip(&ws) {
        let s = (1.0 - z * z).sqrt();
        for k in 0..n_phi {
            let phi = 2.0 * PI * (k as f64 + 0.5) / n_phi as f64;
            out.push(([s * phi.cos(), s * phi.sin(), *z], wz * 2.0 * PI / n_phi as f64));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(8);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let m14: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((m14 - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn sphere_area_and_moments() {
        let g = sphere_grid(12, 24);
        let area: f64 = g.iter().map(|(_, w)| w).sum();
        assert!((area - 4.0 * PI).abs() < 1e-12);
        let z2: f64 = g.iter().map(|(p, w)| w * p[2] * p[2]).sum();
        assert!((z2 - 4.0 * PI / 3.0).abs() < 1e-12);
        let xy: f64 = g.iter().map(|(p, w)| w * p[0] * p[1]).sum();
        assert!(xy.abs() < 1e-13);
    }
}
