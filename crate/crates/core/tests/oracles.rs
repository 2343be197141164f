//! Values derived by hand, independently of the library, and frozen here.

use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use kahlerlab::backends::{Fixture, FixtureKind};
use kahlerlab::soliton::{perelman_h, LambdaBasis};
use kahlerlab::JetPoint;

/// Inverse stereographic projection of either chart, written out by hand.
fn sphere_point(chart: usize, a: f64, b: f64) -> [f64; 3] {
    let s = 1.0 + a * a + b * b;
    match chart {
        0 => [2.0 * a / s, 2.0 * b / s, (a * a + b * b - 1.0) / s],
        _ => [2.0 * a / s, -2.0 * b / s, (1.0 - a * a - b * b) / s],
    }
}

#[test]
fn lambda_closed_form_is_the_degree_one_harmonics() {
    let fx = Fixture::builtin(FixtureKind::Fs).unwrap();
    for (chart, a, b) in [(0, 0.3, -0.4), (0, -0.7, 0.2), (1, 0.5, 0.1), (1, -0.2, -0.6)] {
        let x = JetPoint::new(chart, vec![a, b]).lift(1).unwrap();
        let [xx, yy, zz] = sphere_point(chart, a, b);
        let expected = [(xx, yy), (zz, 0.0), (-xx, yy)];
        for (i, (re, im)) in expected.into_iter().enumerate() {
            let (u_re, u_im) = fx.lambda_closed_form(i, chart, &x).unwrap();
            assert_abs_diff_eq!(u_re.value(), re, epsilon = 1e-14);
            assert_abs_diff_eq!(u_im.value(), im, epsilon = 1e-14);
        }
    }
}

#[test]
fn lambda_gram_matrix() {
    // Means over the unit sphere: ⟨X²⟩ = ⟨Y²⟩ = ⟨Z²⟩ = 1/3, mixed means vanish.
    let fx = Fixture::builtin(FixtureKind::Fs).unwrap();
    let lam = LambdaBasis::new(&fx).unwrap();
    let expected = [[2.0 / 3.0, 0.0, 0.0], [0.0, 1.0 / 3.0, 0.0], [0.0, 0.0, 2.0 / 3.0]];
    for i in 0..3 {
        for j in 0..3 {
            assert_abs_diff_eq!(lam.gram[(i, j)].re, expected[i][j], epsilon = 1e-12);
            assert_abs_diff_eq!(lam.gram[(i, j)].im, 0.0, epsilon = 1e-12);
        }
    }
    assert_abs_diff_eq!(lam.cond, 2.0, epsilon = 1e-10);
}

#[test]
fn fubini_study_metric_and_weight() {
    // g = 4/(1 + |z|²)² |dz|², Ω = dV_g / 4π, so f = ½ ln det g − ln ρ = ln 4π.
    let fx = Fixture::builtin(FixtureKind::Fs).unwrap();
    for (chart, a, b) in [(0, 0.2, 0.9), (1, -0.4, 0.3)] {
        let geo = fx.geo(&JetPoint::new(chart, vec![a, b]), 2).unwrap();
        let c = 4.0 / (1.0 + a * a + b * b).powi(2);
        assert_abs_diff_eq!(geo.g.at(&[0, 0]).value(), c, epsilon = 1e-14);
        assert_abs_diff_eq!(geo.g.at(&[1, 1]).value(), c, epsilon = 1e-14);
        assert_abs_diff_eq!(geo.g.at(&[0, 1]).value(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(geo.f.value(), (4.0 * PI).ln(), epsilon = 1e-13);
        // unit curvature and constant f: 2H = −Δf + Tr h + 2f with h = Ric − g = 0
        assert_abs_diff_eq!(perelman_h(&geo).unwrap().value(), (4.0 * PI).ln(), epsilon = 1e-12);
    }
}

#[test]
fn flat_torus_perelman_function() {
    // g flat, f constant: h = −g, Tr h = −2, and 2H = −2 + 2f.
    let fx = Fixture::builtin(FixtureKind::Flat2).unwrap();
    let geo = fx.geo(&JetPoint::new(0, vec![0.31, 0.77]), 2).unwrap();
    assert_abs_diff_eq!(perelman_h(&geo).unwrap().value(), geo.f.value() - 1.0, epsilon = 1e-14);
}

#[test]
fn omega_is_normalized() {
    for kind in FixtureKind::ALL {
        let fx = Fixture::builtin(kind).unwrap();
        assert_abs_diff_eq!(fx.omega_weights().iter().sum::<f64>(), 1.0, epsilon = 1e-13);
    }
}
