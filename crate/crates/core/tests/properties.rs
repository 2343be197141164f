use kahlerlab::backends::fields::TrigPoly;
use kahlerlab::backends::{Fixture, FixtureDescriptor, FixtureKind};
use kahlerlab::check::{find, run_check, Status};
use kahlerlab::kahler::anti_linear_part;
use kahlerlab::tensor::Tensor;
use kahlerlab::variation::fd::FdOptions;
use kahlerlab::{Jet, JetPoint};
use proptest::prelude::*;

fn factorial_ratio(a: usize, k: usize) -> f64 {
    ((a - k + 1)..=a).map(|x| x as f64).product()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Jets of polynomials of degree ≤ order carry the exact partials.
    #[test]
    fn polynomial_jets_are_exact(
        coeffs in prop::collection::vec(-2.0f64..2.0, 15),
        x0 in -1.5f64..1.5,
        y0 in -1.5f64..1.5,
    ) {
        let v = JetPoint::new(0, vec![x0, y0]).lift(4).unwrap();
        let mut exps = Vec::new();
        for d in 0..=4usize {
            for a in 0..=d {
                exps.push((a, d - a));
            }
        }
        let mut p = v[0].zero_like();
        for (&c, &(a, b)) in coeffs.iter().zip(&exps) {
            p += v[0].powi(a as i32) * v[1].powi(b as i32) * c;
        }
        for &(i, j) in &exps {
            let mut exact = 0.0;
            for (&c, &(a, b)) in coeffs.iter().zip(&exps) {
                if a >= i && b >= j {
                    exact += c * factorial_ratio(a, i) * factorial_ratio(b, j)
                        * x0.powi((a - i) as i32) * y0.powi((b - j) as i32);
                }
            }
            prop_assert!(rel_close(p.partial(&[i, j]), exact, 1e-12), "∂^({i},{j}): {} vs {exact}", p.partial(&[i, j]));
        }
    }

    /// First jet coefficients agree with central differences at second order.
    #[test]
    fn builtins_match_central_differences(x0 in 0.5f64..2.0, which in 0usize..6) {
        let f = |j: &Jet| match which {
            0 => j.exp(),
            1 => j.sin(),
            2 => j.cos(),
            3 => j.ln(),
            4 => j.sqrt(),
            _ => j.recip(),
        };
        let at = |x: f64| f(&Jet::constant(x, 1, 0).unwrap()).value();
        let jet = f(&Jet::variable(x0, 0, 1, 1).unwrap()).partial(&[1]);
        let err = |h: f64| ((at(x0 + h) - at(x0 - h)) / (2.0 * h) - jet).abs();
        let (e1, e2) = (err(0.02), err(0.01));
        prop_assume!(e2 > 1e-11);
        prop_assert!((e1 / e2).log2() >= 1.9, "order {}", (e1 / e2).log2());
    }

    /// Composition through jets agrees with substituting the Taylor polynomial of the outer map.
    #[test]
    fn composition_groupings_agree(x0 in -1.0f64..1.0, y0 in -1.0f64..1.0) {
        let v = JetPoint::new(0, vec![x0, y0]).lift(4).unwrap();
        let inner = (&v[0] * &v[1]).sin() + &v[0] * 0.5;
        let direct = inner.cos().exp();
        let t = Jet::variable(inner.value(), 0, 1, 4).unwrap();
        let outer = t.cos().exp();
        let shift = &inner - &inner.constant_like(inner.value());
        let mut sub = inner.zero_like();
        let mut pow = inner.constant_like(1.0);
        for k in 0..=4 {
            sub += &pow * outer.taylor()[k];
            pow = &pow * &shift;
        }
        for (a, b) in direct.taylor().iter().zip(sub.taylor()) {
            prop_assert!(rel_close(*a, *b, 1e-13), "{a} vs {b}");
        }
    }

    /// Band-limited trig polynomials integrate exactly on the torus grids.
    #[test]
    fn torus_quadrature_is_exact(
        amps in prop::collection::vec(-1.0f64..1.0, 4),
        ks in prop::collection::vec((-7i32..=7, -7i32..=7), 4),
        c in -1.0f64..1.0,
    ) {
        let fx = Fixture::builtin(FixtureKind::Flat2).unwrap();
        let mut p = TrigPoly::cos(2, c, vec![0, 0]);
        for (a, (k1, k2)) in amps.iter().zip(&ks) {
            if (*k1, *k2) != (0, 0) {
                p = p.plus(&TrigPoly::sin(2, *a, vec![*k1, *k2])).plus(&TrigPoly::cos(2, *a, vec![*k2, *k1]));
            }
        }
        let vals: Vec<f64> = fx.nodes().iter().map(|n| p.eval_f64(&n.coords)).collect();
        prop_assert!((fx.integrate(&vals).unwrap() - c).abs() <= 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The anti-linear projection anticommutes with J at every sampled point.
    #[test]
    fn anti_linear_part_anticommutes(entries in prop::collection::vec(-3.0f64..3.0, 16), seed in 0u64..1000) {
        for kind in [FixtureKind::Kah4, FixtureKind::Fs] {
            let fx = Fixture::builtin(kind).unwrap();
            let p = &fx.sample_points(1, seed)[0];
            let geo = fx.geo(p, 1).unwrap();
            let n = geo.dim;
            let a = Tensor::from_fn(n, &geo.j().unwrap().slots, |i| geo.f.constant_like(entries[i[0] * n + i[1]]));
            let j = geo.j().unwrap();
            let b = anti_linear_part(j, &a);
            let defect = b.compose(j).add(&j.compose(&b)).max_abs();
            prop_assert!(defect <= 1e-11, "{kind}: {defect}");
        }
    }
}

fn check_passes_for_seed(id: &str, kind: FixtureKind, seed: u64) -> Result<(), TestCaseError> {
    let fx = Fixture::builtin(kind).unwrap();
    let r = run_check(find(id).unwrap(), &fx, seed, FdOptions::default(), 1.0);
    prop_assert_eq!(r.status, Status::Pass, "{} on {} seed {}: {:?}", id, kind, seed, r);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    /// Adjoint duality, Laplacian symmetry and frame independence hold for arbitrary seeds.
    #[test]
    fn integral_identities_hold_for_any_seed(seed in any::<u64>()) {
        check_passes_for_seed("ID-INT-ADJ", FixtureKind::Pert2, seed)?;
        check_passes_for_seed("ID-INT-LAP", FixtureKind::Pert2, seed)?;
        check_passes_for_seed("ID-INT-DBAR", FixtureKind::Pert2, seed)?;
        check_passes_for_seed("ID-MG-FRAME", FixtureKind::Riem4, seed)?;
    }

    /// Φ_A is ℝ-linear for arbitrary seeds.
    #[test]
    fn phi_linear_for_any_seed(seed in any::<u64>()) {
        check_passes_for_seed("S-PHI-LIN", FixtureKind::Pert2, seed)?;
    }

    /// π₁ + π₂ is the identity on mean-zero functions.
    #[test]
    fn projections_complete_for_any_seed(seed in any::<u64>()) {
        check_passes_for_seed("S-PROJ", FixtureKind::Fs, seed)?;
    }

    /// Identical inputs give identical records, apart from timing; the status follows the residual.
    #[test]
    fn results_deterministic_and_consistent(seed in any::<u64>(), scale in 1e-6f64..1e3) {
        let fx = Fixture::builtin(FixtureKind::Pert2).unwrap();
        for id in ["ID-DIV-TR", "V-F", "S-MEAN"] {
            let spec = find(id).unwrap();
            let mut a = run_check(spec, &fx, seed, FdOptions::default(), scale);
            let mut b = run_check(spec, &fx, seed, FdOptions::default(), scale);
            a.runtime_ms = 0;
            b.runtime_ms = 0;
            prop_assert_eq!(&a, &b);
            let within = a.residual_sup.is_some_and(|s| s <= a.tolerance);
            prop_assert_eq!(a.status == Status::Pass, within);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fixture_descriptors_round_trip(seed in any::<u64>(), eps in 0.0f64..0.1, grid in 4usize..40) {
        let d = FixtureDescriptor { kind: FixtureKind::Pert2, seed, epsilon: Some(eps), grid: Some(vec![grid, grid]) };
        let text = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<FixtureDescriptor>(&text).unwrap(), d);
    }
}
