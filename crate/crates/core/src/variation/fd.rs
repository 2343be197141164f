//! Central finite differences in t with Richardson extrapolation.
//!
//! The map is vector-valued; each stencil evaluation returns the flattened values at all
//! sample points. The observed order is estimated from three successive halvings of the
//! base step and compared against the scheme's nominal order by the caller.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FdError {
    #[error("nan-in-map: non-finite map value at t = {0}")]
    NanInMap(f64),
    #[error("shrink-step: stencil still leaves the validity window after {0} halvings ({1})")]
    OutsideWindow(usize, String),
    #[error("map output length changed between stencil points")]
    ShapeMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "central-2")]
    Central2,
    #[serde(rename = "central-4")]
    Central4,
}

impl Scheme {
    pub fn nominal(self) -> f64 {
        match self {
            Scheme::Central2 => 2.0,
            Scheme::Central4 => 4.0,
        }
    }

    /// Stencil offsets (in units of h) and weights for the given derivative order.
    fn stencil(self, deriv: usize) -> &'static [(f64, f64)] {
        match (self, deriv) {
            (Scheme::Central2, 1) => &[(-1.0, -0.5), (1.0, 0.5)],
            (Scheme::Central2, _) => &[(-1.0, 1.0), (0.0, -2.0), (1.0, 1.0)],
            (Scheme::Central4, 1) => &[(-2.0, 1.0 / 12.0), (-1.0, -8.0 / 12.0), (1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)],
            (Scheme::Central4, _) => {
                &[(-2.0, -1.0 / 12.0), (-1.0, 16.0 / 12.0), (0.0, -30.0 / 12.0), (1.0, 16.0 / 12.0), (2.0, -1.0 / 12.0)]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FdOptions {
    pub base_step: f64,
    pub richardson_levels: usize,
    pub scheme: Scheme,
    pub max_shrinks: usize,
}

impl Default for FdOptions {
    fn default() -> Self {
        Self { base_step: 1e-2, richardson_levels: 2, scheme: Scheme::Central4, max_shrinks: 6 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FdReport {
    pub value: Vec<f64>,
    /// Observed order of the base scheme; `None` when the successive differences sit at
    /// the rounding floor.
    pub order: Option<f64>,
    pub nominal: f64,
    pub step: f64,
    pub shrinks: usize,
    /// Size of the last Richardson correction.
    pub correction: f64,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Derivative of order `deriv` ∈ {1, 2} of `map` at `t0`.
///
/// `map` returns `Err` when a stencil point leaves its validity window; the step is
/// halved up to `max_shrinks` times.
pub fn fd_derivative<F, E>(map: F, t0: f64, deriv: usize, opts: &FdOptions) -> Result<FdReport, FdError>
where
    F: Fn(f64) -> Result<Vec<f64>, E>,
    E: std::fmt::Display,
{
    let deriv = deriv.clamp(1, 2);
    let mut h = opts.base_step;
    let mut last_err = String::new();
    for shrink in 0..=opts.max_shrinks {
        match ladder(&map, t0, deriv, h, opts) {
            Ok(mut rep) => {
                rep.shrinks = shrink;
                return Ok(rep);
            }
            Err(Step::Window(e)) => {
                last_err = e;
                h *= 0.5;
            }
            Err(Step::Fatal(e)) => return Err(e),
        }
    }
    Err(FdError::OutsideWindow(opts.max_shrinks, last_err))
}

enum Step {
    Window(String),
    Fatal(FdError),
}

fn ladder<F, E>(map: &F, t0: f64, deriv: usize, h: f64, opts: &FdOptions) -> Result<FdReport, Step>
where
    F: Fn(f64) -> Result<Vec<f64>, E>,
    E: std::fmt::Display,
{
    let p = opts.scheme.nominal();
    let levels = opts.richardson_levels.max(2);
    let mut center: Option<Vec<f64>> = None;
    let mut fmax: f64 = 0.0;
    let eval = |t: f64, center: &mut Option<Vec<f64>>| -> Result<Vec<f64>, Step> {
        if t == t0 {
            if let Some(c) = center {
                return Ok(c.clone());
            }
        }
        let v = map(t).map_err(|e| Step::Window(e.to_string()))?;
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Step::Fatal(FdError::NanInMap(t)));
        }
        if t == t0 {
            *center = Some(v.clone());
        }
        Ok(v)
    };
    let mut d: Vec<Vec<f64>> = Vec::with_capacity(levels + 1);
    for k in 0..=levels {
        let hk = h / (1u32 << k) as f64;
        let mut acc: Option<Vec<f64>> = None;
        for &(off, w) in opts.scheme.stencil(deriv) {
            let v = eval(t0 + off * hk, &mut center)?;
            fmax = fmax.max(v.iter().fold(0.0, |m, x| m.max(x.abs())));
            let scaled: Vec<f64> = v.iter().map(|x| x * w).collect();
            acc = Some(match acc {
                None => scaled,
                Some(a) => {
                    if a.len() != scaled.len() {
                        return Err(Step::Fatal(FdError::ShapeMismatch));
                    }
                    a.iter().zip(&scaled).map(|(x, y)| x + y).collect()
                }
            });
        }
        let denom = hk.powi(deriv as i32);
        d.push(acc.unwrap().into_iter().map(|x| x / denom).collect());
    }
    // order from the unextrapolated sequence D(h), D(h/2), D(h/4)
    let e1 = norm(&diff(&d[0], &d[1]));
    let e2 = norm(&diff(&d[1], &d[2]));
    let hmin = h / (1u32 << levels) as f64;
    let n = d[0].len().max(1) as f64;
    // rounding in the map is measured against O(1) inputs even when its values are small
    let floor = 1e3 * f64::EPSILON * fmax.max(1.0) * n.sqrt() / hmin.powi(deriv as i32);
    let order = if e2 > floor && e1 > floor { Some((e1 / e2).log2()) } else { None };
    // Richardson tableau over even powers starting at h^p
    let mut row = d.clone();
    let mut correction = 0.0;
    for m in 1..=levels {
        let factor = 2f64.powf(p + 2.0 * (m as f64 - 1.0)) - 1.0;
        let next: Vec<Vec<f64>> = (m..=levels)
            .map(|k| {
                let (hi, lo) = (&row[k - m + 1], &row[k - m]);
                hi.iter().zip(lo).map(|(a, b)| a + (a - b) / factor).collect()
            })
            .collect();
        correction = norm(&diff(&next[next.len() - 1], &row[row.len() - 1]));
        row = next;
    }
    Ok(FdReport { value: row.pop().unwrap(), order, nominal: p, step: h, shrinks: 0, correction })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(v: f64) -> Result<Vec<f64>, String> {
        Ok(vec![v])
    }

    #[test]
    fn sine_first_derivative() {
        let r = fd_derivative(|t| ok(t.sin()), 0.0, 1, &FdOptions::default()).unwrap();
        assert!((r.value[0] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn central2_order_on_exp() {
        let opts = FdOptions { scheme: Scheme::Central2, base_step: 0.1, ..FdOptions::default() };
        let r = fd_derivative(|t| ok(t.exp()), 0.3, 1, &opts).unwrap();
        let q = r.order.unwrap();
        assert!((q - 2.0).abs() < 0.1, "{q}");
        assert!((r.value[0] - 0.3f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn central4_order_and_second_derivative() {
        let opts = FdOptions { base_step: 0.1, ..FdOptions::default() };
        let r = fd_derivative(|t| ok((2.0 * t).sin()), 0.2, 2, &opts).unwrap();
        assert!((r.order.unwrap() - 4.0).abs() < 0.2);
        assert!((r.value[0] + 4.0 * 0.4f64.sin()).abs() < 1e-9);
    }

    #[test]
    fn polynomial_has_no_order_estimate() {
        let r = fd_derivative(|t| ok(3.0 * t * t + t), 0.0, 1, &FdOptions::default()).unwrap();
        assert!(r.order.is_none());
        assert!((r.value[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shrinks_and_nan() {
        let r = fd_derivative(|t| if t.abs() > 0.006 { Err("out".to_string()) } else { ok(t.cos()) }, 0.0, 2, &FdOptions::default())
            .unwrap();
        assert_eq!(r.shrinks, 2);
        assert!((r.value[0] + 1.0).abs() < 1e-8);
        let e = fd_derivative(|t| ok(if t > 0.0 { f64::NAN } else { 0.0 }), 0.0, 1, &FdOptions::default());
        assert!(matches!(e, Err(FdError::NanInMap(_))));
        let e = fd_derivative(|_| Err::<Vec<f64>, _>("never"), 0.0, 1, &FdOptions::default());
        assert!(matches!(e, Err(FdError::OutsideWindow(6, _))));
    }
}
