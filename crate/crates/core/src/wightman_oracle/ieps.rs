//! The same integrals with the regular kernel
//! `W_eps(u; r) = -1 / (4 pi^2 ((u - i eps)^2 - r^2))`, extrapolated to `eps -> 0`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::{geometric_breaks, integrate_breaks, rule};
use super::Element;
use crate::detector_matrix::DetectorParams;
use crate::error::{invalid, HarvestError, Result};

/// Extrapolated value with the difference of the last two estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: Complex64,
    pub error: f64,
}

/// `eps_k = sigma / 2^(k+1)`, `k = 0..=8`.
pub fn default_eps_sequence(sigma: f64) -> Vec<f64> {
    (0..=8).map(|k| 0.5 * sigma / f64::from(1u32 << k)).collect()
}

fn w_eps(u: f64, r: f64, eps: f64) -> Complex64 {
    let z = Complex64::new(u, -eps);
    -1.0 / (4.0 * PI * PI * (z * z - r * r))
}

// Breakpoints on [lo, hi] graded geometrically towards each singular point.
fn graded_breaks(lo: f64, hi: f64, singular: &[f64], eps: f64, wmax: f64) -> Vec<f64> {
    let mut pts = vec![lo, hi];
    for &s in singular {
        for far in [lo, hi] {
            if (far - s).abs() > 0.0 {
                pts.extend(geometric_breaks(s, far, eps, wmax));
            }
        }
    }
    pts.retain(|x| *x >= lo && *x <= hi);
    pts.sort_by(f64::total_cmp);
    let tiny = 1e-14 * (hi - lo);
    pts.dedup_by(|a, b| (*a - *b).abs() <= tiny);
    pts
}

/// The `A`/`C` or `X` integral at a fixed `eps > 0`.
pub fn ieps_integral(which: Element, p: &DetectorParams, r: f64, eps: f64) -> Complex64 {
    let s = p.sigma();
    let w = p.omega();
    let wmax = 0.5 * s / (0.5 * (w * s).abs()).max(1.0);
    let cutoff = r + 16.0 * s;
    let gauss = move |u: f64| (-u * u / (4.0 * s * s)).exp();
    let q = rule(24);
    match which {
        Element::A | Element::C => {
            let singular: Vec<f64> = if r > 0.0 { vec![-r, r] } else { vec![0.0] };
            let breaks = graded_breaks(-cutoff, cutoff, &singular, eps, wmax);
            let f = |u: f64| Complex64::from_polar(gauss(u), -w * u) * w_eps(u, r, eps);
            s * PI.sqrt() * integrate_breaks(q, &f, &breaks)
        }
        Element::X => {
            let breaks = graded_breaks(0.0, cutoff, &[0.0, r], eps, wmax);
            let f = |u: f64| gauss(u) * w_eps(u, r, eps);
            let a = p.omega_sigma();
            -2.0 * s * PI.sqrt() * (-a * a).exp() * integrate_breaks(q, &f, &breaks)
        }
    }
}

/// Neville's scheme evaluated at 0; entry `k` uses the first `k + 1` points.
pub fn neville_at_zero(xs: &[f64], ys: &[Complex64]) -> Vec<Complex64> {
    let n = xs.len();
    let mut p = ys.to_vec();
    let mut diag = vec![ys[0]];
    // after pass m, p[i] interpolates points i..=i+m
    for m in 1..n {
        for i in 0..n - m {
            let (xi, xj) = (xs[i], xs[i + m]);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
        diag.push(p[0]);
    }
    diag
}

/// Evaluates with `W_eps` along `eps_sequence` and extrapolates polynomially to zero.
pub fn oracle_ieps(
    which: Element,
    p: &DetectorParams,
    l_image: f64,
    eps_sequence: &[f64],
) -> Result<Extrapolated> {
    if eps_sequence.len() < 3 {
        return Err(invalid("at least three eps values are required"));
    }
    if eps_sequence.iter().any(|e| !(e.is_finite() && *e > 0.0))
        || eps_sequence.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(invalid("eps sequence must be positive and strictly decreasing"));
    }
    let strict = !matches!(which, Element::A);
    if !(l_image.is_finite() && (l_image > 0.0 || (!strict && l_image == 0.0))) {
        return Err(invalid(format!("image separation {l_image} out of range")));
    }
    let ys: Vec<Complex64> =
        eps_sequence.iter().map(|&e| ieps_integral(which, p, l_image, e)).collect();
    let est = neville_at_zero(eps_sequence, &ys);
    let k = est.len() - 1;
    let value = est[k];
    let err = (est[k] - est[k - 1]).norm();
    let prev = (est[k - 1] - est[k - 2]).norm();
    let floor = 1e-9 * (1.0 + value.norm());
    if err > floor && err >= prev {
        return Err(HarvestError::ExtrapolationDivergence(format!(
            "{which:?} at r = {l_image}: last corrections {prev:e} -> {err:e}"
        )));
    }
    Ok(Extrapolated { value, error: err })
}
