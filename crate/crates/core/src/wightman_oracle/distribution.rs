//! Quadrature rules for the distributions that make up the static kernel:
//! principal values with a simple or double pole and `sgn(y) delta(y^2 - r^2)`.
//!
//! Test functions are assumed to decay within `Grid::cutoff` of the origin.

use num_complex::Complex64;

use super::quadrature::{geometric_breaks, integrate_breaks, rule, uniform_breaks};

/// Panel layout for one refinement level.
#[derive(Debug, Clone, Copy)]
pub struct Grid {
    /// Length scale of the test function (the switching width).
    pub scale: f64,
    /// Widest panel.
    pub wmax: f64,
    /// Where the test function is treated as zero.
    pub cutoff: f64,
    /// Gauss-Legendre order per panel (24 or 48).
    pub order: usize,
}

impl Grid {
    /// Panels resolve both the Gaussian width and the oscillation `exp(i omega u)`.
    pub fn new(scale: f64, omega: f64, level: usize) -> Self {
        let wmax = 0.5 * scale / (0.5 * (omega * scale).abs()).max(1.0);
        Grid { scale, wmax, cutoff: 16.0 * scale, order: if level == 0 { 24 } else { 48 } }
    }
}

/// `PV int_0^U phi(u) / (u - r) du` for `r > 0`, with `U = r + cutoff`.
///
/// The interval symmetric about the pole is folded onto itself so the odd
/// part of the singularity cancels pairwise.
pub fn pv_simple_pole_half<F: Fn(f64) -> Complex64>(phi: &F, r: f64, g: &Grid) -> Complex64 {
    let q = rule(g.order);
    let h = r.min(g.wmax);
    let paired = |v: f64| (phi(r + v) - phi(r - v)) / v;
    let mut s = q.integrate(&paired, 0.0, h);
    let simple = |u: f64| phi(u) / (u - r);
    if r - h > 0.0 {
        s += integrate_breaks(q, &simple, &geometric_breaks(r - h, 0.0, h, g.wmax));
    }
    s += integrate_breaks(q, &simple, &geometric_breaks(r + h, r + g.cutoff, h, g.wmax));
    s
}

/// `PV int f(y) / (y^2 - r^2) dy` over the real line, `r > 0`.
pub fn pv_inverse_square_shifted<F: Fn(f64) -> Complex64>(f: &F, r: f64, g: &Grid) -> Complex64 {
    let phi = |u: f64| (f(u) + f(-u)) / (u + r);
    pv_simple_pole_half(&phi, r, g)
}

/// Finite part of `int f(y) / y^2 dy`, i.e. `int_0^inf (f(x) + f(-x) - 2 f(0)) / x^2 dx`.
pub fn pv_inverse_square<F: Fn(f64) -> Complex64>(f: &F, g: &Grid) -> Complex64 {
    let q = rule(g.order);
    let f0 = f(0.0);
    let integrand = |x: f64| (f(x) + f(-x) - 2.0 * f0) / (x * x);
    let u = g.cutoff;
    integrate_breaks(q, &integrand, &uniform_breaks(0.0, u, g.wmax)) - 2.0 * f0 / u
}

/// `<sgn(y) delta(y^2 - r^2), f>`. At `r = 0` this is `f'(0)`, taken as the
/// limit of the `r > 0` rule.
pub fn delta_signed_square<F: Fn(f64) -> Complex64>(f: &F, r: f64, g: &Grid) -> Complex64 {
    if r > 0.0 {
        (f(r) - f(-r)) / (2.0 * r)
    } else {
        symmetric_limit(f, 0.25 * g.scale)
    }
}

// Romberg table on (f(h) - f(-h)) / 2h, whose error is even in h.
fn symmetric_limit<F: Fn(f64) -> Complex64>(f: &F, h0: f64) -> Complex64 {
    const LEVELS: usize = 7;
    let mut t = [[Complex64::new(0.0, 0.0); LEVELS]; LEVELS];
    let mut h = h0;
    for i in 0..LEVELS {
        t[i][0] = (f(h) - f(-h)) / (2.0 * h);
        let mut p = 4.0;
        for j in 1..=i {
            t[i][j] = t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) / (p - 1.0);
            p *= 4.0;
        }
        h *= 0.5;
    }
    t[LEVELS - 1][LEVELS - 1]
}
