//! Composite Gauss-Legendre quadrature on panels.

use std::sync::OnceLock;

use num_complex::Complex64;

/// Nodes and weights of an `n`-point rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = nf * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: &F, a: f64, b: f64) -> Complex64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += *w * f(c + h * x);
        }
        s * h
    }
}

/// Shared 24-point and 48-point rules.
pub fn rule(order: usize) -> &'static GaussLegendre {
    static R24: OnceLock<GaussLegendre> = OnceLock::new();
    static R48: OnceLock<GaussLegendre> = OnceLock::new();
    match order {
        24 => R24.get_or_init(|| GaussLegendre::new(24)),
        48 => R48.get_or_init(|| GaussLegendre::new(48)),
        _ => panic!("no cached rule of order {order}"),
    }
}

/// Breakpoints from `near` (next to a singular point) to `far`, starting at
/// width `w0` and doubling up to `wmax`. Returned in ascending order.
pub fn geometric_breaks(near: f64, far: f64, w0: f64, wmax: f64) -> Vec<f64> {
    let dir = if far >= near { 1.0 } else { -1.0 };
    let len = (far - near).abs();
    let mut out = vec![near];
    let mut pos = 0.0;
    let mut w = w0.min(wmax).max(f64::MIN_POSITIVE);
    while pos < len {
        let step = w.min(len - pos);
        // avoid a sliver at the end
        let step = if len - pos - step < 0.25 * step { len - pos } else { step };
        pos += step;
        out.push(near + dir * pos);
        w = (2.0 * w).min(wmax);
    }
    if dir < 0.0 {
        out.reverse();
    }
    out
}

/// Integrates over consecutive breakpoint pairs.
pub fn integrate_breaks<F: Fn(f64) -> Complex64>(
    rule: &GaussLegendre,
    f: &F,
    breaks: &[f64],
) -> Complex64 {
    breaks.windows(2).map(|p| rule.integrate(f, p[0], p[1])).sum()
}

/// Uniform panels of width at most `wmax` on [a, b].
pub fn uniform_breaks(a: f64, b: f64, wmax: f64) -> Vec<f64> {
    let n = (((b - a) / wmax).ceil() as usize).max(1);
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}
