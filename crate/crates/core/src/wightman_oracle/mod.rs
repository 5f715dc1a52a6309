//! Direct evaluation of the detector integrals from the distributional
//! Wightman function of a static pair at separation `r`:
//!
//! `W(u; r) = -1 / (4 pi^2 (u^2 - r^2)) + sgn(u) delta(u^2 - r^2) / (4 pi i)`,
//! `u = t - t'`. The integral over `t + t'` is done analytically, leaving
//! one-dimensional principal-value integrals. These serve as the reference
//! for every closed form in [`crate::detector_matrix`].

pub mod distribution;
mod ieps;
pub mod quadrature;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::detector_matrix::DetectorParams;
use crate::error::{invalid, HarvestError, Result};

use distribution::{
    delta_signed_square, pv_inverse_square, pv_inverse_square_shifted, pv_simple_pole_half, Grid,
};

pub use ieps::{default_eps_sequence, ieps_integral, neville_at_zero, oracle_ieps, Extrapolated};

/// Refinement levels must agree to this absolute tolerance (units of eps0^2).
pub const REFINEMENT_TOLERANCE: f64 = 1e-8;

/// Which matrix element an oracle evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Element {
    A,
    X,
    C,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

// sigma sqrt(pi) exp(-u^2 / 4 sigma^2) exp(-i omega u)
fn a_weight(p: &DetectorParams) -> impl Fn(f64) -> Complex64 {
    let (s, w) = (p.sigma(), p.omega());
    let pref = s * PI.sqrt();
    move |u: f64| {
        let g = pref * (-u * u / (4.0 * s * s)).exp();
        Complex64::from_polar(g, -w * u)
    }
}

/// `sigma sqrt(pi) int exp(-u^2/4 sigma^2) exp(-i omega u) W(u; r) du` at one level.
pub fn a_type_integral(p: &DetectorParams, r: f64, level: usize) -> Complex64 {
    let g = Grid::new(p.sigma(), p.omega(), level);
    let f = a_weight(p);
    let pv = if r > 0.0 {
        pv_inverse_square_shifted(&f, r, &g)
    } else {
        pv_inverse_square(&f, &g)
    };
    -pv / (4.0 * PI * PI) + delta_signed_square(&f, r, &g) / (4.0 * PI * I)
}

/// `-2 sigma sqrt(pi) exp(-sigma^2 omega^2) int_0^inf exp(-u^2/4 sigma^2) W(u; r) du`, `r > 0`.
pub fn x_type_integral(p: &DetectorParams, r: f64, level: usize) -> Complex64 {
    let s = p.sigma();
    let g = Grid::new(s, 0.0, level);
    let gauss = |u: f64| (-u * u / (4.0 * s * s)).exp();
    let phi = |u: f64| Complex64::new(gauss(u) / (u + r), 0.0);
    let half = -pv_simple_pole_half(&phi, r, &g) / (4.0 * PI * PI)
        + Complex64::new(gauss(r) / (2.0 * r), 0.0) / (4.0 * PI * I);
    let a = p.omega_sigma();
    -2.0 * s * PI.sqrt() * (-a * a).exp() * half
}

fn refined(f: impl Fn(usize) -> Complex64, what: &str) -> Result<Complex64> {
    let coarse = f(0);
    let fine = f(1);
    let diff = (fine - coarse).norm();
    if !(diff <= REFINEMENT_TOLERANCE) {
        return Err(HarvestError::NonConvergence(format!(
            "{what}: refinement levels differ by {diff:e}"
        )));
    }
    Ok(fine)
}

fn check_separation(r: f64, strict: bool) -> Result<()> {
    let ok = r.is_finite() && if strict { r > 0.0 } else { r >= 0.0 };
    if ok {
        Ok(())
    } else {
        Err(invalid(format!("image separation {r} out of range")))
    }
}

/// Excitation coefficient `A / eps0^2` for a detector whose image sits at
/// distance `l_image` (0 for the detector itself).
pub fn oracle_a(p: &DetectorParams, l_image: f64) -> Result<f64> {
    check_separation(l_image, false)?;
    refined(|lvl| a_type_integral(p, l_image, lvl), "A").map(|v| v.re)
}

/// Nonlocal coefficient `X / eps0^2` at separation `l_image > 0`.
pub fn oracle_x(p: &DetectorParams, l_image: f64) -> Result<Complex64> {
    check_separation(l_image, true)?;
    refined(|lvl| x_type_integral(p, l_image, lvl), "X")
}

/// Exchange coefficient `C / eps0^2` at separation `l_image > 0`.
pub fn oracle_c(p: &DetectorParams, l_image: f64) -> Result<Complex64> {
    check_separation(l_image, true)?;
    refined(|lvl| a_type_integral(p, l_image, lvl), "C")
}

/// Dispatches on the element; `A` is returned with zero imaginary part.
pub fn oracle(which: Element, p: &DetectorParams, l_image: f64) -> Result<Complex64> {
    match which {
        Element::A => oracle_a(p, l_image).map(|v| Complex64::new(v, 0.0)),
        Element::X => oracle_x(p, l_image),
        Element::C => oracle_c(p, l_image),
    }
}
