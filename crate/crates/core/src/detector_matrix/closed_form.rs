//! Leading-order matrix elements of a static pair, in units of `eps0^2`.
//!
//! With `a = sigma * omega` and `y = r / (2 sigma)`:
//!
//! * `A_M = (exp(-a^2) - sqrt(pi) a erfc(a)) / (4 pi)`
//! * `X(r) = sigma exp(-a^2) / (4 sqrt(pi) r) * i exp(-y^2) (1 + erf(i y))`
//! * `C(r) = sigma / (4 sqrt(pi) r) * exp(-y^2) (Im[exp(i omega r) erf(i y + a)] - sin(omega r))`
//!
//! `X` and `C` are evaluated through the Faddeeva function, which carries the
//! `exp(-y^2)` scaling internally and avoids the cancellation in `C`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::DetectorParams;
use crate::error::{invalid, Result};
use crate::special_functions::{dawson, erfc_real, erfcx, faddeeva, scaled_erf_product};

/// Exponential prefactors below this are treated as zero.
pub const UNDERFLOW: f64 = 1e-300;

/// Single-detector excitation coefficient `A_M`.
pub fn local_excitation(p: &DetectorParams) -> f64 {
    let a = p.omega_sigma();
    if a > 0.0 {
        // exp(-a^2) (1 - sqrt(pi) a erfcx(a)) avoids cancelling two small terms
        (-a * a).exp() * (1.0 - PI.sqrt() * a * erfcx(a)) / (4.0 * PI)
    } else {
        ((-a * a).exp() - PI.sqrt() * a * erfc_real(a)) / (4.0 * PI)
    }
}

/// Exchange kernel `C(r)`; also the image term of `A` at distance `r`.
/// Tends to `A_M` as `r -> 0`.
pub fn exchange_kernel(p: &DetectorParams, r: f64) -> Result<f64> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(invalid(format!("separation must be nonnegative, got {r}")));
    }
    if r == 0.0 {
        return Ok(local_excitation(p));
    }
    let s = p.sigma();
    let a = p.omega_sigma();
    let y = r / (2.0 * s);
    let pref = s / (4.0 * PI.sqrt() * r);
    let ea = (-a * a).exp();
    let main = if ea < UNDERFLOW {
        0.0
    } else {
        ea * faddeeva(Complex64::new(y, a.abs())).im
    };
    if a >= 0.0 {
        return Ok(pref * main);
    }
    let ey = (-y * y).exp();
    let osc = if ey < UNDERFLOW { 0.0 } else { 2.0 * ey * (p.omega() * r).sin() };
    Ok(pref * (main - osc))
}

/// Nonlocal kernel `X(r)`, `r > 0`.
pub fn nonlocal_kernel(p: &DetectorParams, r: f64) -> Result<Complex64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(invalid(format!("separation must be positive, got {r}")));
    }
    let s = p.sigma();
    let a = p.omega_sigma();
    let ea = (-a * a).exp();
    if ea < UNDERFLOW {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let y = r / (2.0 * s);
    let pref = s * ea / (4.0 * PI.sqrt() * r);
    let re = -std::f64::consts::FRAC_2_SQRT_PI * dawson(y);
    let im = (-y * y).exp();
    Ok(pref * Complex64::new(re, im))
}

/// `X(r)` written with `erf` of an imaginary argument, as a cross-check.
pub fn nonlocal_kernel_erf_form(p: &DetectorParams, r: f64) -> Result<Complex64> {
    let s = p.sigma();
    let a = p.omega_sigma();
    let y = r / (2.0 * s);
    let scaled = scaled_erf_product(y * y, Complex64::new(0.0, y))?;
    let bracket = Complex64::new((-y * y).exp(), 0.0) + scaled;
    Ok(Complex64::new(0.0, 1.0) * bracket * s * (-a * a).exp() / (4.0 * PI.sqrt() * r))
}

/// `C(r)` written with `erf(i y + a)`, as a cross-check.
pub fn exchange_kernel_erf_form(p: &DetectorParams, r: f64) -> Result<f64> {
    let s = p.sigma();
    let a = p.omega_sigma();
    let y = r / (2.0 * s);
    let wr = p.omega() * r;
    let scaled = scaled_erf_product(y * y, Complex64::new(a, y))?;
    let im = (Complex64::from_polar(1.0, wr) * scaled).im;
    Ok(s / (4.0 * PI.sqrt() * r) * (im - (-y * y).exp() * wr.sin()))
}

/// Self-image term of `A` with the argument pattern `erf(r/2 sigma + i a)`
/// and phase `exp(-i omega r)`. Kept only to document that this pattern
/// disagrees with direct integration; the image term is [`exchange_kernel`].
pub fn self_image_alternative_pattern(p: &DetectorParams, r: f64) -> Result<f64> {
    let s = p.sigma();
    let a = p.omega_sigma();
    let y = r / (2.0 * s);
    let wr = p.omega() * r;
    let scaled = scaled_erf_product(y * y, Complex64::new(y, a))?;
    let im = (Complex64::from_polar(1.0, -wr) * scaled).im;
    Ok(s / (4.0 * PI.sqrt() * r) * (im - (-y * y).exp() * wr.sin()))
}
