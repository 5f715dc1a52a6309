//! Error-function family on the complex plane.
//!
//! Everything is built on one kernel, the Faddeeva function `w(z)`.

mod cody;
mod faddeeva;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{HarvestError, Result};

pub use cody::erfcx;

/// Largest `|Re z|` and `|Im z|` accepted by the complex routines.
pub const VALIDATED_BOUND: f64 = 50.0;

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Faddeeva function `w(z) = exp(-z^2) erfc(-iz)`.
pub fn faddeeva(z: Complex64) -> Complex64 {
    faddeeva::w(z)
}

fn check_domain(z: Complex64, what: &str) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite())
        || z.re.abs() > VALIDATED_BOUND
        || z.im.abs() > VALIDATED_BOUND
    {
        return Err(HarvestError::DomainExceeded(format!(
            "{what}({}{:+}i): components must lie within +-{VALIDATED_BOUND}",
            z.re, z.im
        )));
    }
    Ok(())
}

// Maclaurin series, used for |z| < 1 where the kernel route cancels.
fn erf_series(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for n in 1..60 {
        let nf = f64::from(n);
        term *= -z2 / nf;
        let add = term / (2.0 * nf + 1.0);
        sum += add;
        if add.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum * FRAC_2_SQRT_PI
}

// exp(-alpha) erf(z) for Re z >= 0, Im z >= 0.
fn scaled_erf_first_quadrant(alpha: f64, z: Complex64) -> Complex64 {
    if z.norm_sqr() < 1.0 {
        return erf_series(z) * (-alpha).exp();
    }
    let (x, y) = (z.re, z.im);
    if x == 0.0 {
        // erf(iy) = i (2/sqrt(pi)) exp(y^2) D(y)
        let im = FRAC_2_SQRT_PI * (y * y - alpha).exp() * dawson(y);
        return Complex64::new(0.0, im);
    }
    let wz = faddeeva(Complex64::new(-y, x));
    let m = Complex64::new(y * y - x * x - alpha, -2.0 * x * y).exp();
    Complex64::new((-alpha).exp(), 0.0) - m * wz
}

fn reflect(z: Complex64, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
    let q = f(Complex64::new(z.re.abs(), z.im.abs()));
    let q = if z.im < 0.0 { q.conj() } else { q };
    if z.re < 0.0 {
        -q.conj()
    } else {
        q
    }
}

/// Complex error function.
///
/// Odd and conjugation-symmetric by construction.
pub fn erf_complex(z: Complex64) -> Result<Complex64> {
    check_domain(z, "erf")?;
    let r = reflect(z, |q| scaled_erf_first_quadrant(0.0, q));
    if !(r.re.is_finite() && r.im.is_finite()) {
        return Err(HarvestError::Overflow(format!("erf({z})")));
    }
    Ok(r)
}

/// `exp(-alpha) * erf(z)` with the exponential folded into the kernel, so
/// that large `alpha` cancels against the growth of `erf` off the real axis.
pub fn scaled_erf_product(alpha: f64, z: Complex64) -> Result<Complex64> {
    if !alpha.is_finite() {
        return Err(HarvestError::DomainExceeded(format!("alpha = {alpha}")));
    }
    check_domain(z, "scaled_erf_product")?;
    let r = reflect(z, |q| scaled_erf_first_quadrant(alpha, q));
    if !(r.re.is_finite() && r.im.is_finite()) {
        return Err(HarvestError::Overflow(format!(
            "exp(-{alpha}) erf({z})"
        )));
    }
    Ok(r)
}

/// Complementary error function on the real line.
pub fn erfc_real(x: f64) -> f64 {
    cody::erfc(x)
}

/// Error function on the real line.
pub fn erf_real(x: f64) -> f64 {
    cody::erf(x)
}

/// Dawson function `D(y) = exp(-y^2) * int_0^y exp(t^2) dt`.
pub fn dawson(y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    let ya = y.abs();
    let d = if ya < 1e-8 {
        ya
    } else {
        0.5 * PI.sqrt() * faddeeva(Complex64::new(ya, 0.0)).im
    };
    d.copysign(y)
}
