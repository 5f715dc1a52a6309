//! Faddeeva function `w(z) = exp(-z^2) erfc(-iz)`.
//!
//! Laplace continued fraction far from the origin, Zaghloul and Ali's
//! Algorithm 916 elsewhere.

use num_complex::Complex64;

use super::cody::erfcx;

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_286_948_079_451_56;

// Parameters of Algorithm 916 at double precision.
const A: f64 = 0.518_321_480_430_085_929_872;
const C: f64 = 0.329_973_702_884_629_072_537;
const A2: f64 = 0.268_657_157_075_235_951_582;
const RELERR: f64 = f64::EPSILON;
const MAX_TERMS: i32 = 200;

#[inline]
fn sinc(x: f64, sinx: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - (1.0 / 6.0) * x * x
    } else {
        sinx / x
    }
}

#[inline]
fn sinh_taylor(x: f64) -> f64 {
    x * (1.0 + (x * x) * (1.0 / 6.0 + (1.0 / 120.0) * (x * x)))
}

/// Faddeeva function, accurate to a few ulps norm-wise over the finite plane.
pub fn w(z: Complex64) -> Complex64 {
    if z.re == 0.0 {
        return Complex64::new(erfcx(z.im), z.re);
    }
    let x = z.re.abs();
    let y = z.im;
    let ya = y.abs();

    if ya > 7.0 || (x > 6.0 && (ya > 0.1 || (x > 8.0 && ya > 1e-10) || x > 28.0)) {
        continued_fraction(z, x, ya)
    } else if x < 10.0 {
        alg916_near(z, x, y)
    } else {
        alg916_far(z, x, y)
    }
}

fn continued_fraction(z: Complex64, x: f64, ya: f64) -> Complex64 {
    let y = z.im;
    let xs = if y < 0.0 { -z.re } else { z.re };
    let ret = if x + ya > 1.0e7 {
        if x > ya {
            let yax = ya / xs;
            let denom = FRAC_1_SQRT_PI / (xs + yax * ya);
            Complex64::new(denom * yax, denom)
        } else {
            let xya = xs / ya;
            let denom = FRAC_1_SQRT_PI / (xya * xs + ya);
            Complex64::new(denom, denom * xya)
        }
    } else if x + ya > 4000.0 {
        let dr = xs * xs - ya * ya - 0.5;
        let di = 2.0 * xs * ya;
        let denom = FRAC_1_SQRT_PI / (dr * dr + di * di);
        Complex64::new(denom * (xs * di - ya * dr), denom * (xs * dr + ya * di))
    } else {
        let nu = (3.9 + 11.398 / (0.08254 * x + 0.1421 * ya + 0.2023)).floor();
        let mut wr = xs;
        let mut wi = ya;
        let mut nu = 0.5 * (nu - 1.0);
        while nu > 0.4 {
            let denom = nu / (wr * wr + wi * wi);
            wr = xs - wr * denom;
            wi = ya + wi * denom;
            nu -= 0.5;
        }
        let denom = FRAC_1_SQRT_PI / (wr * wr + wi * wi);
        Complex64::new(denom * wi, denom * wr)
    };
    if y < 0.0 {
        // w(z) = 2 exp(-z^2) - w(-z)
        2.0 * Complex64::new((ya - xs) * (xs + ya), 2.0 * xs * y).exp() - ret
    } else {
        ret
    }
}

fn alg916_near(z: Complex64, x: f64, y: f64) -> Complex64 {
    let mut sum1 = 0.0;
    let mut sum2 = 0.0;
    let mut sum3 = 0.0;
    let mut sum4 = 0.0;
    let mut sum5 = 0.0;
    let mut prod2ax = 1.0;
    let mut prodm2ax = 1.0;
    let exp2ax = (2.0 * A * x).exp();
    let expm2ax = 1.0 / exp2ax;
    let expx2;

    if x < 5e-4 {
        let x2 = x * x;
        expx2 = 1.0 - x2 * (1.0 - 0.5 * x2);
        for n in 1..=MAX_TERMS {
            let nf = f64::from(n);
            let coef = (-A2 * nf * nf).exp() * expx2 / (A2 * (nf * nf) + y * y);
            prod2ax *= exp2ax;
            prodm2ax *= expm2ax;
            sum1 += coef;
            sum2 += coef * prodm2ax;
            sum3 += coef * prod2ax;
            // sum5 - sum4 accumulated together
            sum5 += coef * (2.0 * A) * nf * sinh_taylor((2.0 * A) * nf * x);
            if coef * prod2ax < RELERR * sum3 {
                break;
            }
        }
    } else {
        expx2 = (-x * x).exp();
        for n in 1..=MAX_TERMS {
            let nf = f64::from(n);
            let coef = (-A2 * (nf * nf)).exp() * expx2 / (A2 * (nf * nf) + y * y);
            prod2ax *= exp2ax;
            prodm2ax *= expm2ax;
            sum1 += coef;
            sum2 += coef * prodm2ax;
            sum4 += (coef * prodm2ax) * (A * nf);
            sum3 += coef * prod2ax;
            sum5 += (coef * prod2ax) * (A * nf);
            if (coef * prod2ax) * (A * nf) < RELERR * sum5 {
                break;
            }
        }
    }

    let expx2erfcxy = if y > -6.0 {
        expx2 * erfcx(y)
    } else {
        2.0 * (y * y - x * x).exp()
    };
    let ret = if y > 5.0 {
        let sinxy = (x * y).sin();
        Complex64::new(
            (expx2erfcxy - C * y * sum1) * (2.0 * x * y).cos()
                + (C * x * expx2) * sinxy * sinc(x * y, sinxy),
            0.0,
        )
    } else {
        let xs = z.re;
        let sinxy = (xs * y).sin();
        let sin2xy = (2.0 * xs * y).sin();
        let cos2xy = (2.0 * xs * y).cos();
        let coef1 = expx2erfcxy - C * y * sum1;
        let coef2 = C * xs * expx2;
        Complex64::new(
            coef1 * cos2xy + coef2 * sinxy * sinc(xs * y, sinxy),
            coef2 * sinc(2.0 * xs * y, sin2xy) - coef1 * sin2xy,
        )
    };
    ret + Complex64::new(
        (0.5 * C) * y * (sum2 + sum3),
        (0.5 * C) * (sum5 - sum4).copysign(z.re),
    )
}

// x >= 10 with |y| tiny: only sum3 and sum5 survive.
fn alg916_far(z: Complex64, x: f64, y: f64) -> Complex64 {
    let ret = Complex64::new((-x * x).exp(), 0.0);
    let n0 = (x / A + 0.5).floor();
    let dx = A * n0 - x;
    let mut sum3 = (-dx * dx).exp() / (A2 * (n0 * n0) + y * y);
    let mut sum5 = A * n0 * sum3;
    let exp1 = (4.0 * A * dx).exp();
    let mut exp1dn = 1.0;
    let finish = |s3: f64, s5: f64| {
        ret + Complex64::new((0.5 * C) * y * s3, (0.5 * C) * s5.copysign(z.re))
    };
    let mut dn: i32 = 1;
    while f64::from(dn) < n0 {
        let np = n0 + f64::from(dn);
        let nm = n0 - f64::from(dn);
        let t = A * f64::from(dn) + dx;
        let mut tp = (-t * t).exp();
        exp1dn *= exp1;
        let mut tm = tp * exp1dn;
        tp /= A2 * (np * np) + y * y;
        tm /= A2 * (nm * nm) + y * y;
        sum3 += tp + tm;
        sum5 += A * (np * tp + nm * tm);
        if A * (np * tp + nm * tm) < RELERR * sum5 {
            return finish(sum3, sum5);
        }
        dn += 1;
    }
    for _ in 0..MAX_TERMS {
        let np = n0 + f64::from(dn);
        dn += 1;
        let t = A * f64::from(dn) + dx;
        let tp = (-t * t).exp() / (A2 * (np * np) + y * y);
        sum3 += tp;
        sum5 += A * np * tp;
        if A * np * tp < RELERR * sum5 {
            break;
        }
    }
    finish(sum3, sum5)
}
