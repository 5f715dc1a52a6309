use std::f64::consts::PI;

use harvest::detector_matrix::closed_form::{exchange_kernel, local_excitation, nonlocal_kernel};
use harvest::detector_matrix::DetectorParams;
use harvest::special_functions::dawson;
use harvest::wightman_oracle::distribution::*;
use harvest::wightman_oracle::quadrature::GaussLegendre;
use harvest::wightman_oracle::*;
use harvest::{Complex64, HarvestError};

fn params(omega: f64) -> DetectorParams {
    DetectorParams::new(omega, 1.0, 0.01).unwrap()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn gauss_legendre_is_exact_for_polynomials() {
    let q = GaussLegendre::new(24);
    assert_eq!(q.order(), 24);
    let v = q.integrate(&|x: f64| c(x.powi(46) + 3.0 * x.powi(5)), -1.0, 1.0);
    assert!((v.re - 2.0 / 47.0).abs() < 1e-15);
}

#[test]
fn delta_rule_at_zero_is_derivative() {
    let g = Grid::new(1.0, 0.0, 0);
    for b in [0.0, 0.3, -0.8, 1.5] {
        let f = |x: f64| c((-(x - b) * (x - b)).exp());
        let want = 2.0 * b * (-b * b).exp();
        let got = delta_signed_square(&f, 0.0, &g);
        assert!((got.re - want).abs() < 1e-10, "b = {b}: {got} vs {want}");
    }
    let f = |x: f64| Complex64::from_polar((-x * x).exp(), 2.0 * x);
    let got = delta_signed_square(&f, 0.0, &g);
    assert!((got - Complex64::new(0.0, 2.0)).norm() < 1e-10);
}

#[test]
fn delta_rule_off_zero() {
    let g = Grid::new(1.0, 0.0, 0);
    let f = |x: f64| c(x.powi(3) + 1.0);
    // sgn(y) delta(y^2 - r^2) picks (f(r) - f(-r)) / 2r
    assert!((delta_signed_square(&f, 2.0, &g).re - 4.0).abs() < 1e-14);
}

#[test]
fn finite_part_of_inverse_square() {
    for level in [0, 1] {
        let g = Grid::new(1.0, 0.0, level);
        let f = |x: f64| c((-x * x).exp());
        let got = pv_inverse_square(&f, &g);
        assert!((got.re + 2.0 * PI.sqrt()).abs() < 1e-10, "{got}");
        for b in [0.7, -1.2, 2.5] {
            let f = |x: f64| c((-(x - b) * (x - b)).exp());
            let want = -2.0 * PI.sqrt() * (1.0 - 2.0 * b * dawson(b));
            let got = pv_inverse_square(&f, &g);
            assert!((got.re - want).abs() < 1e-10, "b = {b}: {got} vs {want}");
        }
    }
    // mpmath: FP int exp(-x^2) exp(1.7 i x) / x^2
    let g = Grid::new(1.0, 1.7, 0);
    let f = |x: f64| Complex64::from_polar((-x * x).exp(), 1.7 * x);
    let got = pv_inverse_square(&f, &g);
    assert!((got - c(-5.837_096_162_980_928_764)).norm() < 1e-10, "{got}");
}

#[test]
fn principal_value_with_shifted_poles() {
    // mpmath: PV int exp(-(x - 0.7)^2) / (x^2 - 1.69) dx
    let g = Grid::new(1.0, 0.0, 0);
    let f = |x: f64| c((-(x - 0.7) * (x - 0.7)).exp());
    let got = pv_inverse_square_shifted(&f, 1.3, &g);
    assert!((got.re - -1.058_159_847_216_943_080_2).abs() < 1e-10, "{got}");
    // Hilbert transform of a Gaussian: PV int exp(-t^2) / (t - y) dt = -2 sqrt(pi) D(y),
    // minus the regular part over t < 0
    for y in [0.4, 1.0, 3.0] {
        let half = pv_simple_pole_half(&|u: f64| c((-u * u).exp()), y, &g);
        let want = -2.0 * PI.sqrt() * dawson(y) - negative_half_line(y);
        assert!((half.re - want).abs() < 1e-10, "y = {y}: {} vs {want}", half.re);
    }
}

// int_0^inf exp(-t^2) / (-t - y) dt, regular for y > 0
fn negative_half_line(y: f64) -> f64 {
    let q = GaussLegendre::new(24);
    let f = |t: f64| c(-(-t * t).exp() / (t + y));
    (0..64).map(|k| q.integrate(&f, k as f64 * 0.25, (k + 1) as f64 * 0.25).re).sum()
}

#[test]
fn oracle_reference_values() {
    let p = params(1.0);
    assert!((oracle_a(&p, 0.0).unwrap() - 0.007_088_272_232_636_415_97).abs() < 1e-12);
    assert!((oracle_a(&params(0.0), 0.0).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-12);
    assert!((oracle_a(&params(-1.0), 0.0).unwrap() - 0.289_183_064_006_514_559_446).abs() < 1e-12);
    assert!((oracle_a(&params(2.0), 0.0).unwrap() - 1.379_475_570_621_825_156_81e-4).abs() < 1e-12);
    assert!((oracle_x(&p, 1.0).unwrap().norm() - 0.047_440_335_103_833_298_16).abs() < 1e-12);
    let cases = [
        (1.0, 1.0, 0.006_600_334_306_024_056_438_5),
        (2.0, -1.0, 0.052_584_100_054_633_814_276),
        (0.5, 2.0, 1.367_085_974_001_124_605_6e-4),
        (4.0, 0.0, 0.011_989_953_112_613_929_479_7),
    ];
    for (l, w, want) in cases {
        let v = oracle_c(&params(w), l).unwrap();
        assert!((v.re - want).abs() < 1e-12 && v.im.abs() < 1e-12, "C({l}, {w}) = {v}");
    }
}

#[test]
fn oracle_matches_closed_forms() {
    for w in [-2.5, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0] {
        let p = params(w);
        assert!((oracle_a(&p, 0.0).unwrap() - local_excitation(&p)).abs() < 1e-10);
        for l in [0.05, 0.5, 1.0, 2.0, 4.0, 9.0] {
            let x = oracle_x(&p, l).unwrap();
            let xc = nonlocal_kernel(&p, l).unwrap();
            assert!((x - xc).norm() < 1e-10, "X({l}, {w}): {x} vs {xc}");
            let cv = oracle_c(&p, l).unwrap();
            assert!((cv.re - exchange_kernel(&p, l).unwrap()).abs() < 1e-10);
            // image terms of A are the same integral as C
            assert_eq!(oracle_a(&p, l).unwrap(), cv.re);
        }
    }
}

#[test]
fn x_prefactor_ratio_is_one() {
    for (l, w) in [(1.0, 1.0), (0.5, -2.0), (3.0, 0.5)] {
        let p = params(w);
        let ratio = oracle_x(&p, l).unwrap() / nonlocal_kernel(&p, l).unwrap();
        assert!((ratio - c(1.0)).norm() < 1e-12, "{ratio}");
    }
}

#[test]
fn x_phase_matches_closed_form() {
    use rand::{RngExt, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let l = rng.random_range(0.3..6.0);
        let w = rng.random_range(-3.0..3.0);
        let p = params(w);
        let x = oracle_x(&p, l).unwrap();
        let xc = nonlocal_kernel(&p, l).unwrap();
        assert_eq!(x.re.signum(), xc.re.signum());
        assert_eq!(x.im.signum(), xc.im.signum());
    }
}

#[test]
fn exchange_is_real_and_symmetric_at_zero_gap() {
    let p = params(0.0);
    for l in [0.5, 2.0] {
        let v = oracle_c(&p, l).unwrap();
        assert!(v.im.abs() < 1e-14);
        assert!((v - v.conj()).norm() < 1e-14);
    }
}

#[test]
fn refinement_is_stable() {
    for w in [-2.0, 0.0, 1.0, 2.0] {
        let p = params(w);
        for l in [0.0, 0.5, 1.0, 2.0, 4.0] {
            let d = (a_type_integral(&p, l, 0) - a_type_integral(&p, l, 1)).norm();
            assert!(d < 1e-9, "A({l}, {w}) refinement {d:e}");
            if l > 0.0 {
                let d = (x_type_integral(&p, l, 0) - x_type_integral(&p, l, 1)).norm();
                assert!(d < 1e-9, "X({l}, {w}) refinement {d:e}");
            }
        }
    }
}

#[test]
fn ieps_agrees_with_distributional_evaluation() {
    let eps = default_eps_sequence(1.0);
    let p0 = params(0.0);
    let a0 = oracle_ieps(Element::A, &p0, 0.0, &eps).unwrap();
    assert!((a0.value.re - 1.0 / (4.0 * PI)).abs() < 1e-6);
    let p = params(1.0);
    let a = oracle_ieps(Element::A, &p, 0.0, &eps).unwrap();
    let pv = oracle_a(&p, 0.0).unwrap();
    assert!((a.value.re - pv).abs() <= a.error + 1e-10);
    let x = oracle_ieps(Element::X, &p, 1.0, &eps).unwrap();
    assert!((x.value - oracle_x(&p, 1.0).unwrap()).norm() < 1e-6);
}

#[test]
fn two_regularisations_agree_on_grid() {
    let eps = default_eps_sequence(1.0);
    for l in [0.5, 1.0, 2.0, 4.0] {
        for w in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let p = params(w);
            for (which, r) in [(Element::A, 0.0), (Element::X, l), (Element::C, l)] {
                let a = oracle(which, &p, r).unwrap();
                let b = oracle_ieps(which, &p, r, &eps).unwrap();
                assert!((a - b.value).norm() < 1e-6, "{which:?} L={l} W={w}");
            }
        }
    }
}

#[test]
fn neville_recovers_polynomials() {
    let xs = [0.5, 0.25, 0.125, 0.0625];
    let ys: Vec<Complex64> = xs.iter().map(|x| c(3.0 - 2.0 * x + x * x * x)).collect();
    let est = neville_at_zero(&xs, &ys);
    assert!((est[3].re - 3.0).abs() < 1e-13);
}

#[test]
fn ieps_rejects_bad_sequences() {
    let p = params(1.0);
    assert!(matches!(
        oracle_ieps(Element::A, &p, 0.0, &[0.1, 0.2, 0.05]),
        Err(HarvestError::InvalidParameter(_))
    ));
    assert!(oracle_ieps(Element::A, &p, 0.0, &[0.1, 0.05]).is_err());
    assert!(oracle_ieps(Element::X, &p, 0.0, &default_eps_sequence(1.0)).is_err());
}

#[test]
fn ieps_flags_divergence() {
    // eps far outside the analytic regime: corrections stop contracting
    let p = params(1.0);
    let eps: Vec<f64> = (0..9).map(|k| 40.0 / 1.2f64.powi(k)).collect();
    let r = oracle_ieps(Element::A, &p, 0.0, &eps);
    assert!(matches!(r, Err(HarvestError::ExtrapolationDivergence(_))), "{r:?}");
}

#[test]
fn oracle_validates_separation() {
    let p = params(1.0);
    assert!(oracle_x(&p, 0.0).is_err());
    assert!(oracle_c(&p, -1.0).is_err());
    assert!(oracle_a(&p, f64::NAN).is_err());
}
