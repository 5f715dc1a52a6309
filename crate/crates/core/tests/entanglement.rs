use harvest::detector_matrix::{assemble_density_matrix, elements_minkowski, DensityMatrix, DetectorParams, XStateAB};
use harvest::entanglement::*;
use harvest::{Complex64, HarvestError};
use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn x_state(r11: f64, r22: f64, r33: f64, r44: f64, r14: Complex64, r23: Complex64) -> DensityMatrix {
    let z = c(0.0, 0.0);
    #[rustfmt::skip]
    let m = DensityMatrix::new(
        c(r11, 0.0), z, z, r14,
        z, c(r22, 0.0), r23, z,
        z, r23.conj(), c(r33, 0.0), z,
        r14.conj(), z, z, c(r44, 0.0),
    );
    m
}

fn random_x_state(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let mut d: Vec<f64> = (0..4).map(|_| rng.random_range(0.0..1.0)).collect();
    let t: f64 = d.iter().sum();
    d.iter_mut().for_each(|v| *v /= t);
    let f14 = rng.random_range(0.0..1.0) * (d[0] * d[3]).sqrt();
    let f23 = rng.random_range(0.0..1.0) * (d[1] * d[2]).sqrt();
    let p14 = rng.random_range(0.0..std::f64::consts::TAU);
    let p23 = rng.random_range(0.0..std::f64::consts::TAU);
    x_state(d[0], d[1], d[2], d[3], Complex64::from_polar(f14, p14), Complex64::from_polar(f23, p23))
}

fn random_state(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let g = DensityMatrix::from_fn(|_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let rank = rng.random_range(1..=4usize);
    let mut g = g;
    for col in rank..4 {
        g.set_column(col, &nalgebra::Vector4::zeros());
    }
    let m = g * g.adjoint();
    let t = m.trace();
    m / t
}

#[test]
fn product_and_bell_states() {
    let rho = x_state(0.81, 0.09, 0.09, 0.01, c(0.0, 0.0), c(0.0, 0.0));
    assert_eq!(negativity_exact(&rho).unwrap(), 0.0);
    assert!(concurrence_exact(&rho).unwrap() < 1e-15);
    let bell = x_state(0.5, 0.0, 0.0, 0.5, c(0.5, 0.0), c(0.0, 0.0));
    assert!((negativity_exact(&bell).unwrap() - 0.5).abs() < 1e-15);
    assert!((concurrence_exact(&bell).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn invalid_states_are_rejected() {
    let rho = x_state(0.5, 0.1, 0.1, 0.1, c(0.0, 0.0), c(0.0, 0.0));
    assert!(matches!(negativity_exact(&rho), Err(HarvestError::InvalidState(_))));
    let rho = x_state(0.5, 0.0, 0.0, 0.5, c(0.7, 0.0), c(0.0, 0.0));
    assert!(matches!(concurrence_exact(&rho), Err(HarvestError::InvalidState(_))));
    let mut rho = x_state(0.25, 0.25, 0.25, 0.25, c(0.0, 0.0), c(0.0, 0.0));
    rho[(0, 1)] = c(0.1, 0.0);
    assert!(matches!(negativity_exact(&rho), Err(HarvestError::InvalidState(_))));
}

#[test]
fn partial_transpose_moves_coherences() {
    let rho = x_state(0.4, 0.2, 0.3, 0.1, c(0.1, 0.05), c(0.02, -0.1));
    let pt = partial_transpose_a(&rho);
    assert_eq!(pt[(1, 2)], rho[(3, 0)]);
    assert_eq!(pt[(0, 3)], rho[(2, 1)]);
    assert_eq!(partial_transpose_a(&pt), rho);
}

#[test]
fn closed_forms_match_eigen_on_random_x_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut seen = [0usize; 3];
    for _ in 0..2000 {
        let rho = random_x_state(&mut rng);
        let cf = xstate_closed_form(&rho).unwrap();
        let n = negativity_exact(&rho).unwrap();
        let cc = concurrence_exact(&rho).unwrap();
        assert!((cf.negativity - n).abs() < 1e-12, "{cf:?} vs {n}");
        assert!((cf.concurrence.max(0.0) - cc).abs() < 1e-12, "{cf:?} vs {cc}");
        seen[match cf.branch {
            None => 0,
            Some(XBranch::Outer) => 1,
            Some(XBranch::Inner) => 2,
        }] += 1;
    }
    assert!(seen.iter().all(|&k| k > 50), "{seen:?}");
}

#[test]
fn inner_branch_printed_form_is_not_the_negativity() {
    let rho = x_state(0.1, 0.4, 0.4, 0.1, c(0.0, 0.0), c(0.35, 0.0));
    let cf = xstate_closed_form(&rho).unwrap();
    assert_eq!(cf.branch, Some(XBranch::Inner));
    let n = negativity_exact(&rho).unwrap();
    assert!((cf.negativity - n).abs() < 1e-14);
    assert!((inner_branch_negativity_unnormalised(&rho) - n).abs() > 1e-2);
}

#[test]
fn both_readings_of_outer_concurrence() {
    // sqrt(r22 r33) is the one that matches Wootters
    let rho = x_state(0.5, 0.1, 0.3, 0.1, c(0.2, 0.0), c(0.05, 0.0));
    let (_, r22, r33, _, r14, r23) = x_entries(&rho);
    let cc = concurrence_exact(&rho).unwrap();
    assert!((2.0 * (r14 - (r22 * r33).sqrt()) - cc).abs() < 1e-14);
    assert!((2.0 * (r14 - (r22 * r23).sqrt()) - cc).abs() > 1e-2);
}

#[test]
fn identical_detectors_negativity_is_half_concurrence() {
    let rho = x_state(0.6, 0.1, 0.1, 0.2, c(0.3, 0.0), c(0.05, 0.0));
    let n = negativity_exact(&rho).unwrap();
    let cc = concurrence_exact(&rho).unwrap();
    assert!((2.0 * n - cc).abs() < 1e-14);
    assert!((n - (0.3 - 0.1)).abs() < 1e-14);
    let (vals, vecs) = hermitian_eigen(&partial_transpose_a(&rho));
    assert!(vals[0] < 0.0);
    let v = vecs.column(0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let phase = v[2] / v[2].norm();
    let want = [0.0, -s, s, 0.0];
    for k in 0..4 {
        assert!((v[k] / phase - c(want[k], 0.0)).norm() < 1e-12);
    }
}

#[test]
fn concurrence_negativity_bounds_on_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..2000 {
        let rho = random_state(&mut rng);
        let n = negativity_exact(&rho).unwrap();
        let cc = concurrence_exact(&rho).unwrap();
        assert!(cc >= 2.0 * n - 1e-12, "C = {cc}, N = {n}");
        let lower = ((1.0 - cc).powi(2) + cc * cc).sqrt() - (1.0 - cc);
        assert!(2.0 * n >= lower - 1e-12, "2N = {}, bound {lower}", 2.0 * n);
    }
}

#[test]
fn formation_examples() {
    assert_eq!(entanglement_of_formation(0.0).unwrap().exact, 0.0);
    assert!((entanglement_of_formation(1.0).unwrap().exact - 1.0).abs() < 1e-15);
    let f = entanglement_of_formation(1e-3).unwrap();
    assert!((f.exact / f.perturbative - 1.0).abs() < 1e-4);
    assert!(matches!(entanglement_of_formation(1.2), Err(HarvestError::Range(_))));
    assert!(entanglement_of_formation(-0.1).is_err());
    let mut prev = 0.0;
    for k in 1..=100 {
        let v = entanglement_of_formation(k as f64 / 100.0).unwrap().exact;
        assert!(v > prev);
        prev = v;
    }
}

#[test]
fn correlation_forms() {
    let s = XStateAB::from_elements(0.1, 0.1, c(0.0, 0.0), c(0.0, 0.0));
    assert_eq!(correlation(&s, 0.01).unwrap().general, 0.0);
    let p = DetectorParams::new(0.5, 1.0, 0.01).unwrap();
    let s = elements_minkowski(&p, 1.2).unwrap();
    let cr = correlation(&s, 0.01).unwrap();
    let lead = cr.leading.unwrap();
    assert!((cr.general / lead - 1.0).abs() < 100.0 * 1e-4);
    let zero = XStateAB::from_elements(0.0, 0.1, c(0.0, 0.0), c(0.0, 0.0));
    assert!(matches!(correlation(&zero, 0.01), Err(HarvestError::DegenerateVariance(_))));
    let far = elements_minkowski(&p, 500.0).unwrap();
    assert!(correlation(&far, 0.01).unwrap().general.abs() < 1e-8);
    let asym = XStateAB::from_elements(0.1, 0.2, c(0.03, 0.01), c(0.02, 0.0));
    assert!(correlation(&asym, 0.01).unwrap().leading.is_none());
    assert_eq!(
        correlation(&asym, 0.01).unwrap().general,
        correlation(&asym.swapped(), 0.01).unwrap().general
    );
}

#[test]
fn minkowski_harvesting_example() {
    let p = DetectorParams::new(1.0, 1.0, 0.01).unwrap();
    let s = elements_minkowski(&p, 1.0).unwrap();
    let r = xstate_measures(&s, 0.01).unwrap();
    assert!(r.harvested);
    assert!((r.concurrence_leading / 1e-4 - 0.080_704_125_742_393_79).abs() < 1e-12);
    assert!((r.concurrence / 1e-4 - 0.0807).abs() < 1e-4);
    assert!((r.concurrence - 2.0 * r.negativity).abs() < 1e-15);
    assert_eq!(r.closed_form.branch, Some(XBranch::Outer));
    assert!((r.negativity_identical.unwrap() - r.negativity).abs() < 1e-15);
    assert!((r.eof - r.eof_perturbative).abs() < 1e-4 * r.eof);
}

#[test]
fn separable_detectors_report_zero() {
    let p = DetectorParams::new(2.0, 1.0, 0.01).unwrap();
    let s = elements_minkowski(&p, 6.0).unwrap();
    assert!(s.x.norm() <= s.a);
    let r = xstate_measures(&s, 0.01).unwrap();
    assert!(!r.harvested);
    assert_eq!(r.concurrence, 0.0);
    assert_eq!(r.concurrence_leading, 0.0);
    assert_eq!(r.eof, 0.0);
}

#[test]
fn inner_branch_never_at_leading_order() {
    for i in 0..12 {
        for j in 0..12 {
            let l = 0.2 + i as f64 * 0.8;
            let w = -3.0 + j as f64 * 0.5;
            let s = elements_minkowski(&DetectorParams::new(w, 1.0, 0.01).unwrap(), l).unwrap();
            let rho = assemble_density_matrix(&s, 0.01).unwrap();
            assert_ne!(xstate_closed_form(&rho).unwrap().branch, Some(XBranch::Inner));
        }
    }
}

proptest! {
    #[test]
    fn x_state_branches_are_exclusive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_x_state(&mut rng);
        let (r11, r22, r33, r44, r14, r23) = x_entries(&rho);
        prop_assert!(!(r14 * r14 > r22 * r33 && r23 * r23 > r11 * r44));
    }

    #[test]
    fn measures_are_invariant_under_local_phases(seed in any::<u64>(), t in 0.0f64..6.3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_state(&mut rng);
        let u = DensityMatrix::from_diagonal(&nalgebra::Vector4::new(
            c(1.0, 0.0), Complex64::from_polar(1.0, t), c(1.0, 0.0), Complex64::from_polar(1.0, t),
        ));
        let r2 = u * rho * u.adjoint();
        prop_assert!((negativity_exact(&rho).unwrap() - negativity_exact(&r2).unwrap()).abs() < 1e-12);
        prop_assert!((concurrence_exact(&rho).unwrap() - concurrence_exact(&r2).unwrap()).abs() < 1e-12);
    }
}
