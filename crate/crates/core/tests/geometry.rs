use harvest::geometry::*;
use harvest::HarvestError;
use nalgebra::{Vector2, Vector3};
use proptest::prelude::*;

fn pair(da: (f64, f64), za: f64, db: (f64, f64), zb: f64) -> WorldlinePair {
    WorldlinePair::new(Vector2::new(da.0, da.1), za, Vector2::new(db.0, db.1), zb)
}

#[test]
fn separation_examples() {
    assert_eq!(separation(&pair((0.0, 0.0), 0.0, (0.0, 0.0), 1.0)), 1.0);
    assert!((separation(&pair((0.3, 0.4), 0.0, (0.0, 0.0), 0.0)) - 0.5).abs() < 1e-15);
    assert_eq!(separation(&pair((0.2, 0.1), 3.0, (0.2, 0.1), 3.0)), 0.0);
}

#[test]
fn cylinder_image_separation() {
    let w = pair((0.0, 0.0), 0.0, (0.5, 0.0), 0.0);
    assert_eq!(image_separation_cylinder(&w, 1.0, 0), 0.5);
    assert!((image_separation_cylinder(&w, 1.0, 1) - 1.25f64.sqrt()).abs() < 1e-15);
    assert_eq!(image_separation_cylinder(&w, 1.0, 3), image_separation_cylinder(&w, 1.0, -3));
}

#[test]
fn twisted_image_separation() {
    let w = pair((0.1, 0.0), 0.0, (0.2, 0.0), 0.0);
    let l1 = image_separation_twisted(&w, 1.0, 1).unwrap();
    assert!((l1 * l1 - 1.09).abs() < 1e-14);
    for n in [-4, -2, 2, 4] {
        let a = image_separation_twisted(&w, 1.0, n).unwrap();
        assert!((a - image_separation_cylinder(&w, 1.0, n)).abs() < 1e-15);
    }
    let on_axis = pair((0.0, 0.0), 0.3, (0.0, 0.0), -0.4);
    for n in -5..=5 {
        assert_eq!(
            image_separation_twisted(&on_axis, 1.3, n).unwrap(),
            image_separation_cylinder(&on_axis, 1.3, n)
        );
    }
}

#[test]
fn effective_ell_examples() {
    assert_eq!(effective_ell_twisted(1.0, 1.0, 2).unwrap(), 1.0);
    assert!((effective_ell_twisted(1.0, 1.0, 1).unwrap() - 5f64.sqrt()).abs() < 1e-15);
    for n in [-3, -1, 1, 4, 7] {
        assert_eq!(effective_ell_twisted(0.0, 1.7, n).unwrap(), 1.7);
    }
    assert!(matches!(effective_ell_twisted(1.0, 1.0, 0), Err(HarvestError::InvalidParameter(_))));
}

#[test]
fn orientation_examples() {
    let w = worldlines_from_orientation(2.0, 0.0).unwrap();
    assert_eq!(w.delta_z(), 0.0);
    assert_eq!(separation(&w), 2.0);
    let w = worldlines_from_orientation(2.0, std::f64::consts::FRAC_PI_2).unwrap();
    assert!((w.delta_z().abs() - 2.0).abs() < 1e-15);
    assert!((w.d_a - w.d_b).norm() < 1e-15);
    let t = 0.4;
    let w1 = worldlines_from_orientation(1.5, t).unwrap();
    let w2 = worldlines_from_orientation(1.5, std::f64::consts::PI - t).unwrap();
    assert!((w1.delta_z() - w2.delta_z()).abs() < 1e-15);
    assert!(((w1.d_b - w1.d_a).x + (w2.d_b - w2.d_a).x).abs() < 1e-15);
    assert!(worldlines_from_orientation(0.0, 1.0).is_err());
    assert!(worldlines_from_orientation(-1.0, 1.0).is_err());
}

#[test]
fn topology_validation() {
    assert!(Topology::cylinder(0.0, 1).is_err());
    assert!(Topology::cylinder(-1.0, 1).is_err());
    assert!(Topology::twisted(1.0, 0).is_err());
    assert!(Topology::new(TopologyKind::Cylinder, None, 1).is_err());
    assert_eq!(Topology::minkowski().ell(), None);
    let t = Topology::twisted(2.0, -1).unwrap();
    assert_eq!(t.weight(3), -1.0);
    assert_eq!(t.weight(-3), -1.0);
    assert_eq!(t.weight(4), 1.0);
    assert_eq!("m0".parse::<TopologyKind>().unwrap(), TopologyKind::Cylinder);
}

#[test]
fn twisted_isometry_flips_odd_powers() {
    let t = Topology::twisted(1.0, 1).unwrap();
    let p = Vector3::new(0.3, -0.2, 0.5);
    assert_eq!(t.image_point(&p, 1), Vector3::new(-0.3, 0.2, 1.5));
    assert_eq!(t.image_point(&p, -2), Vector3::new(0.3, -0.2, -1.5));
}

fn apply_repeatedly(top: &Topology, p: Vector3<f64>, n: i64) -> Vector3<f64> {
    let mut q = p;
    for _ in 0..n.unsigned_abs() {
        q = top.image_point(&q, n.signum());
    }
    q
}

proptest! {
    #[test]
    fn quoted_formulas_match_isometry(
        dax in -2.0f64..2.0, day in -2.0f64..2.0, za in -2.0f64..2.0,
        dbx in -2.0f64..2.0, dby in -2.0f64..2.0, zb in -2.0f64..2.0,
        ell in 0.2f64..4.0, n in -12i64..=12,
    ) {
        let w = pair((dax, day), za, (dbx, dby), zb);
        let cyl = Topology::cylinder(ell, 1).unwrap();
        let tw = Topology::twisted(ell, 1).unwrap();
        let brute_c = (w.position_a() - apply_repeatedly(&cyl, w.position_b(), n)).norm();
        let brute_t = (w.position_a() - apply_repeatedly(&tw, w.position_b(), n)).norm();
        let scale = 1.0 + brute_c.max(brute_t);
        prop_assert!((quoted_separation_sq_cylinder(&w, ell, n).sqrt() - brute_c).abs() < 1e-12 * scale);
        prop_assert!((quoted_separation_sq_twisted(&w, ell, n).max(0.0).sqrt() - brute_t).abs() < 1e-12 * scale);
        prop_assert!((image_separation_cylinder(&w, ell, n) - brute_c).abs() < 1e-12 * scale);
        prop_assert!((image_separation_twisted(&w, ell, n).unwrap() - brute_t).abs() < 1e-12 * scale);
        if n != 0 {
            let self_img = self_image_separation(&w.position_a(), &tw, n);
            let ln = effective_ell_twisted(w.d_a.norm(), ell, n).unwrap();
            prop_assert!((self_img - n.unsigned_abs() as f64 * ln).abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn effective_ell_parity(dk in 0.0f64..3.0, ell in 0.1f64..4.0, n in 1i64..30) {
        for m in [n, -n] {
            let ln = effective_ell_twisted(dk, ell, m).unwrap();
            let nf = m as f64;
            let extra = nf * nf * ln * ln - nf * nf * ell * ell;
            let want = if m % 2 == 0 { 0.0 } else { 4.0 * dk * dk };
            prop_assert!((extra - want).abs() <= 1e-12 * (nf * nf * ell * ell + want));
        }
    }
}
