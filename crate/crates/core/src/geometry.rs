//! Spacetime topologies, static worldlines and image separations.
//!
//! The cylinder identifies `z ~ z + ell`; the twisted cylinder composes the
//! shift with the planar point reflection `(x, y) -> (-x, -y)`. Image
//! separations are measured directly between `x_A` and `J^n x_B`.

use nalgebra::{Vector2, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, HarvestError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyKind {
    Minkowski,
    Cylinder,
    Twisted,
}

impl TopologyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TopologyKind::Minkowski => "minkowski",
            TopologyKind::Cylinder => "cylinder",
            TopologyKind::Twisted => "twisted",
        }
    }
}

impl std::str::FromStr for TopologyKind {
    type Err = HarvestError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "minkowski" | "m" => Ok(TopologyKind::Minkowski),
            "cylinder" | "m0" => Ok(TopologyKind::Cylinder),
            "twisted" | "twisted-cylinder" | "m-" => Ok(TopologyKind::Twisted),
            other => Err(invalid(format!("unknown topology '{other}'"))),
        }
    }
}

/// A spacetime: Minkowski or one of its two flat quotients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Topology {
    kind: TopologyKind,
    ell: Option<f64>,
    eta: i8,
}

impl Topology {
    pub fn minkowski() -> Self {
        Topology { kind: TopologyKind::Minkowski, ell: None, eta: 1 }
    }

    pub fn cylinder(ell: f64, eta: i8) -> Result<Self> {
        Self::new(TopologyKind::Cylinder, Some(ell), eta)
    }

    pub fn twisted(ell: f64, eta: i8) -> Result<Self> {
        Self::new(TopologyKind::Twisted, Some(ell), eta)
    }

    pub fn new(kind: TopologyKind, ell: Option<f64>, eta: i8) -> Result<Self> {
        if eta != 1 && eta != -1 {
            return Err(invalid(format!("eta must be +1 or -1, got {eta}")));
        }
        match kind {
            TopologyKind::Minkowski => Ok(Topology { kind, ell: None, eta }),
            _ => match ell {
                Some(l) if l.is_finite() && l > 0.0 => Ok(Topology { kind, ell: Some(l), eta }),
                Some(l) => Err(invalid(format!("ell must be positive and finite, got {l}"))),
                None => Err(invalid("ell is required for a quotient topology")),
            },
        }
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    /// Compactification scale; `None` for Minkowski.
    pub fn ell(&self) -> Option<f64> {
        self.ell
    }

    pub fn eta(&self) -> i8 {
        self.eta
    }

    /// `eta^n`.
    pub fn weight(&self, n: i64) -> f64 {
        if self.eta == -1 && n.rem_euclid(2) == 1 {
            -1.0
        } else {
            1.0
        }
    }

    /// Applies the generating isometry `n` times (inverse for negative `n`).
    pub fn image_point(&self, p: &Vector3<f64>, n: i64) -> Vector3<f64> {
        match self.kind {
            TopologyKind::Minkowski => *p,
            TopologyKind::Cylinder => {
                let ell = self.ell.unwrap_or(0.0);
                Vector3::new(p.x, p.y, p.z + n as f64 * ell)
            }
            TopologyKind::Twisted => {
                let ell = self.ell.unwrap_or(0.0);
                let s = if n.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
                Vector3::new(s * p.x, s * p.y, p.z + n as f64 * ell)
            }
        }
    }
}

/// Two static detectors at `(d_A, z_A)` and `(d_B, z_B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorldlinePair {
    pub d_a: Vector2<f64>,
    pub d_b: Vector2<f64>,
    pub z_a: f64,
    pub z_b: f64,
}

impl WorldlinePair {
    pub fn new(d_a: Vector2<f64>, z_a: f64, d_b: Vector2<f64>, z_b: f64) -> Self {
        WorldlinePair { d_a, d_b, z_a, z_b }
    }

    pub fn position_a(&self) -> Vector3<f64> {
        Vector3::new(self.d_a.x, self.d_a.y, self.z_a)
    }

    pub fn position_b(&self) -> Vector3<f64> {
        Vector3::new(self.d_b.x, self.d_b.y, self.z_b)
    }

    /// `z_A - z_B`.
    pub fn delta_z(&self) -> f64 {
        self.z_a - self.z_b
    }

    /// The same pair with the detector labels exchanged.
    pub fn swapped(&self) -> Self {
        WorldlinePair { d_a: self.d_b, d_b: self.d_a, z_a: self.z_b, z_b: self.z_a }
    }
}

pub fn separation(w: &WorldlinePair) -> f64 {
    (w.position_a() - w.position_b()).norm()
}

/// Distance from `x_A` to the `n`-th image of `x_B` under `top`.
pub fn image_separation(w: &WorldlinePair, top: &Topology, n: i64) -> f64 {
    (w.position_a() - top.image_point(&w.position_b(), n)).norm()
}

/// Distance from a detector to its own `n`-th image.
pub fn self_image_separation(p: &Vector3<f64>, top: &Topology, n: i64) -> f64 {
    (p - top.image_point(p, n)).norm()
}

pub fn image_separation_cylinder(w: &WorldlinePair, ell: f64, n: i64) -> f64 {
    let top = Topology { kind: TopologyKind::Cylinder, ell: Some(ell), eta: 1 };
    image_separation(w, &top, n)
}

pub fn image_separation_twisted(w: &WorldlinePair, ell: f64, n: i64) -> Result<f64> {
    let sq = quoted_separation_sq_twisted(w, ell, n);
    if sq < -1e-12 * (1.0 + separation(w).powi(2) + (n as f64 * ell).powi(2)) {
        return Err(HarvestError::DegenerateGeometry(format!(
            "negative squared image separation {sq} at n = {n}"
        )));
    }
    let top = Topology { kind: TopologyKind::Twisted, ell: Some(ell), eta: 1 };
    Ok(image_separation(w, &top, n))
}

/// `L^2 + n^2 ell^2 - 2 n ell dz`.
pub fn quoted_separation_sq_cylinder(w: &WorldlinePair, ell: f64, n: i64) -> f64 {
    let l = separation(w);
    let nl = n as f64 * ell;
    l * l + nl * nl - 2.0 * nl * w.delta_z()
}

/// Cylinder expression plus `4 d_A . d_B` for odd `n`.
pub fn quoted_separation_sq_twisted(w: &WorldlinePair, ell: f64, n: i64) -> f64 {
    let odd = if n.rem_euclid(2) == 1 { 1.0 } else { 0.0 };
    quoted_separation_sq_cylinder(w, ell, n) + 4.0 * w.d_a.dot(&w.d_b) * odd
}

/// `ell_n` with `n^2 ell_n^2 = n^2 ell^2 + 4 d_k^2 P(n)`.
pub fn effective_ell_twisted(dk: f64, ell: f64, n: i64) -> Result<f64> {
    if n == 0 {
        return Err(invalid("effective ell is undefined for n = 0"));
    }
    let odd = if n.rem_euclid(2) == 1 { 1.0 } else { 0.0 };
    let nf = n as f64;
    Ok((ell * ell + 4.0 * dk * dk * odd / (nf * nf)).sqrt())
}

/// Detector A at the origin, B at `(L cos theta, 0, L sin theta)`.
pub fn worldlines_from_orientation(l: f64, theta: f64) -> Result<WorldlinePair> {
    worldlines_from_orientation_at(l, theta, Vector2::zeros())
}

/// As [`worldlines_from_orientation`] with A displaced to planar position `d_a`.
pub fn worldlines_from_orientation_at(
    l: f64,
    theta: f64,
    d_a: Vector2<f64>,
) -> Result<WorldlinePair> {
    if !(l.is_finite() && l > 0.0) {
        return Err(invalid(format!("separation must be positive, got {l}")));
    }
    let d_b = d_a + Vector2::new(l * theta.cos(), 0.0);
    Ok(WorldlinePair::new(d_a, 0.0, d_b, l * theta.sin()))
}
