//! Two-detector X-state in Minkowski space and its flat quotients.
//!
//! Quotient elements are image sums `sum_n eta^n K(|x - J^n x'|)` over the
//! Minkowski kernels of [`closed_form`], truncated at `|n| <= nmax`.

pub mod closed_form;
mod params;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, HarvestError, Result};
use crate::geometry::{image_separation, self_image_separation, Topology, TopologyKind, WorldlinePair};

pub use closed_form::{exchange_kernel, local_excitation, nonlocal_kernel};
pub use params::DetectorParams;

/// Default image-sum truncation.
pub const DEFAULT_NMAX: usize = 10;

/// Relative threshold for the truncation warning.
pub const TRUNCATION_THRESHOLD: f64 = 1e-12;

/// Relative tolerance of the positivity conditions.
pub const POSITIVITY_TOLERANCE: f64 = 1e-12;

/// Density matrix in the basis `|00>, |01>, |10>, |11>`.
pub type DensityMatrix = Matrix4<Complex64>;

/// Leading-order elements: `a`, `b`, `x`, `c` per `eps0^2`, `e` per `eps0^4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XStateAB {
    pub a: f64,
    pub b: f64,
    pub x: Complex64,
    pub c: Complex64,
    pub e: f64,
}

impl XStateAB {
    /// Fills in `e = |x|^2 + a b + 2 |c|^2`.
    pub fn from_elements(a: f64, b: f64, x: Complex64, c: Complex64) -> Self {
        XStateAB { a, b, x, c, e: x.norm_sqr() + a * b + 2.0 * c.norm_sqr() }
    }

    /// `|e - (|x|^2 + a b + 2|c|^2)|`, nonzero only for hand-built states.
    pub fn e_defect(&self) -> f64 {
        (self.e - (self.x.norm_sqr() + self.a * self.b + 2.0 * self.c.norm_sqr())).abs()
    }

    pub fn is_finite(&self) -> bool {
        [self.a, self.b, self.x.re, self.x.im, self.c.re, self.c.im, self.e]
            .iter()
            .all(|v| v.is_finite())
    }

    /// Exchanges the roles of the two detectors.
    pub fn swapped(&self) -> Self {
        XStateAB { a: self.b, b: self.a, x: self.x, c: self.c.conj(), e: self.e }
    }
}

/// How well the truncated image sums have converged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImageSumDiagnostics {
    pub nmax: usize,
    /// Largest first-omitted pair `|t_{N+1}| + |t_{-N-1}|` over the elements.
    pub first_omitted: f64,
    /// Rough size of everything beyond `nmax`, same units as the elements.
    pub tail_estimate: f64,
    /// Set when the first omitted pair exceeds `1e-12` of its partial sum.
    pub truncation_warning: bool,
}

impl ImageSumDiagnostics {
    fn exact() -> Self {
        ImageSumDiagnostics { nmax: 0, first_omitted: 0.0, tail_estimate: 0.0, truncation_warning: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuotientState {
    pub state: XStateAB,
    pub diagnostics: ImageSumDiagnostics,
}

/// Identical static detectors a distance `l` apart in Minkowski space.
pub fn elements_minkowski(p: &DetectorParams, l: f64) -> Result<XStateAB> {
    if !(l.is_finite() && l > 0.0) {
        return Err(invalid(format!("separation must be positive, got {l}")));
    }
    let a = local_excitation(p);
    let x = nonlocal_kernel(p, l)?;
    let c = exchange_kernel(p, l)?;
    Ok(XStateAB::from_elements(a, a, x, Complex64::new(c, 0.0)))
}

/// Unweighted `n`-th image contributions to `(A, B, X, C)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageTerm {
    pub a: f64,
    pub b: f64,
    pub x: Complex64,
    pub c: Complex64,
}

/// Image separations `(|x_A - J^n x_A|, |x_B - J^n x_B|, |x_A - J^n x_B|)`.
pub fn image_distances(w: &WorldlinePair, top: &Topology, n: i64) -> (f64, f64, f64) {
    (
        self_image_separation(&w.position_a(), top, n),
        self_image_separation(&w.position_b(), top, n),
        image_separation(w, top, n),
    )
}

/// The `n`-th image term, `n != 0`.
pub fn image_term(p: &DetectorParams, w: &WorldlinePair, top: &Topology, n: i64) -> Result<ImageTerm> {
    let (ra, rb, rx) = image_distances(w, top, n);
    if rx == 0.0 {
        return Err(HarvestError::DegenerateGeometry(format!(
            "detector A coincides with image {n} of detector B"
        )));
    }
    Ok(ImageTerm {
        a: exchange_kernel(p, ra)?,
        b: exchange_kernel(p, rb)?,
        x: nonlocal_kernel(p, rx)?,
        c: Complex64::new(exchange_kernel(p, rx)?, 0.0),
    })
}

fn image_sum(
    p: &DetectorParams,
    w: &WorldlinePair,
    top: &Topology,
    nmax: usize,
) -> Result<QuotientState> {
    if nmax < 1 {
        return Err(invalid("nmax must be at least 1"));
    }
    let l = crate::geometry::separation(w);
    if !(l > 0.0) {
        return Err(invalid("detectors must be separated"));
    }
    let am = local_excitation(p);
    let mut a = am;
    let mut b = am;
    let mut x = nonlocal_kernel(p, l)?;
    let mut c = Complex64::new(exchange_kernel(p, l)?, 0.0);
    for n in 1..=nmax as i64 {
        let wt = top.weight(n);
        let tp = image_term(p, w, top, n)?;
        let tm = image_term(p, w, top, -n)?;
        a += wt * (tp.a + tm.a);
        b += wt * (tp.b + tm.b);
        x += wt * (tp.x + tm.x);
        c += wt * (tp.c + tm.c);
    }

    let n1 = nmax as i64 + 1;
    let tp = image_term(p, w, top, n1)?;
    let tm = image_term(p, w, top, -n1)?;
    let pairs = [
        (tp.a.abs() + tm.a.abs(), a.abs()),
        (tp.b.abs() + tm.b.abs(), b.abs()),
        (tp.x.norm() + tm.x.norm(), x.norm()),
        (tp.c.norm() + tm.c.norm(), c.norm()),
    ];
    let first_omitted = pairs.iter().map(|q| q.0).fold(0.0, f64::max);
    let truncation_warning = pairs.iter().any(|(t, s)| *t > TRUNCATION_THRESHOLD * s);
    // terms fall off like 1/n^2: a same-sign tail is ~ (N+1) times its first
    // pair, an alternating one is bounded by it
    let tail_estimate = if top.eta() == 1 { n1 as f64 * first_omitted } else { first_omitted };

    Ok(QuotientState {
        state: XStateAB::from_elements(a, b, x, c),
        diagnostics: ImageSumDiagnostics { nmax, first_omitted, tail_estimate, truncation_warning },
    })
}

pub fn elements_cylinder(
    p: &DetectorParams,
    w: &WorldlinePair,
    top: &Topology,
    nmax: usize,
) -> Result<QuotientState> {
    if top.kind() != TopologyKind::Cylinder {
        return Err(invalid("elements_cylinder needs a cylinder topology"));
    }
    image_sum(p, w, top, nmax)
}

pub fn elements_twisted(
    p: &DetectorParams,
    w: &WorldlinePair,
    top: &Topology,
    nmax: usize,
) -> Result<QuotientState> {
    if top.kind() != TopologyKind::Twisted {
        return Err(invalid("elements_twisted needs a twisted topology"));
    }
    image_sum(p, w, top, nmax)
}

/// Dispatches on the topology; Minkowski ignores `nmax`.
pub fn elements(
    p: &DetectorParams,
    w: &WorldlinePair,
    top: &Topology,
    nmax: usize,
) -> Result<QuotientState> {
    match top.kind() {
        TopologyKind::Minkowski => Ok(QuotientState {
            state: elements_minkowski(p, crate::geometry::separation(w))?,
            diagnostics: ImageSumDiagnostics::exact(),
        }),
        TopologyKind::Cylinder => elements_cylinder(p, w, top, nmax),
        TopologyKind::Twisted => elements_twisted(p, w, top, nmax),
    }
}

/// Builds the physical density matrix with the `eps0` powers restored.
///
/// Fails if `r11 r44 >= |r14|^2` or `r22 r33 >= |r23|^2` is violated by more
/// than [`POSITIVITY_TOLERANCE`] relative to the larger side, or a diagonal
/// entry is negative.
pub fn assemble_density_matrix(s: &XStateAB, eps0: f64) -> Result<DensityMatrix> {
    if !s.is_finite() {
        return Err(HarvestError::InvalidState("non-finite matrix element".into()));
    }
    if !(eps0.is_finite() && eps0 > 0.0) {
        return Err(invalid(format!("eps0 must be positive, got {eps0}")));
    }
    let e2 = eps0 * eps0;
    let (a, b, e) = (s.a * e2, s.b * e2, s.e * e2 * e2);
    let (x, c) = (s.x * e2, s.c * e2);
    let z = Complex64::new(0.0, 0.0);
    let re = |v: f64| Complex64::new(v, 0.0);
    let r11 = 1.0 - a - b + e;
    let r22 = b - e;
    let r33 = a - e;
    let r44 = e;
    #[rustfmt::skip]
    let rho = DensityMatrix::new(
        re(r11), z,       z,       x,
        z,       re(r22), c,       z,
        z,       c.conj(), re(r33), z,
        x.conj(), z,      z,       re(r44),
    );
    let tol = POSITIVITY_TOLERANCE;
    let lower = -tol * r11.abs().max(1.0);
    if r11 < lower || r22 < -tol * a.abs() || r33 < -tol * b.abs() || r44 < 0.0 {
        return Err(HarvestError::PositivityViolation(format!(
            "negative population: r11={r11:e}, r22={r22:e}, r33={r33:e}, r44={r44:e}"
        )));
    }
    let (p1, q1) = (r11 * r44, x.norm_sqr());
    if q1 - p1 > tol * p1.max(q1) {
        return Err(HarvestError::PositivityViolation(format!(
            "r11 r44 = {p1:e} < |r14|^2 = {q1:e}"
        )));
    }
    let (p2, q2) = (r22 * r33, c.norm_sqr());
    if q2 - p2 > tol * p2.max(q2) {
        return Err(HarvestError::PositivityViolation(format!(
            "r22 r33 = {p2:e} < |r23|^2 = {q2:e}"
        )));
    }
    Ok(rho)
}
