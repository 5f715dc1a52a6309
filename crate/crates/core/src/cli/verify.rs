//! Closed forms checked against the quadrature oracle, image by image.

use rayon::prelude::*;
use serde::Serialize;

use super::config::SweepConfig;
use super::output::{Cell, Table};
use super::run::{grid, point_cells, point_header, with_jobs, GridPoint};
use crate::detector_matrix::closed_form::{exchange_kernel, nonlocal_kernel};
use crate::detector_matrix::{image_distances, DetectorParams};
use crate::error::{HarvestError, Result};
use crate::geometry::{separation, Topology, TopologyKind, WorldlinePair};
use crate::wightman_oracle::{oracle_a, oracle_c, oracle_x};
use crate::Complex64;

/// Absolute tolerance per element, in units of `eps0^2`.
pub const VERIFY_TOLERANCE: f64 = 1e-6;

/// The kernels under test. [`Analytic`] is the real thing.
pub trait ClosedForm: Sync {
    /// `A`-type kernel at image distance `r`; `r = 0` is the local term.
    fn exchange(&self, p: &DetectorParams, r: f64) -> Result<f64>;
    fn nonlocal(&self, p: &DetectorParams, r: f64) -> Result<Complex64>;
}

pub struct Analytic;

impl ClosedForm for Analytic {
    fn exchange(&self, p: &DetectorParams, r: f64) -> Result<f64> {
        exchange_kernel(p, r)
    }

    fn nonlocal(&self, p: &DetectorParams, r: f64) -> Result<Complex64> {
        nonlocal_kernel(p, r)
    }
}

/// Oracle image sums and their largest gap to the closed-form sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleElements {
    pub a: f64,
    pub b: f64,
    pub x: Complex64,
    pub c: Complex64,
    pub max_deviation: f64,
}

fn image_indices(top: &Topology, nmax: usize) -> Vec<i64> {
    match top.kind() {
        TopologyKind::Minkowski => vec![0],
        _ => {
            let n = nmax as i64;
            (-n..=n).collect()
        }
    }
}

fn distances(w: &WorldlinePair, top: &Topology, n: i64) -> (f64, f64, f64) {
    if n == 0 {
        (0.0, 0.0, separation(w))
    } else {
        image_distances(w, top, n)
    }
}

/// One image term from both sides: `([a, b, x, c] closed, [..] oracle)`.
fn term_pair(
    cf: &dyn ClosedForm,
    p: &DetectorParams,
    w: &WorldlinePair,
    top: &Topology,
    n: i64,
) -> Result<([Complex64; 4], [Complex64; 4])> {
    let (ra, rb, rx) = distances(w, top, n);
    if rx == 0.0 {
        return Err(HarvestError::DegenerateGeometry(format!(
            "detector A coincides with image {n} of detector B"
        )));
    }
    let re = |v: f64| Complex64::new(v, 0.0);
    let oa = oracle_a(p, ra)?;
    let ob = if rb == ra { oa } else { oracle_a(p, rb)? };
    let closed = [
        re(cf.exchange(p, ra)?),
        re(cf.exchange(p, rb)?),
        cf.nonlocal(p, rx)?,
        re(cf.exchange(p, rx)?),
    ];
    Ok((closed, [re(oa), re(ob), oracle_x(p, rx)?, oracle_c(p, rx)?]))
}

/// Image sums built from the oracle, truncated like the closed forms.
pub fn oracle_elements(
    cf: &dyn ClosedForm,
    p: &DetectorParams,
    w: &WorldlinePair,
    top: &Topology,
    nmax: usize,
) -> Result<OracleElements> {
    let zero = Complex64::new(0.0, 0.0);
    let mut closed = [zero; 4];
    let mut oracle = [zero; 4];
    for n in image_indices(top, nmax) {
        let wt = top.weight(n);
        let (c, o) = term_pair(cf, p, w, top, n)?;
        for k in 0..4 {
            closed[k] += wt * c[k];
            oracle[k] += wt * o[k];
        }
    }
    let max_deviation = (0..4).map(|k| (closed[k] - oracle[k]).norm()).fold(0.0, f64::max);
    Ok(OracleElements { a: oracle[0].re, b: oracle[1].re, x: oracle[2], c: oracle[3], max_deviation })
}

const NAMES: [&str; 4] = ["A", "B", "X", "C"];

/// Largest term-by-term deviation and where it occurred.
fn point_deviation(
    cf: &dyn ClosedForm,
    cfg: &SweepConfig,
    pt: &GridPoint,
) -> Result<(f64, String)> {
    let p = pt.params(cfg)?;
    let top = pt.topology(cfg)?;
    let w = pt.worldlines(cfg.sigma);
    let mut worst = (0.0, String::from("A n=0"));
    for n in image_indices(&top, cfg.nmax) {
        let (c, o) = term_pair(cf, &p, &w, &top, n)?;
        for k in 0..4 {
            let d = (c[k] - o[k]).norm();
            if !(d <= worst.0) {
                worst = (d, format!("{} n={n}", NAMES[k]));
            }
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub point: GridPoint,
    pub max_deviation: Option<f64>,
    /// Element and image index of the largest deviation.
    pub worst: Option<String>,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub tolerance: f64,
    pub rows: Vec<VerifyRow>,
    pub failures: usize,
    pub max_deviation: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn table(&self, cfg: &SweepConfig) -> Table {
        let mut header = point_header();
        header.extend(["max_deviation", "worst", "pass", "error"]);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut cells = point_cells(cfg, &r.point);
                cells.extend([
                    Cell::Float(r.max_deviation),
                    Cell::Text(r.worst.clone()),
                    Cell::Bool(r.pass),
                    Cell::Text(r.error.clone()),
                ]);
                cells
            })
            .collect();
        Table { header, rows }
    }

    pub fn summary(&self) -> String {
        format!(
            "{} points, {} failures, max deviation {:.3e} (tolerance {:.1e})",
            self.rows.len(),
            self.failures,
            self.max_deviation,
            self.tolerance
        )
    }
}

pub fn run_verification(cfg: &SweepConfig) -> Result<VerificationReport> {
    run_verification_with(cfg, &Analytic, VERIFY_TOLERANCE)
}

/// Compares `cf` with the oracle at every grid point and image.
pub fn run_verification_with(
    cfg: &SweepConfig,
    cf: &dyn ClosedForm,
    tolerance: f64,
) -> Result<VerificationReport> {
    if !cfg.oracle {
        return Err(HarvestError::Config("verification needs oracle = true".into()));
    }
    let pts = grid(cfg)?;
    let rows: Vec<VerifyRow> = with_jobs(cfg.jobs, || {
        pts.par_iter()
            .map(|pt| match point_deviation(cf, cfg, pt) {
                Ok((d, worst)) => VerifyRow {
                    point: *pt,
                    max_deviation: Some(d),
                    worst: Some(worst),
                    pass: d <= tolerance,
                    error: None,
                },
                Err(e) => VerifyRow {
                    point: *pt,
                    max_deviation: None,
                    worst: None,
                    pass: false,
                    error: Some(e.to_string()),
                },
            })
            .collect()
    })?;
    let failures = rows.iter().filter(|r| !r.pass).count();
    let max_deviation = rows.iter().filter_map(|r| r.max_deviation).fold(0.0, f64::max);
    Ok(VerificationReport { tolerance, rows, failures, max_deviation })
}
