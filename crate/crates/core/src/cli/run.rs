//! Grid expansion and per-point evaluation.

use nalgebra::Vector2;
use rayon::prelude::*;
use serde::Serialize;

use super::config::SweepConfig;
use super::output::{Cell, Table};
use super::verify::{oracle_elements, Analytic, OracleElements};
use crate::detector_matrix::closed_form::local_excitation;
use crate::detector_matrix::{elements, elements_minkowski, DetectorParams, QuotientState};
use crate::entanglement::{correlation, xstate_measures, Correlation, EntanglementReport};
use crate::error::{HarvestError, Result};
use crate::geometry::{separation, worldlines_from_orientation_at, Topology, TopologyKind, WorldlinePair};

/// One grid point, lengths in units of sigma. Detector A sits at `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub index: usize,
    pub ell: Option<f64>,
    pub omega_sigma: f64,
    pub l_sigma: f64,
    pub theta: Option<f64>,
    pub d_a: [f64; 2],
    pub d_b: [f64; 2],
    pub delta_z: f64,
}

impl GridPoint {
    pub fn params(&self, cfg: &SweepConfig) -> Result<DetectorParams> {
        DetectorParams::new(self.omega_sigma / cfg.sigma, cfg.sigma, cfg.eps0)
    }

    pub fn topology(&self, cfg: &SweepConfig) -> Result<Topology> {
        Topology::new(cfg.topology, self.ell.map(|l| l * cfg.sigma), cfg.eta)
    }

    /// Worldlines in physical units.
    pub fn worldlines(&self, sigma: f64) -> WorldlinePair {
        WorldlinePair::new(
            Vector2::new(self.d_a[0], self.d_a[1]) * sigma,
            0.0,
            Vector2::new(self.d_b[0], self.d_b[1]) * sigma,
            self.delta_z * sigma,
        )
    }
}

/// Expands the config into grid points, `omega` varying fastest.
pub fn grid(cfg: &SweepConfig) -> Result<Vec<GridPoint>> {
    cfg.validate()?;
    let omegas = cfg.omega.values();
    let mut geo = Vec::new();
    match cfg.d_b {
        Some(d_b) => {
            let w = WorldlinePair::new(
                Vector2::new(cfg.d_a[0], cfg.d_a[1]),
                0.0,
                Vector2::new(d_b[0], d_b[1]),
                cfg.delta_z,
            );
            geo.push((separation(&w), None, d_b, cfg.delta_z));
        }
        None => {
            let d_a = Vector2::new(cfg.d_a[0], cfg.d_a[1]);
            for theta in cfg.theta.values() {
                for l in cfg.l.values() {
                    let w = worldlines_from_orientation_at(l, theta, d_a)?;
                    geo.push((l, Some(theta), [w.d_b.x, w.d_b.y], w.z_b));
                }
            }
        }
    }
    let mut out = Vec::with_capacity(cfg.grid_len());
    for ell in cfg.ell_values() {
        for &(l, theta, d_b, dz) in &geo {
            for &omega_sigma in &omegas {
                out.push(GridPoint {
                    index: out.len(),
                    ell,
                    omega_sigma,
                    l_sigma: l,
                    theta,
                    d_a: cfg.d_a,
                    d_b,
                    delta_z: dz,
                });
            }
        }
    }
    if out.is_empty() {
        return Err(HarvestError::Config("empty grid".into()));
    }
    Ok(out)
}

/// Everything computed at one grid point. Elements are per `eps0^2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointResult {
    pub point: GridPoint,
    pub state: Option<QuotientState>,
    pub a_minkowski: Option<f64>,
    pub report: Option<EntanglementReport>,
    /// Computed from the elements alone, so it survives a failed assembly.
    pub corr: Option<Correlation>,
    pub oracle: Option<OracleElements>,
    pub corr_minkowski: Option<f64>,
    pub error: Option<String>,
}

impl PointResult {
    /// Correlation per `eps0^2`.
    pub fn corr(&self, eps0: f64) -> Option<f64> {
        self.corr.map(|c| c.general / (eps0 * eps0))
    }

    pub fn concurrence(&self, eps0: f64) -> Option<f64> {
        self.report.map(|r| r.concurrence / (eps0 * eps0))
    }

    /// `corr_M - corr` per `eps0^2`.
    pub fn corr_difference(&self, eps0: f64) -> Option<f64> {
        Some(self.corr_minkowski? - self.corr(eps0)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Sweep,
    Difference,
}

fn evaluate(cfg: &SweepConfig, pt: &GridPoint, mode: Mode) -> PointResult {
    let mut res = PointResult {
        point: *pt,
        state: None,
        a_minkowski: None,
        report: None,
        corr: None,
        oracle: None,
        corr_minkowski: None,
        error: None,
    };
    let mut errors = Vec::new();
    let setup = pt.params(cfg).and_then(|p| Ok((p, pt.topology(cfg)?)));
    let (p, top) = match setup {
        Ok(v) => v,
        Err(e) => {
            res.error = Some(e.to_string());
            return res;
        }
    };
    let w = pt.worldlines(cfg.sigma);
    res.a_minkowski = Some(local_excitation(&p));
    match elements(&p, &w, &top, cfg.nmax) {
        Ok(q) => {
            res.state = Some(q);
            res.corr = correlation(&q.state, cfg.eps0).ok();
            match xstate_measures(&q.state, cfg.eps0) {
                Ok(r) => res.report = Some(r),
                Err(e) => errors.push(e.to_string()),
            }
        }
        Err(e) => errors.push(e.to_string()),
    }
    if cfg.oracle {
        match oracle_elements(&Analytic, &p, &w, &top, cfg.nmax) {
            Ok(o) => res.oracle = Some(o),
            Err(e) => errors.push(format!("oracle: {e}")),
        }
    }
    if mode == Mode::Difference {
        let m = elements_minkowski(&p, separation(&w)).and_then(|s| correlation(&s, cfg.eps0));
        match m {
            Ok(c) => res.corr_minkowski = Some(c.general / (cfg.eps0 * cfg.eps0)),
            Err(e) => errors.push(format!("minkowski: {e}")),
        }
    }
    if !errors.is_empty() {
        res.error = Some(errors.join("; "));
    }
    res
}

/// Runs `f` on a pool of `jobs` threads, or the global pool when `None`.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| HarvestError::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn run(cfg: &SweepConfig, mode: Mode) -> Result<Vec<PointResult>> {
    let pts = grid(cfg)?;
    with_jobs(cfg.jobs, || pts.par_iter().map(|pt| evaluate(cfg, pt, mode)).collect())
}

/// Evaluates every grid point. Failures are recorded per point.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<PointResult>> {
    run(cfg, Mode::Sweep)
}

/// Like [`run_sweep`] plus the Minkowski correlation at the same worldlines.
pub fn run_difference_map(cfg: &SweepConfig) -> Result<Vec<PointResult>> {
    if cfg.topology == TopologyKind::Minkowski {
        return Err(HarvestError::Config("difference map needs a quotient topology".into()));
    }
    run(cfg, Mode::Difference)
}

const POINT_COLUMNS: [&str; 12] = [
    "index", "topology", "ell_sigma", "eta", "omega_sigma", "l_sigma", "theta", "d_a_x", "d_a_y",
    "d_b_x", "d_b_y", "delta_z",
];

pub(crate) fn point_cells(cfg: &SweepConfig, pt: &GridPoint) -> Vec<Cell> {
    vec![
        Cell::Int(pt.index as i64),
        Cell::Text(Some(cfg.topology.as_str().into())),
        Cell::Float(pt.ell),
        Cell::Int(cfg.eta as i64),
        Cell::Float(Some(pt.omega_sigma)),
        Cell::Float(Some(pt.l_sigma)),
        Cell::Float(pt.theta),
        Cell::Float(Some(pt.d_a[0])),
        Cell::Float(Some(pt.d_a[1])),
        Cell::Float(Some(pt.d_b[0])),
        Cell::Float(Some(pt.d_b[1])),
        Cell::Float(Some(pt.delta_z)),
    ]
}

pub(crate) fn point_header() -> Vec<&'static str> {
    POINT_COLUMNS.to_vec()
}

/// Tabulates sweep results; `diff` adds the difference-map columns.
pub fn results_table(cfg: &SweepConfig, results: &[PointResult], diff: bool) -> Table {
    let mut header = point_header();
    header.extend([
        "a", "b", "x_re", "x_im", "c_re", "c_im", "e", "a_minkowski", "concurrence", "negativity",
        "eof", "corr", "corr_leading", "harvested", "truncation_warning", "tail_estimate",
    ]);
    if cfg.oracle {
        header.extend([
            "oracle_a", "oracle_b", "oracle_x_re", "oracle_x_im", "oracle_c_re", "oracle_c_im",
            "oracle_max_deviation",
        ]);
    }
    if diff {
        header.extend(["corr_minkowski", "corr_difference"]);
    }
    header.push("error");

    let e2 = cfg.eps0 * cfg.eps0;
    let rows = results
        .iter()
        .map(|r| {
            let mut cells = point_cells(cfg, &r.point);
            let s = r.state.map(|q| q.state);
            let d = r.state.map(|q| q.diagnostics);
            let rep = r.report;
            let f = |v: Option<f64>| Cell::Float(v);
            cells.extend([
                f(s.map(|s| s.a)),
                f(s.map(|s| s.b)),
                f(s.map(|s| s.x.re)),
                f(s.map(|s| s.x.im)),
                f(s.map(|s| s.c.re)),
                f(s.map(|s| s.c.im)),
                f(s.map(|s| s.e)),
                f(r.a_minkowski),
                f(rep.map(|x| x.concurrence / e2)),
                f(rep.map(|x| x.negativity / e2)),
                f(rep.map(|x| x.eof)),
                f(r.corr.map(|c| c.general / e2)),
                f(r.corr.and_then(|c| c.leading).map(|c| c / e2)),
                rep.map_or(Cell::Text(None), |x| Cell::Bool(x.harvested)),
                d.map_or(Cell::Text(None), |x| Cell::Bool(x.truncation_warning)),
                f(d.map(|x| x.tail_estimate)),
            ]);
            if cfg.oracle {
                let o = r.oracle;
                cells.extend([
                    f(o.map(|o| o.a)),
                    f(o.map(|o| o.b)),
                    f(o.map(|o| o.x.re)),
                    f(o.map(|o| o.x.im)),
                    f(o.map(|o| o.c.re)),
                    f(o.map(|o| o.c.im)),
                    f(o.map(|o| o.max_deviation)),
                ]);
            }
            if diff {
                cells.extend([f(r.corr_minkowski), f(r.corr_difference(cfg.eps0))]);
            }
            cells.push(Cell::Text(r.error.clone()));
            cells
        })
        .collect();
    Table { header, rows }
}
