//! Sweep configuration: axes, presets and the flat `key = value` file format.
//!
//! Every length is in units of the switching width and the gap is given as
//! `Omega sigma`.

use std::fmt;
use std::str::FromStr;

use crate::error::{HarvestError, Result};
use crate::geometry::TopologyKind;

fn config_err(msg: impl Into<String>) -> HarvestError {
    HarvestError::Config(msg.into())
}

/// One sweep axis: `start:end:points` or an explicit list `v1,v2,...`.
#[derive(Debug, Clone, PartialEq)]
pub enum Axis {
    Range { start: f64, end: f64, points: usize },
    List(Vec<f64>),
}

impl Axis {
    pub fn single(v: f64) -> Self {
        Axis::List(vec![v])
    }

    pub fn values(&self) -> Vec<f64> {
        match self {
            Axis::List(v) => v.clone(),
            Axis::Range { start, end, points } => {
                let n = *points;
                (0..n)
                    .map(|i| {
                        if i + 1 == n {
                            *end
                        } else {
                            start + (end - start) * i as f64 / (n - 1) as f64
                        }
                    })
                    .collect()
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Axis::List(v) => v.len(),
            Axis::Range { points, .. } => *points,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn validate(&self, name: &str) -> Result<()> {
        match self {
            Axis::List(v) if v.is_empty() => Err(config_err(format!("{name}: empty axis"))),
            Axis::List(v) => match v.iter().find(|x| !x.is_finite()) {
                Some(x) => Err(config_err(format!("{name}: non-finite value {x}"))),
                None => Ok(()),
            },
            Axis::Range { start, end, points } => {
                if *points < 2 {
                    return Err(config_err(format!("{name}: a range needs at least 2 points")));
                }
                if !(start.is_finite() && end.is_finite()) || start == end {
                    return Err(config_err(format!("{name}: empty range {start}:{end}")));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Range { start, end, points } => write!(f, "{start}:{end}:{points}"),
            Axis::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| config_err(format!("{what}: cannot parse number {s:?}")))
}

fn parse_list(s: &str, what: &str) -> Result<Vec<f64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|p| parse_f64(p, what)).collect()
}

impl FromStr for Axis {
    type Err = HarvestError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [_] => Ok(Axis::List(parse_list(s, "axis")?)),
            [a, b, n] => Ok(Axis::Range {
                start: parse_f64(a, "axis start")?,
                end: parse_f64(b, "axis end")?,
                points: n
                    .trim()
                    .parse()
                    .map_err(|_| config_err(format!("axis: bad point count {n:?}")))?,
            }),
            _ => Err(config_err(format!("axis {s:?}: expected start:end:points or a comma list"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl FromStr for Format {
    type Err = HarvestError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "jsonl" | "json" => Ok(Format::Jsonl),
            other => Err(config_err(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        })
    }
}

/// A full sweep description.
///
/// The grid is `ell x theta x l x omega`, row-major with `omega` fastest.
/// When `d_b` is set the detectors sit at `(d_a, 0)` and `(d_b, delta_z)`
/// and the `l` and `theta` axes are not used.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub topology: TopologyKind,
    pub ell: Vec<f64>,
    pub eta: i8,
    pub omega: Axis,
    pub sigma: f64,
    pub eps0: f64,
    pub l: Axis,
    pub theta: Axis,
    pub d_a: [f64; 2],
    pub d_b: Option<[f64; 2]>,
    pub delta_z: f64,
    pub nmax: usize,
    pub format: Format,
    pub oracle: bool,
    pub jobs: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            topology: TopologyKind::Minkowski,
            ell: vec![1.0],
            eta: 1,
            omega: Axis::Range { start: -3.0, end: 3.0, points: 64 },
            sigma: 1.0,
            eps0: 0.01,
            l: Axis::Range { start: 0.15625, end: 10.0, points: 64 },
            theta: Axis::single(0.0),
            d_a: [0.0, 0.0],
            d_b: None,
            delta_z: 0.0,
            nmax: crate::detector_matrix::DEFAULT_NMAX,
            format: Format::Csv,
            oracle: false,
            jobs: None,
        }
    }
}

pub const PRESETS: [&str; 6] = ["fig1", "fig2a", "fig2b", "fig3a", "fig3b", "fig4"];

fn fine_l() -> Axis {
    Axis::Range { start: 0.15625, end: 10.0, points: 64 }
}

fn fine_omega(points: usize) -> Axis {
    Axis::Range { start: -3.0, end: 3.0, points }
}

impl SweepConfig {
    /// Named grids for the standard plots.
    pub fn preset(name: &str) -> Result<Self> {
        let base = SweepConfig::default();
        let cfg = match name {
            "fig1" => SweepConfig { l: fine_l(), omega: fine_omega(64), ..base },
            "fig2a" => SweepConfig {
                topology: TopologyKind::Cylinder,
                ell: vec![0.5, 1.0, 2.0, 4.0],
                omega: fine_omega(128),
                l: Axis::single(1.0),
                ..base
            },
            "fig2b" => SweepConfig {
                topology: TopologyKind::Twisted,
                ell: vec![0.5, 1.0, 2.0, 4.0],
                omega: fine_omega(128),
                l: Axis::single(1.0),
                d_a: [1.0, 0.0],
                ..base
            },
            "fig3a" => SweepConfig {
                topology: TopologyKind::Cylinder,
                l: fine_l(),
                omega: fine_omega(64),
                ..base
            },
            "fig3b" => SweepConfig {
                topology: TopologyKind::Twisted,
                l: fine_l(),
                omega: fine_omega(64),
                d_a: [0.1, 0.0],
                ..base
            },
            "fig4" => SweepConfig {
                topology: TopologyKind::Cylinder,
                theta: Axis::Range { start: 0.0, end: std::f64::consts::PI, points: 128 },
                l: Axis::single(0.5),
                omega: Axis::single(1.0),
                ..base
            },
            other => {
                return Err(config_err(format!(
                    "unknown preset {other:?}; expected one of {}",
                    PRESETS.join(", ")
                )))
            }
        };
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(config_err(format!("sigma must be positive, got {}", self.sigma)));
        }
        if !(self.eps0.is_finite() && self.eps0 > 0.0) {
            return Err(config_err(format!("eps0 must be positive, got {}", self.eps0)));
        }
        if self.eta != 1 && self.eta != -1 {
            return Err(config_err(format!("eta must be +1 or -1, got {}", self.eta)));
        }
        if self.nmax < 1 {
            return Err(config_err("nmax must be at least 1"));
        }
        if self.jobs == Some(0) {
            return Err(config_err("jobs must be at least 1"));
        }
        self.omega.validate("omega_sigma")?;
        if self.topology != TopologyKind::Minkowski {
            Axis::List(self.ell.clone()).validate("ell")?;
            if let Some(v) = self.ell.iter().find(|v| **v <= 0.0) {
                return Err(config_err(format!("ell must be positive, got {v}")));
            }
        }
        match self.d_b {
            None => {
                self.l.validate("l_sigma")?;
                self.theta.validate("theta")?;
                if let Some(v) = self.l.values().iter().find(|v| **v <= 0.0) {
                    return Err(config_err(format!("separations must be positive, got {v}")));
                }
            }
            Some(d_b) => {
                let dx = d_b[0] - self.d_a[0];
                let dy = d_b[1] - self.d_a[1];
                if dx == 0.0 && dy == 0.0 && self.delta_z == 0.0 {
                    return Err(config_err("detectors coincide"));
                }
            }
        }
        if [self.d_a[0], self.d_a[1], self.delta_z].iter().any(|v| !v.is_finite()) {
            return Err(config_err("non-finite detector position"));
        }
        Ok(())
    }

    /// Values actually swept over the compact direction.
    pub fn ell_values(&self) -> Vec<Option<f64>> {
        if self.topology == TopologyKind::Minkowski {
            vec![None]
        } else {
            self.ell.iter().copied().map(Some).collect()
        }
    }

    pub fn grid_len(&self) -> usize {
        let geo = match self.d_b {
            Some(_) => 1,
            None => self.l.len() * self.theta.len(),
        };
        self.ell_values().len() * geo * self.omega.len()
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "topology" => {
                self.topology = v.parse().map_err(|_| config_err(format!("unknown topology {v:?}")))?
            }
            "ell" => self.ell = parse_list(v, "ell")?,
            "eta" => {
                self.eta = v.parse().map_err(|_| config_err(format!("eta: cannot parse {v:?}")))?
            }
            "omega_sigma" | "omega" => self.omega = v.parse()?,
            "sigma" => self.sigma = parse_f64(v, "sigma")?,
            "eps0" => self.eps0 = parse_f64(v, "eps0")?,
            "l_sigma" | "l" => self.l = v.parse()?,
            "theta" => self.theta = v.parse()?,
            "d_a" => self.d_a = parse_pair(v, "d_a")?,
            "d_b" => {
                self.d_b = match v {
                    "" | "none" => None,
                    _ => Some(parse_pair(v, "d_b")?),
                }
            }
            "delta_z" => self.delta_z = parse_f64(v, "delta_z")?,
            "nmax" => {
                self.nmax = v.parse().map_err(|_| config_err(format!("nmax: cannot parse {v:?}")))?
            }
            "format" => self.format = v.parse()?,
            "oracle" => self.oracle = parse_bool(v)?,
            "jobs" => {
                self.jobs = match v {
                    "" | "auto" => None,
                    _ => Some(v.parse().map_err(|_| config_err(format!("jobs: cannot parse {v:?}")))?),
                }
            }
            other => return Err(config_err(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Reads a flat text file of `key = value` lines; `#` starts a comment.
    /// A `preset` key, if present, must come first.
    pub fn parse_text(text: &str, mut base: SweepConfig) -> Result<Self> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| config_err(format!("line {}: expected key = value", lineno + 1)))?;
            if k.trim() == "preset" {
                base = SweepConfig::preset(v.trim())?;
                continue;
            }
            base.set(k, v).map_err(|e| config_err(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(base)
    }

    /// The config in the same text format [`SweepConfig::parse_text`] reads.
    pub fn to_text(&self) -> String {
        let pair = |p: [f64; 2]| format!("{},{}", p[0], p[1]);
        let ell: Vec<String> = self.ell.iter().map(|v| v.to_string()).collect();
        let mut out = String::from("# lengths in units of sigma, gap as omega * sigma\n");
        let mut kv = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        kv("topology", self.topology.as_str().to_string());
        kv("ell", ell.join(","));
        kv("eta", self.eta.to_string());
        kv("omega_sigma", self.omega.to_string());
        kv("sigma", self.sigma.to_string());
        kv("eps0", self.eps0.to_string());
        kv("l_sigma", self.l.to_string());
        kv("theta", self.theta.to_string());
        kv("d_a", pair(self.d_a));
        kv("d_b", self.d_b.map(pair).unwrap_or_else(|| "none".into()));
        kv("delta_z", self.delta_z.to_string());
        kv("nmax", self.nmax.to_string());
        kv("format", self.format.to_string());
        kv("oracle", self.oracle.to_string());
        kv("jobs", self.jobs.map(|j| j.to_string()).unwrap_or_else(|| "auto".into()));
        out
    }
}

fn parse_pair(s: &str, what: &str) -> Result<[f64; 2]> {
    match parse_list(s, what)?.as_slice() {
        [x, y] => Ok([*x, *y]),
        _ => Err(config_err(format!("{what}: expected two comma-separated numbers"))),
    }
}

fn parse_bool(s: &str) -> Result<bool> {
    match s.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(config_err(format!("expected a boolean, got {s:?}"))),
    }
}
