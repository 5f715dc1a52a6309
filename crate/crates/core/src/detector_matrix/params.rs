use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// One detector: gap `omega`, Gaussian switching width `sigma`, coupling `eps0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorParams {
    omega: f64,
    sigma: f64,
    eps0: f64,
}

impl DetectorParams {
    pub fn new(omega: f64, sigma: f64, eps0: f64) -> Result<Self> {
        if !omega.is_finite() {
            return Err(invalid(format!("omega must be finite, got {omega}")));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(invalid(format!("sigma must be positive, got {sigma}")));
        }
        if !(eps0.is_finite() && eps0 > 0.0) {
            return Err(invalid(format!("eps0 must be positive, got {eps0}")));
        }
        Ok(DetectorParams { omega, sigma, eps0 })
    }

    /// Unit switching width and the default coupling 0.01.
    pub fn with_gap(omega_sigma: f64) -> Result<Self> {
        Self::new(omega_sigma, 1.0, 0.01)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    /// Dimensionless gap `omega * sigma`.
    pub fn omega_sigma(&self) -> f64 {
        self.omega * self.sigma
    }
}
