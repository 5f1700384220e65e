use serde::{Deserialize, Serialize};

use super::grid::GridSpec;
use super::SolverError;

/// Initial-data families. Bumps are centred at the origin (radial) or the box centre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum InitialData {
    Zero,
    Constant { value: f64 },
    /// amplitude · exp(−|x|²/width²).
    Gaussian { amplitude: f64, width: f64 },
    /// floor + amplitude · exp(−|x|²/width²).
    GaussianOverFloor { floor: f64, amplitude: f64, width: f64 },
}

impl InitialData {
    pub fn validate(&self) -> Result<(), SolverError> {
        let nonneg = |name: &str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(SolverError::InvalidOptions(format!("{name} = {v} must be finite and >= 0")))
            }
        };
        match *self {
            InitialData::Zero => Ok(()),
            InitialData::Constant { value } => nonneg("value", value),
            InitialData::Gaussian { amplitude, width } => {
                nonneg("amplitude", amplitude)?;
                positive_width(width)
            }
            InitialData::GaussianOverFloor { floor, amplitude, width } => {
                nonneg("floor", floor)?;
                nonneg("amplitude", amplitude)?;
                positive_width(width)
            }
        }
    }

    pub fn value_at(&self, distance: f64) -> f64 {
        match *self {
            InitialData::Zero => 0.0,
            InitialData::Constant { value } => value,
            InitialData::Gaussian { amplitude, width } => amplitude * (-(distance / width).powi(2)).exp(),
            InitialData::GaussianOverFloor { floor, amplitude, width } => {
                floor + amplitude * (-(distance / width).powi(2)).exp()
            }
        }
    }

    pub fn sample(&self, grid: &GridSpec) -> Result<Vec<f64>, SolverError> {
        self.validate()?;
        Ok((0..grid.node_count()).map(|i| self.value_at(grid.centre_distance(i))).collect())
    }

    pub fn name(&self) -> &'static str {
        match self {
            InitialData::Zero => "zero",
            InitialData::Constant { .. } => "constant",
            InitialData::Gaussian { .. } => "gaussian",
            InitialData::GaussianOverFloor { .. } => "gaussian_over_floor",
        }
    }
}

fn positive_width(w: f64) -> Result<(), SolverError> {
    if w.is_finite() && w > 0.0 {
        Ok(())
    } else {
        Err(SolverError::InvalidOptions(format!("width = {w} must be positive")))
    }
}
