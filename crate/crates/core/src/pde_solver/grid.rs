use serde::{Deserialize, Serialize};

use super::SolverError;

pub const MIN_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridMode {
    PeriodicBox,
    Radial,
}

/// Discretization of either a periodic box [0, L)^dims or a radial profile on [0, L].
///
/// Box mode has `points_per_axis` nodes per axis at x = i·h. Radial mode has
/// `points_per_axis + 1` nodes r = i·h including both endpoints, so that the
/// origin and the outer Neumann boundary are grid nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub mode: GridMode,
    pub dims: u32,
    pub points_per_axis: usize,
    pub length: f64,
    /// Dimension carried by the (n−1)/r drift; `None` in box mode.
    pub n_effective: Option<u32>,
}

impl GridSpec {
    pub fn periodic_box(dims: u32, points_per_axis: usize, length: f64) -> Result<Self, SolverError> {
        let g = Self { mode: GridMode::PeriodicBox, dims, points_per_axis, length, n_effective: None };
        g.validate()?;
        Ok(g)
    }

    pub fn radial(n_effective: u32, points_per_axis: usize, length: f64) -> Result<Self, SolverError> {
        let g = Self { mode: GridMode::Radial, dims: 1, points_per_axis, length, n_effective: Some(n_effective) };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |why: String| Err(SolverError::InvalidGrid(why));
        if self.points_per_axis < MIN_POINTS {
            return bad(format!("points_per_axis = {} < {MIN_POINTS}", self.points_per_axis));
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return bad(format!("length = {} must be positive", self.length));
        }
        match self.mode {
            GridMode::PeriodicBox => {
                if !(1..=3).contains(&self.dims) {
                    return bad(format!("box dims = {} outside 1..=3", self.dims));
                }
                if self.n_effective.is_some() {
                    return bad("n_effective is only meaningful in radial mode".into());
                }
            }
            GridMode::Radial => {
                if self.dims != 1 {
                    return bad(format!("radial grids have dims = 1, got {}", self.dims));
                }
                match self.n_effective {
                    Some(n) if n >= 3 => {}
                    other => return bad(format!("radial mode requires n_effective >= 3, got {other:?}")),
                }
            }
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.points_per_axis as f64
    }

    pub fn node_count(&self) -> usize {
        match self.mode {
            GridMode::PeriodicBox => self.points_per_axis.pow(self.dims),
            GridMode::Radial => self.points_per_axis + 1,
        }
    }

    /// `dims` in box mode and `n_effective` in radial mode.
    pub fn dims_effective(&self) -> u32 {
        match self.mode {
            GridMode::PeriodicBox => self.dims,
            GridMode::Radial => self.n_effective.unwrap_or(3),
        }
    }

    pub fn is_radial(&self) -> bool {
        self.mode == GridMode::Radial
    }

    /// Radius of node `i` (radial mode).
    pub fn radius(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }

    /// Axis indices of a flattened box node, first axis fastest.
    pub fn multi_index(&self, flat: usize) -> [usize; 3] {
        let n = self.points_per_axis;
        let mut idx = [0; 3];
        let mut rest = flat;
        for slot in idx.iter_mut().take(self.dims as usize) {
            *slot = rest % n;
            rest /= n;
        }
        idx
    }

    pub fn flat_index(&self, idx: [usize; 3]) -> usize {
        let n = self.points_per_axis;
        (0..self.dims as usize).rev().fold(0, |acc, a| acc * n + idx[a])
    }

    /// Axis stride of the flattened layout.
    pub fn stride(&self, axis: usize) -> usize {
        self.points_per_axis.pow(axis as u32)
    }

    /// Physical coordinates of a node: x-vector in box mode, `[r, 0, 0]` in radial mode.
    pub fn coordinates(&self, flat: usize) -> [f64; 3] {
        let h = self.spacing();
        match self.mode {
            GridMode::Radial => [flat as f64 * h, 0.0, 0.0],
            GridMode::PeriodicBox => {
                let idx = self.multi_index(flat);
                let mut x = [0.0; 3];
                for a in 0..self.dims as usize {
                    x[a] = idx[a] as f64 * h;
                }
                x
            }
        }
    }

    /// Distance from the box centre (box mode) or r itself (radial mode).
    pub fn centre_distance(&self, flat: usize) -> f64 {
        let x = self.coordinates(flat);
        match self.mode {
            GridMode::Radial => x[0],
            GridMode::PeriodicBox => {
                let c = self.length / 2.0;
                (0..self.dims as usize).map(|a| (x[a] - c).powi(2)).sum::<f64>().sqrt()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(GridSpec::periodic_box(4, 16, 1.0).is_err());
        assert!(GridSpec::periodic_box(2, 7, 1.0).is_err());
        assert!(GridSpec::periodic_box(2, 8, 0.0).is_err());
        assert!(GridSpec::radial(2, 16, 1.0).is_err());
        assert!(GridSpec::radial(3, 16, 1.0).is_ok());
    }

    #[test]
    fn counts_and_spacing() {
        let g = GridSpec::periodic_box(3, 8, 2.0).unwrap();
        assert_eq!(g.node_count(), 512);
        assert_eq!(g.spacing(), 0.25);
        let r = GridSpec::radial(5, 10, 5.0).unwrap();
        assert_eq!(r.node_count(), 11);
        assert_eq!(r.radius(10), 5.0);
        assert_eq!(r.dims_effective(), 5);
    }

    #[test]
    fn index_round_trip() {
        let g = GridSpec::periodic_box(3, 9, 1.0).unwrap();
        for flat in [0, 1, 8, 9, 80, 81, 728] {
            assert_eq!(g.flat_index(g.multi_index(flat)), flat);
        }
        assert_eq!(g.multi_index(g.stride(2)), [0, 0, 1]);
    }
}
