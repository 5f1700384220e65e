//! Second-order central differences.

use super::grid::{GridMode, GridSpec};

/// Δ_h u. Periodic in box mode; in radial mode u_rr + (n−1)u_r/r with the
/// even reflection u(−h) = u(h) at the origin (Δu(0) = n·u_rr(0)) and a
/// homogeneous Neumann ghost at r = L.
pub fn discrete_laplacian(grid: &GridSpec, u: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; u.len()];
    laplacian_into(grid, u, &mut out);
    out
}

pub fn laplacian_into(grid: &GridSpec, u: &[f64], out: &mut [f64]) {
    debug_assert_eq!(u.len(), grid.node_count());
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    match grid.mode {
        GridMode::Radial => {
            let n = grid.dims_effective() as f64;
            let last = u.len() - 1;
            out[0] = n * 2.0 * (u[1] - u[0]) * inv_h2;
            for i in 1..last {
                let r = i as f64 * h;
                let d2 = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2;
                let d1 = (u[i + 1] - u[i - 1]) / (2.0 * h);
                out[i] = d2 + (n - 1.0) * d1 / r;
            }
            out[last] = 2.0 * (u[last - 1] - u[last]) * inv_h2;
        }
        GridMode::PeriodicBox => {
            let np = grid.points_per_axis;
            out.iter_mut().for_each(|v| *v = 0.0);
            for axis in 0..grid.dims as usize {
                let stride = grid.stride(axis);
                for (flat, o) in out.iter_mut().enumerate() {
                    let i = (flat / stride) % np;
                    let base = flat - i * stride;
                    let plus = base + ((i + 1) % np) * stride;
                    let minus = base + ((i + np - 1) % np) * stride;
                    *o += (u[plus] - 2.0 * u[flat] + u[minus]) * inv_h2;
                }
            }
        }
    }
}

/// Central first and second derivatives along one axis of a box grid.
pub fn axis_derivatives(grid: &GridSpec, u: &[f64], axis: usize) -> (Vec<f64>, Vec<f64>) {
    let h = grid.spacing();
    let np = grid.points_per_axis;
    let stride = grid.stride(axis);
    let mut d1 = vec![0.0; u.len()];
    let mut d2 = vec![0.0; u.len()];
    for flat in 0..u.len() {
        let i = (flat / stride) % np;
        let base = flat - i * stride;
        let plus = u[base + ((i + 1) % np) * stride];
        let minus = u[base + ((i + np - 1) % np) * stride];
        d1[flat] = (plus - minus) / (2.0 * h);
        d2[flat] = (plus - 2.0 * u[flat] + minus) / (h * h);
    }
    (d1, d2)
}

/// (u_r, u_rr) on a radial grid with the same ghost conventions as the Laplacian.
pub fn radial_derivatives(grid: &GridSpec, u: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let h = grid.spacing();
    let last = u.len() - 1;
    let mut d1 = vec![0.0; u.len()];
    let mut d2 = vec![0.0; u.len()];
    d2[0] = 2.0 * (u[1] - u[0]) / (h * h);
    for i in 1..last {
        d1[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
        d2[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
    }
    d2[last] = 2.0 * (u[last - 1] - u[last]) / (h * h);
    (d1, d2)
}

/// |∇_h u|² by central differences.
pub fn gradient_squared(grid: &GridSpec, u: &[f64]) -> Vec<f64> {
    match grid.mode {
        GridMode::Radial => radial_derivatives(grid, u).0.into_iter().map(|d| d * d).collect(),
        GridMode::PeriodicBox => {
            let mut out = vec![0.0; u.len()];
            for axis in 0..grid.dims as usize {
                let (d1, _) = axis_derivatives(grid, u, axis);
                out.iter_mut().zip(d1).for_each(|(o, d)| *o += d * d);
            }
            out
        }
    }
}

/// ∇_h u · ∇_h v.
pub fn gradient_dot(grid: &GridSpec, u: &[f64], v: &[f64]) -> Vec<f64> {
    match grid.mode {
        GridMode::Radial => {
            let (du, _) = radial_derivatives(grid, u);
            let (dv, _) = radial_derivatives(grid, v);
            du.iter().zip(&dv).map(|(a, b)| a * b).collect()
        }
        GridMode::PeriodicBox => {
            let mut out = vec![0.0; u.len()];
            for axis in 0..grid.dims as usize {
                let (du, _) = axis_derivatives(grid, u, axis);
                let (dv, _) = axis_derivatives(grid, v, axis);
                for ((o, a), b) in out.iter_mut().zip(du).zip(dv) {
                    *o += a * b;
                }
            }
            out
        }
    }
}
