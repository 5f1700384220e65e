use serde::Serialize;

use super::VerifyError;
use crate::param_engine::LiYauParameters;
use crate::pde_solver::stencil::{axis_derivatives, gradient_squared, radial_derivatives};
use crate::pde_solver::{rhs, GridMode, SolutionSnapshot};

/// φ is only evaluated where u exceeds this.
pub const PHI_MASK: f64 = 1e-8;

/// Q = u·u_t − C1|∇u|² − C2u^{p+1} at every node of one snapshot.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QField {
    pub t: f64,
    pub values: Vec<f64>,
    pub min_q: f64,
    /// max u^{p+1} over the snapshot.
    pub normalizer: f64,
}

impl QField {
    /// ε = max(0, −min Q)/max u^{p+1}; zero on the zero field.
    pub fn normalized_defect(&self) -> f64 {
        if self.normalizer > 0.0 {
            (-self.min_q).max(0.0) / self.normalizer
        } else {
            0.0
        }
    }
}

pub(crate) fn check_exponent(s: &SolutionSnapshot, params: &LiYauParameters) -> Result<(), VerifyError> {
    if (s.p - params.spec.p).abs() > 1e-12 * params.spec.p {
        return Err(VerifyError::ExponentMismatch { snapshot: s.p, params: params.spec.p });
    }
    Ok(())
}

/// u_t taken as the discrete right-hand side Δ_h u + u^p.
pub fn time_derivative(s: &SolutionSnapshot) -> Vec<f64> {
    rhs(&s.grid, s.p, &s.field)
}

pub fn q_field(s: &SolutionSnapshot, params: &LiYauParameters) -> Result<QField, VerifyError> {
    check_exponent(s, params)?;
    let ut = time_derivative(s);
    let w1 = gradient_squared(&s.grid, &s.field);
    let p = s.p;
    let values: Vec<f64> = s
        .field
        .iter()
        .zip(&ut)
        .zip(&w1)
        .map(|((&u, &ut), &w1)| u * ut - params.c1 * w1 - params.c2 * u.powf(p + 1.0))
        .collect();
    let min_q = values.iter().copied().fold(f64::INFINITY, f64::min);
    let normalizer = s.field.iter().map(|u| u.powf(p + 1.0)).fold(0.0, f64::max);
    Ok(QField { t: s.t, values, min_q, normalizer })
}

/// φ = |∇u|²/u² − α u_t/u + γ u^{p−1}, `None` where u ≤ [`PHI_MASK`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiField {
    pub t: f64,
    pub values: Vec<Option<f64>>,
    pub masked: usize,
}

impl PhiField {
    pub fn max(&self) -> Option<f64> {
        self.values.iter().flatten().copied().reduce(f64::max)
    }
}

pub fn phi_field(s: &SolutionSnapshot, params: &LiYauParameters) -> Result<PhiField, VerifyError> {
    Ok(phi_with_scale(s, params)?.0)
}

/// φ together with the sum of the absolute values of its three terms per node.
fn phi_with_scale(s: &SolutionSnapshot, params: &LiYauParameters) -> Result<(PhiField, Vec<f64>), VerifyError> {
    check_exponent(s, params)?;
    let ut = time_derivative(s);
    let w1 = gradient_squared(&s.grid, &s.field);
    let mut masked = 0;
    let mut scale = vec![0.0; s.field.len()];
    let values: Vec<Option<f64>> = s
        .field
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            if u <= PHI_MASK {
                masked += 1;
                return None;
            }
            let terms = [w1[i] / (u * u), -params.alpha * ut[i] / u, params.gamma * u.powf(s.p - 1.0)];
            scale[i] = terms.iter().map(|t| t.abs()).sum();
            Some(terms.iter().sum())
        })
        .collect();
    if masked == values.len() {
        return Err(VerifyError::FullyMasked { t: s.t });
    }
    Ok((PhiField { t: s.t, values, masked }, scale))
}

/// Largest |φ + αQ/u²| over unmasked nodes, relative to the size of φ's terms.
pub fn phi_q_relation_error(s: &SolutionSnapshot, params: &LiYauParameters) -> Result<f64, VerifyError> {
    let q = q_field(s, params)?;
    let (phi, scale) = match phi_with_scale(s, params) {
        Ok(v) => v,
        Err(VerifyError::FullyMasked { .. }) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    let mut worst: f64 = 0.0;
    for (i, v) in phi.values.iter().enumerate() {
        if let Some(phi) = v {
            let u = s.field[i];
            let from_q = -params.alpha * q.values[i] / (u * u);
            let denom = scale[i].max(f64::MIN_POSITIVE);
            worst = worst.max((phi - from_q).abs() / denom);
        }
    }
    Ok(worst)
}

/// Pointwise jets of a radial or one-dimensional snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct Jets {
    pub u: Vec<f64>,
    pub ut: Vec<f64>,
    /// |∇u|²
    pub w1: Vec<f64>,
    /// u_ij u_i u_j
    pub w2: Vec<f64>,
    /// |∇²u|²
    pub w3: Vec<f64>,
    /// Δu
    pub w4: Vec<f64>,
    /// 1/n for the jets' dimension (1 on a line).
    pub nu: f64,
}

pub fn profile_jets(s: &SolutionSnapshot) -> Result<Jets, VerifyError> {
    let g = &s.grid;
    let u = &s.field;
    let ut = time_derivative(s);
    let lap = crate::pde_solver::discrete_laplacian(g, u);
    let (d1, d2, n) = match g.mode {
        GridMode::Radial => {
            let (d1, d2) = radial_derivatives(g, u);
            (d1, d2, g.dims_effective() as f64)
        }
        GridMode::PeriodicBox if g.dims == 1 => {
            let (d1, d2) = axis_derivatives(g, u, 0);
            (d1, d2, 1.0)
        }
        GridMode::PeriodicBox => return Err(VerifyError::UnsupportedGrid(format!("{}-D box", g.dims))),
    };
    let h = g.spacing();
    let w3 = (0..u.len())
        .map(|i| {
            if !g.is_radial() {
                return d2[i] * d2[i];
            }
            // angular Hessian eigenvalue u_r/r, with limit u_rr at the origin
            let ang = if i == 0 { d2[0] } else { d1[i] / (i as f64 * h) };
            d2[i] * d2[i] + (n - 1.0) * ang * ang
        })
        .collect();
    Ok(Jets {
        u: u.clone(),
        ut,
        w1: d1.iter().map(|d| d * d).collect(),
        w2: d1.iter().zip(&d2).map(|(a, b)| b * a * a).collect(),
        w3,
        w4: lap,
        nu: 1.0 / n,
    })
}
