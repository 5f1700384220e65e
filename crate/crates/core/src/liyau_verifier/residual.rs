use std::sync::OnceLock;

use super::fields::{check_exponent, profile_jets, Jets};
use super::VerifyError;
use crate::jet_algebra::{rhs_eq16, FloatAssignment, JetPoly, JetScalar, SymbolValues};
use crate::param_engine::LiYauParameters;
use crate::pde_solver::stencil::{discrete_laplacian, gradient_dot};
use crate::pde_solver::{SolutionSnapshot, Trajectory};

/// Nodes with u at or below this, and their neighbours, are excluded.
pub const RESIDUAL_MASK: f64 = 1e-6;

fn rhs_poly() -> &'static JetPoly {
    static POLY: OnceLock<JetPoly> = OnceLock::new();
    POLY.get_or_init(rhs_eq16)
}

struct Side {
    phi: Vec<f64>,
    /// Δφ + λ u^{-1} ∇u·∇φ
    spatial: Vec<f64>,
    rhs: Vec<f64>,
    valid: Vec<bool>,
}

fn evaluate(s: &SolutionSnapshot, params: &LiYauParameters) -> Result<Side, VerifyError> {
    let Jets { u, ut, w1, w2, w3, w4, nu } = profile_jets(s)?;
    let valid: Vec<bool> = u.iter().map(|v| *v > RESIDUAL_MASK).collect();
    let (alpha, gamma, p) = (params.alpha, params.gamma, s.p);
    let phi: Vec<f64> = (0..u.len())
        .map(|i| if valid[i] { w1[i] / (u[i] * u[i]) - alpha * ut[i] / u[i] + gamma * u[i].powf(p - 1.0) } else { 0.0 })
        .collect();
    let lap = discrete_laplacian(&s.grid, &phi);
    let dot = gradient_dot(&s.grid, &u, &phi);
    let spatial = (0..u.len()).map(|i| if valid[i] { lap[i] + params.lambda * dot[i] / u[i] } else { 0.0 }).collect();
    let symbols = SymbolValues { p, nu, alpha, gamma };
    let poly = rhs_poly();
    let rhs = (0..u.len())
        .map(|i| {
            if !valid[i] {
                return 0.0;
            }
            let mut scalars = [0.0; 7];
            scalars[JetScalar::UT.index()] = ut[i];
            scalars[JetScalar::W1.index()] = w1[i];
            scalars[JetScalar::W2.index()] = w2[i];
            scalars[JetScalar::W3.index()] = w3[i];
            scalars[JetScalar::W4.index()] = w4[i];
            poly.evaluate_f64(&FloatAssignment { u: u[i], symbols, scalars })
        })
        .collect();
    Ok(Side { phi, spatial, rhs, valid })
}

/// Max-norm gap between the two sides of the completed-square identity on the
/// last two snapshots: φ_t by their difference quotient, every other term
/// averaged over both, so the comparison is centred at the mid time.
pub fn identity_residual_numeric(traj: &Trajectory, params: &LiYauParameters) -> Result<f64, VerifyError> {
    let n = traj.snapshots.len();
    if n < 2 {
        return Err(VerifyError::InsufficientSnapshots(n));
    }
    let (s1, s2) = (&traj.snapshots[n - 2], &traj.snapshots[n - 1]);
    check_exponent(s1, params)?;
    identity_residual_between(s1, s2, params)
}

pub fn identity_residual_between(
    s1: &SolutionSnapshot,
    s2: &SolutionSnapshot,
    params: &LiYauParameters,
) -> Result<f64, VerifyError> {
    check_exponent(s2, params)?;
    let dt = s2.t - s1.t;
    if !(dt > 0.0) || s1.grid != s2.grid {
        return Err(VerifyError::InsufficientSnapshots(1));
    }
    let a = evaluate(s1, params)?;
    let b = evaluate(s2, params)?;
    let len = a.phi.len();
    let ok = |i: usize| a.valid[i] && b.valid[i];
    let radial = s1.grid.is_radial();
    let mut worst: f64 = 0.0;
    for i in 0..len {
        let neighbours_ok = if radial {
            (i == 0 || ok(i - 1)) && (i + 1 == len || ok(i + 1))
        } else {
            ok((i + len - 1) % len) && ok((i + 1) % len)
        };
        if !(ok(i) && neighbours_ok) {
            continue;
        }
        let lhs = (b.phi[i] - a.phi[i]) / dt - 0.5 * (a.spatial[i] + b.spatial[i]);
        let rhs = 0.5 * (a.rhs[i] + b.rhs[i]);
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}
