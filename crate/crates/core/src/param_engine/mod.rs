//! Admissible parameters for the Li-Yau-type estimate.
//!
//! Everything here is a closed form in the dimension `n` and exponent `p`:
//! the critical exponent, the feasible α-interval, the quadratic-form matrix
//! `A` at β = −2 together with its determinant, σ₂ and eigenvalues, and the
//! resulting constants `C1 = 1/α`, `C2 = γ/α` and the decay constant `C3`.

pub mod exact;
pub mod forms;
mod matrix;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use matrix::SymMatrix3;

/// Inward margin applied when a policy would land on an open-interval endpoint.
pub const CLAMP_MARGIN: f64 = 1e-3;

/// Floating tolerance for closed-form versus numeric routes.
pub const FLOAT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("dimension n = {n} is not supported (need n >= {min})")]
    InvalidDimension { n: u32, min: u32 },
    #[error("exponent p = {p} must be a finite number greater than 1")]
    InvalidExponent { p: f64 },
    #[error("infeasible exponent p = {p} for n = {n}: need 1 < p < p_c(n) = {critical:.6}")]
    InfeasibleExponent { n: u32, p: f64, critical: f64 },
    #[error("alpha interval for n = {n}, p = {p} is empty after clipping to (1, 2)")]
    EmptyInterval { n: u32, p: f64 },
    #[error("alpha = {alpha} lies outside the feasible interval ({lo}, {hi})")]
    AlphaOutsideInterval { alpha: f64, lo: f64, hi: f64 },
    #[error("delta = {delta} is not positive at alpha = {alpha}")]
    NonPositiveDelta { alpha: f64, delta: f64 },
    #[error("unknown selection policy '{0}' (expected max_delta, max_c2 or midpoint)")]
    UnknownPolicy(String),
}

/// Dimension and exponent of one equation instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub n: u32,
    pub p: f64,
}

impl ProblemSpec {
    /// Validates `n >= 3` and `p > 1`; subcriticality is checked where parameters are derived.
    pub fn new(n: u32, p: f64) -> Result<Self, ParamError> {
        if n < 3 {
            return Err(ParamError::InvalidDimension { n, min: 3 });
        }
        if !p.is_finite() || p <= 1.0 {
            return Err(ParamError::InvalidExponent { p });
        }
        Ok(Self { n, p })
    }

    pub fn critical_exponent(&self) -> f64 {
        // n >= 3 is guaranteed by construction
        critical_exponent(self.n).expect("validated dimension")
    }

    pub fn is_subcritical(&self) -> bool {
        self.p < self.critical_exponent() && discriminant(self) > 0.0
    }
}

/// p_c(n) = (n + 2 + √(n² + 8n)) / (2(n − 1)).
pub fn critical_exponent(n: u32) -> Result<f64, ParamError> {
    if n < 2 {
        return Err(ParamError::InvalidDimension { n, min: 2 });
    }
    let n = n as f64;
    Ok((n + 2.0 + (n * n + 8.0 * n).sqrt()) / (2.0 * (n - 1.0)))
}

/// `((n+4)/n, p_c(n), (n+3)/(n−1), (n+2)/(n−2))`, checked to be strictly increasing.
pub fn exponent_chain(n: u32) -> Result<[f64; 4], ParamError> {
    if n < 3 {
        return Err(ParamError::InvalidDimension { n, min: 3 });
    }
    let nf = n as f64;
    let chain = [
        (nf + 4.0) / nf,
        critical_exponent(n)?,
        (nf + 3.0) / (nf - 1.0),
        (nf + 2.0) / (nf - 2.0),
    ];
    assert!(
        chain.windows(2).all(|w| w[0] < w[1]),
        "exponent chain not strictly increasing for n = {n}: {chain:?}"
    );
    Ok(chain)
}

/// Δ = (p+1)²/(n²p²) − (p−1)/(np).
pub fn discriminant(spec: &ProblemSpec) -> f64 {
    forms::discriminant(spec.n, &spec.p)
}

/// κ(p) = (p−1)^(−1/(p−1)).
pub fn kappa(p: f64) -> Result<f64, ParamError> {
    if !p.is_finite() || p <= 1.0 {
        return Err(ParamError::InvalidExponent { p });
    }
    Ok((p - 1.0).powf(-1.0 / (p - 1.0)))
}

/// The open α-interval, before and after clipping to (1, 2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeasibleInterval {
    pub lo: f64,
    pub hi: f64,
    pub empty: bool,
    pub raw_lo: f64,
    pub raw_hi: f64,
    pub discriminant: f64,
}

impl FeasibleInterval {
    pub fn contains(&self, alpha: f64) -> bool {
        !self.empty && self.lo < alpha && alpha < self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Centre of the raw root pair, where δ(α) peaks.
    pub fn vertex(&self) -> f64 {
        0.5 * (self.raw_lo + self.raw_hi)
    }
}

/// Roots c ± w of σ₂(α) = 0 intersected with (1, 2).
pub fn alpha_interval(spec: &ProblemSpec) -> Result<FeasibleInterval, ParamError> {
    let disc = discriminant(spec);
    // exactly at p_c the rounded discriminant can land on either side of zero
    if disc <= FLOAT_TOL || spec.p >= spec.critical_exponent() {
        return Err(ParamError::InfeasibleExponent {
            n: spec.n,
            p: spec.p,
            critical: spec.critical_exponent(),
        });
    }
    let (n, p) = (spec.n as f64, spec.p);
    let centre = 4.0 * (p + 1.0) / (n * p * (p - 1.0));
    let half_width = 4.0 * disc.sqrt() / (p - 1.0);
    let raw_lo = centre - half_width;
    let raw_hi = centre + half_width;
    let lo = raw_lo.max(1.0);
    let hi = raw_hi.min(2.0);
    Ok(FeasibleInterval { lo, hi, empty: lo >= hi, raw_lo, raw_hi, discriminant: disc })
}

/// How α is picked inside the feasible interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// Vertex of the δ parabola, clamped inward.
    #[default]
    MaxDelta,
    /// Lower endpoint plus the clamp margin; largest C2 and hence smallest C3.
    MaxC2,
    /// Midpoint of the clipped interval.
    Midpoint,
}

impl FromStr for Policy {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max_delta" => Ok(Policy::MaxDelta),
            "max_c2" => Ok(Policy::MaxC2),
            "midpoint" => Ok(Policy::Midpoint),
            other => Err(ParamError::UnknownPolicy(other.to_string())),
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Policy::MaxDelta => "max_delta",
            Policy::MaxC2 => "max_c2",
            Policy::Midpoint => "midpoint",
        })
    }
}

/// The tuple (α, β, γ, λ, δ, C1, C2, C3) realizing the estimate for one spec.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiYauParameters {
    pub spec: ProblemSpec,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub delta: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl LiYauParameters {
    /// Derives every constant from a chosen α, which must lie strictly inside the
    /// feasible interval.
    pub fn from_alpha(spec: &ProblemSpec, alpha: f64) -> Result<Self, ParamError> {
        let interval = alpha_interval(spec)?;
        if interval.empty {
            return Err(ParamError::EmptyInterval { n: spec.n, p: spec.p });
        }
        if !interval.contains(alpha) {
            return Err(ParamError::AlphaOutsideInterval { alpha, lo: interval.lo, hi: interval.hi });
        }
        let p = spec.p;
        let beta = -2.0;
        let gamma = (2.0 - alpha) / p;
        let delta = forms::delta_closed(spec.n, &p, &alpha);
        if delta <= 0.0 {
            return Err(ParamError::NonPositiveDelta { alpha, delta });
        }
        let c1 = 1.0 / alpha;
        let c2 = gamma / alpha;
        Ok(Self {
            spec: *spec,
            alpha,
            beta,
            gamma,
            lambda: -2.0 * (beta + 1.0),
            delta,
            c1,
            c2,
            c3: decay_constant(p, c2),
        })
    }

    /// Lists every violated structural invariant; empty when the tuple is consistent.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let p = self.spec.p;
        let mut check = |ok: bool, what: &str| {
            if !ok {
                out.push(what.to_string());
            }
        };
        check(self.alpha > 1.0 && self.alpha < 2.0, "alpha in (1, 2)");
        check(self.beta == -2.0, "beta = -2");
        check((self.gamma - (2.0 - self.alpha) / p).abs() <= FLOAT_TOL, "gamma = (2 - alpha)/p");
        check(self.gamma > 0.0, "gamma > 0");
        check(self.lambda == -2.0 * (self.beta + 1.0), "lambda = -2(beta + 1)");
        check((self.c1 - 1.0 / self.alpha).abs() <= FLOAT_TOL, "c1 = 1/alpha");
        check((self.c2 - self.gamma / self.alpha).abs() <= FLOAT_TOL, "c2 = gamma/alpha");
        check(self.c2 > 0.0 && self.c2 < 1.0 / p, "0 < c2 < 1/p");
        let delta = forms::delta_closed(self.spec.n, &p, &self.alpha);
        check((self.delta - delta).abs() <= FLOAT_TOL * delta.abs().max(1.0), "delta = (n/4) sigma2");
        check(self.delta > 0.0, "delta > 0");
        let c3 = decay_constant(p, self.c2);
        // both overflow to +inf as p → 1
        check(self.c3 == c3 || (self.c3 - c3).abs() <= FLOAT_TOL * c3.max(1.0), "c3 = ((p-1) c2)^(-1/(p-1))");
        let ln_c3 = -((p - 1.0) * self.c2).ln() / (p - 1.0);
        let ln_kappa = -(p - 1.0).ln() / (p - 1.0);
        check(ln_c3 >= ln_kappa - FLOAT_TOL * ln_kappa.abs().max(1.0), "c3 >= kappa(p)");
        out
    }
}

/// C3 = ((p−1)·C2)^(−1/(p−1)), the constant produced by integrating u_t ≥ C2 u^p in time.
pub fn decay_constant(p: f64, c2: f64) -> f64 {
    ((p - 1.0) * c2).powf(-1.0 / (p - 1.0))
}

/// Outcome of [`select_params`]: the parameters plus how α was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Selection {
    pub params: LiYauParameters,
    pub interval: FeasibleInterval,
    pub policy: Policy,
    /// True when the policy's target was moved inward by [`CLAMP_MARGIN`].
    pub clamped: bool,
}

pub fn select_params(spec: &ProblemSpec, policy: Policy) -> Result<Selection, ParamError> {
    let interval = alpha_interval(spec)?;
    if interval.empty {
        return Err(ParamError::EmptyInterval { n: spec.n, p: spec.p });
    }
    let lower = interval.lo + CLAMP_MARGIN;
    let upper = interval.hi - CLAMP_MARGIN;
    let (alpha, clamped) = match policy {
        Policy::Midpoint => (interval.midpoint(), false),
        _ if lower >= upper => (interval.midpoint(), true),
        Policy::MaxDelta => {
            let target = interval.vertex();
            let alpha = target.clamp(lower, upper);
            (alpha, alpha != target)
        }
        Policy::MaxC2 => (lower, true),
    };
    let params = LiYauParameters::from_alpha(spec, alpha)?;
    Ok(Selection { params, interval, policy, clamped })
}

/// Quadratic-form matrix A at β = −2.
pub fn build_matrix_a(spec: &ProblemSpec, alpha: f64, gamma: f64) -> SymMatrix3 {
    SymMatrix3::from_upper(&forms::matrix_a(spec.n, &spec.p, &alpha, &gamma))
}

/// det(A) = −(2/n)·[(p−1)(α + pγ − 2)/2]².
pub fn det_a_closed(spec: &ProblemSpec, alpha: f64, gamma: f64) -> f64 {
    forms::det_a_closed(spec.n, &spec.p, &alpha, &gamma)
}

/// σ₂(A) along the constraint γ = (2 − α)/p.
pub fn sigma2(spec: &ProblemSpec, alpha: f64) -> f64 {
    forms::sigma2_closed(spec.n, &spec.p, &alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Completion {
    pub delta: f64,
    /// Coefficient of u^p inside the completed square.
    pub a_coef: f64,
    /// |δ − (A₂₂ − (2/n)·a²)|.
    pub residual: f64,
}

pub fn delta_and_completion(spec: &ProblemSpec, alpha: f64) -> Result<Completion, ParamError> {
    let delta = forms::delta_closed(spec.n, &spec.p, &alpha);
    if delta <= 0.0 {
        return Err(ParamError::NonPositiveDelta { alpha, delta });
    }
    let a_coef = forms::completion_coefficient(spec.n, &spec.p, &alpha);
    let gamma = (2.0 - alpha) / spec.p;
    let a22 = build_matrix_a(spec, alpha, gamma).entry(1, 1);
    let residual = (delta - (a22 - 2.0 / spec.n as f64 * a_coef * a_coef)).abs();
    Ok(Completion { delta, a_coef, residual })
}

/// Full diagnostic record for one (n, p, policy) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParameterAnalysis {
    pub n: u32,
    pub p: f64,
    pub critical_exponent: f64,
    pub feasible: bool,
    pub policy: Policy,
    pub interval: Option<FeasibleInterval>,
    pub selection: Option<Selection>,
    pub matrix: Option<Entries3>,
    pub eigenvalues: Option<[f64; 3]>,
    pub min_eigenvalue: Option<f64>,
    pub det_closed: Option<f64>,
    pub det_numeric: Option<f64>,
    pub sigma2_closed: Option<f64>,
    pub sigma2_minors: Option<f64>,
    pub completion: Option<Completion>,
    pub error: Option<String>,
}

pub type Entries3 = forms::Entries<f64>;

/// Runs the whole engine for one cell; infeasibility is recorded rather than raised.
pub fn analyze(spec: &ProblemSpec, policy: Policy) -> ParameterAnalysis {
    let mut out = ParameterAnalysis {
        n: spec.n,
        p: spec.p,
        critical_exponent: spec.critical_exponent(),
        feasible: false,
        policy,
        interval: alpha_interval(spec).ok(),
        selection: None,
        matrix: None,
        eigenvalues: None,
        min_eigenvalue: None,
        det_closed: None,
        det_numeric: None,
        sigma2_closed: None,
        sigma2_minors: None,
        completion: None,
        error: None,
    };
    let selection = match select_params(spec, policy) {
        Ok(s) => s,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    let params = selection.params;
    let a = build_matrix_a(spec, params.alpha, params.gamma);
    let eig = a.eigenvalues();
    out.feasible = true;
    out.selection = Some(selection);
    out.matrix = Some(a.to_array());
    out.eigenvalues = Some(eig);
    out.min_eigenvalue = Some(eig[0]);
    out.det_closed = Some(det_a_closed(spec, params.alpha, params.gamma));
    out.det_numeric = Some(a.determinant());
    out.sigma2_closed = Some(sigma2(spec, params.alpha));
    out.sigma2_minors = Some(a.sigma2());
    match delta_and_completion(spec, params.alpha) {
        Ok(c) => out.completion = Some(c),
        Err(e) => {
            out.feasible = false;
            out.error = Some(e.to_string());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u32, p: f64) -> ProblemSpec {
        ProblemSpec::new(n, p).unwrap()
    }

    #[test]
    fn critical_exponent_values() {
        assert!((critical_exponent(3).unwrap() - 2.686141).abs() < 1e-6);
        assert!((critical_exponent(5).unwrap() - 1.882782).abs() < 1e-6);
        assert!(critical_exponent(1).is_err());
        assert!(critical_exponent(2).is_ok());
    }

    #[test]
    fn critical_exponent_is_root() {
        for n in 3..=50 {
            let pc = critical_exponent(n).unwrap();
            let r = forms::critical_quadratic(n, &pc);
            assert!(r.abs() < 1e-10, "n = {n}: residual {r}");
        }
    }

    #[test]
    fn exponent_chain_reference_values() {
        let c = exponent_chain(3).unwrap();
        let want = [7.0 / 3.0, 2.686141, 3.0, 5.0];
        for (got, want) in c.iter().zip(want) {
            assert!((got - want).abs() < 1e-4);
        }
        let c = exponent_chain(4).unwrap();
        let want = [2.0, 2.154701, 7.0 / 3.0, 3.0];
        for (got, want) in c.iter().zip(want) {
            assert!((got - want).abs() < 1e-4);
        }
        assert!(exponent_chain(2).is_err());
    }

    #[test]
    fn discriminant_values() {
        assert!((discriminant(&spec(3, 2.0)) - 1.0 / 12.0).abs() < 1e-15);
        assert!((discriminant(&spec(5, 1.5)) - 0.044444).abs() < 1e-6);
        let pc = critical_exponent(3).unwrap();
        assert!(discriminant(&spec(3, pc)).abs() < 1e-10);
    }

    #[test]
    fn interval_values() {
        let i = alpha_interval(&spec(3, 2.0)).unwrap();
        assert!((i.raw_lo - 0.845299).abs() < 1e-6 && (i.raw_hi - 3.154701).abs() < 1e-6);
        assert_eq!((i.lo, i.hi, i.empty), (1.0, 2.0, false));
        let i = alpha_interval(&spec(5, 1.5)).unwrap();
        assert!((i.raw_lo - 0.980119).abs() < 1e-6 && (i.raw_hi - 4.353215).abs() < 1e-6);
        assert_eq!((i.lo, i.hi), (1.0, 2.0));
    }

    #[test]
    fn interval_rejects_critical_and_supercritical() {
        let pc = critical_exponent(3).unwrap();
        assert!(matches!(
            alpha_interval(&spec(3, pc)),
            Err(ParamError::InfeasibleExponent { .. })
        ));
        let err = alpha_interval(&spec(3, 2.7)).unwrap_err();
        assert!(err.to_string().contains("2.686141"), "{err}");
    }

    #[test]
    fn midpoint_reference_parameters() {
        let s = select_params(&spec(3, 2.0), Policy::Midpoint).unwrap();
        let p = s.params;
        assert_eq!(p.alpha, 1.5);
        assert!((p.gamma - 0.25).abs() < 1e-15);
        assert!((p.c1 - 2.0 / 3.0).abs() < 1e-15);
        assert!((p.c2 - 1.0 / 6.0).abs() < 1e-15);
        assert!((p.delta - 0.40625).abs() < 1e-14);
        assert!((p.c3 - 6.0).abs() < 1e-12);
        assert_eq!(p.lambda, 2.0);
        assert!(!s.clamped);
        assert!(p.invariant_violations().is_empty());

        let p = select_params(&spec(5, 1.5), Policy::Midpoint).unwrap().params;
        assert_eq!(p.alpha, 1.5);
        assert!((p.gamma - 1.0 / 3.0).abs() < 1e-15);
        assert!((p.c2 - 2.0 / 9.0).abs() < 1e-15);
        assert!((p.delta - 0.231771).abs() < 1e-6);
        assert!((p.c3 - 81.0).abs() < 1e-9);
    }

    #[test]
    fn max_delta_is_clamped_vertex() {
        // vertex for (3, 2) is exactly 2, the clipped upper end
        let s = select_params(&spec(3, 2.0), Policy::MaxDelta).unwrap();
        assert!((s.params.alpha - (2.0 - CLAMP_MARGIN)).abs() < 1e-12);
        assert!(s.clamped);
        // vertex strictly inside: unclamped
        let s = select_params(&spec(10, 1.2), Policy::MaxDelta).unwrap();
        let v = s.interval.vertex();
        assert!((s.params.alpha - v.clamp(1.0 + CLAMP_MARGIN, 2.0 - CLAMP_MARGIN)).abs() < 1e-9);
    }

    #[test]
    fn max_c2_sits_at_lower_end() {
        let s = select_params(&spec(3, 2.0), Policy::MaxC2).unwrap();
        assert!((s.params.alpha - 1.001).abs() < 1e-12);
        let mid = select_params(&spec(3, 2.0), Policy::Midpoint).unwrap();
        assert!(s.params.c2 > mid.params.c2);
        assert!(s.params.c3 < mid.params.c3);
    }

    #[test]
    fn alpha_outside_interval_rejected() {
        assert!(matches!(
            LiYauParameters::from_alpha(&spec(3, 2.0), 2.0),
            Err(ParamError::AlphaOutsideInterval { .. })
        ));
    }

    #[test]
    fn completion_values() {
        let c = delta_and_completion(&spec(3, 2.0), 1.5).unwrap();
        assert!((c.delta - 0.40625).abs() < 1e-15);
        assert!((c.a_coef - 0.125).abs() < 1e-15);
        assert!(c.residual <= 1e-12);
        let c = delta_and_completion(&spec(5, 1.5), 1.5).unwrap();
        assert!((c.delta - 0.231771).abs() < 1e-6);
        assert!(c.residual <= 1e-12);
        // outside the root pair σ₂ < 0
        assert!(delta_and_completion(&spec(3, 2.0), 3.5).is_err());
    }

    #[test]
    fn matrix_structure_under_constraint() {
        let s = spec(4, 1.7);
        let alpha = 1.3;
        let gamma = (2.0 - alpha) / s.p;
        let a = build_matrix_a(&s, alpha, gamma);
        assert!((a.entry(1, 2) + a.entry(0, 1)).abs() < 1e-12);
        assert_eq!(a.entry(0, 2), -a.entry(0, 0));
        assert_eq!(a.entry(0, 0), a.entry(2, 2));
    }

    #[test]
    fn sigma2_vanishes_at_roots() {
        let s = spec(3, 2.0);
        let i = alpha_interval(&s).unwrap();
        assert!(sigma2(&s, i.raw_lo).abs() < 1e-10);
        assert!(sigma2(&s, i.raw_hi).abs() < 1e-10);
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(2.0).unwrap(), 1.0);
        assert!((kappa(3.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((kappa(1.5).unwrap() - 4.0).abs() < 1e-12);
        assert!(kappa(1.0).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(ProblemSpec::new(2, 2.0).is_err());
        assert!(ProblemSpec::new(3, 1.0).is_err());
        assert!(ProblemSpec::new(3, f64::NAN).is_err());
    }

    #[test]
    fn policy_round_trip() {
        for p in [Policy::MaxDelta, Policy::MaxC2, Policy::Midpoint] {
            assert_eq!(p.to_string().parse::<Policy>().unwrap(), p);
        }
        assert!("best".parse::<Policy>().is_err());
    }
}
