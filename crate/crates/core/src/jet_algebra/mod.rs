//! Exact term rewriting over differential-jet scalars.
//!
//! Polynomials live in the jet scalars {u_t, u_tt, |∇u|², u_ij u_i u_j,
//! |∇²u|², Δu, u_ti u_i} times powers u^(r + s·p), with coefficients in
//! Laurent polynomials over (p, ν = 1/n, α, γ). The dimension only appears
//! through ν, so a zero normal form certifies an identity for every n at once.
//! No floating point is used anywhere on the certification path.

pub mod coef;
pub mod heat;
pub mod identities;
pub mod poly;

use thiserror::Error;

pub use coef::{CoefPoly, Symbol, SymbolValues};
pub use heat::apply_heat_operator;
pub use identities::{
    assert_default_identity_chain, assert_identity_chain, phi, rhs_eq10, rhs_eq16, rhs_eq8, CertificateReport,
    CertificateStep, StepStatus,
};
pub use poly::{Assignment, FloatAssignment, JetMonomial, JetPoly, JetScalar, Powers, UExp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("monomial outside the supported shape class (u^e times one of 1, UT, W1): {0}")]
    UnsupportedShape(String),
    #[error("negative power of {0} cannot be substituted by a non-monomial")]
    NegativePowerSubstitution(String),
    #[error("{0} raised to a negative power at zero")]
    ZeroToNegativePower(&'static str),
    #[error("exponent {0} is not an integer power of the chosen base")]
    NonIntegralExponent(String),
}
