//! Exact rational evaluation of the closed forms.
//!
//! Identities that the floating path can only confirm to 1e−12 (det A = 0
//! on the constraint α = 2 − pγ, equality of σ₂ with the principal-minor
//! sum, the completed-square identity for δ) hold here with `==`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use super::forms;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot read '{0}' as an exact rational")]
pub struct RationalParseError(pub String);

/// Parses `7`, `-2`, `1/3`, `0.125` or `-1.5e-2` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, RationalParseError> {
    let err = || RationalParseError(text.to_string());
    let s = text.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().map_err(|_| err())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Ok(if negative { -value } else { value })
}

/// Both routes of every closed-form identity, evaluated exactly at rational
/// (n, p, α) with γ = (2 − α)/p.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactCertificate {
    pub n: u32,
    pub p: String,
    pub alpha: String,
    pub gamma: String,
    pub det_closed: String,
    pub det_cofactor: String,
    pub sigma2_closed: String,
    pub sigma2_minors: String,
    pub delta: String,
    pub delta_completion: String,
    pub min_diag_nonnegative: bool,
    pub consistent: bool,
}

pub fn certify(n: u32, p: &BigRational, alpha: &BigRational) -> ExactCertificate {
    let two = BigRational::from_integer(BigInt::from(2));
    let gamma = (two - alpha) / p;
    let a = forms::matrix_a(n, p, alpha, &gamma);
    let det_closed = forms::det_a_closed(n, p, alpha, &gamma);
    let det_cofactor = forms::cofactor_det(&a);
    let sigma2_closed = forms::sigma2_closed(n, p, alpha);
    let sigma2_minors = forms::principal_minor_sum(&a);
    let delta = forms::delta_closed(n, p, alpha);
    let delta_completion = forms::delta_from_completion(n, p, alpha);
    let consistent = det_closed.is_zero()
        && det_cofactor.is_zero()
        && sigma2_closed == sigma2_minors
        && delta == delta_completion;
    ExactCertificate {
        n,
        p: p.to_string(),
        alpha: alpha.to_string(),
        gamma: gamma.to_string(),
        det_closed: det_closed.to_string(),
        det_cofactor: det_cofactor.to_string(),
        sigma2_closed: sigma2_closed.to_string(),
        sigma2_minors: sigma2_minors.to_string(),
        delta: delta.to_string(),
        delta_completion: delta_completion.to_string(),
        min_diag_nonnegative: (0..3).all(|i| !a[i][i].is_negative()),
        consistent,
    }
}
