//! The operator (∂_t − Δ − λ (u_i/u) ∂_i) on polynomials of the shape of φ.
//!
//! Supported input terms are `c · u^e · X` with `X ∈ {1, u_t, |∇u|²}`. For
//! such a factor the engine needs, besides ∂_t X and ΔX, only the pairing
//! ∇u·∇X, which closes on the jet scalars:
//!
//! | X      | ∂_t X | ΔX                         | ∇u·∇X |
//! |--------|-------|----------------------------|-------|
//! | u_t    | UTT   | UTT − p u^{p−1} UT         | W5    |
//! | \|∇u\|²| 2 W5  | 2 W3 + 2 W5 − 2p u^{p−1} W1| 2 W2  |
//!
//! Third derivatives are eliminated through the time- and space-differentiated
//! equation, and Δu → u_t − u^p is applied as the final pass.

use num_rational::BigRational;

use super::coef::{CoefPoly, Symbol};
use super::poly::{JetMonomial, JetPoly, JetScalar, UExp};
use super::JetError;

/// Which non-u factor a supported monomial carries.
#[derive(Clone, Copy)]
enum Factor {
    One,
    Ut,
    GradSq,
}

fn classify(m: &JetMonomial) -> Result<Factor, JetError> {
    let mut it = m.powers.iter();
    match (it.next(), it.next()) {
        (None, _) => Ok(Factor::One),
        (Some((JetScalar::UT, 1)), None) => Ok(Factor::Ut),
        (Some((JetScalar::W1, 1)), None) => Ok(Factor::GradSq),
        _ => Err(JetError::UnsupportedShape(m.to_string())),
    }
}

fn term(c: CoefPoly, e: UExp, scalars: &[(JetScalar, u32)]) -> JetPoly {
    JetPoly::monomial(c, e, scalars)
}

fn p_coef() -> CoefPoly {
    CoefPoly::symbol(Symbol::P)
}

/// `u^{p−1}` as an exponent offset relative to `e`.
fn times_up_minus_one(e: &UExp) -> UExp {
    e.shifted(-1, 1)
}

/// ∂_t X as a polynomial (multiplied into u^e).
fn dt_factor(f: Factor, e: &UExp) -> JetPoly {
    match f {
        Factor::One => JetPoly::zero(),
        Factor::Ut => term(CoefPoly::one(), e.clone(), &[(JetScalar::UTT, 1)]),
        Factor::GradSq => term(CoefPoly::int(2), e.clone(), &[(JetScalar::W5, 1)]),
    }
}

/// ΔX (multiplied into u^e), third derivatives already eliminated.
fn laplacian_factor(f: Factor, e: &UExp) -> JetPoly {
    let minus_p = -&p_coef();
    match f {
        Factor::One => JetPoly::zero(),
        Factor::Ut => {
            &term(CoefPoly::one(), e.clone(), &[(JetScalar::UTT, 1)])
                + &term(minus_p, times_up_minus_one(e), &[(JetScalar::UT, 1)])
        }
        Factor::GradSq => {
            &(&term(CoefPoly::int(2), e.clone(), &[(JetScalar::W3, 1)])
                + &term(CoefPoly::int(2), e.clone(), &[(JetScalar::W5, 1)]))
                + &term(&minus_p * &CoefPoly::int(2), times_up_minus_one(e), &[(JetScalar::W1, 1)])
        }
    }
}

/// ∇u·∇X (multiplied into u^e).
fn pairing(f: Factor, e: &UExp) -> JetPoly {
    match f {
        Factor::One => JetPoly::zero(),
        Factor::Ut => term(CoefPoly::one(), e.clone(), &[(JetScalar::W5, 1)]),
        Factor::GradSq => term(CoefPoly::int(2), e.clone(), &[(JetScalar::W2, 1)]),
    }
}

fn factor_scalars(f: Factor) -> Vec<(JetScalar, u32)> {
    match f {
        Factor::One => vec![],
        Factor::Ut => vec![(JetScalar::UT, 1)],
        Factor::GradSq => vec![(JetScalar::W1, 1)],
    }
}

/// Applies the operator before the final Δu substitution.
pub fn apply_heat_operator_raw(f: &JetPoly, lambda: &BigRational) -> Result<JetPoly, JetError> {
    let lambda = CoefPoly::constant(lambda.clone());
    let mut out = JetPoly::zero();
    for m in f.monomials() {
        let factor = classify(&m)?;
        let c = &m.coefficient;
        let e = &m.u_exponent;
        let e_coef = e.as_coef();
        let e_minus_one = e.shifted(-1, 0);
        let e_minus_two = e.shifted(-2, 0);
        let x = factor_scalars(factor);
        let with = |extra: &[(JetScalar, u32)]| -> Vec<(JetScalar, u32)> {
            x.iter().copied().chain(extra.iter().copied()).collect()
        };

        // ∂_t(u^e X) = e u^{e−1} u_t X + u^e ∂_t X
        let dt = &term(e_coef.clone(), e_minus_one.clone(), &with(&[(JetScalar::UT, 1)])) + &dt_factor(factor, e);

        // Δ(u^e X) = X (e u^{e−1} Δu + e(e−1) u^{e−2}|∇u|²) + u^e ΔX + 2e u^{e−1} ∇u·∇X
        let de = &e_coef * &(&e_coef - &CoefPoly::one());
        let lap = &(&(&term(e_coef.clone(), e_minus_one.clone(), &with(&[(JetScalar::W4, 1)]))
            + &term(de, e_minus_two.clone(), &with(&[(JetScalar::W1, 1)])))
            + &laplacian_factor(factor, e))
            + &pairing(factor, &e_minus_one).scale(&(&CoefPoly::int(2) * &e_coef));

        // (u_i/u) ∂_i(u^e X) = e u^{e−2}|∇u|² X + u^{e−1} ∇u·∇X
        let drift = &term(e_coef, e_minus_two, &with(&[(JetScalar::W1, 1)])) + &pairing(factor, &e_minus_one);

        let piece = &(&dt - &lap) - &drift.scale(&lambda);
        out = &out + &piece.scale(c);
    }
    Ok(out)
}

/// `(∂_t − Δ − λ (u_i/u) ∂_i) f` with the equation substituted for Δu.
pub fn apply_heat_operator(f: &JetPoly, lambda: &BigRational) -> Result<JetPoly, JetError> {
    let raw = apply_heat_operator_raw(f, lambda)?;
    Ok(raw.substitute_scalar(JetScalar::W4, &laplacian_by_equation()))
}

/// Δu = u_t − u^p.
pub fn laplacian_by_equation() -> JetPoly {
    &JetPoly::scalar(JetScalar::UT) - &JetPoly::u_pow(UExp::int(0, 1))
}
