//! The auxiliary function φ and the right-hand sides it is certified against.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::coef::{rational, CoefPoly, Symbol};
use super::heat::{apply_heat_operator, laplacian_by_equation};
use super::poly::{JetPoly, JetScalar, UExp};
use super::JetError;

fn sym(s: Symbol) -> CoefPoly {
    CoefPoly::symbol(s)
}

fn konst(c: &BigRational) -> CoefPoly {
    CoefPoly::constant(c.clone())
}

fn mono(c: CoefPoly, r: BigRational, s: i64, scalars: &[(JetScalar, u32)]) -> JetPoly {
    JetPoly::monomial(c, UExp::new(r, s), scalars)
}

fn int(k: i64) -> BigRational {
    rational(k, 1)
}

/// φ = u^β |∇u|² − α u^{β+1} u_t + γ u^{β+1+p}.
pub fn phi(beta: &BigRational) -> JetPoly {
    let b = beta.clone();
    &(&mono(CoefPoly::one(), b.clone(), 0, &[(JetScalar::W1, 1)])
        + &mono(-sym(Symbol::Alpha), &b + int(1), 0, &[(JetScalar::UT, 1)]))
        + &mono(sym(Symbol::Gamma), &b + int(1), 1, &[])
}

/// |E − L|² for E_ij = u_ij − (Δu/n)δ_ij and L_ij = u_iu_j/u − (|∇u|²/(nu))δ_ij,
/// before the Δu substitution:
/// W3 − 2 W2/u + W1²/u² − ν (W4 − W1/u)².
pub fn trace_free_square_raw() -> JetPoly {
    let w1_over_u = mono(CoefPoly::one(), int(-1), 0, &[(JetScalar::W1, 1)]);
    let trace = &JetPoly::scalar(JetScalar::W4) - &w1_over_u;
    let w3 = JetPoly::scalar(JetScalar::W3);
    let w2 = mono(CoefPoly::int(-2), int(-1), 0, &[(JetScalar::W2, 1)]);
    let w1sq = mono(CoefPoly::one(), int(-2), 0, &[(JetScalar::W1, 2)]);
    &(&(&w3 + &w2) + &w1sq) - &trace.pow(2).scale(&sym(Symbol::Nu))
}

fn with_equation(f: &JetPoly) -> JetPoly {
    f.substitute_scalar(JetScalar::W4, &laplacian_by_equation())
}

/// |E − L|² with Δu → u_t − u^p.
pub fn trace_free_square() -> JetPoly {
    with_equation(&trace_free_square_raw())
}

/// The general-λ expansion of (∂_t − Δ)φ − λ(u_i/u)∇_iφ, written term by term
/// in the grouping used to motivate the choice λ = −2(β+1).
pub fn rhs_eq8(beta: &BigRational, lambda: &BigRational) -> JetPoly {
    let b = konst(beta);
    let l = konst(lambda);
    let one = CoefPoly::one();
    let p = sym(Symbol::P);
    let alpha = sym(Symbol::Alpha);
    let gamma = sym(Symbol::Gamma);
    let bp1 = &b + &one;
    let bpp1 = &(&b + &p) + &one;
    let r = beta.clone();

    let first = &(&(&(&mono(CoefPoly::int(2), r.clone(), 0, &[(JetScalar::W3, 1)])
        + &mono(&CoefPoly::int(4) * &b, &r - int(1), 0, &[(JetScalar::W2, 1)]))
        + &mono(&b * &(&b - &one), &r - int(2), 0, &[(JetScalar::W1, 2)]))
        + &mono(-(&(&alpha * &b) * &bp1), &r - int(1), 0, &[(JetScalar::W1, 1), (JetScalar::UT, 1)]))
        + &mono(&(&gamma * &bpp1) * &(&b + &p), &r - int(1), 1, &[(JetScalar::W1, 1)]);
    let middle = &(&(&mono(&alpha * &(&(&l + &(&CoefPoly::int(2) * &b)) + &CoefPoly::int(2)), r.clone(), 0, &[(JetScalar::W5, 1)])
        + &mono(&b + &(&CoefPoly::int(2) * &p), &r - int(1), 1, &[(JetScalar::W1, 1)]))
        + &mono(-(&alpha * &bpp1), r.clone(), 1, &[(JetScalar::UT, 1)]))
        + &mono(&gamma * &bpp1, r.clone(), 2, &[]);
    let last = &(&(&mono(b.clone(), &r - int(2), 0, &[(JetScalar::W1, 2)])
        + &mono(CoefPoly::int(2), &r - int(1), 0, &[(JetScalar::W2, 1)]))
        + &mono(-(&alpha * &bp1), &r - int(1), 0, &[(JetScalar::W1, 1), (JetScalar::UT, 1)]))
        + &mono(&gamma * &bpp1, &r - int(1), 1, &[(JetScalar::W1, 1)]);
    &(&middle - &first) - &last.scale(&l)
}

/// −u^β times the bracket obtained with λ = −2(β+1): a complete square of the
/// trace-free parts plus a quadratic form in (u_t, u^p, |∇u|²/u).
pub fn rhs_eq10(beta: &BigRational) -> JetPoly {
    let b = konst(beta);
    let one = CoefPoly::one();
    let two = CoefPoly::int(2);
    let four = CoefPoly::int(4);
    let p = sym(Symbol::P);
    let nu = sym(Symbol::Nu);
    let alpha = sym(Symbol::Alpha);
    let gamma = sym(Symbol::Gamma);
    let bpp1 = &(&b + &p) + &one;
    let zero = BigRational::zero();

    let ut2 = mono(&two * &nu, zero.clone(), 0, &[(JetScalar::UT, 2)]);
    let u2p = mono(&(&two * &nu) - &(&gamma * &bpp1), zero.clone(), 2, &[]);
    let w1sq = mono(
        &(-(&b * &(&b + &CoefPoly::int(3)))) - &(&two * &(&one - &nu)),
        int(-2),
        0,
        &[(JetScalar::W1, 2)],
    );
    let w1ut = mono(
        &(-(&four * &nu)) + &(&(&alpha * &(&b + &two)) * &(&b + &one)),
        int(-1),
        0,
        &[(JetScalar::W1, 1), (JetScalar::UT, 1)],
    );
    let upw1 = mono(
        &(&(&four * &nu) + &(&(&gamma * &bpp1) * &(&(&p - &b) - &two))) - &(&b + &(&two * &p)),
        int(-1),
        1,
        &[(JetScalar::W1, 1)],
    );
    let uput = mono(&(-(&four * &nu)) + &(&alpha * &bpp1), zero, 1, &[(JetScalar::UT, 1)]);

    let bracket = &(&(&(&(&(&trace_free_square().scale(&two) + &ut2) + &u2p) + &w1sq) + &w1ut) + &upw1) + &uput;
    -(&JetPoly::u_pow(UExp::new(beta.clone(), 0)) * &bracket)
}

/// γ = (2 − α)/p.
pub fn gamma_on_constraint() -> CoefPoly {
    &(&CoefPoly::int(2) - &sym(Symbol::Alpha)) * &CoefPoly::symbol_pow(Symbol::P, -1)
}

/// σ₂ of the quadratic form as a Laurent polynomial in (p, ν, α):
/// 2(p−1)[−(p−1)α²/4 + (2p+2)αν/p − 4ν/p].
pub fn sigma2_coef() -> CoefPoly {
    let p = sym(Symbol::P);
    let pm1 = &p - &CoefPoly::one();
    let nu = sym(Symbol::Nu);
    let alpha = sym(Symbol::Alpha);
    let p_inv = CoefPoly::symbol_pow(Symbol::P, -1);
    let bracket = &(&(-(&(&pm1 * &alpha.pow(2)) * &CoefPoly::ratio(1, 4)))
        + &(&(&(&(&CoefPoly::int(2) * &p) + &CoefPoly::int(2)) * &alpha) * &(&nu * &p_inv)))
        - &(&CoefPoly::int(4) * &(&nu * &p_inv));
    &(&CoefPoly::int(2) * &pm1) * &bracket
}

/// δ = (n/4)σ₂ = σ₂/(4ν).
pub fn delta_coef() -> CoefPoly {
    &sigma2_coef() * &(&CoefPoly::ratio(1, 4) * &CoefPoly::symbol_pow(Symbol::Nu, -1))
}

/// a = −(1 − (p−1)α/(4ν)), the u^p coefficient inside the completed square.
pub fn completion_coef() -> CoefPoly {
    let pm1 = &sym(Symbol::P) - &CoefPoly::one();
    let shift = &(&pm1 * &sym(Symbol::Alpha)) * &(&CoefPoly::ratio(1, 4) * &CoefPoly::symbol_pow(Symbol::Nu, -1));
    &shift - &CoefPoly::one()
}

/// −u^{−2}[2|E−L|² + 2ν(u_t − |∇u|²/u + a u^p)² + δ u^{2p}].
pub fn rhs_eq16() -> JetPoly {
    let two = CoefPoly::int(2);
    let nu = sym(Symbol::Nu);
    let square_base = &(&JetPoly::scalar(JetScalar::UT) - &mono(CoefPoly::one(), int(-1), 0, &[(JetScalar::W1, 1)]))
        + &JetPoly::monomial(completion_coef(), UExp::int(0, 1), &[]);
    let bracket = &(&trace_free_square().scale(&two) + &square_base.pow(2).scale(&(&two * &nu)))
        + &JetPoly::monomial(delta_coef(), UExp::int(0, 2), &[]);
    -(&JetPoly::u_pow(UExp::int(-2, 0)) * &bracket)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepStatus {
    Passed,
    Failed,
    Skipped,
}

/// One certified (or refuted) rewriting step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateStep {
    pub name: String,
    pub description: String,
    pub status: StepStatus,
    pub lhs_monomials: usize,
    pub rhs_monomials: usize,
    pub residual_monomials: usize,
    pub offending: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub beta: String,
    pub lambda: String,
    pub steps: Vec<CertificateStep>,
    pub certified: bool,
}

impl CertificateReport {
    pub fn step(&self, name: &str) -> Option<&CertificateStep> {
        self.steps.iter().find(|s| s.name == name)
    }

    /// Every offending monomial across failed steps.
    pub fn offending(&self) -> Vec<String> {
        self.steps.iter().flat_map(|s| s.offending.iter().cloned()).collect()
    }
}

fn step(name: &str, description: &str, lhs: &JetPoly, rhs: &JetPoly, residual: &JetPoly) -> CertificateStep {
    let status = if residual.is_zero() { StepStatus::Passed } else { StepStatus::Failed };
    CertificateStep {
        name: name.to_string(),
        description: description.to_string(),
        status,
        lhs_monomials: lhs.len(),
        rhs_monomials: rhs.len(),
        residual_monomials: residual.len(),
        offending: residual.describe(),
    }
}

fn skipped(name: &str, description: &str) -> CertificateStep {
    CertificateStep {
        name: name.to_string(),
        description: description.to_string(),
        status: StepStatus::Skipped,
        lhs_monomials: 0,
        rhs_monomials: 0,
        residual_monomials: 0,
        offending: Vec::new(),
    }
}

/// The default configuration β = −2, λ = −2(β+1) = 2.
pub fn default_beta() -> BigRational {
    int(-2)
}

pub fn lambda_for(beta: &BigRational) -> BigRational {
    int(-2) * (beta + int(1))
}

/// Certifies, exactly and for symbolic (p, ν, α, γ):
///
/// - `eq8_no_utt`: u_tt cancels in the heat operator applied to φ;
/// - `eq8_no_w5`: u_ti u_i cancels (only when λ = −2(β+1));
/// - `eq8_match`: the operator equals the general-λ expansion;
/// - `eq10_match`: the operator equals the square-plus-quadratic-form right-hand side;
/// - `eq16_match`: at β = −2 and γ = (2 − α)/p that form equals the completed
///   square with coercivity term δu^{2p} (skipped for other β).
pub fn assert_identity_chain(beta: &BigRational, lambda: &BigRational) -> Result<CertificateReport, JetError> {
    let f = phi(beta);
    let lhs = apply_heat_operator(&f, lambda)?;
    let utt = lhs.terms_with(JetScalar::UTT);
    let w5 = lhs.terms_with(JetScalar::W5);
    let eq8 = rhs_eq8(beta, lambda);
    let eq10 = rhs_eq10(beta);
    let mut steps = vec![
        step("eq8_no_utt", "u_tt coefficient of the heat operator applied to phi vanishes", &lhs, &JetPoly::zero(), &utt),
        step("eq8_no_w5", "u_ti u_i coefficient vanishes for lambda = -2(beta+1)", &lhs, &JetPoly::zero(), &w5),
        step("eq8_match", "heat operator applied to phi equals the general-lambda expansion", &lhs, &eq8, &(&lhs - &eq8)),
        step("eq10_match", "heat operator applied to phi equals -u^beta (2|E-L|^2 + quadratic form)", &lhs, &eq10, &(&lhs - &eq10)),
    ];
    if *beta == default_beta() {
        let constrained = eq10.substitute_symbol(Symbol::Gamma, &gamma_on_constraint())?;
        let eq16 = rhs_eq16();
        steps.push(step(
            "eq16_match",
            "with gamma = (2 - alpha)/p the quadratic form completes to a square plus delta u^(2p)",
            &constrained,
            &eq16,
            &(&constrained - &eq16),
        ));
    } else {
        steps.push(skipped("eq16_match", "completed-square form applies only at beta = -2"));
    }
    let certified = steps.iter().all(|s| s.status != StepStatus::Failed);
    Ok(CertificateReport {
        schema: crate::SCHEMA,
        kind: "identity_certificate",
        beta: beta.to_string(),
        lambda: lambda.to_string(),
        steps,
        certified,
    })
}

/// [`assert_identity_chain`] at β = −2, λ = 2.
pub fn assert_default_identity_chain() -> Result<CertificateReport, JetError> {
    let beta = default_beta();
    assert_identity_chain(&beta, &lambda_for(&beta))
}

impl StepStatus {
    pub fn is_pass(self) -> bool {
        self == StepStatus::Passed
    }
}
