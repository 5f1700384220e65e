use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::coef::{ipow, rational_to_f64, CoefPoly, Symbol, SymbolValues};
use super::JetError;

/// Formal scalar contractions of the space-time jet of u.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum JetScalar {
    /// u_t
    UT,
    /// u_tt
    UTT,
    /// |∇u|²
    W1,
    /// u_ij u_i u_j
    W2,
    /// u_ij u_ij
    W3,
    /// Δu
    W4,
    /// u_ti u_i
    W5,
}

impl JetScalar {
    pub const ALL: [JetScalar; 7] = [
        JetScalar::UT,
        JetScalar::UTT,
        JetScalar::W1,
        JetScalar::W2,
        JetScalar::W3,
        JetScalar::W4,
        JetScalar::W5,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for JetScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JetScalar::UT => "UT",
            JetScalar::UTT => "UTT",
            JetScalar::W1 => "W1",
            JetScalar::W2 => "W2",
            JetScalar::W3 => "W3",
            JetScalar::W4 => "W4",
            JetScalar::W5 => "W5",
        })
    }
}

/// Exponent `r + s·p` of u, with rational `r` and integer `s`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UExp {
    pub r: BigRational,
    pub s: i64,
}

impl UExp {
    pub fn new(r: BigRational, s: i64) -> Self {
        Self { r, s }
    }

    pub fn int(r: i64, s: i64) -> Self {
        Self::new(BigRational::from_integer(r.into()), s)
    }

    pub fn zero() -> Self {
        Self::int(0, 0)
    }

    pub fn shifted(&self, dr: i64, ds: i64) -> Self {
        Self::new(&self.r + BigRational::from_integer(dr.into()), self.s + ds)
    }

    /// The exponent as a coefficient, `r + s·p`.
    pub fn as_coef(&self) -> CoefPoly {
        &CoefPoly::constant(self.r.clone()) + &(&CoefPoly::int(self.s) * &CoefPoly::symbol(Symbol::P))
    }
}

impl Add for &UExp {
    type Output = UExp;
    fn add(self, rhs: &UExp) -> UExp {
        UExp::new(&self.r + &rhs.r, self.s + rhs.s)
    }
}

impl fmt::Display for UExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.r.is_zero(), self.s) {
            (_, 0) => write!(f, "u^({})", self.r),
            (true, 1) => write!(f, "u^(p)"),
            (true, s) => write!(f, "u^({s}p)"),
            (false, 1) => write!(f, "u^({}+p)", self.r),
            (false, s) => write!(f, "u^({}{:+}p)", self.r, s),
        }
    }
}

/// Powers of jet scalars; entries are always ≥ 1 and ordered by [`JetScalar`].
pub type Powers = BTreeMap<JetScalar, u32>;

pub(crate) type Key = (UExp, Powers);

/// One term `coefficient · u^(r + s p) · Π scalar^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetMonomial {
    pub u_exponent: UExp,
    pub powers: Powers,
    pub coefficient: CoefPoly,
}

impl JetMonomial {
    pub fn new(coefficient: CoefPoly, u_exponent: UExp, scalars: &[(JetScalar, u32)]) -> Self {
        let mut powers = Powers::new();
        for &(s, k) in scalars {
            if k > 0 {
                *powers.entry(s).or_insert(0) += k;
            }
        }
        Self { u_exponent, powers, coefficient }
    }

    pub fn contains(&self, s: JetScalar) -> bool {
        self.powers.contains_key(&s)
    }

    pub fn evaluate_exact(&self, at: &Assignment) -> Result<BigRational, JetError> {
        let mut v = self.coefficient.eval_exact(&at.symbols)?;
        v *= at.u_power(&self.u_exponent)?;
        for (s, k) in &self.powers {
            v *= num_traits::pow(at.scalars[s.index()].clone(), *k as usize);
        }
        Ok(v)
    }

    pub fn evaluate_f64(&self, at: &FloatAssignment) -> f64 {
        let mut v = self.coefficient.eval_f64(&at.symbols);
        let e = rational_to_f64(&self.u_exponent.r) + self.u_exponent.s as f64 * at.symbols.p;
        v *= at.u.powf(e);
        for (s, k) in &self.powers {
            v *= at.scalars[s.index()].powi(*k as i32);
        }
        v
    }
}

impl fmt::Display for JetMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.coefficient, self.u_exponent)?;
        for (s, k) in &self.powers {
            if *k == 1 {
                write!(f, " {s}")?;
            } else {
                write!(f, " {s}^{k}")?;
            }
        }
        Ok(())
    }
}

/// Sum of [`JetMonomial`]s in canonical form: one entry per (u-exponent,
/// powers) key, sorted, with no zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JetPoly {
    terms: BTreeMap<Key, CoefPoly>,
}

impl JetPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Collects an arbitrary list of terms into canonical form.
    pub fn from_monomials(monomials: impl IntoIterator<Item = JetMonomial>) -> Self {
        let mut out = Self::zero();
        for m in monomials {
            out.add_monomial((m.u_exponent, m.powers), &m.coefficient);
        }
        out
    }

    pub fn monomial(coefficient: CoefPoly, u_exponent: UExp, scalars: &[(JetScalar, u32)]) -> Self {
        Self::from_monomials([JetMonomial::new(coefficient, u_exponent, scalars)])
    }

    /// The polynomial `u^e` with unit coefficient.
    pub fn u_pow(e: UExp) -> Self {
        Self::monomial(CoefPoly::one(), e, &[])
    }

    pub fn scalar(s: JetScalar) -> Self {
        Self::monomial(CoefPoly::one(), UExp::zero(), &[(s, 1)])
    }

    pub fn constant(c: CoefPoly) -> Self {
        Self::monomial(c, UExp::zero(), &[])
    }

    fn add_monomial(&mut self, key: Key, c: &CoefPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = JetMonomial> + '_ {
        self.terms.iter().map(|((u, powers), c)| JetMonomial {
            u_exponent: u.clone(),
            powers: powers.clone(),
            coefficient: c.clone(),
        })
    }

    /// Re-collects the terms; the representation is already canonical, so this
    /// is the identity on well-formed values.
    pub fn normalize(&self) -> Self {
        Self::from_monomials(self.monomials())
    }

    pub fn scale(&self, c: &CoefPoly) -> Self {
        self.map_coefficients(|x| x * c)
    }

    pub fn map_coefficients(&self, f: impl Fn(&CoefPoly) -> CoefPoly) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_monomial(k.clone(), &f(c));
        }
        out
    }

    pub fn try_map_coefficients(&self, f: impl Fn(&CoefPoly) -> Result<CoefPoly, JetError>) -> Result<Self, JetError> {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_monomial(k.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// Replaces a coefficient symbol everywhere.
    pub fn substitute_symbol(&self, s: Symbol, replacement: &CoefPoly) -> Result<Self, JetError> {
        self.try_map_coefficients(|c| c.substitute(s, replacement))
    }

    /// Replaces every occurrence of `scalar` by `replacement`, expanding powers.
    pub fn substitute_scalar(&self, scalar: JetScalar, replacement: &JetPoly) -> Self {
        let mut out = Self::zero();
        for ((u, powers), c) in &self.terms {
            let mut rest = powers.clone();
            let k = rest.remove(&scalar).unwrap_or(0);
            let base = Self::from_monomials([JetMonomial { u_exponent: u.clone(), powers: rest, coefficient: c.clone() }]);
            out = &out + &(&base * &replacement.pow(k));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(CoefPoly::one()), |acc, _| &acc * self)
    }

    pub fn contains_scalar(&self, s: JetScalar) -> bool {
        self.terms.keys().any(|(_, powers)| powers.contains_key(&s))
    }

    /// The sub-polynomial of terms carrying `s`.
    pub fn terms_with(&self, s: JetScalar) -> Self {
        Self::from_monomials(self.monomials().filter(|m| m.contains(s)))
    }

    pub fn evaluate_exact(&self, at: &Assignment) -> Result<BigRational, JetError> {
        let mut total = BigRational::zero();
        for m in self.monomials() {
            total += m.evaluate_exact(at)?;
        }
        Ok(total)
    }

    pub fn evaluate_f64(&self, at: &FloatAssignment) -> f64 {
        self.monomials().map(|m| m.evaluate_f64(at)).sum()
    }

    pub fn describe(&self) -> Vec<String> {
        self.monomials().map(|m| m.to_string()).collect()
    }
}

impl Add for &JetPoly {
    type Output = JetPoly;
    fn add(self, rhs: &JetPoly) -> JetPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_monomial(k.clone(), c);
        }
        out
    }
}

impl Sub for &JetPoly {
    type Output = JetPoly;
    fn sub(self, rhs: &JetPoly) -> JetPoly {
        self + &(-rhs)
    }
}

impl Neg for &JetPoly {
    type Output = JetPoly;
    fn neg(self) -> JetPoly {
        self.map_coefficients(|c| -c)
    }
}

impl Mul for &JetPoly {
    type Output = JetPoly;
    fn mul(self, rhs: &JetPoly) -> JetPoly {
        let mut out = JetPoly::zero();
        for ((ua, pa), ca) in &self.terms {
            for ((ub, pb), cb) in &rhs.terms {
                let mut powers = pa.clone();
                for (s, k) in pb {
                    *powers.entry(*s).or_insert(0) += k;
                }
                out.add_monomial((ua + ub, powers), &(ca * cb));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for JetPoly {
            type Output = JetPoly;
            fn $method(self, rhs: JetPoly) -> JetPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for JetPoly {
    type Output = JetPoly;
    fn neg(self) -> JetPoly {
        -&self
    }
}

impl fmt::Display for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts = self.describe();
        f.write_str(&parts.join(" + "))
    }
}

/// Exact evaluation point.
///
/// u is represented as `base^root` so that u^(r + s p) stays rational whenever
/// `root·(r + s p)` is an integer.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub base: BigRational,
    pub root: u32,
    pub symbols: SymbolValues<BigRational>,
    /// Indexed by [`JetScalar::index`].
    pub scalars: [BigRational; 7],
}

impl Assignment {
    pub fn u(&self) -> BigRational {
        num_traits::pow(self.base.clone(), self.root as usize)
    }

    pub fn u_power(&self, e: &UExp) -> Result<BigRational, JetError> {
        let total = (&e.r + &self.symbols.p * BigRational::from_integer(BigInt::from(e.s)))
            * BigRational::from_integer(BigInt::from(self.root));
        if !total.denom().is_one() {
            return Err(JetError::NonIntegralExponent(e.to_string()));
        }
        let k = total
            .numer()
            .to_i32()
            .ok_or_else(|| JetError::NonIntegralExponent(e.to_string()))?;
        ipow(self.base.clone(), k).ok_or(JetError::ZeroToNegativePower("u"))
    }

    pub fn scalar(&self, s: JetScalar) -> &BigRational {
        &self.scalars[s.index()]
    }

    /// Sets `W4 = UT − u^p`, the equation's relation between Δu and u_t.
    pub fn impose_equation(&mut self) -> Result<(), JetError> {
        let up = self.u_power(&UExp::int(0, 1))?;
        self.scalars[JetScalar::W4.index()] = self.scalars[JetScalar::UT.index()].clone() - up;
        Ok(())
    }
}

/// Floating evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatAssignment {
    pub u: f64,
    pub symbols: SymbolValues<f64>,
    pub scalars: [f64; 7],
}

impl FloatAssignment {
    pub fn impose_equation(&mut self) {
        self.scalars[JetScalar::W4.index()] = self.scalars[JetScalar::UT.index()] - self.u.powf(self.symbols.p);
    }
}
