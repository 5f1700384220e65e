//! Laurent polynomials with rational coefficients in the symbols p, ν, α, γ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::JetError;
use crate::param_engine::forms::Field;

/// Symbolic constants of the computation. ν stands for 1/n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    P,
    Nu,
    Alpha,
    Gamma,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::P, Symbol::Nu, Symbol::Alpha, Symbol::Gamma];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::P => "p",
            Symbol::Nu => "nu",
            Symbol::Alpha => "alpha",
            Symbol::Gamma => "gamma",
        }
    }
}

/// Values for the four symbols, in any field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolValues<T> {
    pub p: T,
    pub nu: T,
    pub alpha: T,
    pub gamma: T,
}

impl<T: Clone> SymbolValues<T> {
    fn get(&self, s: Symbol) -> T {
        match s {
            Symbol::P => self.p.clone(),
            Symbol::Nu => self.nu.clone(),
            Symbol::Alpha => self.alpha.clone(),
            Symbol::Gamma => self.gamma.clone(),
        }
    }
}

pub(crate) type Exponents = [i32; 4];

/// Sparse Laurent polynomial; zero coefficients are never stored, so the
/// zero polynomial is the empty map.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoefPoly {
    terms: BTreeMap<Exponents, BigRational>,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl CoefPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(<BigRational as One>::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, [0; 4])
    }

    pub fn int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(rational(num, den))
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::symbol_pow(s, 1)
    }

    /// `s^k`, with `k` possibly negative.
    pub fn symbol_pow(s: Symbol, k: i32) -> Self {
        let mut e = [0; 4];
        e[s.index()] = k;
        Self::monomial(<BigRational as One>::one(), e)
    }

    pub(crate) fn monomial(c: BigRational, exps: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
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

    /// The value when the polynomial is a pure constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(<BigRational as Zero>::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exps: Exponents, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(<BigRational as Zero>::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Replaces `s` by `replacement`. Negative powers of `s` are only allowed
    /// when the replacement is a single monomial.
    pub fn substitute(&self, s: Symbol, replacement: &CoefPoly) -> Result<Self, JetError> {
        let inverse = if replacement.terms.len() == 1 {
            let (e, c) = replacement.terms.iter().next().expect("one term");
            let mut inv = [0; 4];
            for (slot, v) in inv.iter_mut().zip(e) {
                *slot = -v;
            }
            Some(CoefPoly::monomial(c.recip(), inv))
        } else {
            None
        };
        let mut out = CoefPoly::zero();
        for (exps, c) in &self.terms {
            let k = exps[s.index()];
            let mut rest = *exps;
            rest[s.index()] = 0;
            let factor = if k >= 0 {
                replacement.pow(k as u32)
            } else {
                inverse
                    .as_ref()
                    .ok_or_else(|| JetError::NegativePowerSubstitution(s.name().to_string()))?
                    .pow(k.unsigned_abs())
            };
            out += &(&CoefPoly::monomial(c.clone(), rest) * &factor);
        }
        Ok(out)
    }

    /// Evaluates in any field; fails on a negative power of a zero symbol.
    pub fn evaluate<T>(&self, values: &SymbolValues<T>, lift: impl Fn(&BigRational) -> T) -> Result<T, JetError>
    where
        T: Field,
    {
        let mut total = T::zero();
        for (exps, c) in &self.terms {
            let mut term = lift(c);
            for s in Symbol::ALL {
                let k = exps[s.index()];
                if k != 0 {
                    term = term * ipow(values.get(s), k).ok_or(JetError::ZeroToNegativePower(s.name()))?;
                }
            }
            total = total + term;
        }
        Ok(total)
    }

    pub fn eval_exact(&self, values: &SymbolValues<BigRational>) -> Result<BigRational, JetError> {
        self.evaluate(values, |c| c.clone())
    }

    pub fn eval_f64(&self, values: &SymbolValues<f64>) -> f64 {
        self.evaluate(values, rational_to_f64).unwrap_or(f64::NAN)
    }
}

pub fn rational_to_f64(c: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

/// Integer power in a field; `None` for 0 raised to a negative power.
pub(crate) fn ipow<T: Field>(x: T, k: i32) -> Option<T> {
    let mut base = x;
    let mut e = k.unsigned_abs();
    let mut acc = T::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    if k < 0 {
        if acc == T::zero() {
            return None;
        }
        acc = T::one() / acc;
    }
    Some(acc)
}

impl From<BigRational> for CoefPoly {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&CoefPoly> for CoefPoly {
    fn add_assign(&mut self, rhs: &CoefPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&CoefPoly> for CoefPoly {
    fn sub_assign(&mut self, rhs: &CoefPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c);
        }
    }
}

impl Add for &CoefPoly {
    type Output = CoefPoly;
    fn add(self, rhs: &CoefPoly) -> CoefPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &CoefPoly {
    type Output = CoefPoly;
    fn sub(self, rhs: &CoefPoly) -> CoefPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &CoefPoly {
    type Output = CoefPoly;
    fn mul(self, rhs: &CoefPoly) -> CoefPoly {
        let mut out = CoefPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for (slot, v) in e.iter_mut().zip(eb) {
                    *slot += v;
                }
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &CoefPoly {
    type Output = CoefPoly;
    fn neg(self) -> CoefPoly {
        CoefPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for CoefPoly {
            type Output = CoefPoly;
            fn $method(self, rhs: CoefPoly) -> CoefPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CoefPoly> for CoefPoly {
            type Output = CoefPoly;
            fn $method(self, rhs: &CoefPoly) -> CoefPoly {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CoefPoly {
    type Output = CoefPoly;
    fn neg(self) -> CoefPoly {
        -&self
    }
}

impl fmt::Display for CoefPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (exps, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = Symbol::ALL
                .iter()
                .filter(|s| exps[s.index()] != 0)
                .map(|s| match exps[s.index()] {
                    1 => s.name().to_string(),
                    k => format!("{}^{}", s.name(), k),
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", magnitude, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
