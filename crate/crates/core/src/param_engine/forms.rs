//! Closed forms shared by the floating and the exact rational paths.
//!
//! Every function here is generic over [`Field`], so the same formula is
//! evaluated in `f64` for reporting and in `BigRational` whenever an
//! identity has to hold with equality rather than up to rounding.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Minimal ordered-field interface needed by the closed forms.
pub trait Field:
    Clone
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(v: i64) -> Self;

    fn zero() -> Self {
        Self::from_int(0)
    }

    fn one() -> Self {
        Self::from_int(1)
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Field for f64 {
    fn from_int(v: i64) -> f64 {
        v as f64
    }
}

impl Field for BigRational {
    fn from_int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }
}

/// Row/column order: 1 ↔ u_t, 2 ↔ u^p, 3 ↔ |∇u|²/u.
pub type Entries<T> = [[T; 3]; 3];

/// The quadratic-form matrix at β = −2 for arbitrary (α, γ).
pub fn matrix_a<T: Field>(n: u32, p: &T, alpha: &T, gamma: &T) -> Entries<T> {
    let two_over_n = T::ratio(2, n as i64);
    let pm1 = p.clone() - T::one();
    let half = T::ratio(1, 2);
    let a11 = two_over_n.clone();
    let a12 = -two_over_n.clone() + pm1.clone() * alpha.clone() * half.clone();
    let a13 = -two_over_n.clone();
    let a22 = two_over_n.clone() - gamma.clone() * pm1.clone();
    let a23 = two_over_n.clone() + pm1 * (p.clone() * gamma.clone() - T::from_int(2)) * half;
    let a33 = two_over_n;
    [
        [a11, a12.clone(), a13.clone()],
        [a12, a22, a23.clone()],
        [a13, a23, a33],
    ]
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det<T: Field>(m: &Entries<T>) -> T {
    let c0 = m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone();
    let c1 = m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone();
    let c2 = m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone();
    m[0][0].clone() * c0 - m[0][1].clone() * c1 + m[0][2].clone() * c2
}

/// The three 2×2 principal minors, in the order (1,2), (1,3), (2,3).
pub fn principal_minors<T: Field>(m: &Entries<T>) -> [T; 3] {
    let minor = |i: usize, j: usize| {
        m[i][i].clone() * m[j][j].clone() - m[i][j].clone() * m[j][i].clone()
    };
    [minor(0, 1), minor(0, 2), minor(1, 2)]
}

/// σ₂ as the sum of the principal minors.
pub fn principal_minor_sum<T: Field>(m: &Entries<T>) -> T {
    let [a, b, c] = principal_minors(m);
    a + b + c
}

/// det(A) = −(2/n)·[(p−1)(α + pγ − 2)/2]².
pub fn det_a_closed<T: Field>(n: u32, p: &T, alpha: &T, gamma: &T) -> T {
    let inner = (p.clone() - T::one()) * T::ratio(1, 2)
        * (alpha.clone() + p.clone() * gamma.clone() - T::from_int(2));
    -(T::ratio(2, n as i64) * inner.square())
}

/// σ₂(A) with γ = (2 − α)/p: 2(p−1)[−(p−1)α²/4 + (2p+2)α/(np) − 4/(np)].
pub fn sigma2_closed<T: Field>(n: u32, p: &T, alpha: &T) -> T {
    let pm1 = p.clone() - T::one();
    let np = T::from_int(n as i64) * p.clone();
    let bracket = -(pm1.clone() * alpha.square() * T::ratio(1, 4))
        + (T::from_int(2) * p.clone() + T::from_int(2)) * alpha.clone() / np.clone()
        - T::from_int(4) / np;
    T::from_int(2) * pm1 * bracket
}

/// δ = (n/4)·σ₂.
pub fn delta_closed<T: Field>(n: u32, p: &T, alpha: &T) -> T {
    T::ratio(n as i64, 4) * sigma2_closed(n, p, alpha)
}

/// The u^p coefficient inside the completed square, −(1 − n(p−1)α/4).
pub fn completion_coefficient<T: Field>(n: u32, p: &T, alpha: &T) -> T {
    let n_t = T::from_int(n as i64);
    -(T::one() - n_t * (p.clone() - T::one()) * alpha.clone() * T::ratio(1, 4))
}

/// δ recovered from the u^{2p} entry of the quadratic form: A₂₂ − (2/n)·a².
pub fn delta_from_completion<T: Field>(n: u32, p: &T, alpha: &T) -> T {
    let gamma = (T::from_int(2) - alpha.clone()) / p.clone();
    let a22 = T::ratio(2, n as i64) - gamma * (p.clone() - T::one());
    a22 - T::ratio(2, n as i64) * completion_coefficient(n, p, alpha).square()
}

/// Δ = (p+1)²/(n²p²) − (p−1)/(np).
pub fn discriminant<T: Field>(n: u32, p: &T) -> T {
    let np = T::from_int(n as i64) * p.clone();
    (p.clone() + T::one()).square() / np.square() - (p.clone() - T::one()) / np
}

/// (n−1)p² − (n+2)p − 1, negative exactly on the subcritical range p > 1.
pub fn critical_quadratic<T: Field>(n: u32, p: &T) -> T {
    let n_t = T::from_int(n as i64);
    (n_t.clone() - T::one()) * p.square() - (n_t + T::from_int(2)) * p.clone() - T::one()
}
