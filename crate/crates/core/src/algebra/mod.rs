//! Exact coefficient rings and the truncated series kernel.
//!
//! Everything here is exact: scalars are arbitrary-precision rationals,
//! polynomials are dense coefficient vectors, and series carry an explicit
//! truncation order that only ever shrinks when two series are combined.
//!
//! The rings nest as `Rational ⊂ LambdaPoly ⊂ XPoly`, where `LambdaPoly` is a
//! polynomial in the deformation parameter λ and `XPoly` is a polynomial in x
//! with `LambdaPoly` coefficients. A [`Series`] may take coefficients in any
//! of the three.

mod moment;
mod poly;
mod ratfn;
mod series;

pub use moment::gamma_moment;
pub use poly::{lambda_falling_at, poly_mul, LambdaPoly, LambdaTarget, Poly, SubstituteLambda, XPoly};
pub use ratfn::{substitute_mobius, substitute_mobius_with_degree, Mobius, RationalFn};
pub use series::{diag_weight, series_compose, series_exp, series_reciprocal, Series, Var};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("constant term {0} is not a unit in the coefficient ring")]
    NonUnit(String),
    #[error("inner series must have zero constant term")]
    NonZeroConstant,
    #[error("series variable mismatch: {0} vs {1}")]
    VarMismatch(Var, Var),
    #[error("series order {have} too small, need at least {need}")]
    OrderTooSmall { need: usize, have: usize },
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,
    #[error("denominator does not reduce to a nonzero constant: {0}")]
    NonConstantDenominator(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A commutative ring with exact arithmetic and a rational scalar action.
///
/// Implemented by [`Rational`] and by [`Poly<C>`] for any ring `C`, which
/// gives both `LambdaPoly` and `XPoly`.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn from_rational(c: Rational) -> Self;
    /// Multiplicative inverse when `self` is a unit, i.e. a nonzero rational constant.
    fn unit_inverse(&self) -> Option<Self>;

    fn add_assign(&mut self, rhs: &Self) {
        *self = Ring::add(self, rhs);
    }

    fn sub_assign(&mut self, rhs: &Self) {
        *self = Ring::sub(self, rhs);
    }

    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        self.add_assign(&Ring::mul(a, b));
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

fn integral(a: &Rational) -> bool {
    a.denom().is_one()
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        if integral(self) && integral(rhs) {
            return Rational::from_integer(self.numer() + rhs.numer());
        }
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        if integral(self) && integral(rhs) {
            return Rational::from_integer(self.numer() - rhs.numer());
        }
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        if integral(self) && integral(rhs) {
            return Rational::from_integer(self.numer() * rhs.numer());
        }
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        Ring::mul(self, c)
    }
    fn from_rational(c: Rational) -> Self {
        c
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn add_assign(&mut self, rhs: &Self) {
        if integral(self) && integral(rhs) {
            *self = Rational::from_integer(self.numer() + rhs.numer());
        } else {
            *self += rhs;
        }
    }
    fn sub_assign(&mut self, rhs: &Self) {
        if integral(self) && integral(rhs) {
            *self = Rational::from_integer(self.numer() - rhs.numer());
        } else {
            *self -= rhs;
        }
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        if Zero::is_zero(a) || Zero::is_zero(b) {
            return;
        }
        if integral(self) && integral(a) && integral(b) {
            *self = Rational::from_integer(self.numer() + a.numer() * b.numer());
        } else {
            *self += a * b;
        }
    }
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Rising factorial r(r+1)⋯(r+k−1); equals 1 for k = 0.
pub fn rising_factorial(r: i64, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(r + j as i64))
}

/// Binomial coefficient C(n, k) for nonnegative n.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Serializes a rational as an explicit `p/q` string, including `q = 1`.
pub fn rational_to_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, `p`, or `-p/q`. The denominator must be nonzero.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if Zero::is_zero(&q) {
        return None;
    }
    Some(Rational::new(p, q))
}

/// Human-oriented rendering: integers plain, fractions as `p/q`.
pub fn rational_to_plain(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_normalize() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rational_to_pq(&r), "-3/2");
        assert_eq!(rational_to_pq(&int(3)), "3/1");
        assert_eq!(rational_to_plain(&int(3)), "3");
    }

    #[test]
    fn parse_accepts_both_forms() {
        assert_eq!(parse_rational("-1/2"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("4/2"), Some(int(2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn counting_helpers() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::from(0));
        assert_eq!(rising_factorial(2, 2), BigInt::from(6));
        assert_eq!(rising_factorial(1, 4), factorial(4));
        assert_eq!(rising_factorial(7, 0), BigInt::from(1));
    }

    #[test]
    fn unit_inverse_of_zero_is_none() {
        assert!(Ring::unit_inverse(&int(0)).is_none());
        assert_eq!(Ring::unit_inverse(&rat(2, 3)), Some(rat(3, 2)));
    }
}
