//! The named polynomial and number families, each built from its defining
//! relation.
//!
//! Stirling triangles come from solving the change-of-basis systems between
//! powers, falling factorials and λ-falling factorials; everything else is
//! assembled from those rows or from an explicit generating series.

mod registry;
mod stirling;

pub use registry::{Family, Member};
pub use stirling::{stirling, stirling_row, StirlingKind, TriangularTable};

use std::sync::{OnceLock, RwLock};

use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::{
    factorial, int, lambda_falling_at, rising_factorial, series_reciprocal, substitute_mobius, AlgebraError,
    LambdaPoly, Mobius, Rational, RationalFn, Ring, Series, Var, XPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("order parameter r must be a positive integer, got {0}")]
    NonPositiveOrder(i64),
    #[error("denominator failed to cancel: {0}")]
    Uncancelled(AlgebraError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn inv_factorial(n: usize) -> Rational {
    BigRational::from_integer(factorial(n)).recip()
}

fn fact(n: usize) -> Rational {
    BigRational::from_integer(factorial(n))
}

/// `(x)_{n,λ} = x(x−λ)⋯(x−(n−1)λ)`.
pub fn falling_factorial_lambda(n: usize) -> XPoly {
    (0..n).fold(XPoly::one(), |acc, j| {
        let factor = XPoly::linear(LambdaPoly::monomial(int(-(j as i64)), 1), LambdaPoly::one());
        Ring::mul(&acc, &factor)
    })
}

/// `(x)_n = x(x−1)⋯(x−n+1)`.
pub fn falling_factorial(n: usize) -> XPoly {
    (0..n).fold(XPoly::one(), |acc, j| {
        let factor = XPoly::linear(LambdaPoly::constant(int(-(j as i64))), LambdaPoly::one());
        Ring::mul(&acc, &factor)
    })
}

/// `(1)_{n,λ} = 1(1−λ)⋯(1−(n−1)λ)`.
pub fn lambda_one(n: usize) -> LambdaPoly {
    lambda_falling_at(&int(1), n)
}

fn from_row(row: impl IntoIterator<Item = LambdaPoly>) -> XPoly {
    XPoly::new(row.into_iter().collect())
}

/// Degenerate Bell polynomial `Bel_{n,λ}(x) = Σ (1)_{k,λ} S₂(n,k) x^k`.
pub fn bell_deg(n: usize) -> XPoly {
    let row = stirling_row(StirlingKind::S2, n);
    from_row(row.iter().enumerate().map(|(k, s)| Ring::mul(s, &lambda_one(k))))
}

/// Ordinary Bell polynomial `Bel_n(x) = Σ S₂(n,k) x^k`.
pub fn bell(n: usize) -> XPoly {
    from_row(stirling_row(StirlingKind::S2, n))
}

/// Partially degenerate Bell polynomial `φ_{n,λ}(x) = Σ S_{2,λ}(n,k) x^k`.
pub fn phi_deg(n: usize) -> XPoly {
    from_row(stirling_row(StirlingKind::S2Deg, n))
}

/// Degenerate geometric polynomial `W_{n,λ}(x) = Σ S_{2,λ}(n,k) k! x^k`.
pub fn geom_deg(n: usize) -> XPoly {
    let row = stirling_row(StirlingKind::S2Deg, n);
    from_row(row.iter().enumerate().map(|(k, s)| s.scale(&fact(k))))
}

/// Geometric polynomial `W_n(x) = Σ S₂(n,k) k! x^k`.
pub fn geom(n: usize) -> XPoly {
    let row = stirling_row(StirlingKind::S2, n);
    from_row(row.iter().enumerate().map(|(k, s)| s.scale(&fact(k))))
}

/// Higher-order geometric polynomial `W_n(x|r) = Σ S₂(n,k) r(r+1)⋯(r+k−1) x^k`.
pub fn geom_r(n: usize, r: i64) -> Result<XPoly, FamilyError> {
    if r <= 0 {
        return Err(FamilyError::NonPositiveOrder(r));
    }
    let row = stirling_row(StirlingKind::S2, n);
    Ok(from_row(row.iter().enumerate().map(|(k, s)| {
        s.scale(&BigRational::from_integer(rising_factorial(r, k)))
    })))
}

/// `e_λ(t) = Σ (1)_{n,λ} tⁿ/n!` to the given order.
pub fn e_lambda_series(var: Var, order: usize) -> Series<LambdaPoly> {
    Series::from_fn(var, order, |n| lambda_one(n).scale(&inv_factorial(n)))
}

/// `e_λ^x(t) = Σ (x)_{n,λ} tⁿ/n!` to the given order.
pub fn e_lambda_x_series(order: usize) -> Series<XPoly> {
    Series::from_fn(Var::T, order, |n| falling_factorial_lambda(n).scale(&inv_factorial(n)))
}

/// `(e_λ(t) − 1)/t` to the given order; its constant term is 1.
pub fn e_lambda_quotient_series(order: usize) -> Series<LambdaPoly> {
    Series::from_fn(Var::T, order, |n| lambda_one(n + 1).scale(&inv_factorial(n + 1)))
}

fn bernoulli_cache() -> &'static RwLock<Vec<LambdaPoly>> {
    static CACHE: OnceLock<RwLock<Vec<LambdaPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(Vec::new()))
}

/// Carlitz degenerate Bernoulli number `β_{n,λ} = n!·[tⁿ] t/(e_λ(t) − 1)`.
pub fn bernoulli_deg(n: usize) -> LambdaPoly {
    {
        let cached = bernoulli_cache().read().expect("bernoulli cache poisoned");
        if let Some(b) = cached.get(n) {
            return b.clone();
        }
    }
    let mut cached = bernoulli_cache().write().expect("bernoulli cache poisoned");
    if cached.len() <= n {
        let order = n.max(2 * cached.len()).max(8);
        let recip = series_reciprocal(&e_lambda_quotient_series(order)).expect("constant term is 1");
        *cached = recip
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&fact(k)))
            .collect();
    }
    cached[n].clone()
}

/// Bernoulli number `B_n = n!·[tⁿ] t/(e^t − 1)`, with `B₁ = −1/2`.
pub fn bernoulli_number(n: usize) -> Rational {
    let quotient = Series::from_fn(Var::T, n, |k| inv_factorial(k + 1));
    let recip = series_reciprocal(&quotient).expect("constant term is 1");
    recip.coeff(n) * fact(n)
}

/// Bernoulli polynomial `B_n(x) = n!·[tⁿ] (t/(e^t − 1))·e^{xt}`.
pub fn bernoulli_poly(n: usize) -> XPoly {
    let quotient = Series::from_fn(Var::T, n, |k| inv_factorial(k + 1));
    let bern = series_reciprocal(&quotient)
        .expect("constant term is 1")
        .map_ring(|c| XPoly::constant(LambdaPoly::constant(c.clone())));
    let exp_xt = Series::from_fn(Var::T, n, |k| {
        XPoly::monomial(LambdaPoly::constant(inv_factorial(k)), k)
    });
    let product = bern.mul(&exp_xt).expect("both in t");
    product.coeff(n).scale(&fact(n))
}

/// Eulerian polynomial `A_m(x) = (1 − x)^m W_m(x/(1 − x))`.
///
/// The quotient is formed exactly; a nonzero remainder is reported as an
/// error rather than silently truncated.
pub fn eulerian_poly(m: usize) -> Result<XPoly, FamilyError> {
    let substituted = substitute_mobius(&geom(m), Mobius::OneMinusX);
    let cleared = Ring::mul(substituted.num(), &Mobius::OneMinusX.factor().pow(m));
    cleared.div_exact(substituted.den()).map_err(FamilyError::Uncancelled)
}

/// Degenerate Bell polynomial of the second kind, in closed form
/// `bel_{n,λ}(x) = Bel_{n,λ}(x/(1 + λx))`, over the denominator `(1 + λx)^n`.
pub fn bel_deg_second(n: usize) -> RationalFn {
    crate::algebra::substitute_mobius_with_degree(&bell_deg(n), Mobius::OnePlusLambdaX, n)
        .expect("Bel_{n,λ} has degree n")
}
