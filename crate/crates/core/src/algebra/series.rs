use std::fmt;

use super::poly::{lambda_falling_at, LambdaPoly, Poly, SubstituteLambda};
use super::{int, AlgebraError, LambdaTarget, Rational, Ring};

/// The distinguished variable of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    X,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T => f.write_str("t"),
            Var::X => f.write_str("x"),
        }
    }
}

/// Truncated formal power series `Σ_{n ≤ order} c_n var^n + O(var^{order+1})`.
///
/// `coeffs[n]` is the plain coefficient of `var^n`; no factorial scaling is
/// applied anywhere in the kernel. Combining two series keeps the smaller
/// order, so nothing is ever compared past the precision both sides carry.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R> {
    var: Var,
    order: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> Series<R> {
    pub fn zero(var: Var, order: usize) -> Self {
        Self {
            var,
            order,
            coeffs: vec![R::zero(); order + 1],
        }
    }

    pub fn one(var: Var, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        s.coeffs[0] = R::one();
        s
    }

    /// Pads with zeros or drops entries so exactly `order + 1` coefficients remain.
    pub fn from_coeffs(var: Var, order: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.resize(order + 1, R::zero());
        Self { var, order, coeffs }
    }

    pub fn from_fn(var: Var, order: usize, f: impl Fn(usize) -> R) -> Self {
        Self {
            var,
            order,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn from_poly(var: Var, p: &Poly<R>, order: usize) -> Self {
        Self::from_fn(var, order, |n| p.coeff(n))
    }

    /// The series variable itself, `var + O(var^{order+1})`.
    pub fn variable(var: Var, order: usize) -> Self {
        Self::from_fn(var, order, |n| if n == 1 { R::one() } else { R::zero() })
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `var^n`.
    ///
    /// Panics when `n` exceeds the truncation order, where the coefficient is unknown.
    pub fn coeff(&self, n: usize) -> &R {
        assert!(
            n <= self.order,
            "coefficient of {}^{n} requested from a series known only to order {}",
            self.var,
            self.order
        );
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&R> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, order: usize) -> Result<Self, AlgebraError> {
        if order > self.order {
            return Err(AlgebraError::OrderTooSmall {
                need: order,
                have: self.order,
            });
        }
        Ok(Self {
            var: self.var,
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_var(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(AlgebraError::VarMismatch(self.var, other.var))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        Ok(Self::from_fn(self.var, order, |n| self.coeffs[n].add(&other.coeffs[n])))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        Ok(Self::from_fn(self.var, order, |n| self.coeffs[n].sub(&other.coeffs[n])))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        let mut out = vec![R::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                out[i + j].add_product(a, b);
            }
        }
        Ok(Self {
            var: self.var,
            order,
            coeffs: out,
        })
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn scale_by(&self, c: &R) -> Self {
        self.map(|a| a.mul(c))
    }

    /// Multiplication by `var^k`; the known precision grows by `k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self {
            var: self.var,
            order: self.order + k,
            coeffs,
        }
    }

    /// Formal derivative; the order drops by one.
    pub fn derivative(&self) -> Result<Self, AlgebraError> {
        if self.order == 0 {
            return Err(AlgebraError::OrderTooSmall { need: 1, have: 0 });
        }
        Ok(Self::from_fn(self.var, self.order - 1, |n| {
            self.coeffs[n + 1].scale(&int(n as i64 + 1))
        }))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.var, self.order);
        for _ in 0..e {
            acc = acc.mul(self).expect("same variable");
        }
        acc
    }

    pub fn map(&self, f: impl Fn(&R) -> R) -> Self {
        Self {
            var: self.var,
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn map_indexed(&self, f: impl Fn(usize, &R) -> R) -> Self {
        Self {
            var: self.var,
            order: self.order,
            coeffs: self.coeffs.iter().enumerate().map(|(n, c)| f(n, c)).collect(),
        }
    }

    pub fn map_ring<S: Ring>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series {
            var: self.var,
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Lifts the coefficients into a larger ring.
    pub fn embed<S: Ring + From<R>>(&self) -> Series<S> {
        self.map_ring(|c| S::from(c.clone()))
    }

    /// First exponent where the two series differ, compared up to the smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Result<Option<usize>, AlgebraError> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        Ok((0..=order).find(|&n| self.coeffs[n] != other.coeffs[n]))
    }
}

impl<R: Ring + SubstituteLambda> SubstituteLambda for Series<R> {
    fn substitute_lambda(&self, target: &LambdaTarget) -> Self {
        self.map(|c| c.substitute_lambda(target))
    }
}

/// Multiplicative inverse of a series whose constant term is a unit.
pub fn series_reciprocal<R: Ring>(s: &Series<R>) -> Result<Series<R>, AlgebraError> {
    let a0 = &s.coeffs[0];
    let inv = a0
        .unit_inverse()
        .ok_or_else(|| AlgebraError::NonUnit(format!("{a0:?}")))?;
    let mut out: Vec<R> = Vec::with_capacity(s.order + 1);
    out.push(inv.clone());
    for n in 1..=s.order {
        let mut acc = R::zero();
        for k in 1..=n {
            acc.add_product(&s.coeffs[k], &out[n - k]);
        }
        out.push(acc.mul(&inv).neg());
    }
    Ok(Series {
        var: s.var,
        order: s.order,
        coeffs: out,
    })
}

/// `outer(inner)`, with `outer`'s coefficients lifted into `inner`'s ring.
///
/// The inner series must have zero constant term. The result lives in the
/// inner variable and carries the smaller of the two orders.
pub fn series_compose<S, R>(outer: &Series<S>, inner: &Series<R>) -> Result<Series<R>, AlgebraError>
where
    S: Ring,
    R: Ring + From<S>,
{
    if !inner.coeffs[0].is_zero() {
        return Err(AlgebraError::NonZeroConstant);
    }
    let order = outer.order.min(inner.order);
    let inner = inner.truncate(order)?;
    // Horner in the outer variable.
    let mut acc = Series::<R>::zero(inner.var, order);
    for c in outer.coeffs[..=order].iter().rev() {
        acc = acc.mul(&inner)?;
        acc.coeffs[0].add_assign(&R::from(c.clone()));
    }
    Ok(acc)
}

/// `exp(s)` for `s` with zero constant term, via `E' = s'E`.
pub fn series_exp<R: Ring>(s: &Series<R>) -> Result<Series<R>, AlgebraError> {
    if !s.coeffs[0].is_zero() {
        return Err(AlgebraError::NonZeroConstant);
    }
    let mut out: Vec<R> = Vec::with_capacity(s.order + 1);
    out.push(R::one());
    for n in 1..=s.order {
        let mut acc = R::zero();
        for k in 1..=n {
            if s.coeffs[k].is_zero() {
                continue;
            }
            acc.add_product(&s.coeffs[k].scale(&int(k as i64)), &out[n - k]);
        }
        out.push(acc.scale(&super::rat(1, n as i64)));
    }
    Ok(Series {
        var: s.var,
        order: s.order,
        coeffs: out,
    })
}

/// Weights coefficient k by `(k)_{m,λ}`.
///
/// This is the operator `x^{mλ}(x^{1−λ}D)^m` acting on a series in x, which is
/// diagonal on monomials: it sends `x^k` to `(k)_{m,λ} x^k`.
pub fn diag_weight(s: &Series<LambdaPoly>, m: usize) -> Series<LambdaPoly> {
    s.map_indexed(|k, c| Ring::mul(c, &lambda_falling_at(&int(k as i64), m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{factorial, rat, XPoly};
    use num_rational::BigRational;

    fn rs(c: &[Rational], order: usize) -> Series<Rational> {
        Series::from_coeffs(Var::T, order, c.to_vec())
    }

    fn lp(c: &[i64]) -> LambdaPoly {
        Poly::from_rationals(c.iter().map(|&v| int(v)))
    }

    #[test]
    fn reciprocal_of_one_plus_t() {
        let s = rs(&[int(1), int(1)], 3);
        let r = series_reciprocal(&s).unwrap();
        assert_eq!(r.coeffs(), &[int(1), int(-1), int(1), int(-1)]);
    }

    #[test]
    fn reciprocal_requires_unit() {
        let s = rs(&[int(0), int(1)], 3);
        assert!(matches!(series_reciprocal(&s), Err(AlgebraError::NonUnit(_))));
        // a non-constant λ-polynomial is not a unit either
        let s = Series::from_coeffs(Var::T, 2, vec![lp(&[1, 1])]);
        assert!(series_reciprocal(&s).is_err());
    }

    #[test]
    fn reciprocal_of_degenerate_exponential_quotient() {
        // (e_λ(t) − 1)/t = Σ (1)_{n+1,λ}/(n+1)! tⁿ ; at order 1 its inverse is 1 − (1−λ)t/2
        let s = Series::from_fn(Var::T, 1, |n| {
            lambda_falling_at(&int(1), n + 1).scale(&BigRational::from_integer(factorial(n + 1)).recip())
        });
        let r = series_reciprocal(&s).unwrap();
        assert_eq!(r.coeff(0), &lp(&[1]));
        assert_eq!(r.coeff(1), &Poly::new(vec![rat(-1, 2), rat(1, 2)]));
    }

    #[test]
    fn compose_monomial_and_identity() {
        let outer = Series::from_coeffs(Var::X, 4, vec![int(1), int(1)]);
        let inner = Series::from_coeffs(Var::T, 4, vec![int(0), int(0), int(1)]);
        let c = series_compose(&outer, &inner).unwrap();
        assert_eq!(c, Series::from_coeffs(Var::T, 4, vec![int(1), int(0), int(1)]));

        let f = rs(&[int(3), int(-1), rat(1, 2), int(7)], 3);
        let id = Series::variable(Var::T, 3);
        assert_eq!(series_compose(&f, &id).unwrap(), f);
    }

    #[test]
    fn compose_rejects_constant_inner() {
        let f = rs(&[int(1), int(1)], 3);
        let g = rs(&[int(1), int(1)], 3);
        assert_eq!(series_compose(&f, &g), Err(AlgebraError::NonZeroConstant));
    }

    #[test]
    fn compose_degenerate_exp_with_bell_inner() {
        // e_λ(u) ∘ x(e^t − 1), order 2: 1 + x t + (x + (1−λ)x²) t²/2
        let outer = Series::from_fn(Var::X, 2, |n| {
            lambda_falling_at(&int(1), n).scale(&BigRational::from_integer(factorial(n)).recip())
        });
        let inner = Series::from_fn(Var::T, 2, |n| {
            if n == 0 {
                XPoly::zero()
            } else {
                XPoly::monomial(LambdaPoly::constant(BigRational::from_integer(factorial(n)).recip()), 1)
            }
        });
        let c = series_compose(&outer, &inner).unwrap();
        assert_eq!(c.coeff(0), &XPoly::one());
        assert_eq!(c.coeff(1), &XPoly::var());
        let expected = Poly::new(vec![lp(&[]), lp(&[1]), lp(&[1, -1])]).scale(&rat(1, 2));
        assert_eq!(c.coeff(2), &expected);
    }

    #[test]
    fn exp_examples() {
        let zero = Series::<Rational>::zero(Var::T, 4);
        assert_eq!(series_exp(&zero).unwrap(), Series::one(Var::T, 4));
        let t = Series::<Rational>::variable(Var::T, 3);
        assert_eq!(
            series_exp(&t).unwrap().coeffs(),
            &[int(1), int(1), rat(1, 2), rat(1, 6)]
        );
        assert_eq!(
            series_exp(&Series::<Rational>::one(Var::T, 2)),
            Err(AlgebraError::NonZeroConstant)
        );
    }

    #[test]
    fn exp_matches_power_sum() {
        let s = rs(&[int(0), rat(2, 3), int(-1), rat(1, 5), int(4)], 6);
        let mut naive = Series::<Rational>::zero(Var::T, 6);
        for k in 0..=6 {
            let term = s.pow(k).scale(&BigRational::from_integer(factorial(k)).recip());
            naive = naive.add(&term).unwrap();
        }
        assert_eq!(series_exp(&s).unwrap(), naive);
    }

    #[test]
    fn degenerate_exp_series_coefficient() {
        // exp(x(e_λ(t) − 1)): 2!·[t²] = (1−λ)x + x²
        let inner = Series::from_fn(Var::T, 2, |n| {
            if n == 0 {
                XPoly::zero()
            } else {
                let c = lambda_falling_at(&int(1), n).scale(&BigRational::from_integer(factorial(n)).recip());
                XPoly::monomial(c, 1)
            }
        });
        let e = series_exp(&inner).unwrap();
        let c2 = e.coeff(2).scale(&int(2));
        assert_eq!(c2, Poly::new(vec![lp(&[]), lp(&[1, -1]), lp(&[1])]));
    }

    #[test]
    fn diag_weight_examples() {
        let geo = Series::from_fn(Var::X, 5, |_| LambdaPoly::one());
        assert_eq!(diag_weight(&geo, 0), geo);
        let w1 = diag_weight(&geo, 1);
        for k in 0..=5 {
            assert_eq!(w1.coeff(k), &lp(&[k as i64]));
        }
        assert_eq!(diag_weight(&geo, 2).coeff(3), &lp(&[9, -3]));
    }

    #[test]
    fn mixed_orders_take_min_and_vars_must_match() {
        let a = rs(&[int(1), int(2)], 5);
        let b = rs(&[int(1), int(1)], 2);
        assert_eq!(a.mul(&b).unwrap().order(), 2);
        assert_eq!(a.add(&b).unwrap().order(), 2);
        let c = Series::from_coeffs(Var::X, 5, vec![int(1)]);
        assert_eq!(a.mul(&c), Err(AlgebraError::VarMismatch(Var::T, Var::X)));
    }

    #[test]
    fn derivative_and_shift() {
        let a = rs(&[int(1), int(2), int(3)], 2);
        assert_eq!(a.derivative().unwrap().coeffs(), &[int(2), int(6)]);
        assert_eq!(a.shift(2).order(), 4);
        assert_eq!(a.shift(2).coeff(3), &int(2));
        assert!(rs(&[int(1)], 0).derivative().is_err());
    }

    #[test]
    #[should_panic(expected = "known only to order")]
    fn coefficient_past_order_panics() {
        rs(&[int(1)], 2).coeff(3);
    }
}
