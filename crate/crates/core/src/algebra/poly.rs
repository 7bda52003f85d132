use std::ops::{Add, Mul, Neg, Sub};

use super::{AlgebraError, Rational, Ring};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of the i-th power.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

/// Polynomial in λ over the rationals.
pub type LambdaPoly = Poly<Rational>;

/// Polynomial in x whose coefficients are polynomials in λ.
pub type XPoly = Poly<LambdaPoly>;

impl<C: Ring> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c · var^k`
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// The polynomial variable itself.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// `a + b · var`
    pub fn linear(a: C, b: C) -> Self {
        Self::new(vec![a, b])
    }

    pub fn from_rationals<I: IntoIterator<Item = Rational>>(it: I) -> Self {
        Self::new(it.into_iter().map(C::from_rational).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(0)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at);
            acc.add_assign(c);
        }
        acc
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale_by(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = Ring::mul(&acc, self);
        }
        acc
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&super::int(k as i64)))
                .collect(),
        )
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Substitutes another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = Ring::mul(&acc, inner);
            acc = Ring::add(&acc, &Self::constant(c.clone()));
        }
        acc
    }

    /// Division with remainder by a divisor whose leading coefficient is a unit.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        let lead = divisor.leading().ok_or_else(|| AlgebraError::NonUnit("0".into()))?;
        let inv = lead
            .unit_inverse()
            .ok_or_else(|| AlgebraError::NonUnit(format!("{lead:?}")))?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![C::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = rem[i + dd].mul(&inv);
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j].sub_assign(&q.mul(d));
                }
            }
            quot[i] = q;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact division; fails when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::NotDivisible)
        }
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].add_product(a, b);
            }
        }
        Poly::new(out)
    }
    fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
        }
    }
    fn scale(&self, c: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }
    fn from_rational(c: Rational) -> Self {
        Poly::constant(C::from_rational(c))
    }
    fn unit_inverse(&self) -> Option<Self> {
        match self.coeffs.len() {
            1 => self.coeffs[0].unit_inverse().map(Poly::constant),
            _ => None,
        }
    }
    fn add_assign(&mut self, rhs: &Self) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), C::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.add_assign(b);
        }
        self.trim();
    }
    fn sub_assign(&mut self, rhs: &Self) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), C::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.sub_assign(b);
        }
        self.trim();
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return;
        }
        let need = a.coeffs.len() + b.coeffs.len() - 1;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, C::zero());
        }
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                self.coeffs[i + j].add_product(x, y);
            }
        }
        self.trim();
    }
}

impl<C: Ring> Poly<C> {
    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl<C: Ring> From<C> for Poly<C> {
    fn from(c: C) -> Self {
        Poly::constant(c)
    }
}

impl<C: Ring> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Poly<C> {
        Ring::add(self, rhs)
    }
}

impl<C: Ring> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        Ring::sub(self, rhs)
    }
}

impl<C: Ring> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        Ring::mul(self, rhs)
    }
}

impl<C: Ring> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Ring::neg(self)
    }
}

/// Exact product of two x-polynomials.
pub fn poly_mul(a: &XPoly, b: &XPoly) -> XPoly {
    Ring::mul(a, b)
}

impl LambdaPoly {
    /// The polynomial `λ`.
    pub fn lambda() -> Self {
        Poly::var()
    }

    /// Returns the constant value when the polynomial has λ-degree ≤ 0.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_constant().then(|| self.constant_term())
    }
}

impl XPoly {
    /// Embeds a rational-coefficient polynomial in x.
    pub fn from_rational_poly(p: &Poly<Rational>) -> Self {
        p.map(|c| LambdaPoly::constant(c.clone()))
    }

    /// Largest λ-degree over all coefficients, `None` for the zero polynomial.
    pub fn lambda_degree(&self) -> Option<usize> {
        self.coeffs().iter().filter_map(|c| c.degree()).max()
    }
}

/// Target of a λ-specialization.
#[derive(Clone, Debug, PartialEq)]
pub enum LambdaTarget {
    /// λ → 0, the classical limit.
    Zero,
    /// λ → c for a rational c.
    Value(Rational),
    /// λ → c·λ, e.g. c = 1/2 for the half-parameter families.
    Scale(Rational),
}

impl LambdaTarget {
    pub fn half() -> Self {
        LambdaTarget::Scale(super::rat(1, 2))
    }
}

/// Exact substitution for λ.
pub trait SubstituteLambda: Sized {
    fn substitute_lambda(&self, target: &LambdaTarget) -> Self;
}

impl SubstituteLambda for Rational {
    fn substitute_lambda(&self, _: &LambdaTarget) -> Self {
        self.clone()
    }
}

impl SubstituteLambda for LambdaPoly {
    fn substitute_lambda(&self, target: &LambdaTarget) -> Self {
        match target {
            LambdaTarget::Zero => Poly::constant(self.constant_term()),
            LambdaTarget::Value(c) => Poly::constant(self.eval(c)),
            LambdaTarget::Scale(c) => {
                let mut power = <Rational as Ring>::one();
                let mut out = Vec::with_capacity(self.coeffs().len());
                for a in self.coeffs() {
                    out.push(a * &power);
                    power *= c;
                }
                Poly::new(out)
            }
        }
    }
}

impl SubstituteLambda for XPoly {
    fn substitute_lambda(&self, target: &LambdaTarget) -> Self {
        self.map(|c| c.substitute_lambda(target))
    }
}

/// `(k)_{m,λ} = k(k−λ)(k−2λ)⋯(k−(m−1)λ)` as a polynomial in λ.
pub fn lambda_falling_at(k: &Rational, m: usize) -> LambdaPoly {
    (0..m).fold(LambdaPoly::one(), |acc, j| {
        let factor = Poly::linear(k.clone(), super::int(-(j as i64)));
        Ring::mul(&acc, &factor)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn lp(c: &[i64]) -> LambdaPoly {
        Poly::from_rationals(c.iter().map(|&v| int(v)))
    }

    fn xp(c: &[LambdaPoly]) -> XPoly {
        Poly::new(c.to_vec())
    }

    #[test]
    fn poly_mul_examples() {
        // x · (x − λ) = x² − λx
        let x = XPoly::var();
        let x_minus_l = xp(&[lp(&[0, -1]), lp(&[1])]);
        assert_eq!(poly_mul(&x, &x_minus_l), xp(&[lp(&[]), lp(&[0, -1]), lp(&[1])]));
        // a · 1 = a
        assert_eq!(poly_mul(&x_minus_l, &XPoly::one()), x_minus_l);
        // (1 + x)(1 − x) = 1 − x²
        let a = xp(&[lp(&[1]), lp(&[1])]);
        let b = xp(&[lp(&[1]), lp(&[-1])]);
        assert_eq!(poly_mul(&a, &b), xp(&[lp(&[1]), lp(&[]), lp(&[-1])]));
    }

    #[test]
    fn degree_adds_under_multiplication() {
        let a = xp(&[lp(&[1, 2]), lp(&[0, 0, 3])]);
        let b = xp(&[lp(&[5]), lp(&[1]), lp(&[0, 1])]);
        assert_eq!(poly_mul(&a, &b).degree(), Some(3));
        assert_eq!(poly_mul(&a, &XPoly::zero()).degree(), None);
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = lp(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(lp(&[0, 0]).is_zero());
    }

    #[test]
    fn div_rem_by_monic() {
        // (x³ − 1) / (x − 1) = x² + x + 1
        let num = lp(&[-1, 0, 0, 1]);
        let den = lp(&[-1, 1]);
        let (q, r) = num.div_rem(&den).unwrap();
        assert_eq!(q, lp(&[1, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(lp(&[1, 0, 1]).div_exact(&den), Err(AlgebraError::NotDivisible));
    }

    #[test]
    fn lambda_substitution_targets() {
        // (1 − λ) at λ → 0 is 1
        assert_eq!(lp(&[1, -1]).substitute_lambda(&LambdaTarget::Zero), lp(&[1]));
        // β₂ = (1 − λ²)/6 at λ → λ/2 is (1 − λ²/4)/6
        let beta2 = Poly::new(vec![rat(1, 6), int(0), rat(-1, 6)]);
        let halved = Poly::new(vec![rat(1, 6), int(0), rat(-1, 24)]);
        assert_eq!(beta2.substitute_lambda(&LambdaTarget::half()), halved);
        // (x)_{2,λ} at λ → 1 is x(x − 1)
        let ff2 = xp(&[lp(&[]), lp(&[0, -1]), lp(&[1])]);
        let classical = xp(&[lp(&[]), lp(&[-1]), lp(&[1])]);
        assert_eq!(ff2.substitute_lambda(&LambdaTarget::Value(int(1))), classical);
    }

    #[test]
    fn lambda_falling_at_small() {
        // (3)_{2,λ} = 9 − 3λ
        assert_eq!(lambda_falling_at(&int(3), 2), lp(&[9, -3]));
        assert_eq!(lambda_falling_at(&int(5), 0), lp(&[1]));
        assert_eq!(lambda_falling_at(&int(4), 1), lp(&[4]));
    }

    #[test]
    fn eval_and_compose() {
        let p = lp(&[1, 2, 3]);
        assert_eq!(p.eval(&int(2)), int(17));
        // p(λ + 1)
        let q = p.compose(&lp(&[1, 1]));
        assert_eq!(q.eval(&int(1)), int(17));
        assert_eq!(p.derivative(), lp(&[2, 6]));
    }
}
