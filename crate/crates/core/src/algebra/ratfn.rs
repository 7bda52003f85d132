use super::poly::{LambdaPoly, SubstituteLambda, XPoly};
use super::series::{series_reciprocal, Series, Var};
use super::{int, AlgebraError, LambdaTarget, Rational, Ring};

/// Quotient of two x-polynomials whose denominator has a unit constant term,
/// so a unique power-series expansion in x exists.
///
/// Equality is decided by cross-multiplication, so `x/(1+λx)` equals
/// `x(1+λx)/(1+λx)²`.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: XPoly,
    den: XPoly,
}

impl RationalFn {
    pub fn new(num: XPoly, den: XPoly) -> Result<Self, AlgebraError> {
        let c0 = den.constant_term();
        if c0.unit_inverse().is_none() {
            return Err(AlgebraError::NonUnit(format!("{c0:?}")));
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: XPoly) -> Self {
        Self {
            num: p,
            den: XPoly::one(),
        }
    }

    pub fn num(&self) -> &XPoly {
        &self.num
    }

    pub fn den(&self) -> &XPoly {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self {
                num: Ring::add(&self.num, &other.num),
                den: self.den.clone(),
            };
        }
        Self {
            num: Ring::add(&Ring::mul(&self.num, &other.den), &Ring::mul(&other.num, &self.den)),
            den: Ring::mul(&self.den, &other.den),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            num: Ring::mul(&self.num, &other.num),
            den: Ring::mul(&self.den, &other.den),
        }
    }

    pub fn mul_poly(&self, p: &XPoly) -> Self {
        Self {
            num: Ring::mul(&self.num, p),
            den: self.den.clone(),
        }
    }

    /// Divides by a polynomial with unit constant term.
    pub fn div_poly(&self, p: &XPoly) -> Result<Self, AlgebraError> {
        Self::new(self.num.clone(), Ring::mul(&self.den, p))
    }

    pub fn scale_by(&self, c: &LambdaPoly) -> Self {
        Self {
            num: self.num.scale_by(c),
            den: self.den.clone(),
        }
    }

    /// Power series in x to the given order: `num · den⁻¹`.
    pub fn expand(&self, order: usize) -> Result<Series<LambdaPoly>, AlgebraError> {
        let num = Series::from_poly(Var::X, &self.num, order);
        let den = Series::from_poly(Var::X, &self.den, order);
        num.mul(&series_reciprocal(&den)?)
    }

    /// Applies a Möbius substitution to numerator and denominator, clearing
    /// the new denominators into a single fraction.
    pub fn substitute_mobius(&self, mode: Mobius) -> Self {
        let n = substitute_mobius(&self.num, mode);
        let d = substitute_mobius(&self.den, mode);
        Self {
            num: Ring::mul(&n.num, &d.den),
            den: Ring::mul(&d.num, &n.den),
        }
    }

    /// Value at a rational x, as a polynomial in λ.
    ///
    /// The denominator must reduce to a nonzero rational constant there.
    pub fn eval_x(&self, x: &Rational) -> Result<LambdaPoly, AlgebraError> {
        let at = LambdaPoly::constant(x.clone());
        let n = self.num.eval(&at);
        let d = self.den.eval(&at);
        if d.is_zero() {
            return Err(AlgebraError::Pole);
        }
        match d.as_rational() {
            Some(c) => Ok(n.scale(&c.recip())),
            None => match n.div_exact(&d) {
                Ok(q) => Ok(q),
                Err(_) => Err(AlgebraError::NonConstantDenominator(format!("{:?}", d.coeffs()))),
            },
        }
    }

    /// Value at rational x and λ.
    pub fn eval(&self, x: &Rational, lambda: &Rational) -> Result<Rational, AlgebraError> {
        let at = LambdaPoly::constant(x.clone());
        let n = self.num.eval(&at).eval(lambda);
        let d = self.den.eval(&at).eval(lambda);
        if Ring::is_zero(&d) {
            return Err(AlgebraError::Pole);
        }
        Ok(n / d)
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        Ring::mul(&self.num, &other.den) == Ring::mul(&other.num, &self.den)
    }
}

impl SubstituteLambda for RationalFn {
    fn substitute_lambda(&self, target: &LambdaTarget) -> Self {
        Self {
            num: self.num.substitute_lambda(target),
            den: self.den.substitute_lambda(target),
        }
    }
}

/// Substitutions of the form `x → x/(1 + c·x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mobius {
    /// `x → x/(1 + λx)`
    OnePlusLambdaX,
    /// `x → x/(1 − x)`
    OneMinusX,
    /// `x → x/(1 − λx)`, the inverse of [`Mobius::OnePlusLambdaX`].
    OneMinusLambdaX,
}

impl Mobius {
    /// The linear factor `1 + c·x` appearing in the denominator.
    pub fn factor(self) -> XPoly {
        let c = match self {
            Mobius::OnePlusLambdaX => LambdaPoly::lambda(),
            Mobius::OneMinusX => LambdaPoly::constant(int(-1)),
            Mobius::OneMinusLambdaX => Ring::neg(&LambdaPoly::lambda()),
        };
        XPoly::linear(LambdaPoly::one(), c)
    }

    /// The image of x itself, `x/(1 + c·x)`.
    pub fn image(self) -> RationalFn {
        RationalFn {
            num: XPoly::var(),
            den: self.factor(),
        }
    }

    pub fn inverse(self) -> Option<Mobius> {
        match self {
            Mobius::OnePlusLambdaX => Some(Mobius::OneMinusLambdaX),
            Mobius::OneMinusLambdaX => Some(Mobius::OnePlusLambdaX),
            Mobius::OneMinusX => None,
        }
    }
}

/// `p(x/(1+cx))` written over the denominator `(1+cx)^deg p`.
pub fn substitute_mobius(p: &XPoly, mode: Mobius) -> RationalFn {
    let d = p.degree().unwrap_or(0);
    substitute_mobius_with_degree(p, mode, d).expect("degree bound holds")
}

/// `p(x/(1+cx))` written over `(1+cx)^d` for a chosen `d ≥ deg p`.
///
/// A shared `d` lets several substituted polynomials be summed without
/// cross-multiplying denominators.
pub fn substitute_mobius_with_degree(p: &XPoly, mode: Mobius, d: usize) -> Result<RationalFn, AlgebraError> {
    if p.degree().is_some_and(|deg| deg > d) {
        return Err(AlgebraError::InvalidParameter(format!(
            "denominator power {d} below polynomial degree {}",
            p.degree().unwrap_or(0)
        )));
    }
    let factor = mode.factor();
    // powers[j] = factor^j
    let mut powers = Vec::with_capacity(d + 1);
    powers.push(XPoly::one());
    for j in 1..=d {
        powers.push(Ring::mul(&powers[j - 1], &factor));
    }
    let mut num = XPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = powers[d - k].shift(k).scale_by(c);
        num.add_assign(&term);
    }
    Ok(RationalFn {
        num,
        den: powers.swap_remove(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Poly};

    fn lp(c: &[i64]) -> LambdaPoly {
        Poly::from_rationals(c.iter().map(|&v| int(v)))
    }

    fn xr(c: &[i64]) -> XPoly {
        Poly::new(c.iter().map(|&v| lp(&[v])).collect())
    }

    /// Oracle: Σ p_k · (x/(1+cx))^k built from rational-function products.
    fn naive(p: &XPoly, mode: Mobius) -> RationalFn {
        let img = mode.image();
        let mut acc = RationalFn::from_poly(XPoly::zero());
        let mut power = RationalFn::from_poly(XPoly::one());
        for c in p.coeffs() {
            acc = acc.add(&power.scale_by(c));
            power = power.mul(&img);
        }
        acc
    }

    #[test]
    fn mobius_examples() {
        let x = XPoly::var();
        let r = substitute_mobius(&x, Mobius::OnePlusLambdaX);
        assert_eq!(r.num(), &x);
        assert_eq!(r.den(), &Mobius::OnePlusLambdaX.factor());

        // x + 2x² under x → x/(1−x) is (x + x²)/(1 − x)²
        let p = xr(&[0, 1, 2]);
        let r = substitute_mobius(&p, Mobius::OneMinusX);
        assert_eq!(r.num(), &xr(&[0, 1, 1]));
        assert_eq!(r.den(), &xr(&[1, -2, 1]));

        let one = substitute_mobius(&XPoly::one(), Mobius::OneMinusX);
        assert_eq!(one.num(), &XPoly::one());
        assert_eq!(one.den(), &XPoly::one());
    }

    #[test]
    fn mobius_matches_naive_substitution() {
        let p = Poly::new(vec![lp(&[1, 2]), lp(&[0, -1]), lp(&[3]), lp(&[1, 1, 1])]);
        for mode in [Mobius::OnePlusLambdaX, Mobius::OneMinusX, Mobius::OneMinusLambdaX] {
            assert_eq!(substitute_mobius(&p, mode), naive(&p, mode));
        }
    }

    #[test]
    fn shared_degree_is_same_function() {
        let p = xr(&[1, 1]);
        let a = substitute_mobius(&p, Mobius::OneMinusX);
        let b = substitute_mobius_with_degree(&p, Mobius::OneMinusX, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.den().degree(), Some(4));
        assert!(substitute_mobius_with_degree(&xr(&[0, 0, 1]), Mobius::OneMinusX, 1).is_err());
    }

    #[test]
    fn expand_examples() {
        let geo = RationalFn::new(XPoly::one(), xr(&[1, -1])).unwrap();
        let s = geo.expand(3).unwrap();
        assert_eq!(s.coeffs(), &[lp(&[1]), lp(&[1]), lp(&[1]), lp(&[1])]);

        let sq = RationalFn::new(XPoly::one(), xr(&[1, -2, 1])).unwrap();
        let s = sq.expand(3).unwrap();
        assert_eq!(s.coeffs(), &[lp(&[1]), lp(&[2]), lp(&[3]), lp(&[4])]);

        // x/(1+λx) = x − λx² + …
        let s = Mobius::OnePlusLambdaX.image().expand(2).unwrap();
        assert_eq!(s.coeffs(), &[lp(&[]), lp(&[1]), lp(&[0, -1])]);
    }

    #[test]
    fn non_unit_denominator_rejected() {
        assert!(RationalFn::new(XPoly::one(), XPoly::var()).is_err());
        let lam = XPoly::constant(LambdaPoly::lambda());
        assert!(RationalFn::new(XPoly::one(), lam).is_err());
    }

    #[test]
    fn evaluation_and_poles() {
        let r = Mobius::OnePlusLambdaX.image();
        assert_eq!(r.eval(&int(1), &int(1)).unwrap(), rat(1, 2));
        assert_eq!(r.eval(&int(-1), &int(1)), Err(AlgebraError::Pole));
        let s = Mobius::OneMinusX.image();
        assert_eq!(s.eval_x(&int(-1)).unwrap(), LambdaPoly::constant(rat(-1, 2)));
        assert_eq!(s.eval_x(&int(1)), Err(AlgebraError::Pole));
        assert!(matches!(
            r.eval_x(&int(1)),
            Err(AlgebraError::NonConstantDenominator(_))
        ));
    }

    #[test]
    fn inverse_mobius_roundtrip() {
        let p = Poly::new(vec![lp(&[2]), lp(&[1, 1]), lp(&[0, 0, -3])]);
        let there = substitute_mobius(&p, Mobius::OnePlusLambdaX);
        let back = there.substitute_mobius(Mobius::OneMinusLambdaX);
        assert_eq!(back, RationalFn::from_poly(p));
    }
}
