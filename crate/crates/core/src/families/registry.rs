use std::fmt;
use std::str::FromStr;

use crate::algebra::{LambdaPoly, Rational, RationalFn, XPoly};

use super::{
    bel_deg_second, bell, bell_deg, bernoulli_deg, bernoulli_number, bernoulli_poly, eulerian_poly, falling_factorial,
    falling_factorial_lambda, geom, geom_deg, geom_r, phi_deg, stirling, FamilyError, StirlingKind,
};

/// A family addressable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    FallingFactorialLambda,
    FallingFactorial,
    Stirling(StirlingKind),
    Bell,
    BellDeg,
    PhiDeg,
    Geom,
    GeomDeg,
    GeomR,
    Bernoulli,
    BernoulliDeg,
    BernoulliPoly,
    EulerianPoly,
    BelDegSecond,
}

/// One member of a family, in the narrowest exact type that holds it.
#[derive(Clone, Debug, PartialEq)]
pub enum Member {
    Rational(Rational),
    Lambda(LambdaPoly),
    X(XPoly),
    Ratio(RationalFn),
}

impl Family {
    pub const ALL: [Family; 17] = [
        Self::FallingFactorialLambda,
        Self::FallingFactorial,
        Self::Stirling(StirlingKind::S1),
        Self::Stirling(StirlingKind::S2),
        Self::Stirling(StirlingKind::S1Deg),
        Self::Stirling(StirlingKind::S2Deg),
        Self::Bell,
        Self::BellDeg,
        Self::PhiDeg,
        Self::Geom,
        Self::GeomDeg,
        Self::GeomR,
        Self::Bernoulli,
        Self::BernoulliDeg,
        Self::BernoulliPoly,
        Self::EulerianPoly,
        Self::BelDegSecond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::FallingFactorialLambda => "falling_factorial_lambda",
            Self::FallingFactorial => "falling_factorial",
            Self::Stirling(k) => k.name(),
            Self::Bell => "bell",
            Self::BellDeg => "bell_deg",
            Self::PhiDeg => "phi_deg",
            Self::Geom => "geom",
            Self::GeomDeg => "geom_deg",
            Self::GeomR => "geom_r",
            Self::Bernoulli => "bernoulli",
            Self::BernoulliDeg => "bernoulli_deg",
            Self::BernoulliPoly => "bernoulli_poly",
            Self::EulerianPoly => "eulerian_poly",
            Self::BelDegSecond => "bel_deg_second",
        }
    }

    /// Comma-separated list of every name, for error messages.
    pub fn listing() -> String {
        Self::ALL.iter().map(|f| f.name()).collect::<Vec<_>>().join(", ")
    }

    /// Triangular families are indexed by `(n, k)` with `0 ≤ k ≤ n`.
    pub fn is_triangular(self) -> bool {
        matches!(self, Self::Stirling(_))
    }

    pub fn needs_r(self) -> bool {
        self == Self::GeomR
    }

    /// Member `n` (and column `k` for triangular families).
    pub fn member(self, n: usize, k: usize, r: Option<i64>) -> Result<Member, FamilyError> {
        Ok(match self {
            Self::FallingFactorialLambda => Member::X(falling_factorial_lambda(n)),
            Self::FallingFactorial => Member::X(falling_factorial(n)),
            Self::Stirling(kind) => Member::Lambda(stirling(kind, n, k)),
            Self::Bell => Member::X(bell(n)),
            Self::BellDeg => Member::X(bell_deg(n)),
            Self::PhiDeg => Member::X(phi_deg(n)),
            Self::Geom => Member::X(geom(n)),
            Self::GeomDeg => Member::X(geom_deg(n)),
            Self::GeomR => Member::X(geom_r(n, r.ok_or(FamilyError::NonPositiveOrder(0))?)?),
            Self::Bernoulli => Member::Rational(bernoulli_number(n)),
            Self::BernoulliDeg => Member::Lambda(bernoulli_deg(n)),
            Self::BernoulliPoly => Member::X(bernoulli_poly(n)),
            Self::EulerianPoly => Member::X(eulerian_poly(n)?),
            Self::BelDegSecond => Member::Ratio(bel_deg_second(n)),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`; known families: {}", Self::listing()))
    }
}
