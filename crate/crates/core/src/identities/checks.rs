use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{
    binomial, diag_weight, factorial, gamma_moment, int, lambda_falling_at, rat, rising_factorial, series_compose,
    series_exp, series_reciprocal, substitute_mobius_with_degree, LambdaPoly, LambdaTarget, Mobius, Poly, Rational,
    RationalFn, Ring, Series, SubstituteLambda, Var, XPoly,
};
use crate::families::{
    bel_deg_second, bell, bell_deg, bernoulli_deg, bernoulli_number, bernoulli_poly, e_lambda_quotient_series,
    e_lambda_series, eulerian_poly, geom, geom_deg, geom_r, lambda_one, phi_deg, stirling, StirlingKind,
    TriangularTable,
};

use super::verdict::{Counterexample, Param, Params, Status, Value, Verdict};
use super::IdentityError;

/// Whether a check runs as stated or with its deliberate fault injected.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Control {
    #[default]
    Faithful,
    /// Negative control: perturb one ingredient so the check must fail.
    Negative,
}

impl Control {
    fn negative(self) -> bool {
        self == Control::Negative
    }
}

type Outcome = Result<(), Box<Counterexample>>;

fn loc<const N: usize>(pairs: [(&str, Param); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn expect<T>(lhs: &T, rhs: &T, location: impl FnOnce() -> Params) -> Outcome
where
    T: PartialEq + Clone + Into<Value>,
{
    if lhs == rhs {
        Ok(())
    } else {
        Err(Box::new(Counterexample {
            location: location(),
            lhs: lhs.clone().into(),
            rhs: rhs.clone().into(),
        }))
    }
}

/// Compares two series coefficientwise; the mismatch location gains a `k` entry.
fn expect_series<R>(
    lhs: &Series<R>,
    rhs: &Series<R>,
    location: impl FnOnce() -> Params,
) -> Result<Outcome, IdentityError>
where
    R: Ring + Into<Value>,
{
    Ok(match lhs.first_mismatch(rhs)? {
        None => Ok(()),
        Some(k) => {
            let mut at = location();
            at.insert("k".into(), Param::from(k));
            Err(Box::new(Counterexample {
                location: at,
                lhs: lhs.coeff(k).clone().into(),
                rhs: rhs.coeff(k).clone().into(),
            }))
        }
    })
}

struct Report {
    id: &'static str,
    description: &'static str,
    params: Params,
    checked_range: Vec<(&'static str, usize)>,
}

impl Report {
    fn new(id: &'static str, description: &'static str) -> Self {
        Self {
            id,
            description,
            params: Params::new(),
            checked_range: Vec::new(),
        }
    }

    fn param(mut self, name: &str, value: impl Into<Param>) -> Self {
        self.params.insert(name.to_string(), value.into());
        self
    }

    fn range(mut self, name: &'static str, bound: usize) -> Self {
        self.checked_range.push((name, bound));
        self
    }

    fn finish(self, control: Control, outcome: Outcome) -> Verdict {
        let mut params = self.params;
        if control.negative() {
            params.insert("negative_control".into(), Param::Int(1));
        }
        let (status, counterexample) = match outcome {
            Ok(()) => (Status::Pass, None),
            Err(c) => (Status::Fail, Some(*c)),
        };
        Verdict {
            id: self.id.to_string(),
            status,
            checked_range: self
                .checked_range
                .iter()
                .map(|&(k, v)| (k.to_string(), v as i64))
                .collect(),
            counterexample,
            description: self.description.to_string(),
            params,
        }
    }
}

fn fact(n: usize) -> Rational {
    BigRational::from_integer(factorial(n))
}

fn big(n: BigInt) -> Rational {
    BigRational::from_integer(n)
}

fn lconst(c: Rational) -> LambdaPoly {
    LambdaPoly::constant(c)
}

/// `S₁(m,l)·λ^{m−l}`, the coefficients of `(x)_{m,λ}` in powers of x.
fn lambda_power_weight(m: usize, l: usize) -> LambdaPoly {
    Ring::mul(&stirling(StirlingKind::S1, m, l), &LambdaPoly::monomial(int(1), m - l))
}

/// `f(k)` for a polynomial given by its coefficient list.
fn eval_rational_poly(f: &[Rational], k: usize) -> Rational {
    Poly::new(f.to_vec()).eval(&int(k as i64))
}

/// `Σ_{l≤m} S₁(m,l) λ^{m−l} W(l)(x/(1−x))` over the shared denominator `(1−x)^m`.
fn lambda_falling_transform(
    m: usize,
    family: impl Fn(usize) -> Result<XPoly, IdentityError>,
) -> Result<RationalFn, IdentityError> {
    let mut acc: Option<RationalFn> = None;
    for l in 0..=m {
        let w = lambda_power_weight(m, l);
        if w.is_zero() {
            continue;
        }
        let term = substitute_mobius_with_degree(&family(l)?, Mobius::OneMinusX, m)?.scale_by(&w);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    Ok(acc.unwrap_or_else(|| RationalFn::from_poly(XPoly::zero())))
}

fn one_minus_x_pow(e: usize) -> XPoly {
    Mobius::OneMinusX.factor().pow(e)
}

/// `(β_{n+1,λ} − 2^{n+1} β_{n+1,λ/2})/(n+1)`; the power of two is `2^{n+1−shift}`.
fn beta_difference(n: usize, shift: u32) -> LambdaPoly {
    let b = bernoulli_deg(n + 1);
    let halved = b.substitute_lambda(&LambdaTarget::half());
    let two_pow = big(BigInt::from(2).pow(n as u32 + 1 - shift));
    Ring::sub(&b, &halved.scale(&two_pow)).scale(&rat(1, n as i64 + 1))
}

pub fn check_gamma_moment(n_max: usize, control: Control) -> Result<Verdict, IdentityError> {
    let report = Report::new(
        "T1",
        "∫₀^∞ φ_{n,λ}(xy) e^{−y} dy = W_{n,λ}(x), integral taken exactly by y^k ↦ k!",
    )
    .param("n_max", n_max)
    .range("n", n_max);
    let outcome = (|| {
        for n in 0..=n_max {
            // φ_{n,λ}(xy) as a polynomial in y: coefficient of y^k is S_{2,λ}(n,k) x^k
            let in_y: Poly<XPoly> = Poly::new(
                phi_deg(n)
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| XPoly::monomial(c.clone(), k))
                    .collect(),
            );
            let lhs = if control.negative() {
                in_y.coeffs()
                    .iter()
                    .enumerate()
                    .fold(XPoly::zero(), |acc, (k, c)| Ring::add(&acc, &c.scale(&fact(k + 1))))
            } else {
                gamma_moment(&in_y)
            };
            expect(&lhs, &geom_deg(n), || loc([("n", n.into())]))?;
        }
        Ok(())
    })();
    Ok(report.finish(control, outcome))
}

pub fn check_euler_operator(n_max: usize, g: &Series<LambdaPoly>, control: Control) -> Result<Verdict, IdentityError> {
    if g.order() < n_max + 5 {
        return Err(IdentityError::InvalidParams(format!(
            "series order {} must be at least n_max + 5 = {}",
            g.order(),
            n_max + 5
        )));
    }
    let order = g.order();
    let report = Report::new("L2", "(xD)^n g(x) = Σ_k S₂(n,k) x^k D^k g(x) as truncated series in x")
        .param("n_max", n_max)
        .param("order", order)
        .range("n", n_max)
        .range("order", order);
    let derivatives = {
        let mut ds = vec![g.clone()];
        for k in 1..=n_max {
            let next = ds[k - 1].derivative()?;
            ds.push(next);
        }
        ds
    };
    let mut outcome = Ok(());
    for n in 0..=n_max {
        let power = if control.negative() { n + 1 } else { n };
        let lhs = g.map_indexed(|k, c| c.scale(&big(BigInt::from(k).pow(power as u32))));
        let mut rhs = Series::zero(Var::X, order);
        for (k, d) in derivatives.iter().enumerate().take(n + 1) {
            let s2 = stirling(StirlingKind::S2, n, k);
            let term = d.shift(k).truncate(order)?.scale_by(&s2);
            rhs = rhs.add(&term)?;
        }
        outcome = expect_series(&lhs, &rhs, || loc([("n", n.into())]))?;
        if outcome.is_err() {
            break;
        }
    }
    Ok(report.finish(control, outcome))
}

/// The power series `g` fed to the series transformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKernel {
    /// `g(x) = e_λ(x)`, with `g^{(k)}(x) = (1)_{k,λ} e_λ(x)/(1+λx)^k`.
    ELambda,
    /// `g(x) = 1/(1−x)`, with `g^{(k)}(x) = k!/(1−x)^{k+1}`.
    Geometric,
    /// `g(x) = (1−x)^{−r}`, with `g^{(k)}(x) = r(r+1)⋯(r+k−1)/(1−x)^{r+k}`.
    GeometricR(i64),
}

impl TransformKernel {
    pub fn name(self) -> String {
        match self {
            Self::ELambda => "e_lambda".into(),
            Self::Geometric => "geom1".into(),
            Self::GeometricR(r) => format!("geom_r({r})"),
        }
    }

    /// `g^{(k)}(0)/k!`
    fn taylor_coeff(self, k: usize) -> LambdaPoly {
        match self {
            Self::ELambda => lambda_one(k).scale(&fact(k).recip()),
            Self::Geometric => LambdaPoly::one(),
            Self::GeometricR(r) => lconst(big(binomial(r as usize + k - 1, k))),
        }
    }

    /// `g^{(k)}(x)` as a series in x, from the closed-form derivative rule.
    fn derivative_series(self, k: usize, order: usize) -> Result<Series<LambdaPoly>, IdentityError> {
        Ok(match self {
            Self::ELambda => {
                let damp = RationalFn::new(XPoly::one(), Mobius::OnePlusLambdaX.factor().pow(k))?.expand(order)?;
                e_lambda_series(Var::X, order).mul(&damp)?.scale_by(&lambda_one(k))
            }
            Self::Geometric => RationalFn::new(XPoly::one(), one_minus_x_pow(k + 1))?
                .expand(order)?
                .scale(&fact(k)),
            Self::GeometricR(r) => RationalFn::new(XPoly::one(), one_minus_x_pow(r as usize + k))?
                .expand(order)?
                .scale(&big(rising_factorial(r, k))),
        })
    }
}

pub fn check_series_transform(
    f: &[Rational],
    g: TransformKernel,
    order: usize,
    control: Control,
) -> Result<Verdict, IdentityError> {
    let report = Report::new(
        "T3",
        "Σ_k g^{(k)}(0)/k! f(k) x^k = Σ_n f^{(n)}(0)/n! Σ_k S₂(n,k) g^{(k)}(x) x^k for polynomial f",
    )
    .param("g", g.name().as_str())
    .param("order", order)
    .param("deg_f", f.len().saturating_sub(1))
    .range("order", order);
    let outcome = transform_outcome(f, g, order, control, Params::new())?;
    Ok(report.finish(control, outcome))
}

fn transform_outcome(
    f: &[Rational],
    g: TransformKernel,
    order: usize,
    control: Control,
    base: Params,
) -> Result<Outcome, IdentityError> {
    if let TransformKernel::GeometricR(r) = g {
        if r <= 0 {
            return Err(IdentityError::InvalidParams(format!("r must be positive, got {r}")));
        }
    }
    let lhs = Series::from_fn(Var::X, order, |k| {
        let mut c = g.taylor_coeff(k).scale(&eval_rational_poly(f, k));
        if control.negative() {
            c = c.scale(&int(k as i64 + 1));
        }
        c
    });
    let degree = f.len().saturating_sub(1);
    let mut derivs = Vec::with_capacity(degree + 1);
    for k in 0..=degree {
        derivs.push(g.derivative_series(k, order)?.shift(k).truncate(order)?);
    }
    let mut rhs = Series::zero(Var::X, order);
    for (n, fn_coeff) in f.iter().enumerate() {
        if Ring::is_zero(fn_coeff) {
            continue;
        }
        for (k, d) in derivs.iter().enumerate().take(n + 1) {
            let weight = stirling(StirlingKind::S2, n, k).scale(fn_coeff);
            rhs = rhs.add(&d.scale_by(&weight))?;
        }
    }
    expect_series(&lhs, &rhs, || base)
}

/// Monomial `x^d` as a coefficient list.
pub fn monomial_coeffs(d: usize) -> Vec<Rational> {
    let mut c = vec![int(0); d + 1];
    c[d] = int(1);
    c
}

/// Runs the series transformation over `f = x^d` for `d ≤ deg_max` and every kernel.
pub fn check_series_transform_suite(
    deg_max: usize,
    r_max: i64,
    order: usize,
    control: Control,
) -> Result<Verdict, IdentityError> {
    let report = Report::new(
        "T3",
        "Σ_k g^{(k)}(0)/k! f(k) x^k = Σ_n f^{(n)}(0)/n! Σ_k S₂(n,k) g^{(k)}(x) x^k for f = x^d and g ∈ {e_λ, 1/(1−x), (1−x)^{−r}}",
    )
    .param("deg_max", deg_max)
    .param("r_max", r_max)
    .param("order", order)
    .range("d", deg_max)
    .range("r", r_max as usize)
    .range("order", order);
    let mut kernels = vec![TransformKernel::ELambda, TransformKernel::Geometric];
    kernels.extend((1..=r_max).map(TransformKernel::GeometricR));
    let mut outcome = Ok(());
    'outer: for g in kernels {
        for d in 0..=deg_max {
            let base = loc([("g", g.name().as_str().into()), ("d", d.into())]);
            outcome = transform_outcome(&monomial_coeffs(d), g, order, control, base)?;
            if outcome.is_err() {
                break 'outer;
            }
        }
    }
    Ok(report.finish(control, outcome))
}

fn bell_transform_outcome(
    f: &[Rational],
    order: usize,
    control: Control,
    base: Params,
) -> Result<Outcome, IdentityError> {
    let lhs = Series::from_fn(Var::X, order, |n| {
        lambda_one(n).scale(&(eval_rational_poly(f, n) * fact(n).recip()))
    });
    let mut inner = Series::zero(Var::X, order);
    for (n, c) in f.iter().enumerate() {
        if Ring::is_zero(c) {
            continue;
        }
        let bel = if control.negative() {
            RationalFn::from_poly(bell_deg(n))
        } else {
            bel_deg_second(n)
        };
        inner = inner.add(&bel.expand(order)?.scale(c))?;
    }
    let rhs = e_lambda_series(Var::X, order).mul(&inner)?;
    expect_series(&lhs, &rhs, || base)
}

pub fn check_bell_transform(f: &[Rational], order: usize, control: Control) -> Result<Verdict, IdentityError> {
    let report = Report::new(
        "T4",
        "Σ_n (1)_{n,λ}/n! f(n) x^n = e_λ(x) Σ_n f^{(n)}(0)/n! Bel_{n,λ}(x/(1+λx)) for polynomial f",
    )
    .param("deg_f", f.len().saturating_sub(1))
    .param("order", order)
    .range("order", order);
    let outcome = bell_transform_outcome(f, order, control, Params::new())?;
    Ok(report.finish(control, outcome))
}

/// The degenerate Bell transform over every monomial `f = x^d`, `d ≤ deg_max`.
pub fn check_bell_transform_suite(deg_max: usize, order: usize, control: Control) -> Result<Verdict, IdentityError> {
    let report = Report::new(
        "T4",
        "Σ_n (1)_{n,λ}/n! f(n) x^n = e_λ(x) Σ_n f^{(n)}(0)/n! Bel_{n,λ}(x/(1+λx)) for f = x^d",
    )
    .param("deg_max", deg_max)
    .param("order", order)
    .range("d", deg_max)
    .range("order", order);
    let mut outcome = Ok(());
    for d in 0..=deg_max {
        outcome = bell_transform_outcome(&monomial_coeffs(d), order, control, loc([("d", d.into())]))?;
        if outcome.is_err() {
            break;
        }
    }
    Ok(report.finish(control, outcome))
}

/// `Σ_k p_k (x/(1+λx))^k` built from rational-function products and sums.
fn substitute_by_products(p: &XPoly, mode: Mobius) -> RationalFn {
    let image = mode.image();
    let mut acc = RationalFn::from_poly(XPoly::zero());
    let mut power = RationalFn::from_poly(XPoly::one());
    for c in p.coeffs() {
        acc = acc.add(&power.scale_by(c));
        power = power.mul(&image);
    }
    acc
}

pub fn check_second_kind_bell(n_max: usize, order: usize, control: Control) -> Result<Verdict, IdentityError> {
    if order < n_max {
        return Err(IdentityError::InvalidParams(format!(
            "order {order} must be at least n_max {n_max}"
        )));
    }
    let report = Report::new(
        "T5_T6",
        "bel_{n,λ}(x) e_λ(x) = (xD)^n e_λ(x) = Σ_k (1)_{k,λ}/k! k^n x^k with bel_{n,λ}(x) = Bel_{n,λ}(x/(1+λx)); \
         the closed form is also checked against substitution by rational-function products and against \
         e_λ(x)^{-1} Σ_k (1)_{k,λ}/k! k^n x^k",
    )
    .param("n_max", n_max)
    .param("order", order)
    .range("n", n_max)
    .range("order", order);
    let e = e_lambda_series(Var::X, order);
    let e_inv = series_reciprocal(&e)?;
    let outcome = (|| -> Result<Outcome, IdentityError> {
        for n in 0..=n_max {
            let closed = if control.negative() {
                RationalFn::from_poly(bell_deg(n))
            } else {
                bel_deg_second(n)
            };
            // exact rational-function level
            let naive = substitute_by_products(&bell_deg(n), Mobius::OnePlusLambdaX);
            if closed != naive {
                return Ok(Err(Box::new(Counterexample {
                    location: loc([("n", n.into()), ("level", "rational_fn".into())]),
                    lhs: Ring::mul(closed.num(), naive.den()).into(),
                    rhs: Ring::mul(naive.num(), closed.den()).into(),
                })));
            }
            let expanded = closed.expand(order)?;
            let power = n as u32;
            let weighted = e.map_indexed(|k, c| c.scale(&big(BigInt::from(k).pow(power))));
            let lhs = expanded.mul(&e)?;
            if let Err(c) = expect_series(&lhs, &weighted, || loc([("n", n.into()), ("level", "series".into())]))? {
                return Ok(Err(c));
            }
            let oracle = e_inv.mul(&weighted)?;
            if let Err(c) = expect_series(&expanded, &oracle, || {
                loc([("n", n.into()), ("level", "oracle".into())])
            })? {
                return Ok(Err(c));
            }
        }
        Ok(Ok(()))
    })()?;
    Ok(report.finish(control, outcome))
}

pub fn check_lambda_falling_sums(m_max: usize, order: usize, control: Control) -> Result<Verdict, IdentityError> {
    if order < 4 {
        return Err(IdentityError::InvalidParams(format!(
            "order {order} must be at least 4"
        )));
    }
    let report = Report::new(
        "T7",
        "Σ_k ((0)_{m,λ} + ⋯ + (k)_{m,λ}) x^k = (1−x)^{−2} Σ_l S₁(m,l) λ^{m−l} W_l(x/(1−x))",
    )
    .param("m_max", m_max)
    .param("order", order)
    .range("m", m_max)
    .range("k", order);
    let mut outcome = Ok(());
    for m in 0..=m_max {
        let start = usize::from(control.negative());
        let lhs = Series::from_fn(Var::X, order, |k| {
            (start..=k).fold(LambdaPoly::zero(), |acc, j| {
                Ring::add(&acc, &lambda_falling_at(&int(j as i64), m))
            })
        });
        let rhs = lambda_falling_transform(m, |l| Ok(geom(l)))?
            .div_poly(&one_minus_x_pow(2))?
            .expand(order)?;
        outcome = expect_series(&lhs, &rhs, || loc([("m", m.into())]))?;
        if outcome.is_err() {
            break;
        }
    }
    Ok(report.finish(control, outcome))
}

pub fn check_faulhaber(m_max: usize, k_max: usize, control: Control) -> Result<Verdict, IdentityError> {
    if m_max < 1 {
        return Err(IdentityError::InvalidParams("m_max must be at least 1".into()));
    }
    let report = Report::new(
        "E40",
        "Σ_{i=0}^k i^m = (B_{m+1}(k+1) − B_{m+1})/(m+1), also equal to [x^k] (1−x)^{−2} W_m(x/(1−x))",
    )
    .param("m_max", m_max)
    .param("k_max", k_max)
    .range("m", m_max)
    .range("k", k_max);
    let mut outcome = Ok(());
    'outer: for m in 1..=m_max {
        let bp = bernoulli_poly(m + 1);
        let bn = bernoulli_number(m + 1);
        let shift = if control.negative() { 0 } else { 1 };
        let series = substitute_mobius_with_degree(&geom(m), Mobius::OneMinusX, m)?
            .div_poly(&one_minus_x_pow(2))?
            .expand(k_max)?;
        let mut direct = int(0);
        for k in 0..=k_max {
            direct += big(BigInt::from(k).pow(m as u32));
            let at = lconst(int((k + shift) as i64));
            let faulhaber = (bp.eval(&at).constant_term() - &bn) * rat(1, m as i64 + 1);
            let checks = [("bernoulli", faulhaber), ("series", series.coeff(k).constant_term())];
            for (route, value) in checks {
                outcome = expect(&direct, &value, || {
                    loc([("m", m.into()), ("k", k.into()), ("route", route.into())])
                });
                if outcome.is_err() {
                    break 'outer;
                }
            }
        }
    }
    Ok(report.finish(control, outcome))
}

pub fn check_eulerian(m_max: usize, order: usize, control: Control) -> Result<Verdict, IdentityError> {
    if order < m_max + 2 {
        return Err(IdentityError::InvalidParams(format!(
            "order {order} must be at least m_max + 2"
        )));
    }
    let report = Report::new(
        "E44_E46",
        "A_m(x) = (1−x)^m W_m(x/(1−x)) is a polynomial with coefficient sum m!, Σ_k k^m x^k = A_m(x)/(1−x)^{m+1}, \
         and Σ_k (k)_{m,λ} x^k = Σ_l S₁(m,l) λ^{m−l} A_l(x)/(1−x)^{l+1}",
    )
    .param("m_max", m_max)
    .param("order", order)
    .range("m", m_max)
    .range("k", order);
    let mut eulerian = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        eulerian.push(eulerian_poly(m)?);
    }
    let outcome = (|| -> Result<Outcome, IdentityError> {
        for (m, a) in eulerian.iter().enumerate() {
            let sum = a.coeffs().iter().fold(LambdaPoly::zero(), |acc, c| Ring::add(&acc, c));
            if let Err(c) = expect(&sum, &lconst(fact(m)), || {
                loc([("m", m.into()), ("part", "coefficient_sum".into())])
            }) {
                return Ok(Err(c));
            }
            let power = if control.negative() { m } else { m + 1 };
            let lhs = RationalFn::new(a.clone(), one_minus_x_pow(power))?.expand(order)?;
            let rhs = Series::from_fn(Var::X, order, |k| lconst(big(BigInt::from(k).pow(m as u32))));
            if let Err(c) = expect_series(&lhs, &rhs, || loc([("m", m.into()), ("part", "power_sum".into())]))? {
                return Ok(Err(c));
            }
            let mut chain = Series::zero(Var::X, order);
            for (l, al) in eulerian.iter().enumerate().take(m + 1) {
                let w = lambda_power_weight(m, l);
                if w.is_zero() {
                    continue;
                }
                chain = chain.add(
                    &RationalFn::new(al.clone(), one_minus_x_pow(l + 1))?
                        .expand(order)?
                        .scale_by(&w),
                )?;
            }
            let direct = Series::from_fn(Var::X, order, |k| lambda_falling_at(&int(k as i64), m));
            if let Err(c) = expect_series(&direct, &chain, || {
                loc([("m", m.into()), ("part", "lambda_chain".into())])
            })? {
                return Ok(Err(c));
            }
        }
        Ok(Ok(()))
    })()?;
    Ok(report.finish(control, outcome))
}

pub fn check_r_geometric(m_max: usize, r_max: usize, order: usize, control: Control) -> Result<Verdict, IdentityError> {
    if r_max < 1 {
        return Err(IdentityError::InvalidParams("r_max must be at least 1".into()));
    }
    let report = Report::new(
        "E50_E56",
        "Σ_k C(r+k−1,k) (k)_{m,λ} x^k = x^{λm}(x^{1−λ}D)^m (1−x)^{−r} = (1−x)^{−r} Σ_l S₁(m,l) λ^{m−l} W_l(x/(1−x)|r), \
         with W_n(x|r) = Σ_k S₂(n,k) r(r+1)⋯(r+k−1) x^k",
    )
    .param("m_max", m_max)
    .param("r_max", r_max)
    .param("order", order)
    .range("m", m_max)
    .range("r", r_max)
    .range("k", order);
    let outcome = (|| -> Result<Outcome, IdentityError> {
        for r in 1..=r_max {
            let binomial_series = RationalFn::new(XPoly::one(), one_minus_x_pow(r))?.expand(order)?;
            let extra = usize::from(control.negative());
            for m in 0..=m_max {
                let lhs = Series::from_fn(Var::X, order, |k| {
                    lambda_falling_at(&int(k as i64), m).scale(&big(binomial(r + k - 1 + extra, k)))
                });
                let rhs = lambda_falling_transform(m, |l| Ok(geom_r(l, r as i64)?))?
                    .div_poly(&one_minus_x_pow(r))?
                    .expand(order)?;
                let at = || loc([("m", m.into()), ("r", r.into())]);
                if let Err(c) = expect_series(&lhs, &rhs, at)? {
                    return Ok(Err(c));
                }
                let operator = diag_weight(&binomial_series, m);
                if let Err(c) = expect_series(&operator, &rhs, || {
                    loc([("m", m.into()), ("r", r.into()), ("route", "operator".into())])
                })? {
                    return Ok(Err(c));
                }
            }
        }
        Ok(Ok(()))
    })()?;
    Ok(report.finish(control, outcome))
}

pub fn check_alternating_stirling(n_max: usize, control: Control) -> Result<Verdict, IdentityError> {
    let report = Report::new(
        "T8",
        "Σ_k S_{2,λ}(n,k) 2^{−k} (−1)^k k! = W_{n,λ}(−1/2) = 2/(n+1) (β_{n+1,λ} − 2^{n+1} β_{n+1,λ/2})",
    )
    .param("n_max", n_max)
    .range("n", n_max);
    let minus_half = rat(-1, 2);
    let mut outcome = Ok(());
    for n in 0..=n_max {
        let sum = (0..=n).fold(LambdaPoly::zero(), |acc, k| {
            let w = big(BigInt::from(-1).pow(k as u32)) * fact(k) * rat(1, 1 << k);
            Ring::add(&acc, &stirling(StirlingKind::S2Deg, n, k).scale(&w))
        });
        let eval = geom_deg(n).eval(&lconst(minus_half.clone()));
        let shift = u32::from(control.negative());
        let beta = beta_difference(n, shift).scale(&int(2));
        outcome = expect(&sum, &eval, || loc([("n", n.into()), ("pair", "sum_vs_eval".into())]))
            .and_then(|_| expect(&eval, &beta, || loc([("n", n.into()), ("pair", "eval_vs_beta".into())])));
        if outcome.is_err() {
            break;
        }
    }
    Ok(report.finish(control, outcome))
}

pub fn check_reciprocal_e_lambda(order: usize, control: Control) -> Result<Verdict, IdentityError> {
    if order < 2 {
        return Err(IdentityError::InvalidParams(format!(
            "order {order} must be at least 2"
        )));
    }
    let report = Report::new(
        "E57_E58",
        "1/(e_λ(t)+1) = Σ_n (β_{n+1,λ} − 2^{n+1} β_{n+1,λ/2})/(n+1) tⁿ/n!, 2/(e_λ(t)+1) = Σ_n W_{n,λ}(−1/2) tⁿ/n!, \
         and e_λ(t)² = e_{λ/2}(2t)",
    )
    .param("order", order)
    .range("n", order);
    let e = e_lambda_series(Var::T, order);
    let shift = u32::from(control.negative());
    let outcome = (|| -> Result<Outcome, IdentityError> {
        let squared = e.mul(&e)?;
        let doubled = e
            .substitute_lambda(&LambdaTarget::half())
            .map_indexed(|n, c| c.scale(&big(BigInt::from(2).pow(n as u32))));
        if let Err(c) = expect_series(&squared, &doubled, || loc([("part", "duplication".into())]))? {
            return Ok(Err(c));
        }
        let plus_one = e.add(&Series::one(Var::T, order))?;
        let recip = series_reciprocal(&plus_one)?;
        let beta = Series::from_fn(Var::T, order, |n| beta_difference(n, shift).scale(&fact(n).recip()));
        if let Err(c) = expect_series(&recip, &beta, || loc([("part", "reciprocal".into())]))? {
            return Ok(Err(c));
        }
        let geometric = Series::from_fn(Var::T, order, |n| {
            geom_deg(n).eval(&lconst(rat(-1, 2))).scale(&fact(n).recip())
        });
        expect_series(&recip.scale(&int(2)), &geometric, || {
            loc([("part", "geometric".into())])
        })
    })()?;
    Ok(report.finish(control, outcome))
}

pub fn check_abel_sum(n_max: usize, control: Control) -> Result<Verdict, IdentityError> {
    let report = Report::new(
        "R9",
        "Abel sum Σ_k (−1)^k (k)_{n,λ}, taken as the value at x = −1 of (1−x)^{−1} Σ_l S₁(n,l) λ^{n−l} W_l(x/(1−x)), \
         equals (β_{n+1,λ} − 2^{n+1} β_{n+1,λ/2})/(n+1)",
    )
    .param("n_max", n_max)
    .range("n", n_max);
    let mut outcome = Ok(());
    for n in 0..=n_max {
        let power = if control.negative() { 2 } else { 1 };
        let closed = lambda_falling_transform(n, |l| Ok(geom(l)))?.div_poly(&one_minus_x_pow(power))?;
        let abel = closed.eval_x(&int(-1))?;
        outcome = expect(&abel, &beta_difference(n, 0), || loc([("n", n.into())]));
        if outcome.is_err() {
            break;
        }
    }
    Ok(report.finish(control, outcome))
}

/// Which family's generating function to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfFamily {
    BellDeg,
    PhiDeg,
    GeomDeg,
    BernoulliDeg,
}

impl GfFamily {
    pub const ALL: [GfFamily; 4] = [Self::BellDeg, Self::PhiDeg, Self::GeomDeg, Self::BernoulliDeg];

    pub fn id(self) -> &'static str {
        match self {
            Self::BellDeg => "GF_BELL",
            Self::PhiDeg => "GF_PHI",
            Self::GeomDeg => "GF_GEOM",
            Self::BernoulliDeg => "GF_BERN",
        }
    }

    fn description(self) -> &'static str {
        match self {
            Self::BellDeg => "e_λ(x(e^t − 1)) = Σ_n Bel_{n,λ}(x) tⁿ/n!",
            Self::PhiDeg => "e^{x(e_λ(t) − 1)} = Σ_n φ_{n,λ}(x) tⁿ/n!",
            Self::GeomDeg => "1/(1 − x(e_λ(t) − 1)) = Σ_n W_{n,λ}(x) tⁿ/n!",
            Self::BernoulliDeg => "t/(e_λ(t) − 1) = Σ_n β_{n,λ} tⁿ/n!",
        }
    }
}

/// `x·Σ_{n≥1} c_n tⁿ` with `c_n = (1)_{n,λ}/n!` (degenerate) or `1/n!` (classical).
fn x_times_exp_minus_one(order: usize, degenerate: bool) -> Series<XPoly> {
    Series::from_fn(Var::T, order, |n| {
        if n == 0 {
            return XPoly::zero();
        }
        let c = if degenerate { lambda_one(n) } else { LambdaPoly::one() };
        XPoly::monomial(c.scale(&fact(n).recip()), 1)
    })
}

pub fn check_gf_consistency(family: GfFamily, order: usize, control: Control) -> Result<Verdict, IdentityError> {
    if order < 1 {
        return Err(IdentityError::InvalidParams("order must be at least 1".into()));
    }
    let report = Report::new(family.id(), family.description())
        .param("order", order)
        .range("n", order);
    let faithful = !control.negative();
    let outcome = match family {
        GfFamily::BellDeg => {
            let outer = if faithful {
                e_lambda_series(Var::X, order)
            } else {
                Series::from_fn(Var::X, order, |n| lconst(fact(n).recip()))
            };
            let gf = series_compose(&outer, &x_times_exp_minus_one(order, false))?;
            compare_egf(&gf, bell_deg)
        }
        GfFamily::PhiDeg => {
            let gf = series_exp(&x_times_exp_minus_one(order, faithful))?;
            compare_egf(&gf, phi_deg)
        }
        GfFamily::GeomDeg => {
            let denom = Series::one(Var::T, order).sub(&x_times_exp_minus_one(order, faithful))?;
            compare_egf(&series_reciprocal(&denom)?, geom_deg)
        }
        GfFamily::BernoulliDeg => {
            let quotient = if faithful {
                e_lambda_quotient_series(order)
            } else {
                Series::from_fn(Var::T, order, |n| lconst(fact(n + 1).recip()))
            };
            let gf = series_reciprocal(&quotient)?;
            let values = Series::from_fn(Var::T, order, |n| bernoulli_deg(n).scale(&fact(n).recip()));
            match expect_series(&gf, &values, || loc([("part", "reciprocal".into())]))? {
                Err(c) => Err(c),
                // the tabulated values must also satisfy the defining product
                Ok(()) => expect_series(&values.mul(&quotient)?, &Series::one(Var::T, order), || {
                    loc([("part", "product".into())])
                })?,
            }
        }
    };
    Ok(report.finish(control, outcome))
}

fn compare_egf(gf: &Series<XPoly>, family: impl Fn(usize) -> XPoly) -> Outcome {
    for n in 0..=gf.order() {
        let scaled = gf.coeff(n).scale(&fact(n));
        expect(&scaled, &family(n), || loc([("n", n.into())]))?;
    }
    Ok(())
}

pub fn check_stirling_orthogonality(n_max: usize, control: Control) -> Result<Verdict, IdentityError> {
    let report = Report::new(
        "E4_E7",
        "Σ_k S₁(n,k) S₂(k,m) = δ_{n,m} and Σ_k S_{1,λ}(n,k) S_{2,λ}(k,m) = δ_{n,m}",
    )
    .param("n_max", n_max)
    .range("n", n_max)
    .range("m", n_max);
    let pairs = if control.negative() {
        [
            (StirlingKind::S1, StirlingKind::S2),
            (StirlingKind::S1Deg, StirlingKind::S2),
        ]
    } else {
        [
            (StirlingKind::S1, StirlingKind::S2),
            (StirlingKind::S1Deg, StirlingKind::S2Deg),
        ]
    };
    let mut outcome = Ok(());
    'outer: for (first, second) in pairs {
        let a = TriangularTable::new(first, n_max);
        let b = TriangularTable::new(second, n_max);
        let first_mismatch = (0..=n_max)
            .flat_map(|n| (0..=n_max).map(move |m| (n, m)))
            .collect::<Vec<_>>();
        let products: Vec<LambdaPoly> = {
            use rayon::prelude::*;
            first_mismatch
                .par_iter()
                .map(|&(n, m)| a.product_entry(&b, n, m))
                .collect()
        };
        for (&(n, m), p) in first_mismatch.iter().zip(&products) {
            let delta = if n == m { LambdaPoly::one() } else { LambdaPoly::zero() };
            outcome = expect(p, &delta, || {
                loc([("pair", first.name().into()), ("n", n.into()), ("m", m.into())])
            });
            if outcome.is_err() {
                break 'outer;
            }
        }
    }
    Ok(report.finish(control, outcome))
}

pub fn check_inversions(n_max: usize, control: Control) -> Result<Verdict, IdentityError> {
    let report = Report::new(
        "INV",
        "(1)_{n,λ} x^n = Σ_k S₁(n,k) Bel_{k,λ}(x), x^n = Σ_k S_{1,λ}(n,k) φ_{k,λ}(x), n! x^n = Σ_k S_{1,λ}(n,k) W_{k,λ}(x)",
    )
    .param("n_max", n_max)
    .range("n", n_max);
    let mut outcome = Ok(());
    'outer: for n in 0..=n_max {
        let sum_with = |kind: StirlingKind, fam: fn(usize) -> XPoly| {
            (0..=n).fold(XPoly::zero(), |acc, k| {
                Ring::add(&acc, &fam(k).scale_by(&stirling(kind, n, k)))
            })
        };
        let scale = if control.negative() {
            LambdaPoly::one()
        } else {
            lambda_one(n)
        };
        let cases = [
            ("bell", XPoly::monomial(scale, n), sum_with(StirlingKind::S1, bell_deg)),
            (
                "phi",
                XPoly::monomial(LambdaPoly::one(), n),
                sum_with(StirlingKind::S1Deg, phi_deg),
            ),
            (
                "geom",
                XPoly::monomial(lconst(fact(n)), n),
                sum_with(StirlingKind::S1Deg, geom_deg),
            ),
        ];
        for (name, lhs, rhs) in cases {
            outcome = expect(&lhs, &rhs, || loc([("n", n.into()), ("family", name.into())]));
            if outcome.is_err() {
                break 'outer;
            }
        }
    }
    Ok(report.finish(control, outcome))
}

pub fn check_degeneration(n_max: usize, control: Control) -> Result<Verdict, IdentityError> {
    let report = Report::new(
        "DEGEN",
        "λ → 0 limits: Bel_{n,λ}, φ_{n,λ}, bel_{n,λ} → Bel_n; W_{n,λ} → W_n; β_{n,λ} → B_n",
    )
    .param("n_max", n_max)
    .range("n", n_max);
    let target = if control.negative() {
        LambdaTarget::Value(int(1))
    } else {
        LambdaTarget::Zero
    };
    let mut outcome = Ok(());
    'outer: for n in 0..=n_max {
        let classical_bell = bell(n);
        let cases = [
            (
                "bell_deg",
                bell_deg(n).substitute_lambda(&target),
                classical_bell.clone(),
            ),
            ("phi_deg", phi_deg(n).substitute_lambda(&target), classical_bell.clone()),
            ("geom_deg", geom_deg(n).substitute_lambda(&target), geom(n)),
            (
                "bernoulli_deg",
                XPoly::constant(bernoulli_deg(n).substitute_lambda(&target)),
                XPoly::constant(lconst(bernoulli_number(n))),
            ),
        ];
        for (name, lhs, rhs) in cases {
            outcome = expect(&lhs, &rhs, || loc([("n", n.into()), ("family", name.into())]));
            if outcome.is_err() {
                break 'outer;
            }
        }
        let second = bel_deg_second(n).substitute_lambda(&target);
        if second != RationalFn::from_poly(classical_bell.clone()) {
            outcome = Err(Box::new(Counterexample {
                location: loc([("n", n.into()), ("family", "bel_deg_second".into())]),
                lhs: second.num().clone().into(),
                rhs: Ring::mul(&classical_bell, second.den()).into(),
            }));
            break;
        }
    }
    Ok(report.finish(control, outcome))
}
