use degbell::algebra::{
    int, lambda_falling_at, rat, series_reciprocal, LambdaPoly, LambdaTarget, Mobius, Poly, Rational, RationalFn, Ring,
    Series, SubstituteLambda, Var, XPoly,
};
use degbell::families::{bernoulli_deg, bernoulli_poly, e_lambda_series, eulerian_poly, geom, geom_deg};
use degbell::identities::*;

fn lconst(r: Rational) -> LambdaPoly {
    LambdaPoly::constant(r)
}

fn passes(v: Result<Verdict, IdentityError>) -> bool {
    let v = v.expect("check runs");
    assert_eq!(v.passed(), v.counterexample.is_none());
    v.passed()
}

#[test]
fn gamma_moment_small_cases() {
    assert!(passes(check_gamma_moment(0, Control::Faithful)));
    assert!(passes(check_gamma_moment(2, Control::Faithful)));
}

#[test]
fn euler_operator_with_geometric_series() {
    let g = RationalFn::new(XPoly::one(), Mobius::OneMinusX.factor())
        .unwrap()
        .expand(10)
        .unwrap();
    assert!(passes(check_euler_operator(2, &g, Control::Faithful)));
    assert!(passes(check_euler_operator(0, &g, Control::Faithful)));
    assert!(!passes(check_euler_operator(2, &g, Control::Negative)));
}

#[test]
fn series_transform_examples() {
    let one = vec![int(1)];
    let x = monomial_coeffs(1);
    let x2 = monomial_coeffs(2);
    assert!(passes(check_series_transform(
        &one,
        TransformKernel::Geometric,
        10,
        Control::Faithful
    )));
    assert!(passes(check_series_transform(
        &x,
        TransformKernel::Geometric,
        10,
        Control::Faithful
    )));
    assert!(passes(check_series_transform(
        &x2,
        TransformKernel::ELambda,
        10,
        Control::Faithful
    )));
    assert!(passes(check_bell_transform(&x2, 10, Control::Faithful)));
    assert!(!passes(check_series_transform(
        &x,
        TransformKernel::GeometricR(2),
        10,
        Control::Negative
    )));
}

#[test]
fn e_lambda_transform_matches_bell_transform_for_quadratic() {
    // Σ (1)_{k,λ}/k! k² x^k computed directly
    let direct = Series::from_fn(Var::X, 8, |k| {
        degbell::families::lambda_one(k)
            .scale(&(int((k * k) as i64) / Rational::from_integer(degbell::algebra::factorial(k))))
    });
    let mut rhs = Series::zero(Var::X, 8);
    rhs = rhs
        .add(&degbell::families::bel_deg_second(2).expand(8).unwrap())
        .unwrap();
    let rhs = rhs.mul(&e_lambda_series(Var::X, 8)).unwrap();
    assert_eq!(direct, rhs);
}

#[test]
fn bell_transform_at_lambda_zero_is_classical() {
    // Σ k² x^k/k! = e^x (x + x²)
    let order = 8;
    let f = |k: usize| int((k * k) as i64) / Rational::from_integer(degbell::algebra::factorial(k));
    let lhs = Series::from_fn(Var::X, order, |k| lconst(f(k)));
    let exp = Series::from_fn(Var::X, order, |k| {
        lconst(int(1) / Rational::from_integer(degbell::algebra::factorial(k)))
    });
    let bell2 = Series::from_coeffs(Var::X, order, vec![lconst(int(0)), lconst(int(1)), lconst(int(1))]);
    assert_eq!(lhs, exp.mul(&bell2).unwrap());
    let bel_sum = degbell::families::bel_deg_second(2).expand(order).unwrap();
    let deg = e_lambda_series(Var::X, order)
        .mul(&bel_sum)
        .unwrap()
        .substitute_lambda(&LambdaTarget::Zero);
    assert_eq!(deg, lhs);
}

#[test]
fn second_kind_bell_examples() {
    assert!(passes(check_second_kind_bell(0, 4, Control::Faithful)));
    assert!(passes(check_second_kind_bell(3, 12, Control::Faithful)));
    assert!(matches!(
        check_second_kind_bell(5, 4, Control::Faithful),
        Err(IdentityError::InvalidParams(_))
    ));
}

#[test]
fn lambda_falling_sum_values() {
    assert!(passes(check_lambda_falling_sums(2, 6, Control::Faithful)));
    // m = 2, k = 3 at λ = 0 gives 0 + 1 + 4 + 9
    let sum = (0..=3).fold(LambdaPoly::zero(), |acc, j| &acc + &lambda_falling_at(&int(j), 2));
    assert_eq!(sum.substitute_lambda(&LambdaTarget::Zero), lconst(int(14)));
    assert_eq!(
        (bernoulli_poly(3).eval(&lconst(int(4))).constant_term() - bernoulli_poly(3).constant_term().constant_term())
            / int(3),
        int(14)
    );
    assert!(matches!(
        check_lambda_falling_sums(2, 3, Control::Faithful),
        Err(IdentityError::InvalidParams(_))
    ));
}

#[test]
fn faulhaber_examples() {
    assert!(passes(check_faulhaber(3, 10, Control::Faithful)));
    assert_eq!(bernoulli_poly(3).eval(&lconst(int(4))), lconst(int(42)));
    assert!(matches!(
        check_faulhaber(0, 10, Control::Faithful),
        Err(IdentityError::InvalidParams(_))
    ));
}

#[test]
fn eulerian_examples() {
    assert!(passes(check_eulerian(2, 4, Control::Faithful)));
    let a2 = eulerian_poly(2).unwrap();
    let s = RationalFn::new(a2, Mobius::OneMinusX.factor().pow(3))
        .unwrap()
        .expand(5)
        .unwrap();
    assert_eq!(s.coeff(3), &lconst(int(9)));
}

/// Eulerian numbers by the explicit alternating sum with `C(n+1, l)`.
fn eulerian_number(n: usize, k: usize) -> Rational {
    (0..=k + 1)
        .map(|l| {
            let sign = if l % 2 == 0 { 1 } else { -1 };
            let base = (k + 1 - l) as i64;
            int(sign) * Rational::from_integer(degbell::algebra::binomial(n + 1, l)) * int(base.pow(n as u32))
        })
        .sum()
}

#[test]
fn eulerian_coefficients_match_alternating_sum() {
    for m in 1..=9 {
        let a = eulerian_poly(m).unwrap();
        for j in 1..=m {
            assert_eq!(a.coeff(j), lconst(eulerian_number(m, j - 1)), "m = {m}, j = {j}");
        }
        assert_eq!(a.coeff(0), LambdaPoly::zero());
    }
}

#[test]
fn rgeom_examples() {
    assert!(passes(check_r_geometric(2, 2, 6, Control::Faithful)));
    assert!(!passes(check_r_geometric(2, 2, 6, Control::Negative)));
}

#[test]
fn alternating_stirling_examples() {
    assert!(passes(check_alternating_stirling(3, Control::Faithful)));
    assert_eq!(geom_deg(1).eval(&lconst(rat(-1, 2))), lconst(rat(-1, 2)));
    let b2 = bernoulli_deg(2);
    let combo = &b2 - &b2.substitute_lambda(&LambdaTarget::half()).scale(&int(4));
    assert_eq!(combo, lconst(rat(-1, 2)));
    assert_eq!(geom(1).eval(&lconst(rat(-1, 2))), lconst(rat(-1, 2)));
}

#[test]
fn reciprocal_e_lambda_examples() {
    assert!(passes(check_reciprocal_e_lambda(6, Control::Faithful)));
    let e = e_lambda_series(Var::T, 4);
    let r = series_reciprocal(&e.add(&Series::one(Var::T, 4)).unwrap()).unwrap();
    assert_eq!(r.coeff(0), &lconst(rat(1, 2)));
    assert_eq!(r.coeff(1).substitute_lambda(&LambdaTarget::Zero), lconst(rat(-1, 4)));
}

#[test]
fn abel_sum_examples() {
    assert!(passes(check_abel_sum(2, Control::Faithful)));
    // x/(1−x)² at x = −1
    let a1 = RationalFn::new(Poly::monomial(LambdaPoly::one(), 1), Mobius::OneMinusX.factor().pow(2)).unwrap();
    assert_eq!(a1.eval_x(&int(-1)).unwrap(), lconst(rat(-1, 4)));
}

#[test]
fn gf_examples() {
    for f in GfFamily::ALL {
        assert!(passes(check_gf_consistency(f, 6, Control::Faithful)), "{}", f.id());
        assert!(!passes(check_gf_consistency(f, 6, Control::Negative)), "{}", f.id());
    }
}

#[test]
fn verdicts_are_reproducible() {
    let a = check_alternating_stirling(10, Control::Negative).unwrap();
    let b = check_alternating_stirling(10, Control::Negative).unwrap();
    assert_eq!(a, b);
    assert_eq!(verdicts_to_json(std::slice::from_ref(&a)), verdicts_to_json(&[b]));
}

#[test]
fn failing_verdicts_carry_unequal_sides() {
    let config = SuiteConfig {
        n_max: 5,
        order: 8,
        m_max: 4,
        r_max: 2,
        k_max: 10,
        deg_max: 3,
        filter: None,
        negative: identity_ids().into_iter().map(String::from).collect(),
    };
    for v in run_all(&config).unwrap() {
        let c = v
            .counterexample
            .as_ref()
            .unwrap_or_else(|| panic!("{} passed under its negative control", v.id));
        assert_ne!(c.lhs, c.rhs, "{}", v.id);
        assert!(!c.location.is_empty(), "{}", v.id);
    }
}

#[test]
fn verdict_json_roundtrip() {
    let config = SuiteConfig {
        n_max: 4,
        order: 6,
        m_max: 3,
        r_max: 2,
        k_max: 8,
        deg_max: 2,
        filter: Some(vec!["T".into(), "R9".into()]),
        negative: ["T8".to_string(), "T7".to_string()].into(),
    };
    let verdicts = run_all(&config).unwrap();
    let text = verdicts_to_json(&verdicts);
    assert_eq!(verdicts_from_json(&text).unwrap(), verdicts);
}
