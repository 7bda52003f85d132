use degbell::algebra::{
    diag_weight, gamma_moment, int, lambda_falling_at, series_compose, series_exp, series_reciprocal,
    substitute_mobius, LambdaPoly, LambdaTarget, Mobius, Poly, Rational, RationalFn, Ring, Series, SubstituteLambda,
    Var, XPoly,
};
use degbell::identities::Value;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != int(0))
}

fn lambda_poly() -> impl Strategy<Value = LambdaPoly> {
    prop::collection::vec(rational(), 0..=3).prop_map(Poly::new)
}

fn x_poly() -> impl Strategy<Value = XPoly> {
    prop::collection::vec(lambda_poly(), 0..=4).prop_map(Poly::new)
}

const ORDER: usize = 6;

fn series() -> impl Strategy<Value = Series<LambdaPoly>> {
    prop::collection::vec(lambda_poly(), ORDER + 1).prop_map(|c| Series::from_coeffs(Var::X, ORDER, c))
}

/// Series with a nonzero rational constant term.
fn unit_series() -> impl Strategy<Value = Series<LambdaPoly>> {
    (nonzero_rational(), series()).prop_map(|(c, s)| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = LambdaPoly::constant(c);
        Series::from_coeffs(Var::X, ORDER, coeffs)
    })
}

fn nilpotent_series() -> impl Strategy<Value = Series<LambdaPoly>> {
    series().prop_map(|s| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = LambdaPoly::zero();
        Series::from_coeffs(Var::X, ORDER, coeffs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn xpoly_ring_axioms(a in x_poly(), b in x_poly(), c in x_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &XPoly::one(), a);
    }

    #[test]
    fn division_with_remainder(a in x_poly(), lead in nonzero_rational(), rest in prop::collection::vec(lambda_poly(), 0..=2)) {
        let mut coeffs = rest;
        coeffs.push(LambdaPoly::constant(lead));
        let b = Poly::new(coeffs);
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        prop_assert_eq!((&q * &b).div_exact(&b).unwrap(), q);
    }

    #[test]
    fn reciprocal_roundtrip(s in unit_series()) {
        let r = series_reciprocal(&s).unwrap();
        prop_assert_eq!(s.mul(&r).unwrap(), Series::one(Var::X, ORDER));
        prop_assert_eq!(series_reciprocal(&r).unwrap(), s);
    }

    #[test]
    fn compose_is_associative(f in series(), g in nilpotent_series(), h in nilpotent_series()) {
        let left = series_compose(&f, &series_compose(&g, &h).unwrap()).unwrap();
        let right = series_compose(&series_compose(&f, &g).unwrap(), &h).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn exp_turns_sums_into_products(a in nilpotent_series(), b in nilpotent_series()) {
        let lhs = series_exp(&a.add(&b).unwrap()).unwrap();
        let rhs = series_exp(&a).unwrap().mul(&series_exp(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mobius_inverse_roundtrip(p in x_poly()) {
        for mode in [Mobius::OnePlusLambdaX, Mobius::OneMinusLambdaX] {
            let back = substitute_mobius(&p, mode).substitute_mobius(mode.inverse().unwrap());
            prop_assert_eq!(back, RationalFn::from_poly(p.clone()));
        }
    }

    #[test]
    fn mobius_substitution_is_multiplicative(p in x_poly(), q in x_poly()) {
        let mode = Mobius::OneMinusX;
        let lhs = substitute_mobius(&(&p * &q), mode);
        let rhs = substitute_mobius(&p, mode).mul(&substitute_mobius(&q, mode));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gamma_moment_is_linear(a in prop::collection::vec(x_poly(), 0..=4), b in prop::collection::vec(x_poly(), 0..=4), c in rational()) {
        let (a, b) = (Poly::new(a), Poly::new(b));
        let combined = &a + &b.scale(&c);
        prop_assert_eq!(gamma_moment(&combined), &gamma_moment(&a) + &gamma_moment(&b).scale(&c));
    }

    #[test]
    fn lambda_substitution_is_a_ring_map(a in x_poly(), b in x_poly(), v in rational()) {
        for t in [LambdaTarget::Zero, LambdaTarget::Value(v.clone()), LambdaTarget::Scale(v.clone())] {
            let prod = (&a * &b).substitute_lambda(&t);
            prop_assert_eq!(prod, &a.substitute_lambda(&t) * &b.substitute_lambda(&t));
        }
    }

    #[test]
    fn diag_weight_scales_by_lambda_falling(s in series(), m in 0usize..=4) {
        let w = diag_weight(&s, m);
        for k in 0..=ORDER {
            let expected = Ring::mul(&lambda_falling_at(&int(k as i64), m), s.coeff(k));
            prop_assert_eq!(w.coeff(k), &expected);
        }
    }

    #[test]
    fn expand_agrees_with_series_division(num in x_poly(), c in nonzero_rational()) {
        let den = XPoly::linear(LambdaPoly::one(), LambdaPoly::constant(c));
        let f = RationalFn::new(num.clone(), den.clone()).unwrap();
        let s = f.expand(ORDER).unwrap();
        prop_assert_eq!(s.mul(&Series::from_poly(Var::X, &den, ORDER)).unwrap(), Series::from_poly(Var::X, &num, ORDER));
    }

    #[test]
    fn value_json_roundtrip(p in x_poly(), q in lambda_poly(), r in rational()) {
        for v in [Value::X(p.clone()), Value::Lambda(q.clone()), Value::Rational(r.clone())] {
            let text = serde_json::to_string(&v).unwrap();
            let back: Value = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, v);
        }
    }
}
