use super::*;
use proptest::prelude::*;

fn xs(n: usize) -> Arc<VarSet> {
    VarSet::x(n)
}

fn px(s: &str, n: usize) -> Poly {
    Poly::parse(s, &xs(n)).unwrap()
}

#[test]
fn add_examples() {
    let v = VarSet::named("p", &[2, 4]);
    let p1 = Poly::var(&v, 0);
    assert!((&p1 + &(-&p1)).is_zero());
    let a = Poly::parse("p1^2 + p2", &v).unwrap();
    let b = Poly::parse("p2", &v).unwrap();
    assert_eq!((a + b).to_string(), "p1^2 + 2*p2");
    assert_eq!(
        (px("x1 + x2", 2) + px("x1*x2", 2)).to_string(),
        "x1*x2 + x1 + x2"
    );
}

#[test]
fn mul_examples() {
    assert_eq!(
        (px("x1 - x2", 2) * px("x1 + x2", 2)).to_string(),
        "x1^2 - x2^2"
    );
    let v = VarSet::named("p", &[2]);
    let p1 = Poly::var(&v, 0);
    assert_eq!(&p1 * &Poly::one(&v), p1);
    assert_eq!(px("x1 + x2", 2).pow(2).to_string(), "x1^2 + 2*x1*x2 + x2^2");
}

#[test]
fn mismatched_varsets_are_rejected() {
    let a = Poly::var(&xs(2), 0);
    let b = Poly::var(&VarSet::named("p", &[1, 1]), 0);
    assert!(matches!(a.try_add(&b), Err(Error::VarsetMismatch { .. })));
    assert!(matches!(a.try_mul(&b), Err(Error::VarsetMismatch { .. })));
}

#[test]
fn differentiate_examples() {
    assert_eq!(px("x1^2*x2", 2).differentiate(0).to_string(), "2*x1*x2");
    assert!(px("x1", 2).differentiate(1).is_zero());
    assert_eq!(px("x1*x2*x3", 3).differentiate(0).to_string(), "x2*x3");
}

#[test]
fn substitute_examples() {
    let p = VarSet::named("p", &[1, 2]);
    let x = xs(2);
    let f = Poly::parse("p1^2 - 2*p2", &p).unwrap();
    let out = f
        .substitute(&[
            (0, Poly::parse("x1 + x2", &x).unwrap()),
            (1, Poly::parse("x1*x2", &x).unwrap()),
        ])
        .unwrap();
    assert_eq!(out.to_string(), "x1^2 + x2^2");

    let w = VarSet::named("p", &[2, 3, 4]);
    let g = Poly::parse("p3 + 1/4*p1^2", &w).unwrap();
    let id: Vec<(usize, Poly)> = (0..3).map(|i| (i, Poly::var(&w, i))).collect();
    assert_eq!(g.substitute(&id).unwrap(), g);
    assert_eq!(g.substitute(&[(0, Poly::var(&w, 0))]).unwrap(), g);
}

#[test]
fn partial_substitution_needs_matching_names() {
    let p = VarSet::named("p", &[1, 2]);
    let x = xs(2);
    let f = Poly::parse("p1 + p2", &p).unwrap();
    let err = f.substitute(&[(0, Poly::var(&x, 0))]).unwrap_err();
    assert_eq!(err, Error::Unassigned("p2".into()));
}

#[test]
fn exact_divide_examples() {
    assert_eq!(
        px("x1^2 - x2^2", 2)
            .exact_divide(&px("x1 - x2", 2))
            .unwrap()
            .to_string(),
        "x1 + x2"
    );
    let a = px("x1*x2*x3", 3) * px("x2*x3", 3);
    assert_eq!(
        a.exact_divide(&px("x1*x2*x3", 3)).unwrap().to_string(),
        "x2*x3"
    );
    let v = VarSet::named("p", &[2, 4]);
    let a = Poly::parse("p1^2*p2", &v).unwrap();
    let d = Poly::parse("p2", &v).unwrap();
    assert_eq!(a.exact_divide(&d).unwrap().to_string(), "p1^2");
}

#[test]
fn inexact_division_reports_remainder() {
    let err = px("x1^2 + 1", 1)
        .exact_divide(&px("x1 - 1", 1))
        .unwrap_err();
    match err {
        Error::NotDivisible { remainder } => assert_eq!(remainder, "2"),
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn weight_examples() {
    let b3 = VarSet::named("p", &[2, 4, 6]);
    assert_eq!(Poly::parse("p1*p2", &b3).unwrap().weight_of().unwrap(), 6);
    let a3 = VarSet::named("p", &[2, 3, 4]);
    assert_eq!(Poly::parse("p3", &a3).unwrap().weight_of().unwrap(), 4);
    let s3 = VarSet::named("p", &[1, 2, 3]);
    assert_eq!(
        Poly::parse("p1^2 + p2", &s3).unwrap().weight_of().unwrap(),
        2
    );
    assert_eq!(Poly::zero(&s3).weight_of(), Err(Error::ZeroWeight));
    assert!(matches!(
        Poly::parse("p1 + p2", &s3).unwrap().weight_of(),
        Err(Error::NotHomogeneous { .. })
    ));
}

#[test]
fn term_count_examples() {
    let a3 = VarSet::named("p", &[2, 3, 4]);
    assert_eq!(
        Poly::parse("3*p2^2 - 8*p1*p3", &a3).unwrap().term_count(),
        2
    );
    assert_eq!(Poly::zero(&a3).term_count(), 0);
    assert_eq!(Poly::parse("4*p1", &a3).unwrap().term_count(), 1);
}

#[test]
fn evaluate_examples() {
    assert_eq!(px("x1^2 + x2^2", 2).evaluate(&[q(3), q(4)]), q(25));
    let v = VarSet::named("p", &[2]);
    assert_eq!(Poly::var(&v, 0).evaluate(&[q(7)]), q(7));
    assert_eq!(px("x1*x2*x3", 3).evaluate(&[q(1), q(2), q(3)]), q(6));
    assert_eq!(px("x1*x2*x3", 3).evaluate_real(&[1.0, 2.0, 3.0]), 6.0);
}

#[test]
fn canonical_text_and_ordering() {
    let v = VarSet::named("q", &[2, 3, 4]);
    let p = Poly::parse("3*q2^2 + 16/25*q1^3 - 24/5*q1*q3", &v).unwrap();
    assert_eq!(p.to_string(), "16/25*q1^3 - 24/5*q1*q3 + 3*q2^2");
    assert_eq!(
        p.to_latex(),
        "\\frac{16}{25} q_{1}^{3} - \\frac{24}{5} q_{1} q_{3} + 3 q_{2}^{2}"
    );
}

#[test]
fn json_form() {
    let v = VarSet::named("p", &[2, 4, 6]);
    let p = Poly::parse("-8*p1*p3", &v).unwrap();
    let j = serde_json::to_string(&p).unwrap();
    assert_eq!(
        j,
        r#"{"vars":[{"name":"p1","weight":2},{"name":"p2","weight":4},{"name":"p3","weight":6}],"terms":[{"coeff":"-8/1","exps":[1,0,1]}]}"#
    );
    let back: Poly = serde_json::from_str(&j).unwrap();
    assert_eq!(back, p);
}

#[test]
fn compose_reuses_powers() {
    let v = VarSet::named("p", &[1, 1]);
    let f = Poly::parse("p1^3*p2 + p1^2 + p2^4 - 7", &v).unwrap();
    let x = xs(2);
    let imgs = vec![px("x1 + x2", 2), px("x1 - 2*x2", 2)];
    let direct = imgs[0].pow(3) * &imgs[1] + imgs[0].pow(2) + imgs[1].pow(4) - Poly::integer(&x, 7);
    assert_eq!(f.compose(&imgs).unwrap(), direct);
}

#[test]
fn big_coefficients_take_the_bigint_path() {
    let x = xs(2);
    let big = Poly::parse("123456789012345678901*x1 + 98765432109876543210*x2", &x).unwrap();
    let sq = &big * &big;
    let expect = Poly::parse(
        "15241578753238836750437433565526596567801*x1^2 + 24386526227404359044946806886445023624420*x1*x2 + 9754610579850632525677488187778997104100*x2^2",
        &x,
    )
    .unwrap();
    assert_eq!(sq, expect);
}

#[test]
fn double_double_carries_more_bits() {
    let third = frac(1, 3);
    let d = DoubleDouble::from_rational(&third);
    let back = d * DoubleDouble::from_f64(3.0) - DoubleDouble::one();
    assert!(back.to_f64().abs() < 1e-30);
    let two = DoubleDouble::from_f64(2.0).sqrt();
    assert!((two * two - DoubleDouble::from_f64(2.0)).to_f64().abs() < 1e-30);
}

#[test]
fn numeric_matches_exact_on_conversion() {
    let f = px("x1^2 - 3/7*x1*x2 + x2^3", 2);
    let n: NumericPoly<f64> = f.to_numeric();
    let pt = [0.3, -1.2];
    assert!((n.evaluate(&pt) - f.evaluate_real(&pt)).abs() < 1e-14);
    let g = n.mul(&n).differentiate(0);
    let exact = (&f * &f).differentiate(0);
    assert!(g.max_diff(&exact.to_numeric()) < 1e-12);
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..6).prop_map(|(n, d)| frac(n, d))
}

fn poly3() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((proptest::collection::vec(0u32..=6, 3), coeff()), 0..=20).prop_map(
        |terms| {
            let v = xs(3);
            Poly::from_terms(&v, terms.into_iter().map(|(e, c)| (Monomial::new(e), c)))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly3(), b in poly3(), c in poly3()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn leibniz(a in poly3(), b in poly3(), i in 0usize..3) {
        let lhs = (&a * &b).differentiate(i);
        let rhs = &a * &b.differentiate(i) + &a.differentiate(i) * &b;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divide_undoes_multiply(a in poly3(), b in poly3()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
    }

    #[test]
    fn text_round_trip(a in poly3()) {
        let back = Poly::parse(&a.to_string(), a.vars()).unwrap();
        prop_assert_eq!(back.to_string(), a.to_string());
        prop_assert_eq!(back, a);
    }

    #[test]
    fn json_round_trip(a in poly3()) {
        let j = serde_json::to_string(&a).unwrap();
        let back: Poly = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly3(), b in poly3(), pt in proptest::collection::vec(coeff(), 3)) {
        prop_assert_eq!((&a * &b).evaluate(&pt), a.evaluate(&pt) * b.evaluate(&pt));
        prop_assert_eq!((&a + &b).evaluate(&pt), a.evaluate(&pt) + b.evaluate(&pt));
    }
}
